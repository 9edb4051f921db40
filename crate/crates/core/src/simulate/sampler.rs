use rand::RngCore;

/// Inverse-CDF sampler over a finite pmf using 64-bit thresholds.
#[derive(Clone, Debug)]
pub(crate) struct Sampler {
    thresholds: Vec<u64>,
}

impl Sampler {
    pub fn new(p: &[f64]) -> Self {
        let total: f64 = p.iter().sum();
        let mut acc = 0.0;
        let mut thresholds = Vec::with_capacity(p.len());
        let last_positive = p.iter().rposition(|&v| v > 0.0).unwrap_or(0);
        for (i, &v) in p.iter().enumerate() {
            acc += v / total;
            let t = if i >= last_positive { u64::MAX } else { (acc * u64::MAX as f64) as u64 };
            thresholds.push(if v > 0.0 || i >= last_positive { t } else { thresholds.last().copied().unwrap_or(0) });
        }
        Self { thresholds }
    }

    #[inline]
    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> usize {
        let u = rng.next_u64();
        self.thresholds.iter().position(|&t| u < t).unwrap_or_else(|| self.last_positive())
    }

    fn last_positive(&self) -> usize {
        self.thresholds.iter().position(|&t| t == u64::MAX).unwrap_or(self.thresholds.len() - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn never_draws_zero_mass() {
        let s = Sampler::new(&[0.0, 0.5, 0.0, 0.5, 0.0]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let mut counts = [0usize; 5];
        for _ in 0..10_000 {
            counts[s.sample(&mut rng)] += 1;
        }
        assert_eq!(counts[0] + counts[2] + counts[4], 0);
        assert!((counts[1] as f64 / 10_000.0 - 0.5).abs() < 0.03);
    }

    #[test]
    fn point_mass() {
        let s = Sampler::new(&[0.0, 1.0]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        assert!((0..100).all(|_| s.sample(&mut rng) == 1));
    }
}
