//! Simplex grids and derivative-free local search over products of simplices.

use rand::Rng;

/// Number of points of the grid `{p : p_i = k_i / steps, sum k_i = steps}`.
pub fn simplex_grid_count(dim: usize, steps: usize) -> u128 {
    if dim == 0 {
        return 0;
    }
    // C(steps + dim - 1, dim - 1)
    let (n, k) = ((steps + dim - 1) as u128, (dim - 1) as u128);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Grid steps for a resolution such as `0.05`.
pub fn steps_for(resolution: f64) -> usize {
    (1.0 / resolution).round().max(1.0) as usize
}

/// All points of the simplex grid in lexicographic order.
pub fn simplex_grid(dim: usize, steps: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    if dim == 0 {
        return out;
    }
    let mut k = vec![0usize; dim];
    fn rec(k: &mut Vec<usize>, i: usize, left: usize, steps: usize, out: &mut Vec<Vec<f64>>) {
        if i + 1 == k.len() {
            k[i] = left;
            out.push(k.iter().map(|&v| v as f64 / steps as f64).collect());
            return;
        }
        for v in (0..=left).rev() {
            k[i] = v;
            rec(k, i + 1, left - v, steps, out);
        }
    }
    rec(&mut k, 0, steps, steps, &mut out);
    out
}

/// Uniform draw from the probability simplex.
pub fn random_simplex<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..dim).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|v| v / s).collect()
}

#[derive(Clone, Copy, Debug)]
pub struct AscentConfig {
    pub max_rounds: usize,
    pub initial_step: f64,
    pub min_step: f64,
}

impl Default for AscentConfig {
    fn default() -> Self {
        Self { max_rounds: 200, initial_step: 0.1, min_step: 1e-7 }
    }
}

/// Pattern search maximizing `f` over a list of probability vectors.
///
/// Each round tries moving mass `step` between every ordered pair of
/// coordinates inside every block, keeping improvements; the step halves
/// after a round without progress.
pub fn coordinate_ascent<F>(start: Vec<Vec<f64>>, f: F, cfg: AscentConfig) -> (Vec<Vec<f64>>, f64)
where
    F: Fn(&[Vec<f64>]) -> f64,
{
    let mut x = start;
    let mut best = f(&x);
    let mut step = cfg.initial_step;
    for _ in 0..cfg.max_rounds {
        if step < cfg.min_step {
            break;
        }
        let mut improved = false;
        for b in 0..x.len() {
            let d = x[b].len();
            for i in 0..d {
                for j in 0..d {
                    if i == j || x[b][j] <= 0.0 {
                        continue;
                    }
                    let t = step.min(x[b][j]);
                    let (oi, oj) = (x[b][i], x[b][j]);
                    x[b][i] = oi + t;
                    x[b][j] = oj - t;
                    let v = f(&x);
                    if v > best + 1e-15 {
                        best = v;
                        improved = true;
                    } else {
                        x[b][i] = oi;
                        x[b][j] = oj;
                    }
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, best)
}
