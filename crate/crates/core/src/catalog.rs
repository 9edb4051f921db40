//! Named sources and channels used throughout the examples and tests.

use crate::prob::{entropy_bits, ChannelKind, ChannelModel, JointPmf};

fn bern(bit: usize, p: f64) -> f64 {
    if bit == 1 { p } else { 1.0 - p }
}

fn bsc(x: usize, y: usize, eps: f64) -> f64 {
    if x == y { 1.0 - eps } else { eps }
}

/// `p(0,0) = p(0,1) = p(1,1) = 1/3`.
pub fn cover_salehi() -> JointPmf {
    JointPmf::from_fn(vec!["S1", "S2"], vec![2, 2], |a| if a == [1, 0] { 0.0 } else { 1.0 / 3.0 })
        .expect("valid pmf")
}

/// Cover–Salehi pair with receiver side information `W1`:
/// `p(0,0,0) = p(1,1,1) = 1/3`, `p(0,1,0) = p(0,1,1) = 1/6`.
pub fn cover_salehi_w1() -> JointPmf {
    JointPmf::from_fn(vec!["S1", "S2", "W1"], vec![2, 2, 2], |a| match (a[0], a[1], a[2]) {
        (0, 0, 0) | (1, 1, 1) => 1.0 / 3.0,
        (0, 1, 0) | (0, 1, 1) => 1.0 / 6.0,
        _ => 0.0,
    })
    .expect("valid pmf")
}

/// Independent uniform bits.
pub fn independent_bits() -> JointPmf {
    JointPmf::from_fn(vec!["S1", "S2"], vec![2, 2], |_| 0.25).expect("valid pmf")
}

/// Independent uniform bits with `W1 = S1 xor S2`.
pub fn independent_xor() -> JointPmf {
    JointPmf::from_fn(vec!["S1", "S2", "W1"], vec![2, 2, 2], |a| {
        if a[2] == a[0] ^ a[1] { 0.25 } else { 0.0 }
    })
    .expect("valid pmf")
}

/// Source pair for the binary multiplier two-way channel:
/// `p(0,1) = p(1,0) = 0.275`, `p(1,1) = 0.45`.
pub fn shannon_source() -> JointPmf {
    JointPmf::new(vec!["S1", "S2"], vec![2, 2], vec![0.0, 0.275, 0.275, 0.45]).expect("valid pmf")
}

/// Point mass on `(0, 0)`.
pub fn constant_source() -> JointPmf {
    JointPmf::point_mass(vec!["S1", "S2"], vec![2, 2], &[0, 0]).expect("valid pmf")
}

/// `Y = X1 + X2` over binary inputs.
pub fn adder_mac() -> ChannelModel {
    ChannelModel::deterministic_mac(2, 2, 3, |a, b| a + b).expect("valid channel")
}

/// Output independent of the inputs.
pub fn constant_mac() -> ChannelModel {
    ChannelModel::deterministic_mac(2, 2, 1, |_, _| 0).expect("valid channel")
}

/// A MAC seen identically by two receivers.
pub fn duplicated(mac: &ChannelModel, kind: ChannelKind) -> ChannelModel {
    ChannelModel::duplicated(mac, kind).expect("valid channel")
}

/// `Y1 = Y2 = X1 X2` used as a two-way channel.
pub fn multiplier_two_way() -> ChannelModel {
    ChannelModel::two_output(ChannelKind::TwoWay, [2, 2], [2, 2], |a, b, c, d| {
        let y = a * b;
        if c == y && d == y { 1.0 } else { 0.0 }
    })
    .expect("valid channel")
}

/// Two-way channel with `Y2 = X1` and `Y1 = X2`.
pub fn crossed_pipes() -> ChannelModel {
    ChannelModel::two_output(ChannelKind::TwoWay, [2, 2], [2, 2], |a, b, c, d| {
        if c == b && d == a { 1.0 } else { 0.0 }
    })
    .expect("valid channel")
}

/// No-interference compound MAC where every link is a noiseless binary pipe.
pub fn clean_pipes() -> ChannelModel {
    let pipe = |x: usize, ya: usize, yb: usize| if ya == x && yb == x { 1.0 } else { 0.0 };
    ChannelModel::no_mai([2, 2], [2, 2], [2, 2], pipe, pipe).expect("valid channel")
}

/// Interference channel `Y1 = X1 + X2`, `Y2 = BSC_eps(X1) + X2`.
pub fn noisy_cross_adder_ic(eps: f64) -> ChannelModel {
    ChannelModel::two_output(ChannelKind::Compound, [2, 2], [3, 3], |a, b, c, d| {
        let y1 = if c == a + b { 1.0 } else { 0.0 };
        let y2: f64 = (0..2).filter(|z| z + b == d).map(|z| bsc(a, z, eps)).sum();
        y1 * y2
    })
    .expect("valid channel")
}

/// Interference channel `Y1 = BSC_eps(X1) + X2`, `Y2 = X1 + X2`.
pub fn noisy_direct_adder_ic(eps: f64) -> ChannelModel {
    ChannelModel::two_output(ChannelKind::Compound, [2, 2], [3, 3], |a, b, c, d| {
        let y1: f64 = (0..2).filter(|z| z + b == c).map(|z| bsc(a, z, eps)).sum();
        let y2 = if d == a + b { 1.0 } else { 0.0 };
        y1 * y2
    })
    .expect("valid channel")
}

/// Crossover `p <= 1/2` with binary entropy `h(p) = target`.
pub fn crossover_for_entropy(target: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, 0.5);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if entropy_bits(&[mid, 1.0 - mid]) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Independent uniform `S1`, `S2`; `W1 = BSC_e1(S2)`, `W2 = BSC_e2(S1)`.
/// Crossovers of 1/2 make the side information useless.
pub fn ic_source(e1: f64, e2: f64) -> JointPmf {
    JointPmf::from_fn(vec!["S1", "S2", "W1", "W2"], vec![2, 2, 2, 2], |a| {
        0.25 * bsc(a[1], a[2], e1) * bsc(a[0], a[3], e2)
    })
    .expect("valid pmf")
}

/// Independent bits with `P(Sk = 1) = p_k`.
pub fn biased_bits(p1: f64, p2: f64) -> JointPmf {
    JointPmf::from_fn(vec!["S1", "S2"], vec![2, 2], |a| bern(a[0], p1) * bern(a[1], p2))
        .expect("valid pmf")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::{structure_check, Pattern};

    #[test]
    fn catalog_models_are_valid() {
        assert!((cover_salehi().entropy(&["S1", "S2"]).unwrap() - 3f64.log2()).abs() < 1e-12);
        let m = cover_salehi_w1().marginal(&["S1", "S2"]).unwrap();
        assert!(m.table().iter().zip(cover_salehi().table()).all(|(a, b)| (a - b).abs() < 1e-15));
        assert_eq!(noisy_cross_adder_ic(0.1).receiver_count(), 2);
        assert_eq!(clean_pipes().kind(), ChannelKind::NoMai);
    }

    #[test]
    fn ic_source_structure() {
        let p = ic_source(0.05, 0.5);
        let a = structure_check(&p, &Pattern::independent(&["S1"], &["S2", "W1"])).unwrap();
        let b = structure_check(&p, &Pattern::independent(&["S2"], &["S1", "W2"])).unwrap();
        assert!(a.holds && b.holds);
        let q = crossover_for_entropy(0.8);
        let p = ic_source(0.5, q);
        assert!((p.mutual_info(&["S1"], &["W2"], &[]).unwrap() - 0.2).abs() < 1e-9);
    }
}
