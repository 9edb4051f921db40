use serde::{Deserialize, Serialize};

use super::{EntropyVector, RegionHull};
use crate::lp::{feasible_point, maximize, Cmp, Constraint, LpOutcome};
use crate::prob::{ProductInput, DEFAULT_MAX_Q};
use crate::{Error, Result};

/// Default bisection tolerance on `b`.
pub const DEFAULT_BISECTION_TOL: f64 = 1e-4;

const ZERO: f64 = 1e-12;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScaleSolution {
    /// Infimum of achievable `b` (closure of the strict conditions).
    pub b_min: f64,
    /// The same quantity from a single linear program maximizing `1/b`.
    pub b_direct: f64,
    pub witness: ProductInput,
    /// Rate vector of the witness mixture.
    pub witness_rates: Vec<f64>,
    /// Hull point indices and weights of the witness.
    pub support: Vec<usize>,
    pub weights: Vec<f64>,
    /// Whether the witness honors the time-sharing bound `|Q| <= 4`.
    pub q_bound_met: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MarginSolution {
    /// `max over mixtures of min_j (b v_j - h_j)`.
    pub margin: f64,
    pub witness: ProductInput,
    pub witness_rates: Vec<f64>,
}

fn positive_components(h: &EntropyVector) -> Vec<usize> {
    (0..h.dim()).filter(|&j| h.0[j] > ZERO).collect()
}

fn check_dims(hull: &RegionHull, h: &EntropyVector) -> Result<()> {
    if hull.dim() != h.dim() {
        return Err(Error::DimensionMismatch(format!(
            "entropy vector has {} components, region has {}",
            h.dim(),
            hull.dim()
        )));
    }
    if h.0.iter().any(|v| !v.is_finite() || *v < -1e-9) {
        return Err(Error::InvalidArgument("entropy components must be nonnegative".into()));
    }
    if hull.is_empty() {
        return Err(Error::InvalidArgument("region has no points".into()));
    }
    Ok(())
}

/// Mixture weights over `subset` with `b * sum(lambda v_j) >= h_j` on `active`.
fn feasible_on(hull: &RegionHull, subset: &[usize], h: &EntropyVector, active: &[usize], b: f64) -> Option<Vec<f64>> {
    let n = subset.len();
    let mut cons = vec![Constraint::new(vec![1.0; n], Cmp::Eq, 1.0)];
    for &j in active {
        cons.push(Constraint::new(
            subset.iter().map(|&i| hull.points[i].rates.0[j]).collect(),
            Cmp::Ge,
            h.0[j] / b,
        ));
    }
    feasible_point(n, &cons)
}

fn mixture_rates(hull: &RegionHull, support: &[usize], weights: &[f64]) -> Vec<f64> {
    let mut v = vec![0.0; hull.dim()];
    for (&i, &w) in support.iter().zip(weights) {
        for (a, r) in v.iter_mut().zip(&hull.points[i].rates.0) {
            *a += w * r;
        }
    }
    v
}

fn sparse(lambda: &[f64], subset: &[usize]) -> (Vec<usize>, Vec<f64>) {
    let mut s = Vec::new();
    let mut w = Vec::new();
    for (k, &l) in lambda.iter().enumerate() {
        if l > 1e-12 {
            s.push(subset[k]);
            w.push(l);
        }
    }
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    (s, w)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Smallest `b` such that `b v >= h` for some mixture `v` of hull points.
///
/// Bisection on `b` with a feasibility program at each step; a second
/// program maximizing `t = 1/b` directly is solved as a cross-check and
/// reported in `b_direct`.
pub fn min_scale_b(hull: &RegionHull, h: &EntropyVector, tol: f64) -> Result<ScaleSolution> {
    check_dims(hull, h)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let active = positive_components(h);
    let all: Vec<usize> = (0..hull.len()).collect();
    if active.is_empty() {
        let best = (0..hull.len())
            .max_by(|&a, &b| {
                let s = |i: usize| hull.points[i].rates.0.iter().sum::<f64>();
                s(a).total_cmp(&s(b))
            })
            .expect("non-empty");
        return Ok(ScaleSolution {
            b_min: 0.0,
            b_direct: 0.0,
            witness: hull.mixture(&[best], &[1.0])?,
            witness_rates: hull.points[best].rates.0.clone(),
            support: vec![best],
            weights: vec![1.0],
            q_bound_met: true,
        });
    }
    let mut per_component_max = Vec::new();
    for &j in &active {
        let m = hull.max_component(j);
        if m <= ZERO {
            return Err(Error::Unachievable(format!(
                "requirement component {} is {:.6} but the region is zero in that direction",
                j + 1,
                h.0[j]
            )));
        }
        per_component_max.push(m);
    }

    // mixing the per-component maximizers uniformly is always feasible here
    let mut hi = active.len() as f64
        * active.iter().zip(&per_component_max).map(|(&j, m)| h.0[j] / m).fold(0.0, f64::max);
    let mut lo = 0.0;
    let mut lambda = feasible_on(hull, &all, h, &active, hi)
        .ok_or_else(|| Error::InvalidArgument("initial bracket infeasible".into()))?;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        match feasible_on(hull, &all, h, &active, mid) {
            Some(l) => {
                hi = mid;
                lambda = l;
            }
            None => lo = mid,
        }
    }
    let b_min = hi;
    let b_direct = direct_b(hull, h, &active);

    let (mut support, mut weights) = sparse(&lambda, &all);
    let mut q_bound_met = support.len() <= DEFAULT_MAX_Q;
    if !q_bound_met {
        'search: for k in 1..=DEFAULT_MAX_Q {
            for combo in combinations(support.len(), k) {
                let subset: Vec<usize> = combo.iter().map(|&c| support[c]).collect();
                if let Some(l) = feasible_on(hull, &subset, h, &active, b_min * (1.0 + 1e-9)) {
                    let (s, w) = sparse(&l, &subset);
                    support = s;
                    weights = w;
                    q_bound_met = true;
                    break 'search;
                }
            }
        }
    }
    Ok(ScaleSolution {
        b_min,
        b_direct,
        witness: hull.mixture(&support, &weights)?,
        witness_rates: mixture_rates(hull, &support, &weights),
        support,
        weights,
        q_bound_met,
    })
}

/// `max t` subject to `sum(lambda v_j) >= t h_j`; returns `1 / t`.
fn direct_b(hull: &RegionHull, h: &EntropyVector, active: &[usize]) -> f64 {
    let n = hull.len();
    let mut simplex = vec![1.0; n];
    simplex.push(0.0);
    let mut cons = vec![Constraint::new(simplex, Cmp::Eq, 1.0)];
    for &j in active {
        let mut row: Vec<f64> = hull.points.iter().map(|p| p.rates.0[j]).collect();
        row.push(-h.0[j]);
        cons.push(Constraint::new(row, Cmp::Ge, 0.0));
    }
    let mut c = vec![0.0; n];
    c.push(1.0);
    match maximize(&c, &cons) {
        LpOutcome::Optimal { value, .. } if value > 0.0 => 1.0 / value,
        _ => f64::INFINITY,
    }
}

/// Normal `y >= 0` with `y . h = 1` of a hyperplane supporting the hull
/// where the ray through `h` leaves it: minimizes `max_i y . v_i`, whose
/// optimum equals `1 / b_min`.
pub fn supporting_direction(hull: &RegionHull, h: &EntropyVector) -> Result<Vec<f64>> {
    check_dims(hull, h)?;
    let d = h.dim();
    // variables: y (d), s
    let mut cons = Vec::with_capacity(hull.len() + 1);
    let mut norm = h.0.clone();
    norm.push(0.0);
    cons.push(Constraint::new(norm, Cmp::Eq, 1.0));
    for p in &hull.points {
        let mut row: Vec<f64> = p.rates.0.iter().map(|v| -v).collect();
        row.push(1.0);
        cons.push(Constraint::new(row, Cmp::Ge, 0.0));
    }
    let mut c = vec![0.0; d];
    c.push(-1.0);
    let (x, _) = maximize(&c, &cons)
        .optimal()
        .ok_or_else(|| Error::InvalidArgument("supporting hyperplane program failed".into()))?;
    Ok(x[..d].to_vec())
}

/// Best worst-case slack `min_j (b v_j - h_j)` over mixtures, with its witness.
/// Nondecreasing in `b`; zero at `b_min`.
pub fn margin_at(hull: &RegionHull, h: &EntropyVector, b: f64) -> Result<MarginSolution> {
    check_dims(hull, h)?;
    let n = hull.len();
    // variables: lambda (n), s_plus, s_minus
    let mut simplex = vec![1.0; n];
    simplex.extend([0.0, 0.0]);
    let mut cons = vec![Constraint::new(simplex, Cmp::Eq, 1.0)];
    for j in 0..h.dim() {
        let mut row: Vec<f64> = hull.points.iter().map(|p| b * p.rates.0[j]).collect();
        row.extend([-1.0, 1.0]);
        cons.push(Constraint::new(row, Cmp::Ge, h.0[j]));
    }
    let mut c = vec![0.0; n];
    c.extend([1.0, -1.0]);
    let (x, value) = maximize(&c, &cons)
        .optimal()
        .ok_or_else(|| Error::InvalidArgument("margin program failed".into()))?;
    let all: Vec<usize> = (0..n).collect();
    let (support, weights) = sparse(&x[..n], &all);
    Ok(MarginSolution {
        margin: value,
        witness: hull.mixture(&support, &weights)?,
        witness_rates: mixture_rates(hull, &support, &weights),
    })
}
