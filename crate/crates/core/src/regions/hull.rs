use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::scale::supporting_direction;
use super::{EntropyVector, RateVector};
use crate::lp::{feasible_point, Cmp, Constraint};
use crate::optimize::{coordinate_ascent, random_simplex, simplex_grid, simplex_grid_count, steps_for, AscentConfig};
use crate::prob::{product_rates, ChannelKind, ChannelModel, ProductInput, ReceiverLaw};
use crate::{Error, Result};

/// A rate vector with the input pair that produced it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub rates: RateVector,
    pub p1: Vec<f64>,
    pub p2: Vec<f64>,
    /// Produced by local refinement rather than the grid.
    pub refined: bool,
}

#[derive(Clone, Debug)]
pub struct HullOptions {
    pub resolution: f64,
    pub refine: bool,
    pub cap: u128,
    pub refine_rounds: usize,
    pub random_directions: usize,
    pub seed: u64,
    /// Drop Pareto points lying under the convex hull of the others when
    /// there are at most this many.
    pub vertex_reduction_limit: usize,
}

impl Default for HullOptions {
    fn default() -> Self {
        Self {
            resolution: 0.05,
            refine: true,
            cap: 2_000_000,
            refine_rounds: 200,
            random_directions: 8,
            seed: 0x5eed,
            vertex_reduction_limit: 4000,
        }
    }
}

impl HullOptions {
    pub fn with_resolution(resolution: f64) -> Self {
        Self { resolution, ..Self::default() }
    }
}

/// Down-closed convex hull of rate vectors over product inputs. Time
/// sharing corresponds to convex combinations of the stored points.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegionHull {
    pub receivers: Vec<usize>,
    pub resolution: f64,
    pub evaluated: usize,
    pub points: Vec<Candidate>,
}

fn rates_for(laws: &[ReceiverLaw], p1: &[f64], p2: &[f64]) -> Vec<f64> {
    laws.iter().flat_map(|l| product_rates(l, p1, p2)).collect()
}

fn dominates(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x >= *y - 1e-12)
}

/// Keeps points not dominated componentwise by another point.
pub(crate) fn pareto_prune(mut pts: Vec<Candidate>) -> Vec<Candidate> {
    pts.sort_by(|a, b| {
        let (sa, sb) = (a.rates.0.iter().sum::<f64>(), b.rates.0.iter().sum::<f64>());
        sb.total_cmp(&sa)
    });
    let mut kept: Vec<Candidate> = Vec::new();
    for p in pts {
        if !kept.iter().any(|k| dominates(&k.rates.0, &p.rates.0)) {
            kept.push(p);
        }
    }
    kept
}

/// Removes points dominated by a convex combination of the remaining ones.
/// Sequential, so of two coincident points one survives.
fn vertex_reduce(pts: Vec<Candidate>) -> Vec<Candidate> {
    let n = pts.len();
    if n <= 2 {
        return pts;
    }
    let d = pts[0].rates.dim();
    let mut alive = vec![true; n];
    for i in 0..n {
        let others: Vec<usize> = (0..n).filter(|&k| k != i && alive[k]).collect();
        let mut cons = vec![Constraint::new(vec![1.0; others.len()], Cmp::Eq, 1.0)];
        for j in 0..d {
            cons.push(Constraint::new(
                others.iter().map(|&k| pts[k].rates.0[j]).collect(),
                Cmp::Ge,
                pts[i].rates.0[j] - 1e-10,
            ));
        }
        if feasible_point(others.len(), &cons).is_some() {
            alive[i] = false;
        }
    }
    pts.into_iter().zip(alive).filter(|(_, a)| *a).map(|(p, _)| p).collect()
}

/// Hull of the rate triples seen by the first `receivers` receivers.
pub fn achievable_hull(channel: &ChannelModel, receivers: usize, opts: &HullOptions) -> Result<RegionHull> {
    if receivers == 0 || receivers > 2 {
        return Err(Error::InvalidArgument(format!("receiver count must be 1 or 2, got {receivers}")));
    }
    if receivers > channel.receiver_count() {
        return Err(Error::UnsupportedChannel {
            kind: channel.kind().to_string(),
            operation: format!("a {receivers}-receiver region"),
        });
    }
    let list: Vec<usize> = (0..receivers).collect();
    achievable_hull_for(channel, &list, opts)
}

/// Hull of the concatenated rate triples of the listed receivers (0-based).
pub fn achievable_hull_for(channel: &ChannelModel, receivers: &[usize], opts: &HullOptions) -> Result<RegionHull> {
    if !(opts.resolution > 0.0 && opts.resolution <= 0.5) {
        return Err(Error::InvalidArgument(format!(
            "grid resolution must lie in (0, 0.5], got {}",
            opts.resolution
        )));
    }
    if channel.kind() == ChannelKind::Mac && receivers.iter().any(|&k| k > 0) {
        return Err(Error::UnsupportedChannel {
            kind: channel.kind().to_string(),
            operation: "a second receiver".into(),
        });
    }
    let laws: Vec<ReceiverLaw> = receivers.iter().map(|&k| channel.receiver_law(k)).collect::<Result<_>>()?;
    let [nx1, nx2] = channel.input_cards();
    let steps = steps_for(opts.resolution);
    let count = simplex_grid_count(nx1, steps) * simplex_grid_count(nx2, steps);
    if count > opts.cap {
        return Err(Error::CapExceeded { what: "hull grid candidates".into(), count, cap: opts.cap });
    }
    let g1 = simplex_grid(nx1, steps);
    let g2 = simplex_grid(nx2, steps);
    let evaluated = g1.len() * g2.len();
    let grid: Vec<Candidate> = g1
        .par_iter()
        .flat_map_iter(|p1| {
            let laws = &laws;
            g2.iter().map(move |p2| Candidate {
                rates: RateVector(rates_for(laws, p1, p2)),
                p1: p1.clone(),
                p2: p2.clone(),
                refined: false,
            })
        })
        .collect();
    let mut points = pareto_prune(grid);

    if opts.refine {
        let extra = refine(&laws, &points, opts);
        points.extend(extra);
        points = pareto_prune(points);
    }
    if points.len() <= opts.vertex_reduction_limit {
        points = vertex_reduce(points);
    }
    Ok(RegionHull { receivers: receivers.to_vec(), resolution: opts.resolution, evaluated, points })
}

fn directions(d: usize, opts: &HullOptions) -> Vec<Vec<f64>> {
    let mut dirs = Vec::new();
    for i in 0..d {
        let mut w = vec![0.0; d];
        w[i] = 1.0;
        dirs.push(w);
    }
    for i in 0..d {
        for j in i + 1..d {
            let mut w = vec![0.0; d];
            w[i] = 1.0;
            w[j] = 1.0;
            dirs.push(w);
        }
    }
    dirs.push(vec![1.0; d]);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.random_directions {
        dirs.push(random_simplex(&mut rng, d));
    }
    dirs
}

/// Local ascent of `w . rates` from the best grid point, for a set of
/// weight directions.
fn refine(laws: &[ReceiverLaw], points: &[Candidate], opts: &HullOptions) -> Vec<Candidate> {
    if points.is_empty() {
        return Vec::new();
    }
    let d = points[0].rates.dim();
    let cfg = AscentConfig {
        max_rounds: opts.refine_rounds,
        initial_step: opts.resolution * 0.5,
        ..AscentConfig::default()
    };
    directions(d, opts)
        .into_par_iter()
        .map(|w| {
            let score = |r: &[f64]| r.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>();
            let start = points
                .iter()
                .max_by(|a, b| score(&a.rates.0).total_cmp(&score(&b.rates.0)))
                .expect("non-empty");
            let (x, _) = coordinate_ascent(
                vec![start.p1.clone(), start.p2.clone()],
                |x| score(&rates_for(laws, &x[0], &x[1])),
                cfg,
            );
            Candidate {
                rates: RateVector(rates_for(laws, &x[0], &x[1])),
                p1: x[0].clone(),
                p2: x[1].clone(),
                refined: true,
            }
        })
        .collect()
}

/// Column generation toward a requirement: repeatedly maximizes `y . rates`
/// along the current supporting direction `y` of `h` and adds the result,
/// until the minimum scale stops improving. Returns the number of points added.
pub fn refine_toward(
    hull: &mut RegionHull,
    channel: &ChannelModel,
    h: &EntropyVector,
    opts: &HullOptions,
) -> Result<usize> {
    if !opts.refine || h.0.iter().all(|&v| v <= 1e-12) {
        return Ok(0);
    }
    let laws: Vec<ReceiverLaw> = hull.receivers.iter().map(|&k| channel.receiver_law(k)).collect::<Result<_>>()?;
    let cfg = AscentConfig { max_rounds: opts.refine_rounds, initial_step: opts.resolution * 0.5, min_step: 1e-9 };
    let mut added = 0;
    let mut last = f64::NEG_INFINITY;
    for _ in 0..TARGET_ROUNDS {
        let y = supporting_direction(hull, h)?;
        let score = |r: &[f64]| r.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>();
        let support = hull.points.iter().map(|p| score(&p.rates.0)).fold(f64::NEG_INFINITY, f64::max);
        // start from the few best points; the objective need not be concave
        let mut order: Vec<usize> = (0..hull.len()).collect();
        order.sort_by(|&a, &b| score(&hull.points[b].rates.0).total_cmp(&score(&hull.points[a].rates.0)));
        let found: Vec<Candidate> = order
            .iter()
            .take(TARGET_STARTS)
            .map(|&i| {
                let start = &hull.points[i];
                let (x, _) = coordinate_ascent(
                    vec![start.p1.clone(), start.p2.clone()],
                    |x| score(&rates_for(&laws, &x[0], &x[1])),
                    cfg,
                );
                Candidate { rates: RateVector(rates_for(&laws, &x[0], &x[1])), p1: x[0].clone(), p2: x[1].clone(), refined: true }
            })
            .collect();
        let best = found.iter().map(|c| score(&c.rates.0)).fold(f64::NEG_INFINITY, f64::max);
        if best <= support * (1.0 + 1e-10) || support <= last * (1.0 + 1e-10) {
            break;
        }
        last = support;
        added += found.len();
        hull.points.extend(found);
    }
    if added > 0 {
        let points = pareto_prune(std::mem::take(&mut hull.points));
        hull.points = if points.len() <= opts.vertex_reduction_limit { vertex_reduce(points) } else { points };
    }
    Ok(added)
}

const TARGET_ROUNDS: usize = 40;
const TARGET_STARTS: usize = 3;

impl RegionHull {
    pub fn dim(&self) -> usize {
        3 * self.receivers.len()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Largest value of component `j` over the region.
    pub fn max_component(&self, j: usize) -> f64 {
        self.points.iter().map(|p| p.rates.0[j]).fold(0.0, f64::max)
    }

    /// Whether `v` lies in the down-closed convex hull (within `1e-9`).
    pub fn contains(&self, v: &[f64]) -> bool {
        if v.iter().all(|&x| x <= 1e-12) {
            return true;
        }
        let n = self.points.len();
        let mut cons = vec![Constraint::new(vec![1.0; n], Cmp::Eq, 1.0)];
        for (j, &vj) in v.iter().enumerate() {
            cons.push(Constraint::new(self.points.iter().map(|p| p.rates.0[j]).collect(), Cmp::Ge, vj - 1e-9));
        }
        feasible_point(n, &cons).is_some()
    }

    /// Time-sharing input placing weight `weights[i]` on point `support[i]`.
    pub fn mixture(&self, support: &[usize], weights: &[f64]) -> Result<ProductInput> {
        let total: f64 = weights.iter().sum();
        ProductInput::new(
            weights.iter().map(|w| w / total).collect(),
            support.iter().map(|&i| self.points[i].p1.clone()).collect(),
            support.iter().map(|&i| self.points[i].p2.clone()).collect(),
        )
    }

    pub fn csv_header(&self) -> Vec<String> {
        let mut h = Vec::new();
        for &k in &self.receivers {
            for c in ["i1", "i2", "isum"] {
                h.push(format!("rx{}_{c}", k + 1));
            }
        }
        if let Some(p) = self.points.first() {
            h.extend((0..p.p1.len()).map(|i| format!("p_x1_{i}")));
            h.extend((0..p.p2.len()).map(|i| format!("p_x2_{i}")));
        }
        h.push("refined".into());
        h
    }

    /// One row per hull point: rate components, then the generating input
    /// pair, then whether the point came from refinement.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(self.csv_header())?;
        for p in &self.points {
            let mut row: Vec<String> = p.rates.0.iter().map(|v| format!("{v:.6}")).collect();
            row.extend(p.p1.iter().chain(&p.p2).map(|v| format!("{v:.6}")));
            row.push(p.refined.to_string());
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn adder_sum_rate() {
        let h = achievable_hull(&catalog::adder_mac(), 1, &HullOptions::default()).unwrap();
        assert!((h.max_component(2) - 1.5).abs() < 0.01);
        assert!((h.max_component(0) - 1.0).abs() < 1e-9);
        assert!(h.contains(&[1.0, 0.5, 1.5]));
        assert!(!h.contains(&[1.0, 1.0, 1.6]));
    }

    #[test]
    fn constant_channel_collapses_to_origin() {
        let h = achievable_hull(&catalog::constant_mac(), 1, &HullOptions::default()).unwrap();
        assert_eq!(h.len(), 1);
        assert!(h.points[0].rates.0.iter().all(|&v| v.abs() < 1e-12));
    }

    #[test]
    fn rejects_bad_options() {
        let ch = catalog::adder_mac();
        assert!(achievable_hull(&ch, 2, &HullOptions::default()).is_err());
        assert!(achievable_hull(&ch, 1, &HullOptions::with_resolution(0.0)).is_err());
        let opts = HullOptions { cap: 10, ..HullOptions::default() };
        assert!(matches!(achievable_hull(&ch, 1, &opts), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn csv_dump_has_documented_header() {
        let h = achievable_hull(&catalog::adder_mac(), 1, &HullOptions::with_resolution(0.25)).unwrap();
        let mut buf = Vec::new();
        h.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("rx1_i1,rx1_i2,rx1_isum,p_x1_0,p_x1_1,p_x2_0,p_x2_1,refined\n"));
        assert_eq!(text.lines().count(), h.len() + 1);
    }
}
