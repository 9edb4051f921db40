use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::SearchOptions;
use crate::optimize::{coordinate_ascent, random_simplex, simplex_grid, simplex_grid_count, steps_for, AscentConfig};

pub(crate) struct SearchOutcome {
    pub point: Vec<Vec<f64>>,
    pub value: f64,
    pub evaluated: usize,
    pub steps: usize,
}

/// Largest per-block grid resolution whose product grid fits the budget.
pub(crate) fn grid_steps(dims: &[usize], opts: &SearchOptions) -> usize {
    let mut steps = steps_for(opts.resolution);
    while steps > 1 {
        let count = dims.iter().map(|&d| simplex_grid_count(d, steps)).product::<u128>();
        if count <= opts.max_grid {
            break;
        }
        steps -= 1;
    }
    steps
}

/// Maximizes `f` over a product of simplices of the given dimensions:
/// exhaustive product grid, then coordinate ascent from the best grid points
/// and from seeded random starts.
pub(crate) fn maximize_over_blocks<F>(dims: &[usize], f: F, opts: &SearchOptions) -> SearchOutcome
where
    F: Fn(&[Vec<f64>]) -> f64 + Sync,
{
    let steps = grid_steps(dims, opts);
    let grids: Vec<Vec<Vec<f64>>> = dims.iter().map(|&d| simplex_grid(d, steps)).collect();
    let total: usize = grids.iter().map(Vec::len).product();
    let decode = |mut idx: usize| -> Vec<Vec<f64>> {
        let mut out = vec![Vec::new(); grids.len()];
        for (b, g) in grids.iter().enumerate().rev() {
            out[b] = g[idx % g.len()].clone();
            idx /= g.len();
        }
        out
    };
    let top = 4usize;
    let mut scored: Vec<(f64, usize)> = (0..total)
        .into_par_iter()
        .map(|i| (f(&decode(i)), i))
        .filter(|(v, _)| !v.is_nan())
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let starts: Vec<Vec<Vec<f64>>> = scored.iter().take(top).map(|&(_, i)| decode(i)).collect();
    let (point, value) = ascend_from(dims, starts, &f, opts, 0.5 / steps as f64);
    SearchOutcome { point, value, evaluated: total, steps }
}

/// Coordinate ascent from the given starts plus seeded random starts.
pub(crate) fn ascend_from<F>(dims: &[usize], starts: Vec<Vec<Vec<f64>>>, f: F, opts: &SearchOptions, step: f64) -> (Vec<Vec<f64>>, f64)
where
    F: Fn(&[Vec<f64>]) -> f64 + Sync,
{
    let mut starts = starts;
    for r in 0..opts.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(r as u64 + 1);
        starts.push(dims.iter().map(|&d| random_simplex(&mut rng, d)).collect());
    }
    let cfg = AscentConfig { max_rounds: opts.rounds, initial_step: step, ..AscentConfig::default() };
    starts
        .into_par_iter()
        .map(|s| coordinate_ascent(s, &f, cfg))
        .collect::<Vec<_>>()
        .into_iter()
        .fold(None::<(Vec<Vec<f64>>, f64)>, |acc, (p, v)| match acc {
            Some((_, bv)) if bv >= v => acc,
            _ => Some((p, v)),
        })
        .expect("at least one start")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_interior_maximum() {
        let opts = SearchOptions::default();
        let out = maximize_over_blocks(
            &[2, 3],
            |x| -(x[0][0] - 0.3).powi(2) - (x[1][2] - 0.55).powi(2),
            &opts,
        );
        assert!(out.value > -1e-10);
        assert!((out.point[0][0] - 0.3).abs() < 1e-4);
    }

    #[test]
    fn budget_limits_grid() {
        let opts = SearchOptions { max_grid: 1000, ..SearchOptions::default() };
        let s = grid_steps(&[2, 2, 2, 2], &opts);
        assert!(((s + 1) as u128).pow(4) <= 1000);
    }
}
