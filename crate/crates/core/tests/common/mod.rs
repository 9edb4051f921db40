//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the region or criteria code paths.
#![allow(dead_code)]

use std::path::PathBuf;

pub fn model_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/models").join(name)
}

pub fn h(p: &[f64]) -> f64 {
    p.iter().filter(|&&v| v > 0.0).map(|&v| -v * v.log2()).sum()
}

/// `[I(X1;Y|X2), I(X2;Y|X1), I(X1,X2;Y)]` for binary inputs with
/// `P(X1=1) = a`, `P(X2=1) = b`; `law[(x1*2 + x2) * ny + y]`.
pub fn binary_mac_rates(law: &[f64], ny: usize, a: f64, b: f64) -> [f64; 3] {
    let px1 = [1.0 - a, a];
    let px2 = [1.0 - b, b];
    let row = |x1: usize, x2: usize| &law[(x1 * 2 + x2) * ny..(x1 * 2 + x2 + 1) * ny];
    let mut h_y_x1x2 = 0.0;
    let mut py = vec![0.0; ny];
    let mut h_y_x2 = 0.0;
    let mut h_y_x1 = 0.0;
    for x1 in 0..2 {
        for x2 in 0..2 {
            h_y_x1x2 += px1[x1] * px2[x2] * h(row(x1, x2));
        }
    }
    for x2 in 0..2 {
        let mix: Vec<f64> = (0..ny).map(|y| (0..2).map(|x1| px1[x1] * row(x1, x2)[y]).sum()).collect();
        h_y_x2 += px2[x2] * h(&mix);
    }
    for x1 in 0..2 {
        let mix: Vec<f64> = (0..ny).map(|y| (0..2).map(|x2| px2[x2] * row(x1, x2)[y]).sum()).collect();
        h_y_x1 += px1[x1] * h(&mix);
    }
    for x1 in 0..2 {
        for x2 in 0..2 {
            for y in 0..ny {
                py[y] += px1[x1] * px2[x2] * row(x1, x2)[y];
            }
        }
    }
    [h_y_x2 - h_y_x1x2, h_y_x1 - h_y_x1x2, h(&py) - h_y_x1x2]
}

/// Rate points on the `steps x steps` product grid.
pub fn grid_points(law: &[f64], ny: usize, steps: usize) -> Vec<[f64; 3]> {
    let mut out = Vec::with_capacity((steps + 1) * (steps + 1));
    for i in 0..=steps {
        for j in 0..=steps {
            out.push(binary_mac_rates(law, ny, i as f64 / steps as f64, j as f64 / steps as f64));
        }
    }
    out
}

fn ratio(pts: &[[f64; 3]], hv: [f64; 3], lam: [f64; 3]) -> f64 {
    let num = lam[0] * hv[0] + lam[1] * hv[1] + lam[2] * hv[2];
    let sigma = pts.iter().map(|r| lam[0] * r[0] + lam[1] * r[1] + lam[2] * r[2]).fold(0.0, f64::max);
    if num <= 0.0 {
        0.0
    } else if sigma <= 0.0 {
        f64::INFINITY
    } else {
        num / sigma
    }
}

fn ternary_max(mut lo: f64, mut hi: f64, iters: usize, f: &dyn Fn(f64) -> f64) -> f64 {
    for _ in 0..iters {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) < f(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    f(0.5 * (lo + hi))
}

/// Smallest `b` with `hv` in `b` times the convex, down-closed hull of
/// `pts`, via `max over lambda >= 0` of `lambda.h / sigma(lambda)`. The
/// ratio is quasi-concave in `lambda`, so nested ternary search applies; a
/// coarse grid guards against flat stretches.
pub fn dual_min_scale(pts: &[[f64; 3]], hv: [f64; 3], iters: usize) -> f64 {
    let f = |u: f64, v: f64| ratio(pts, hv, [u, v, (1.0 - u - v).max(0.0)]);
    let mut best: f64 = 0.0;
    let coarse = 10;
    for i in 0..=coarse {
        for j in 0..=coarse - i {
            best = best.max(f(i as f64 / coarse as f64, j as f64 / coarse as f64));
        }
    }
    let g = |u: f64| ternary_max(0.0, 1.0 - u, iters, &|v| f(u, v));
    best.max(ternary_max(0.0, 1.0, iters, &g))
}
