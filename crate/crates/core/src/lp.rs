//! Dense two-phase simplex for the small linear programs that arise in
//! region membership (a handful of rows, up to a few thousand columns).

/// Constraint sense.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub cmp: Cmp,
    pub rhs: f64,
}

impl Constraint {
    pub fn new(coeffs: Vec<f64>, cmp: Cmp, rhs: f64) -> Self {
        Self { coeffs, cmp, rhs }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(self) -> Option<(Vec<f64>, f64)> {
        match self {
            LpOutcome::Optimal { x, value } => Some((x, value)),
            _ => None,
        }
    }
}

const EPS: f64 = 1e-11;
const FEAS_TOL: f64 = 1e-9;

struct Tableau {
    rows: usize,
    cols: usize,
    /// `rows + 1` rows of `cols + 1` entries; the last row is the objective,
    /// the last column the right-hand side.
    t: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn at(&self, r: usize, c: usize) -> f64 {
        self.t[r * (self.cols + 1) + c]
    }

    fn rhs(&self, r: usize) -> f64 {
        self.at(r, self.cols)
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let w = self.cols + 1;
        let inv = 1.0 / self.t[pr * w + pc];
        for c in 0..w {
            self.t[pr * w + c] *= inv;
        }
        let prow: Vec<f64> = self.t[pr * w..(pr + 1) * w].to_vec();
        for r in 0..=self.rows {
            if r == pr {
                continue;
            }
            let f = self.t[r * w + pc];
            if f.abs() > 0.0 {
                let row = &mut self.t[r * w..(r + 1) * w];
                for (v, p) in row.iter_mut().zip(&prow) {
                    *v -= f * p;
                }
                row[pc] = 0.0;
            }
        }
        self.basis[pr] = pc;
    }

    /// Maximizes the objective encoded in the last row (stored as `z - c x`).
    /// Columns at or beyond `allowed` never enter. Returns false on unboundedness.
    fn run(&mut self, allowed: usize) -> bool {
        let obj = self.rows;
        let max_iter = 50 * (self.rows + self.cols) + 1000;
        for iter in 0..max_iter {
            let bland = iter > 10 * (self.rows + self.cols);
            let mut enter = None;
            let mut best = -EPS;
            for c in 0..allowed {
                let v = self.at(obj, c);
                if v < best {
                    enter = Some(c);
                    if bland {
                        break;
                    }
                    best = v;
                }
            }
            let Some(pc) = enter else { return true };
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..self.rows {
                let a = self.at(r, pc);
                if a > EPS {
                    let ratio = self.rhs(r) / a;
                    match leave {
                        None => leave = Some((r, ratio)),
                        Some((lr, lratio)) => {
                            if ratio < lratio - 1e-12
                                || (ratio <= lratio + 1e-12 && self.basis[r] < self.basis[lr])
                            {
                                leave = Some((r, ratio));
                            }
                        }
                    }
                }
            }
            let Some((pr, _)) = leave else { return false };
            self.pivot(pr, pc);
        }
        true
    }
}

/// Maximizes `c·x` subject to the constraints and `x ≥ 0`.
pub fn maximize(c: &[f64], constraints: &[Constraint]) -> LpOutcome {
    let n = c.len();
    let m = constraints.len();
    // normalize to nonnegative right-hand sides
    let rows: Vec<(Vec<f64>, Cmp, f64)> = constraints
        .iter()
        .map(|k| {
            assert_eq!(k.coeffs.len(), n, "constraint width");
            if k.rhs < 0.0 {
                let flipped = match k.cmp {
                    Cmp::Le => Cmp::Ge,
                    Cmp::Ge => Cmp::Le,
                    Cmp::Eq => Cmp::Eq,
                };
                (k.coeffs.iter().map(|v| -v).collect(), flipped, -k.rhs)
            } else {
                (k.coeffs.clone(), k.cmp, k.rhs)
            }
        })
        .collect();
    let n_slack = rows.iter().filter(|r| r.1 != Cmp::Eq).count();
    let n_art = rows.iter().filter(|r| r.1 != Cmp::Le).count();
    let cols = n + n_slack + n_art;
    let w = cols + 1;
    let mut tab = Tableau { rows: m, cols, t: vec![0.0; (m + 1) * w], basis: vec![0; m] };
    let (mut si, mut ai) = (n, n + n_slack);
    for (r, (coeffs, cmp, rhs)) in rows.iter().enumerate() {
        tab.t[r * w..r * w + n].copy_from_slice(coeffs);
        tab.t[r * w + cols] = *rhs;
        match cmp {
            Cmp::Le => {
                tab.t[r * w + si] = 1.0;
                tab.basis[r] = si;
                si += 1;
            }
            Cmp::Ge => {
                tab.t[r * w + si] = -1.0;
                si += 1;
                tab.t[r * w + ai] = 1.0;
                tab.basis[r] = ai;
                ai += 1;
            }
            Cmp::Eq => {
                tab.t[r * w + ai] = 1.0;
                tab.basis[r] = ai;
                ai += 1;
            }
        }
    }
    let art_start = n + n_slack;

    if n_art > 0 {
        // phase 1: maximize -sum(artificials)
        for c in art_start..cols {
            tab.t[m * w + c] = 1.0;
        }
        for r in 0..m {
            if tab.basis[r] >= art_start {
                for c in 0..w {
                    tab.t[m * w + c] -= tab.t[r * w + c];
                }
            }
        }
        tab.run(cols);
        if -tab.rhs(m) > FEAS_TOL * (1.0 + rows.iter().map(|r| r.2).sum::<f64>()) {
            return LpOutcome::Infeasible;
        }
        // drive remaining artificials out of the basis where possible
        for r in 0..m {
            if tab.basis[r] >= art_start {
                if let Some(pc) = (0..art_start).find(|&c| tab.at(r, c).abs() > 1e-9) {
                    tab.pivot(r, pc);
                }
            }
        }
    }

    // phase 2
    for c in 0..w {
        tab.t[m * w + c] = 0.0;
    }
    for (j, &cj) in c.iter().enumerate() {
        tab.t[m * w + j] = -cj;
    }
    for r in 0..m {
        let b = tab.basis[r];
        let f = tab.t[m * w + b];
        if f != 0.0 {
            for col in 0..w {
                tab.t[m * w + col] -= f * tab.t[r * w + col];
            }
        }
    }
    if !tab.run(art_start) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![0.0; n];
    for r in 0..m {
        if tab.basis[r] < n {
            x[tab.basis[r]] = tab.rhs(r).max(0.0);
        }
    }
    let value = c.iter().zip(&x).map(|(a, b)| a * b).sum();
    LpOutcome::Optimal { x, value }
}

/// A point satisfying the constraints, if any.
pub fn feasible_point(n: usize, constraints: &[Constraint]) -> Option<Vec<f64>> {
    match maximize(&vec![0.0; n], constraints) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
        let cons = vec![
            Constraint::new(vec![1.0, 0.0], Cmp::Le, 4.0),
            Constraint::new(vec![0.0, 2.0], Cmp::Le, 12.0),
            Constraint::new(vec![3.0, 2.0], Cmp::Le, 18.0),
        ];
        let (x, v) = maximize(&[3.0, 5.0], &cons).optimal().unwrap();
        assert!((v - 36.0).abs() < 1e-9);
        assert!((x[0] - 2.0).abs() < 1e-9 && (x[1] - 6.0).abs() < 1e-9);
    }

    #[test]
    fn equality_and_ge_rows() {
        // min x + y (max -x - y), x + y >= 2, x - y = 0 -> value -2
        let cons = vec![
            Constraint::new(vec![1.0, 1.0], Cmp::Ge, 2.0),
            Constraint::new(vec![1.0, -1.0], Cmp::Eq, 0.0),
        ];
        let (_, v) = maximize(&[-1.0, -1.0], &cons).optimal().unwrap();
        assert!((v + 2.0).abs() < 1e-9);
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let cons = vec![
            Constraint::new(vec![1.0], Cmp::Le, 1.0),
            Constraint::new(vec![1.0], Cmp::Ge, 2.0),
        ];
        assert_eq!(maximize(&[1.0], &cons), LpOutcome::Infeasible);
        let cons = vec![Constraint::new(vec![1.0, -1.0], Cmp::Le, 1.0)];
        assert_eq!(maximize(&[1.0, 0.0], &cons), LpOutcome::Unbounded);
    }

    #[test]
    fn negative_rhs_is_normalized() {
        // -x <= -3 means x >= 3; minimize x
        let cons = vec![Constraint::new(vec![-1.0], Cmp::Le, -3.0)];
        let (x, _) = maximize(&[-1.0], &cons).optimal().unwrap();
        assert!((x[0] - 3.0).abs() < 1e-9);
    }

    #[test]
    fn degenerate_convex_combination() {
        // many duplicate points; find lambda on the simplex reaching (1, 1)
        let pts = [[2.0, 0.0], [0.0, 2.0], [2.0, 0.0], [1.0, 1.0], [0.0, 2.0]];
        let mut cons = vec![Constraint::new(vec![1.0; pts.len()], Cmp::Eq, 1.0)];
        for j in 0..2 {
            cons.push(Constraint::new(pts.iter().map(|p| p[j]).collect(), Cmp::Ge, 1.0));
        }
        let x = feasible_point(pts.len(), &cons).unwrap();
        assert!((x.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        cons[1].rhs = 1.5;
        cons[2].rhs = 1.5;
        assert!(feasible_point(pts.len(), &cons).is_none());
    }
}
