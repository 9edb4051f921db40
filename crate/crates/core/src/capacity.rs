//! Single-user channel capacity by Blahut–Arimoto iteration.

use crate::prob::{entropy_bits, ChannelModel, ReceiverLaw};
use crate::Result;

#[derive(Clone, Debug, PartialEq)]
pub struct Capacity {
    /// Lower end of the final bracket, in bits.
    pub capacity: f64,
    /// Width of the final bracket `max_x D(W(.|x) || q) - I(p)`.
    pub gap: f64,
    pub input: Vec<f64>,
    pub iterations: usize,
}

fn divergences(rows: &[&[f64]], p: &[f64], q: &mut [f64]) -> Vec<f64> {
    q.iter_mut().for_each(|v| *v = 0.0);
    for (row, &px) in rows.iter().zip(p) {
        for (qy, &w) in q.iter_mut().zip(row.iter()) {
            *qy += px * w;
        }
    }
    rows.iter()
        .map(|row| {
            row.iter()
                .zip(q.iter())
                .filter(|(&w, _)| w > 0.0)
                .map(|(&w, &qy)| w * (w / qy).log2())
                .sum::<f64>()
        })
        .collect()
}

/// Capacity of the channel whose transition rows are `rows[x][y]`.
pub fn blahut_arimoto(rows: &[&[f64]], tol: f64, max_iter: usize) -> Capacity {
    let nx = rows.len();
    let ny = rows.first().map_or(0, |r| r.len());
    let mut p = vec![1.0 / nx as f64; nx];
    let mut q = vec![0.0; ny];
    let mut it = 0;
    loop {
        let d = divergences(rows, &p, &mut q);
        let lower: f64 = p.iter().zip(&d).map(|(a, b)| a * b).sum();
        let upper = d.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if upper - lower < tol || it >= max_iter {
            return Capacity { capacity: lower.max(0.0), gap: upper - lower, input: p, iterations: it };
        }
        let mut z = 0.0;
        for (px, dx) in p.iter_mut().zip(&d) {
            *px *= dx.exp2();
            z += *px;
        }
        p.iter_mut().for_each(|v| *v /= z);
        it += 1;
    }
}

/// `max over joint p(x1, x2)` of `I(X1, X2; Yk)`: the channel seen by
/// fully cooperating transmitters.
pub fn cooperative_capacity(channel: &ChannelModel, receiver: usize) -> Result<Capacity> {
    let law = channel.receiver_law(receiver)?;
    Ok(cooperative_capacity_of(&law))
}

pub fn cooperative_capacity_of(law: &ReceiverLaw) -> Capacity {
    let rows: Vec<&[f64]> = (0..law.nx1)
        .flat_map(|a| (0..law.nx2).map(move |b| (a, b)))
        .map(|(a, b)| law.row(a, b))
        .collect();
    blahut_arimoto(&rows, 1e-10, 100_000)
}

/// Mutual information `I(X; Y)` for input `p` over `rows`.
pub fn mutual_information(rows: &[&[f64]], p: &[f64]) -> f64 {
    let ny = rows.first().map_or(0, |r| r.len());
    let mut q = vec![0.0; ny];
    let mut h_cond = 0.0;
    for (row, &px) in rows.iter().zip(p) {
        h_cond += px * entropy_bits(row);
        for (qy, &w) in q.iter_mut().zip(row.iter()) {
            *qy += px * w;
        }
    }
    (entropy_bits(&q) - h_cond).max(0.0)
}
