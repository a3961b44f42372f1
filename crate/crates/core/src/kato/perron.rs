//! The dominant eigenvalue of a hyperbolic Kato matrix and its positive
//! right and left eigenvectors.
//!
//! A suitable power `M = A^(m0 * ord s)` fixes every column in `P(A)` and is
//! strictly positive on the complement, so after reordering
//! `M = [[I, Q], [0, B]]` with `B` positive. The Perron vector of `B` is found
//! by power iteration (polished with a few inverse-iteration steps), extended
//! to all of `Z^n` through the `I` block, and the eigenvalue of `A` itself is
//! then bracketed by Collatz-Wielandt bounds.

use serde::Serialize;

use super::{KatoMatrix, KatoType};

/// Residual tolerance guaranteed by [`perron`].
pub const RESIDUAL_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerronVectors {
    pub alpha: f64,
    /// Half-width of the Collatz-Wielandt bracket around `alpha`.
    pub alpha_error: f64,
    /// Right eigenvector, positive, with `max_i f_i = 1`.
    pub f: Vec<f64>,
    /// Left eigenvector, zero on `P(A)`, with `<f*, f> = 1`.
    pub f_star: Vec<f64>,
    pub right_residual: f64,
    pub left_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum PerronData {
    Hyperbolic(PerronVectors),
    /// `P(A)^c = {index}`; the relevant half-space is `e_index^* > 0`.
    Parabolic { index: usize },
    Hopf,
}

impl PerronData {
    pub fn vectors(&self) -> Option<&PerronVectors> {
        match self {
            PerronData::Hyperbolic(v) => Some(v),
            _ => None,
        }
    }
}

pub fn perron(k: &KatoMatrix) -> PerronData {
    match k.kind() {
        KatoType::Hopf => PerronData::Hopf,
        KatoType::Parabolic => PerronData::Parabolic { index: k.complement()[0] },
        KatoType::Hyperbolic => PerronData::Hyperbolic(hyperbolic(k)),
    }
}

fn hyperbolic(k: &KatoMatrix) -> PerronVectors {
    let n = k.dim();
    let p = k.pa().to_vec();
    let q = k.complement();
    let power = k.m0() as u64 * k.order_of_s();
    let m = k.matrix().pow(power).to_f64();
    let b: Vec<Vec<f64>> = q.iter().map(|&i| q.iter().map(|&j| m[i][j]).collect()).collect();
    let bt = transpose(&b);

    let (alpha_m, f_b) = dominant(&b);
    let (_, g_b) = dominant(&bt);

    let mut f = vec![0.0; n];
    for (bi, &i) in q.iter().enumerate() {
        f[i] = f_b[bi];
    }
    // Rows in P: f_P = Q f_B / (alpha_M - 1).
    for &i in &p {
        let s: f64 = q.iter().enumerate().map(|(bj, &j)| m[i][j] * f_b[bj]).sum();
        f[i] = s / (alpha_m - 1.0);
    }
    let mut f_star = vec![0.0; n];
    for (bi, &i) in q.iter().enumerate() {
        f_star[i] = g_b[bi];
    }

    let a = k.matrix().to_f64();
    let at = transpose(&a);
    // A few plain iterations with A settle rounding from the power step.
    for _ in 0..8 {
        f = normalize_max(&mat_vec(&a, &f));
        let g = mat_vec(&at, &f_star);
        f_star = normalize_max(&g);
    }
    for &i in &p {
        f_star[i] = 0.0;
    }

    let af = mat_vec(&a, &f);
    let ratios: Vec<f64> = af.iter().zip(&f).map(|(x, y)| x / y).collect();
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let alpha = 0.5 * (lo + hi);
    let alpha_error = (0.5 * (hi - lo)).max(alpha * f64::EPSILON);

    let pairing: f64 = f_star.iter().zip(&f).map(|(x, y)| x * y).sum();
    for x in f_star.iter_mut() {
        *x /= pairing;
    }
    let right_residual = sup_dist(&mat_vec(&a, &f), &f.iter().map(|x| alpha * x).collect::<Vec<_>>());
    let left_residual = sup_dist(&mat_vec(&at, &f_star), &f_star.iter().map(|x| alpha * x).collect::<Vec<_>>());
    PerronVectors { alpha, alpha_error, f, f_star, right_residual, left_residual }
}

/// Dominant eigenpair of a positive matrix, eigenvector scaled to max 1.
fn dominant(b: &[Vec<f64>]) -> (f64, Vec<f64>) {
    let k = b.len();
    let mut v = vec![1.0; k];
    let mut lambda = 0.0;
    for _ in 0..100_000 {
        let w = mat_vec(b, &v);
        let top = w.iter().copied().fold(0.0, f64::max);
        let next: Vec<f64> = w.iter().map(|x| x / top).collect();
        let delta = sup_dist(&next, &v);
        v = next;
        lambda = top;
        if delta < 1e-15 {
            break;
        }
    }
    // Inverse iteration with the converged shift sharpens the last digits.
    for _ in 0..3 {
        let shifted: Vec<Vec<f64>> =
            (0..k).map(|i| (0..k).map(|j| b[i][j] - if i == j { lambda } else { 0.0 }).collect()).collect();
        let Some(w) = solve(shifted, v.clone()) else { break };
        let top = w.iter().copied().fold(0.0, |acc: f64, x| if x.abs() > acc.abs() { x } else { acc });
        if top == 0.0 || !top.is_finite() {
            break;
        }
        let next: Vec<f64> = w.iter().map(|x| x / top).collect();
        if next.iter().any(|x| *x <= 0.0) {
            break;
        }
        v = next;
        let bv = mat_vec(b, &v);
        lambda = bv.iter().zip(&v).map(|(x, y)| x * y).sum::<f64>() / v.iter().map(|x| x * x).sum::<f64>();
    }
    (lambda, v)
}

fn solve(mut m: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Option<Vec<f64>> {
    let k = m.len();
    for col in 0..k {
        let piv = (col..k).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[piv][col] == 0.0 {
            return None;
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for r in col + 1..k {
            let f = m[r][col] / m[col][col];
            for c in col..k {
                m[r][c] -= f * m[col][c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    let mut x = vec![0.0; k];
    for r in (0..k).rev() {
        let s: f64 = (r + 1..k).map(|c| m[r][c] * x[c]).sum();
        x[r] = (rhs[r] - s) / m[r][r];
    }
    Some(x)
}

fn mat_vec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn transpose(m: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let k = m.first().map_or(0, Vec::len);
    (0..k).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

fn normalize_max(v: &[f64]) -> Vec<f64> {
    let top = v.iter().copied().fold(0.0, |acc: f64, x| acc.max(x.abs()));
    v.iter().map(|x| x / top).collect()
}

fn sup_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}
