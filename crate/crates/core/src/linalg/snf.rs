//! Smith and Hermite normal forms, integer kernels and linear Diophantine
//! systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, LatticeVector};

/// `u * m * v = d` with `d` diagonal, nonnegative, and each diagonal entry
/// dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// The nonzero invariant factors, in order.
    pub factors: Vec<BigInt>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

/// Row-style Hermite form `h = u * m`: echelon, positive pivots, entries
/// above each pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub pivots: Vec<usize>,
}

fn row_axpy(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for c in 0..m.cols() {
        let s = &m[(source, c)] * q;
        if !s.is_zero() {
            m[(target, c)] -= s;
        }
    }
}

fn col_axpy(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for r in 0..m.rows() {
        let s = &m[(r, source)] * q;
        if !s.is_zero() {
            m[(r, target)] -= s;
        }
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for c in 0..m.cols() {
        m[(i, c)] = -&m[(i, c)];
    }
}

pub fn snf(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut factors = Vec::new();

    'outer: for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    if best.map_or(true, |(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'outer };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= d[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = d[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            if let Some(i) = bad {
                let minus_one = -BigInt::one();
                row_axpy(&mut d, t, i, &minus_one);
                row_axpy(&mut u, t, i, &minus_one);
                continue;
            }
            break;
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
        factors.push(d[(t, t)].clone());
    }
    Smith { d, u, v, factors }
}

pub fn hnf(m: &IntMatrix) -> Hermite {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let best = (r..rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&a, &b| h[(a, c)].abs().cmp(&h[(b, c)].abs()));
            let Some(p) = best else { break };
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..rows {
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut u, i, r, &q);
                clean &= h[(i, c)].is_zero();
            }
            if clean {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            row_axpy(&mut h, i, r, &q);
            row_axpy(&mut u, i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    Hermite { h, u, pivots }
}

/// Hermite-reduced basis of the lattice spanned by `vectors`.
pub(crate) fn reduce_basis(vectors: &[LatticeVector], dim: usize) -> Vec<LatticeVector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = IntMatrix::from_big_rows(vectors.iter().map(|v| v.0.clone()).collect());
    let h = hnf(&m);
    (0..h.pivots.len()).map(|i| h.h.row(i)).filter(|v| v.dim() == dim).collect()
}

/// A basis of `{x in Z^n : m x = 0}`, Hermite-reduced.
pub fn int_kernel(m: &IntMatrix) -> Vec<LatticeVector> {
    let s = snf(m);
    let raw: Vec<LatticeVector> = (s.rank()..m.cols()).map(|j| s.v.column(j)).collect();
    reduce_basis(&raw, m.cols())
}

/// Solves `m x = b` over the integers: a particular solution and a basis of
/// the homogeneous solutions, or `None` when there is no integer solution.
pub fn solve_diophantine(m: &IntMatrix, b: &LatticeVector) -> Option<(LatticeVector, Vec<LatticeVector>)> {
    assert_eq!(m.rows(), b.dim(), "right-hand side has wrong length");
    let s = snf(m);
    let ub = s.u.mul_vec(b);
    let r = s.rank();
    if ub.0[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut y = LatticeVector::zero(m.cols());
    for i in 0..r {
        let (q, rem) = ub.0[i].div_rem(&s.factors[i]);
        if !rem.is_zero() {
            return None;
        }
        y.0[i] = q;
    }
    Some((s.v.mul_vec(&y), int_kernel(m)))
}
