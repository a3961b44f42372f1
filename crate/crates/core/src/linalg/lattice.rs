//! Membership in `W + Z^n` for rational subspaces `W`.

use num_traits::ToPrimitive;

use super::snf::{hnf, int_kernel, solve_diophantine};
use super::{IntMatrix, LatticeVector, Rat, RatMatrix};

/// Integer matrix whose rows form a basis of the integer annihilator of the
/// column space of `m`; its rational kernel is exactly that column space.
pub fn annihilator(m: &RatMatrix) -> IntMatrix {
    let n = m.rows();
    let int_cols = m.clear_column_denominators();
    let rows = int_kernel(&int_cols.transpose());
    if rows.is_empty() {
        return IntMatrix::zeros(0, n);
    }
    IntMatrix::from_big_rows(rows.into_iter().map(|v| v.0).collect())
}

/// Decides `x ∈ m·Q^k + Z^n` exactly.
pub fn affine_lattice_membership(m: &RatMatrix, x: &[Rat]) -> bool {
    let p = annihilator(m);
    if p.rows() == 0 {
        return true;
    }
    let px = p.mul_rat_vec(x);
    if px.iter().any(|v| !v.is_integer()) {
        return false;
    }
    let target = LatticeVector(px.into_iter().map(|v| v.to_integer()).collect());
    solve_diophantine(&p, &target).is_some()
}

/// Tolerance version for floating inputs: `x` is accepted when its image in
/// `R^n / (W + Z^n)` is within `tol` of zero in lattice coordinates.
pub fn affine_lattice_membership_approx(m: &RatMatrix, x: &[f64], tol: f64) -> bool {
    let p = annihilator(m);
    let k = p.rows();
    if k == 0 {
        return true;
    }
    let pf = p.to_f64();
    let y: Vec<f64> = pf.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect();
    // Basis of the image lattice P·Z^n, as the Hermite rows of P^T.
    let h = hnf(&p.transpose());
    let basis: Vec<Vec<f64>> = (0..h.pivots.len()).map(|i| h.h.row(i).to_f64()).collect();
    // Solve sum_i c_i basis_i = y.
    let mut a: Vec<Vec<f64>> = (0..k).map(|r| (0..k).map(|c| basis[c][r]).chain([y[r]]).collect()).collect();
    for c in 0..k {
        let piv = (c..k).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap_or(c);
        a.swap(c, piv);
        let d = a[c][c];
        if d == 0.0 {
            return false;
        }
        for r in 0..k {
            if r != c {
                let f = a[r][c] / d;
                for cc in c..=k {
                    a[r][cc] -= f * a[c][cc];
                }
            }
        }
    }
    (0..k).all(|r| {
        let c = a[r][k] / a[r][r];
        (c - c.round()).abs() <= tol
    })
}

pub fn rat_to_f64(v: &[Rat]) -> Vec<f64> {
    v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::One;
    use proptest::prelude::*;

    // Second route: x ∈ W + Z^n iff S y + D k = D x has an integer solution,
    // where S is a saturated integer basis of W and D clears x's
    // denominators.
    fn stacked_route(m: &RatMatrix, x: &[Rat]) -> bool {
        let n = m.rows();
        let p = annihilator(m);
        let sat = if p.rows() == 0 {
            (0..n).map(|j| LatticeVector::unit(n, j)).collect()
        } else {
            int_kernel(&p)
        };
        let d = x.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
        let mut cols = sat;
        for j in 0..n {
            cols.push(LatticeVector::unit(n, j).scale(&d));
        }
        let stacked = IntMatrix::from_columns(&cols);
        let rhs = LatticeVector(x.iter().map(|v| (v * Rat::from_integer(d.clone())).to_integer()).collect());
        solve_diophantine(&stacked, &rhs).is_some()
    }

    #[test]
    fn parabolic_quotient_line() {
        // W = span(e1) in Q^2: membership iff the second coordinate is integral.
        let m = RatMatrix::from_rows(vec![vec![rat(1, 1)], vec![rat(0, 1)]]);
        assert!(affine_lattice_membership(&m, &[rat(1, 3), rat(2, 1)]));
        assert!(!affine_lattice_membership(&m, &[rat(0, 1), rat(1, 2)]));
    }

    #[test]
    fn diagonal_subspace() {
        // W = {v2 = v3} in Q^3, spanned by (1,0,0) and (0,1,1).
        let m = RatMatrix::from_rows(vec![
            vec![rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1)],
            vec![rat(0, 1), rat(1, 1)],
        ]);
        assert!(affine_lattice_membership(&m, &[rat(1, 7), rat(1, 3), rat(4, 3)]));
        assert!(!affine_lattice_membership(&m, &[rat(0, 1), rat(1, 3), rat(0, 1)]));
        assert!(affine_lattice_membership_approx(&m, &[0.1, 1.0 / 3.0, 4.0 / 3.0], 1e-9));
        assert!(!affine_lattice_membership_approx(&m, &[0.0, 1.0 / 3.0, 0.0], 1e-9));
    }

    #[test]
    fn full_rank_subspace_contains_everything() {
        let m = RatMatrix::identity(2);
        assert!(affine_lattice_membership(&m, &[rat(1, 5), rat(2, 7)]));
    }

    proptest! {
        #[test]
        fn two_routes_agree(cols in 0usize..3, seed in proptest::collection::vec(-3i64..=3, 9), num in proptest::collection::vec(-6i64..=6, 3), den in proptest::collection::vec(1i64..=4, 3)) {
            let m = RatMatrix::from_rows((0..3).map(|i| (0..cols).map(|j| rat(seed[i * 3 + j], (j as i64) + 1)).collect()).collect());
            let m = if cols == 0 { RatMatrix::zeros(3, 0) } else { m };
            let x: Vec<Rat> = num.iter().zip(&den).map(|(&a, &b)| rat(a, b)).collect();
            let exact = affine_lattice_membership(&m, &x);
            prop_assert_eq!(exact, stacked_route(&m, &x));
            let xf = rat_to_f64(&x);
            prop_assert_eq!(exact, affine_lattice_membership_approx(&m, &xf, 1e-9));
        }

        #[test]
        fn constructed_members_are_accepted(seed in proptest::collection::vec(-3i64..=3, 6), y in proptest::collection::vec(-5i64..=5, 2), k in proptest::collection::vec(-5i64..=5, 3)) {
            let m = RatMatrix::from_rows((0..3).map(|i| (0..2).map(|j| rat(seed[i * 2 + j], 1)).collect()).collect());
            let yr = vec![rat(y[0], 3), rat(y[1], 2)];
            let mut x = m.mul_vec(&yr);
            for (xi, ki) in x.iter_mut().zip(&k) {
                *xi += rat(*ki, 1);
            }
            prop_assert!(affine_lattice_membership(&m, &x));
        }
    }
}
