//! Membership of lattice vectors in the support of the infinite fan
//! `Σ_A = {A^m σ : σ ≠ τ_A, m ∈ Z}`.
//!
//! The support is the half-space `H(A)` together with `τ_{P(A)}`, minus the
//! invariant cone `R_{>0} f_A + τ_{P(A)}` in the hyperbolic case. For lattice
//! vectors the hyperbolic case reduces to the sign of `<f_A^*, v>`: the Perron
//! direction is irrational, so no lattice vector lies on the removed cone.
//! The sign is certified exactly by finding an iterate `A^k v` that is
//! entrywise of one sign; the floating-point pairing is only a fallback.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{perron, KatoData, KatoType};
use crate::linalg::LatticeVector;

/// Relative margin below which the Perron pairing is not trusted.
pub const PAIRING_MARGIN: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Membership {
    In,
    Out,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupportAnswer {
    pub membership: Membership,
    pub reason: String,
}

fn answer(membership: Membership, reason: impl Into<String>) -> SupportAnswer {
    SupportAnswer { membership, reason: reason.into() }
}

pub fn support_membership(d: &KatoData, v: &LatticeVector, max_iter: u32) -> SupportAnswer {
    use Membership::*;
    let k = d.kato();
    let comp = k.complement();
    if v.is_zero() {
        return answer(In, "origin");
    }
    let off_p_zero = comp.iter().all(|&j| v.0[j].is_zero());
    if off_p_zero && v.is_nonnegative() {
        return answer(In, "in the cone spanned by e_j, j ∈ P(A)");
    }
    match d.kind() {
        KatoType::Hopf => {
            if v.is_nonnegative() && v.0.iter().any(Zero::is_zero) {
                answer(In, "on the boundary of the orthant")
            } else {
                answer(Out, "the support is the boundary of the orthant")
            }
        }
        KatoType::Parabolic => {
            let j = comp[0];
            if v.0[j].is_positive() {
                answer(In, format!("coordinate {} is positive", j + 1))
            } else {
                answer(Out, format!("coordinate {} is not positive and v is not in τ_P", j + 1))
            }
        }
        KatoType::Hyperbolic => {
            if off_p_zero {
                return answer(Out, "v lies in the span of e_j, j ∈ P(A), but not in τ_P");
            }
            let a = k.matrix();
            let mut w = v.clone();
            for step in 0..=max_iter {
                if w.is_nonnegative() {
                    return answer(In, format!("A^{step} v lies in the orthant"));
                }
                if w.0.iter().all(|x| !x.is_positive()) {
                    return answer(Out, format!("A^{step} v lies in the negative orthant"));
                }
                w = a.mul_vec(&w);
            }
            let p = perron(k);
            let pv = p.vectors().expect("hyperbolic matrices have Perron data");
            let vf = v.to_f64();
            let pairing: f64 = pv.f_star.iter().zip(&vf).map(|(x, y)| x * y).sum();
            let scale = pv.f_star.iter().map(|x| x * x).sum::<f64>().sqrt() * vf.iter().map(|x| x * x).sum::<f64>().sqrt();
            let rel = pairing / scale;
            if rel > PAIRING_MARGIN {
                answer(In, format!("<f*, v> = {pairing:.6e} > 0"))
            } else if rel < -PAIRING_MARGIN {
                answer(Out, format!("<f*, v> = {pairing:.6e} < 0"))
            } else {
                answer(Unknown, format!("<f*, v> = {pairing:.3e} is within the numerical margin"))
            }
        }
    }
}
