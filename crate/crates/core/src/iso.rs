//! Equivariant isomorphism of toric Kato data.
//!
//! Two data are equivariantly isomorphic when some `Q ∈ GL(n, Z)` conjugates
//! the matrices (`QA = BQ`), carries the infinite fan of one onto the other,
//! and moves the log-parameters into the same class modulo
//! `Im(B - I) + Z^n`. The search over `Q` is bounded, so `Unknown` is a
//! legitimate answer; `No` is only returned with a certificate that does not
//! depend on the search bounds.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::fan::Cone;
use crate::invariants::betti;
use crate::kato::{KatoData, LogParams};
use crate::linalg::{
    affine_lattice_membership, affine_lattice_membership_approx, annihilator, hnf, int_kernel, IntMatrix, Rat,
    RatMatrix,
};

pub const DEFAULT_COEFF_BOUND: i64 = 8;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Upper limit on enumerated coefficient vectors; the effective coefficient
/// bound is lowered until the box fits.
const CANDIDATE_BUDGET: usize = 200_000;
/// Permutation seeds are tried up to this dimension.
const MAX_PERMUTATION_DIM: usize = 6;

pub fn default_shift_bound(d: &KatoData) -> i64 {
    2 * d.kato().order_of_s() as i64 + 4
}

/// A lattice basis of `{Q ∈ M_n(Z) : QA = BQ}`.
pub fn commutant_basis(a: &IntMatrix, b: &IntMatrix) -> Vec<IntMatrix> {
    let n = a.rows();
    // Unknown q_{ik} sits at index i * n + k; row (i, j) encodes (QA - BQ)_{ij}.
    let mut m = IntMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for k in 0..n {
                m[(row, i * n + k)] += &a[(k, j)];
                m[(row, k * n + j)] -= &b[(i, k)];
            }
        }
    }
    int_kernel(&m).into_iter().map(|v| IntMatrix::from_flat(n, n, v.0)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaCheck {
    pub holds: bool,
    /// The parameters were floating point and the answer holds up to the
    /// tolerance only.
    pub approximate: bool,
}

/// Whether `Qℓ - m ∈ Im(B - I) + Z^n`, with the image taken over `C`.
pub fn lambda_condition(q: &IntMatrix, ell: &LogParams, m: &LogParams, b: &IntMatrix, tolerance: f64) -> LambdaCheck {
    let n = b.rows();
    let image = b.sub(&IntMatrix::identity(n)).to_rat();
    let moved = ell.apply(q);
    match (moved.exact(), m.exact()) {
        (Some(x), Some(y)) => {
            let re: Vec<Rat> = x.iter().zip(y).map(|(a, b)| &a.re - &b.re).collect();
            let im: Vec<Rat> = x.iter().zip(y).map(|(a, b)| &a.im - &b.im).collect();
            let holds = image.column_space_contains(&im) && affine_lattice_membership(&image, &re);
            LambdaCheck { holds, approximate: false }
        }
        _ => {
            let (x, y) = (moved.to_f64(), m.to_f64());
            let re: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a.0 - b.0).collect();
            let im: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a.1 - b.1).collect();
            let w = annihilator(&image).to_f64();
            let im_ok = w.iter().all(|row| row.iter().zip(&im).map(|(a, b)| a * b).sum::<f64>().abs() <= tolerance);
            let holds = im_ok && affine_lattice_membership_approx(&image, &re, tolerance);
            LambdaCheck { holds, approximate: true }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IsoAnswer {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    pub q: IntMatrix,
    /// Range of `k` such that `B^{-k} Q σ` lies in the fundamental domain of
    /// the target, over the cones `σ` of the source's fundamental domain.
    pub min_shift: i64,
    pub max_shift: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsoVerdict {
    pub answer: IsoAnswer,
    pub witness: Option<IsoWitness>,
    pub certificate: Option<String>,
    pub approximate: bool,
    /// Candidate matrices examined by the bounded search.
    pub candidates: usize,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct IsoOptions {
    pub coeff_bound: i64,
    /// Defaults to [`default_shift_bound`] of the first argument.
    pub shift_bound: Option<i64>,
    pub tolerance: f64,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions { coeff_bound: DEFAULT_COEFF_BOUND, shift_bound: None, tolerance: DEFAULT_TOLERANCE }
    }
}

struct Search<'a> {
    x: &'a KatoData,
    y: &'a KatoData,
    ell: LogParams,
    m: LogParams,
    tolerance: f64,
    fundamental_x: BTreeSet<Cone>,
    fundamental_y: BTreeSet<Cone>,
    a_powers: Vec<(i64, IntMatrix)>,
    b_powers: Vec<(i64, IntMatrix)>,
}

impl Search<'_> {
    // Ordered by |k| so that the smallest shift is found first.
    fn powers(m: &IntMatrix, bound: i64) -> Vec<(i64, IntMatrix)> {
        let mut ks: Vec<i64> = (-bound..=bound).collect();
        ks.sort_by_key(|k| (k.abs(), *k));
        ks.into_iter().map(|k| (k, m.pow_signed(-k).expect("Kato matrices are unimodular"))).collect()
    }

    // Every cone of `from` lands, after some shift, in the fundamental domain
    // `to`. Returns the range of shifts used.
    fn shifts(from: &BTreeSet<Cone>, to: &BTreeSet<Cone>, map: &IntMatrix, powers: &[(i64, IntMatrix)]) -> Option<(i64, i64)> {
        let mut range: Option<(i64, i64)> = None;
        for c in from {
            let image = c.transform(map);
            let k = powers.iter().find(|(_, p)| to.contains(&image.transform(p)))?.0;
            range = Some(range.map_or((k, k), |(lo, hi)| (lo.min(k), hi.max(k))));
        }
        Some(range.unwrap_or((0, 0)))
    }

    fn fans_match(&self, q: &IntMatrix, q_inv: &IntMatrix) -> Option<(i64, i64)> {
        let forward = Self::shifts(&self.fundamental_x, &self.fundamental_y, q, &self.b_powers)?;
        Self::shifts(&self.fundamental_y, &self.fundamental_x, q_inv, &self.a_powers)?;
        Some(forward)
    }

    /// Full check of a candidate; the witness when it passes.
    fn check(&self, q: &IntMatrix) -> Option<(IsoWitness, bool)> {
        if !q.is_nonnegative() || q.mul(self.x.matrix()) != self.y.matrix().mul(q) {
            return None;
        }
        let q_inv = q.inverse_unimodular()?;
        let (min_shift, max_shift) = self.fans_match(q, &q_inv)?;
        let lambda = lambda_condition(q, &self.ell, &self.m, self.y.matrix(), self.tolerance);
        lambda.holds.then(|| (IsoWitness { q: q.clone(), min_shift, max_shift }, lambda.approximate))
    }
}

/// Re-verifies a witness from scratch.
pub fn verify_witness(x: &KatoData, y: &KatoData, w: &IsoWitness, tolerance: f64) -> bool {
    let bound = w.min_shift.abs().max(w.max_shift.abs()).max(default_shift_bound(x)).max(default_shift_bound(y));
    let s = search_state(x, y, bound, tolerance);
    s.check(&w.q).is_some()
}

fn search_state<'a>(x: &'a KatoData, y: &'a KatoData, shift_bound: i64, tolerance: f64) -> Search<'a> {
    let n = x.dim();
    Search {
        x,
        y,
        ell: x.ell().cloned().unwrap_or_else(|| LogParams::imaginary_unit(n)),
        m: y.ell().cloned().unwrap_or_else(|| LogParams::imaginary_unit(n)),
        tolerance,
        fundamental_x: x.fundamental_cones(),
        fundamental_y: y.fundamental_cones(),
        a_powers: Search::powers(x.matrix(), shift_bound),
        b_powers: Search::powers(y.matrix(), shift_bound),
    }
}

pub fn find_equivariant_iso(x: &KatoData, y: &KatoData, opts: &IsoOptions) -> IsoVerdict {
    let mut verdict =
        IsoVerdict { answer: IsoAnswer::Unknown, witness: None, certificate: None, approximate: false, candidates: 0, notes: Vec::new() };
    let no = |mut v: IsoVerdict, why: String| {
        v.answer = IsoAnswer::No;
        v.certificate = Some(why);
        v
    };
    if x.dim() != y.dim() {
        return no(verdict, format!("dimensions differ ({} and {})", x.dim(), y.dim()));
    }
    let n = x.dim();
    if x.ell().is_none() || y.ell().is_none() {
        verdict.notes.push("missing log-parameters taken to be (i, ..., i)".into());
    }
    let (a, b) = (x.matrix(), y.matrix());
    let (bx, by) = (betti(x), betti(y));
    if bx != by {
        return no(verdict, format!("Betti numbers differ: {bx:?} and {by:?}"));
    }
    if char_poly(a) != char_poly(b) {
        return no(verdict, "A and B have different characteristic polynomials, so no Q in GL(n, Q) conjugates them".into());
    }
    let shift_bound = opts.shift_bound.unwrap_or_else(|| default_shift_bound(x));
    let search = search_state(x, y, shift_bound, opts.tolerance);
    verdict.approximate = !(search.ell.is_exact() && search.m.is_exact());

    let identity = IntMatrix::identity(n);
    if x.fan() == y.fan() && a == b && !a.sub(&identity).det().is_zero() {
        verdict.answer = IsoAnswer::Yes;
        verdict.witness = Some(IsoWitness { q: identity, min_shift: 0, max_shift: 0 });
        verdict.certificate = Some("same fan and matrix, and 1 is not an eigenvalue of A".into());
        return verdict;
    }

    let basis = commutant_basis(a, b);
    if basis.is_empty() {
        return no(verdict, "QA = BQ forces Q = 0".into());
    }
    if !verdict.approximate {
        if let Some(why) = quotient_certificate(a, b, &basis, &search.ell, &search.m) {
            return no(verdict, why);
        }
    }

    let try_candidate = |q: &IntMatrix, verdict: &mut IsoVerdict| -> bool {
        verdict.candidates += 1;
        if let Some((w, approx)) = search.check(q) {
            verdict.answer = IsoAnswer::Yes;
            verdict.witness = Some(w);
            verdict.approximate |= approx;
            return true;
        }
        false
    };
    for q in permutation_seeds(n) {
        if try_candidate(&q, &mut verdict) {
            return verdict;
        }
    }

    let d = basis.len();
    let mut bound = opts.coeff_bound.max(0);
    while bound > 0 && box_size(bound, d) > CANDIDATE_BUDGET {
        bound -= 1;
    }
    if bound < opts.coeff_bound {
        verdict.notes.push(format!("coefficient bound lowered to {bound} to fit the search budget"));
    }
    for radius in 0..=bound {
        let mut coeffs = vec![-radius; d];
        loop {
            if coeffs.iter().any(|c| c.abs() == radius) {
                let q = combine(&basis, &coeffs, n);
                if try_candidate(&q, &mut verdict) {
                    return verdict;
                }
            }
            if !advance(&mut coeffs, radius) {
                break;
            }
        }
    }
    verdict.notes.push(format!("no witness with coefficients up to {bound} and shifts up to {shift_bound}"));
    verdict
}

fn box_size(bound: i64, d: usize) -> usize {
    let side = (2 * bound + 1) as usize;
    (0..d).try_fold(1usize, |acc, _| acc.checked_mul(side)).unwrap_or(usize::MAX)
}

fn advance(coeffs: &mut [i64], radius: i64) -> bool {
    for c in coeffs.iter_mut() {
        if *c < radius {
            *c += 1;
            return true;
        }
        *c = -radius;
    }
    false
}

fn combine(basis: &[IntMatrix], coeffs: &[i64], n: usize) -> IntMatrix {
    let mut q = IntMatrix::zeros(n, n);
    for (m, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            q = q.add(&m.scale(&BigInt::from(c)));
        }
    }
    q
}

fn permutation_seeds(n: usize) -> Vec<IntMatrix> {
    if n > MAX_PERMUTATION_DIM {
        return vec![IntMatrix::identity(n)];
    }
    let mut perms = vec![Vec::new()];
    for _ in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                let free: Vec<usize> = (0..n).filter(|i| !p.contains(i)).collect();
                free.into_iter().map(move |i| [p.clone(), vec![i]].concat())
            })
            .collect();
    }
    perms
        .into_iter()
        .map(|p| {
            let mut m = IntMatrix::zeros(n, n);
            for (j, &i) in p.iter().enumerate() {
                m[(i, j)] = BigInt::one();
            }
            m
        })
        .collect()
}

/// Coefficients of `det(tI - A)`, constant term first, by Faddeev-LeVerrier.
fn char_poly(a: &IntMatrix) -> Vec<BigInt> {
    let n = a.rows();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = IntMatrix::zeros(n, n);
    let identity = IntMatrix::identity(n);
    for k in 1..=n {
        m = a.mul(&m).add(&identity.scale(&coeffs[n - k + 1]));
        let am = a.mul(&m);
        let trace: BigInt = (0..n).map(|i| am[(i, i)].clone()).sum();
        coeffs[n - k] = -trace / BigInt::from(k);
    }
    coeffs
}

// The condition only sees Q through the induced map between the quotients
// Z^n / (Im(A - I) ∩ Z^n) and Z^n / (Im(B - I) ∩ Z^n), written in the
// coordinates given by the integer annihilators W_A, W_B: W_B Q = C_Q W_A.
// When every element of the commutant induces a multiple of one fixed C,
// unimodularity pins the multiple down to finitely many values and the
// condition can be decided for all Q at once.
fn quotient_certificate(a: &IntMatrix, b: &IntMatrix, basis: &[IntMatrix], ell: &LogParams, m: &LogParams) -> Option<String> {
    let n = a.rows();
    let identity = IntMatrix::identity(n);
    let wa = annihilator(&a.sub(&identity).to_rat());
    let wb = annihilator(&b.sub(&identity).to_rat());
    let r = wb.rows();
    if r == 0 || wa.rows() != r {
        return None;
    }
    let wa_t = wa.transpose().to_rat();
    let induced = |q: &IntMatrix| -> Option<Vec<Vec<Rat>>> {
        let target = wb.mul(q);
        (0..r).map(|i| wa_t.solve(&target.row(i).to_rat())).collect()
    };
    let mut fixed: Option<Vec<Vec<Rat>>> = None;
    for q in basis {
        let c = induced(q)?;
        if c.iter().flatten().all(Zero::is_zero) {
            continue;
        }
        match &fixed {
            None => fixed = Some(c),
            Some(c0) => {
                let (i, j) = first_nonzero(c0)?;
                let t = &c[i][j] / &c0[i][j];
                if c.iter().flatten().zip(c0.iter().flatten()).any(|(x, y)| *x != &t * y) {
                    return None;
                }
            }
        }
    }
    let Some(c0) = fixed else {
        return Some("every Q with QA = BQ annihilates the invariant quotient, so none is unimodular".into());
    };

    let lattice_basis = |w: &IntMatrix| -> RatMatrix {
        let h = hnf(&w.transpose());
        let rows: Vec<Vec<Rat>> = (0..h.pivots.len()).map(|i| h.h.row(i).to_rat()).collect();
        RatMatrix::from_rows(rows).transpose()
    };
    let (la, lb) = (lattice_basis(&wa), lattice_basis(&wb));
    let lb_inv = lb.inverse()?;
    let m0 = lb_inv.mul(&RatMatrix::from_rows(c0.clone())).mul(&la);
    let delta = m0.det();
    if delta.is_zero() {
        return None;
    }
    let scale = rational_root(&(Rat::one() / delta.abs()), r);
    let candidates: Vec<Rat> = match scale {
        None => Vec::new(),
        Some(s) => [s.clone(), -s]
            .into_iter()
            .filter(|c| {
                let u = m0.scale(c);
                u.is_integral() && u.det().abs().is_one()
            })
            .collect(),
    };

    let (x, y) = (ell.exact()?, m.exact()?);
    let part = |v: &[crate::kato::GaussRat], im: bool| -> Vec<Rat> {
        v.iter().map(|z| if im { z.im.clone() } else { z.re.clone() }).collect()
    };
    let reduced = |w: &IntMatrix, v: &[Rat]| w.mul_rat_vec(v);
    let (la_re, la_im) = (reduced(&wa, &part(x, false)), reduced(&wa, &part(x, true)));
    let (mb_re, mb_im) = (reduced(&wb, &part(y, false)), reduced(&wb, &part(y, true)));
    let c0m = RatMatrix::from_rows(c0.clone());
    let passes = |c: &Rat| -> bool {
        let im: Vec<Rat> = c0m.mul_vec(&la_im).iter().zip(&mb_im).map(|(p, q)| c * p - q).collect();
        if im.iter().any(|v| !v.is_zero()) {
            return false;
        }
        let re: Vec<Rat> = c0m.mul_vec(&la_re).iter().zip(&mb_re).map(|(p, q)| c * p - q).collect();
        lb.solve(&re).is_some_and(|z| z.iter().all(Rat::is_integer))
    };
    if candidates.iter().any(passes) {
        return None;
    }
    let forms = |w: &IntMatrix, sym: &str| -> String {
        (0..w.rows()).map(|i| linear_form(&w.row(i).0, sym)).collect::<Vec<_>>().join(", ")
    };
    let scalars = if candidates.is_empty() {
        "no multiple of C is unimodular".to_string()
    } else {
        format!("C_Q = c·C with c ∈ {{{}}}", candidates.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
    };
    Some(format!(
        "Qℓ - m ∈ Im(B - I) + Z^n reduces to c·C·({}) - ({}) ∈ W·Z^n with C = {:?}; for unimodular Q commuting with A and B, {}; the reduced condition fails in every case, independently of Q",
        forms(&wa, "ℓ"),
        forms(&wb, "m"),
        c0.iter().map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        scalars
    ))
}

fn first_nonzero(c: &[Vec<Rat>]) -> Option<(usize, usize)> {
    c.iter().enumerate().find_map(|(i, row)| row.iter().position(|x| !x.is_zero()).map(|j| (i, j)))
}

fn linear_form(w: &[BigInt], sym: &str) -> String {
    let mut out = String::new();
    for (j, c) in w.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let sign = if c.is_negative() { " - " } else if out.is_empty() { "" } else { " + " };
        let sign = if out.is_empty() && c.is_negative() { "-" } else { sign };
        let mag = c.abs();
        let coeff = if mag.is_one() { String::new() } else { mag.to_string() };
        out.push_str(&format!("{sign}{coeff}{sym}{}", j + 1));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// The positive rational `r`-th root of a positive rational, if it exists.
fn rational_root(x: &Rat, r: usize) -> Option<Rat> {
    let r32 = u32::try_from(r).ok()?;
    let root = |v: &BigInt| -> Option<BigInt> {
        let t = v.nth_root(r32);
        (num_traits::pow(t.clone(), r) == *v).then_some(t)
    };
    Some(Rat::new(root(x.numer())?, root(x.denom())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::Fan;
    use crate::kato::GaussRat;
    use crate::linalg::{hnf, rat, LatticeVector};
    use crate::random::random_kato_data;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn v(x: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(x)
    }

    fn g(re: (i64, i64), im: (i64, i64)) -> GaussRat {
        GaussRat::new(rat(re.0, re.1), rat(im.0, im.1))
    }

    fn parabolic(ell: [GaussRat; 2]) -> KatoData {
        let fan = Fan::standard(2).star_subdivide(&v(&[1, 1])).unwrap();
        KatoData::new(fan, vec![v(&[1, 0]), v(&[1, 1])], Some(LogParams::Exact(ell.to_vec()))).unwrap()
    }

    fn figure_three(ell: Option<LogParams>) -> KatoData {
        let script: Vec<_> = [[1, 1, 1], [1, 2, 2], [1, 2, 1], [1, 1, 2], [2, 3, 3]].iter().map(|r| v(r)).collect();
        let fan = Fan::from_star_script(3, &script, &[v(&[2, 3, 3])]).unwrap();
        KatoData::new(fan, vec![v(&[1, 2, 2]), v(&[1, 2, 1]), v(&[1, 1, 2])], ell).unwrap()
    }

    fn lattice(ms: &[IntMatrix]) -> IntMatrix {
        let rows: Vec<Vec<BigInt>> = ms.iter().map(|m| m.flatten()).collect();
        let h = hnf(&IntMatrix::from_big_rows(rows));
        IntMatrix::from_big_rows((0..h.pivots.len()).map(|i| h.h.row(i).0.clone()).collect())
    }

    // Brute force: all 2x2 integer matrices with entries in [-3, 3] that commute.
    fn brute_commutant(a: &IntMatrix, b: &IntMatrix) -> Vec<IntMatrix> {
        let mut out = Vec::new();
        let r = -3..=3i64;
        for p in r.clone() {
            for q in r.clone() {
                for s in r.clone() {
                    for t in r.clone() {
                        let m = IntMatrix::from_rows(&[vec![p, q], vec![s, t]]);
                        if m.mul(a) == b.mul(&m) {
                            out.push(m);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn commutant_of_a_jordan_block() {
        let a = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        let basis = commutant_basis(&a, &a);
        let expected = [IntMatrix::identity(2), IntMatrix::from_rows(&[vec![0, 1], vec![0, 0]])];
        assert_eq!(lattice(&basis), lattice(&expected));
        for m in brute_commutant(&a, &a) {
            let mut all = basis.clone();
            all.push(m);
            assert_eq!(lattice(&all), lattice(&basis));
        }
    }

    #[test]
    fn commutant_edge_cases() {
        let a = IntMatrix::from_rows(&[vec![1, 1], vec![1, 2]]);
        let basis = commutant_basis(&a, &a);
        assert_eq!(basis.len(), 2);
        let mut with_identity = basis.clone();
        with_identity.push(IntMatrix::identity(2));
        assert_eq!(lattice(&with_identity), lattice(&basis));
        // Disjoint spectra: {(3 ± √5)/2} and {1}.
        assert!(commutant_basis(&a, &IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]])).is_empty());
        for (x, y) in [(a.clone(), a.clone()), (a.clone(), IntMatrix::from_rows(&[vec![2, 1], vec![1, 1]]))] {
            let basis = commutant_basis(&x, &y);
            for m in brute_commutant(&x, &y) {
                let mut all = basis.clone();
                all.push(m);
                assert_eq!(lattice(&all).rank(), basis.len());
            }
        }
    }

    #[test]
    fn lambda_condition_examples() {
        let a = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        let ell = LogParams::Exact(vec![g((0, 1), (1, 1)), g((0, 1), (1, 1))]);
        let m = LogParams::Exact(vec![g((1, 2), (1, 1)), g((0, 1), (1, 1))]);
        for k in 0..4 {
            let q = IntMatrix::from_rows(&[vec![1, k], vec![0, 1]]);
            assert!(lambda_condition(&q, &ell, &m, &a, 0.0).holds);
        }
        let m = LogParams::Exact(vec![g((0, 1), (1, 1)), g((1, 2), (1, 1))]);
        assert!(!lambda_condition(&IntMatrix::identity(2), &ell, &m, &a, 0.0).holds);

        let b = IntMatrix::from_rows(&[vec![1, 1, 1], vec![2, 2, 1], vec![2, 1, 2]]);
        let ell = LogParams::Exact(vec![g((1, 5), (0, 1)), g((1, 3), (0, 1)), g((0, 1), (0, 1))]);
        // ℓ2 - ℓ3 - (m2 - m3) = 1/3 - 4/3 ∈ Z.
        let good = LogParams::Exact(vec![g((2, 7), (0, 1)), g((4, 3), (0, 1)), g((0, 1), (0, 1))]);
        let bad = LogParams::Exact(vec![g((2, 7), (0, 1)), g((1, 2), (0, 1)), g((0, 1), (0, 1))]);
        assert!(lambda_condition(&IntMatrix::identity(3), &ell, &good, &b, 0.0).holds);
        assert!(!lambda_condition(&IntMatrix::identity(3), &ell, &bad, &b, 0.0).holds);
    }

    #[test]
    fn approximate_parameters_use_the_tolerance() {
        let a = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        let ell = LogParams::Approximate(vec![(0.0, 1.0), (0.25, 1.0)]);
        let m = LogParams::Approximate(vec![(0.3, 1.0), (1.25 + 1e-12, 1.0)]);
        let check = lambda_condition(&IntMatrix::identity(2), &ell, &m, &a, 1e-9);
        assert!(check.holds && check.approximate);
    }

    #[test]
    fn parabolic_pairs() {
        let cases = [
            (g((0, 1), (1, 1)), g((0, 1), (1, 1)), true),
            (g((0, 1), (1, 1)), g((1, 1), (1, 1)), true),
            (g((1, 2), (1, 1)), g((0, 1), (1, 1)), false),
            (g((0, 1), (1, 1)), g((1, 3), (1, 1)), false),
            (g((0, 1), (1, 1)), g((0, 1), (2, 1)), false),
            (g((1, 4), (1, 1)), g((5, 4), (1, 1)), true),
        ];
        for (l2, m2, expected) in cases {
            let x = parabolic([g((0, 1), (1, 1)), l2.clone()]);
            let y = parabolic([g((1, 3), (1, 1)), m2.clone()]);
            let verdict = find_equivariant_iso(&x, &y, &IsoOptions::default());
            let answer = if expected { IsoAnswer::Yes } else { IsoAnswer::No };
            assert_eq!(verdict.answer, answer, "ℓ2 = {l2}, m2 = {m2}: {verdict:?}");
            if let Some(w) = &verdict.witness {
                assert!(verify_witness(&x, &y, w, DEFAULT_TOLERANCE));
            }
            if !expected {
                assert!(verdict.certificate.is_some());
                let doubled = IsoOptions { coeff_bound: 16, shift_bound: Some(24), ..IsoOptions::default() };
                assert_eq!(find_equivariant_iso(&x, &y, &doubled).answer, IsoAnswer::No);
            }
        }
    }

    #[test]
    fn fast_path() {
        let fan = Fan::from_star_script(2, &[v(&[1, 1]), v(&[1, 2])], &[]).unwrap();
        let x = KatoData::new(fan.clone(), vec![v(&[1, 1]), v(&[1, 2])], None).unwrap();
        let y = x.with_ell(Some(LogParams::Exact(vec![g((1, 3), (2, 1)), g((1, 7), (0, 1))]))).unwrap();
        let verdict = find_equivariant_iso(&x, &y, &IsoOptions::default());
        assert_eq!(verdict.answer, IsoAnswer::Yes);
        assert_eq!(verdict.witness.unwrap().q, IntMatrix::identity(2));
    }

    #[test]
    fn figure_three_swap() {
        let ell = LogParams::Exact(vec![g((0, 1), (0, 1)), g((1, 3), (0, 1)), g((1, 5), (0, 1))]);
        // λμ = 1: m2 - m3 = -(ℓ2 - ℓ3).
        let m = LogParams::Exact(vec![g((1, 2), (0, 1)), g((1, 5), (0, 1)), g((1, 3), (0, 1))]);
        let x = figure_three(Some(ell));
        let y = figure_three(Some(m));
        let verdict = find_equivariant_iso(&x, &y, &IsoOptions::default());
        assert_eq!(verdict.answer, IsoAnswer::Yes);
        let swap = IntMatrix::from_rows(&[vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]]);
        assert_eq!(verdict.witness.as_ref().unwrap().q, swap);
        assert!(verify_witness(&x, &y, verdict.witness.as_ref().unwrap(), DEFAULT_TOLERANCE));
        assert_eq!(find_equivariant_iso(&y, &x, &IsoOptions::default()).answer, IsoAnswer::Yes);
        // Neither λ = μ nor λμ = 1.
        let other = LogParams::Exact(vec![g((0, 1), (0, 1)), g((1, 7), (0, 1)), g((0, 1), (0, 1))]);
        let z = figure_three(Some(other));
        assert_eq!(find_equivariant_iso(&x, &z, &IsoOptions::default()).answer, IsoAnswer::No);
    }

    #[test]
    fn different_betti_numbers_are_rejected() {
        let x = parabolic([g((0, 1), (1, 1)), g((0, 1), (1, 1))]);
        let fan = Fan::from_star_script(2, &[v(&[1, 1]), v(&[1, 2])], &[]).unwrap();
        let y = KatoData::new(fan, vec![v(&[1, 1]), v(&[1, 2])], None).unwrap();
        assert_eq!(find_equivariant_iso(&x, &y, &IsoOptions::default()).answer, IsoAnswer::No);
    }

    #[test]
    fn certificate_names_the_obstruction() {
        let x = parabolic([g((0, 1), (1, 1)), g((0, 1), (1, 1))]);
        let y = parabolic([g((0, 1), (1, 1)), g((1, 3), (1, 1))]);
        let verdict = find_equivariant_iso(&x, &y, &IsoOptions::default());
        let cert = verdict.certificate.unwrap();
        assert!(cert.contains("ℓ2") && cert.contains("m2"), "{cert}");
    }

    fn random_ell(n: usize, rng: &mut StdRng) -> LogParams {
        LogParams::Exact((0..n).map(|_| g((rng.gen_range(0..4), 4), (1, 1))).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(30))]
        #[test]
        fn reflexive_and_symmetric(n in 2usize..4, steps in 0usize..3, seed in 0u64..10_000) {
            let mut rng = StdRng::seed_from_u64(seed);
            let base = random_kato_data(n, steps, &mut rng);
            let x = base.with_ell(Some(random_ell(n, &mut rng))).unwrap();
            let y = base.with_ell(Some(random_ell(n, &mut rng))).unwrap();
            let opts = IsoOptions { coeff_bound: 2, ..IsoOptions::default() };
            let own = find_equivariant_iso(&x, &x, &opts);
            prop_assert_eq!(own.answer, IsoAnswer::Yes);
            let there = find_equivariant_iso(&x, &y, &opts);
            let back = find_equivariant_iso(&y, &x, &opts);
            if there.answer != IsoAnswer::Unknown && back.answer != IsoAnswer::Unknown {
                prop_assert_eq!(there.answer, back.answer);
            }
            if let Some(w) = &there.witness {
                prop_assert!(verify_witness(&x, &y, w, DEFAULT_TOLERANCE));
            }
        }
    }

    #[test]
    fn characteristic_polynomials() {
        let a = IntMatrix::from_rows(&[vec![1, 1], vec![1, 2]]);
        let p = char_poly(&a);
        assert_eq!(p, vec![BigInt::from(1), BigInt::from(-3), BigInt::from(1)]);
    }
}
