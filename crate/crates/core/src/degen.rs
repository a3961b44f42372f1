//! Toric degenerations of Kato data.
//!
//! Both families live in `N ⊕ Ze`. The Nakamura family uses
//! `Ã = [[A, Ac], [0, 1]]` with `c = (1, ..., 1)`; the isotrivial family uses
//! `Ã' = [[A, 0], [0, 1]]` and needs a primitive `u ∈ Im(I - A) ∩ Int C_0`,
//! which exists exactly in the hyperbolic case. The infinite fans are only
//! built on a window `|k| ≤ window` of translates of a fundamental domain;
//! the central fibers are complete fans in `N`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use crate::fan::{cones_compatible, Cone, Fan};
use crate::kato::{KatoData, KatoType};
use crate::linalg::{int_kernel, solve_diophantine, IntMatrix, LatticeVector};
use crate::{Error, Result};

pub const DEFAULT_WINDOW: i64 = 3;
pub const DEFAULT_U_BOUND: i64 = 6;
/// Largest box searched when minimizing the sup-norm of `v`.
const COSET_SEARCH_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum DegenerationKind {
    Nakamura,
    Isotrivial { u: LatticeVector, v: LatticeVector },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegenerationChecks {
    pub det_matches: bool,
    /// The window of the infinite fan is a fan (cones meet in common faces).
    pub truncation_valid: bool,
    pub truncation_regular: bool,
    /// `Ã` maps the window into the next window.
    pub equivariant: bool,
    /// The star of the central ray, taken modulo that ray, is the central fiber.
    pub star_matches_central_fiber: bool,
    /// The two-dimensional cones joining the central ray to its neighbours.
    pub adjacency_present: bool,
    pub central_fiber_complete: bool,
    pub central_fiber_regular: bool,
    /// Predicted smoothness of the central fiber (`u = c`); isotrivial only.
    pub smooth_flag: Option<bool>,
}

impl DegenerationChecks {
    pub fn all_pass(&self) -> bool {
        self.det_matches
            && self.truncation_valid
            && self.equivariant
            && self.star_matches_central_fiber
            && self.adjacency_present
            && self.central_fiber_complete
            && self.smooth_flag.map_or(true, |s| s == self.central_fiber_regular)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegenerationFan {
    pub kind: DegenerationKind,
    pub ambient_dim: usize,
    pub atilde: IntMatrix,
    pub window: i64,
    #[serde(skip)]
    pub truncation: Fan,
    #[serde(skip)]
    pub central_fiber: Fan,
    pub truncation_max_cones: usize,
    pub checks: DegenerationChecks,
    pub notes: Vec<String>,
}

fn ones(n: usize) -> LatticeVector {
    LatticeVector::ones(n)
}

fn block(a: &IntMatrix, corner: &LatticeVector) -> IntMatrix {
    let n = a.rows();
    let mut m = IntMatrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = a[(i, j)].clone();
        }
        m[(i, n)] = corner.0[i].clone();
    }
    m[(n, n)] = BigInt::one();
    m
}

/// Facets of the orthant, i.e. the maximal cones of the fundamental domain
/// lying in its boundary.
fn orthant_facets(n: usize) -> Vec<Cone> {
    (0..n)
        .map(|j| {
            let gens = (0..n).filter(|&i| i != j).map(|i| LatticeVector::unit(n, i)).collect();
            Cone::with_ambient(n, gens).expect("coordinate cones are simplicial")
        })
        .collect()
}

fn central_fiber(d: &KatoData, top: &LatticeVector, bottom: &LatticeVector) -> Result<Fan> {
    let a = d.matrix();
    let mut cones: BTreeSet<Cone> = d.fundamental_cones();
    for facet in orthant_facets(d.dim()) {
        cones.insert(facet.transform(a).join(std::slice::from_ref(top))?);
        cones.insert(facet.join(std::slice::from_ref(bottom))?);
    }
    Fan::new(d.dim(), cones)
}

/// The central fiber of the Nakamura family: the fundamental domain with
/// `τ_A` subdivided at `Ac` and the complement of `C_0` filled by `-c`.
pub fn nakamura_central_fiber(d: &KatoData) -> Result<Fan> {
    let c = ones(d.dim());
    central_fiber(d, &d.matrix().mul_vec(&c), &c.neg())
}

// One translate-window of `⋃_k M^k Σ̃_0`, where `Σ̃_0` is built around the
// central ray `centre` and its predecessor `previous = M^{-1} centre`.
// The cones of the fundamental domain, before translation.
fn base_cones(d: &KatoData, m: &IntMatrix, centre: &LatticeVector) -> Result<BTreeSet<Cone>> {
    let previous = m.inverse_unimodular().expect("unimodular").mul_vec(centre);
    let mut base: BTreeSet<Cone> = BTreeSet::new();
    for tau in d.fundamental_cones() {
        base.insert(tau.lift().join(std::slice::from_ref(centre))?);
    }
    for facet in orthant_facets(d.dim()) {
        base.insert(facet.lift().join(&[centre.clone(), previous.clone()])?);
    }
    Ok(base)
}

fn window_fan(d: &KatoData, m: &IntMatrix, centre: &LatticeVector, window: i64) -> Result<Fan> {
    let base = base_cones(d, m, centre)?;
    let mut cones = BTreeSet::new();
    for k in -window..=window {
        let p = m.pow_signed(k).expect("unimodular");
        cones.extend(base.iter().map(|c| c.transform(&p)));
    }
    Ok(Fan::from_cones_unchecked(d.dim() + 1, cones))
}

// Pairwise compatibility of all translates `m^k σ`, `|k| <= window`. The
// pair `(m^k σ, m^l τ)` is compatible iff `(σ, m^(l-k) τ)` is, so only base
// cones against shifted base cones need checking.
fn translates_compatible(d: &KatoData, m: &IntMatrix, centre: &LatticeVector, window: i64) -> Result<bool> {
    // Faces inherit compatibility from the cones containing them.
    let all = base_cones(d, m, centre)?;
    let base: Vec<Cone> = all.iter().filter(|c| !all.iter().any(|o| o != *c && c.is_face_of(o))).cloned().collect();
    for shift in 0..=2 * window {
        let p = m.pow_signed(shift).expect("unimodular");
        let moved: Vec<Cone> = base.iter().map(|c| c.transform(&p)).collect();
        for (i, a) in base.iter().enumerate() {
            let start = if shift == 0 { i + 1 } else { 0 };
            if moved[start..].iter().any(|b| !cones_compatible(a, b)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

struct Built {
    truncation: Fan,
    checks: DegenerationChecks,
}

fn build(d: &KatoData, atilde: &IntMatrix, centre: &LatticeVector, projection: &IntMatrix, central: &Fan, window: i64) -> Result<Built> {
    let n = d.dim();
    let window = window.max(0);
    let truncation = window_fan(d, atilde, centre, window)?;
    let truncation_valid = translates_compatible(d, atilde, centre, window)?;
    let wider = window_fan(d, atilde, centre, window + 1)?;
    let wider_cones = wider.cones();
    let equivariant = truncation.max_cones().all(|c| wider_cones.contains(&c.transform(atilde)));

    // The star of the central ray needs the neighbouring translates.
    let local = window_fan(d, atilde, centre, window.max(1))?;
    let star: Vec<Cone> = local.cones().into_iter().filter(|c| c.has_generator(centre)).collect();
    let projected: Result<BTreeSet<Cone>> = star
        .iter()
        .filter(|c| c.dim() == n + 1)
        .map(|c| {
            let gens: Vec<LatticeVector> =
                c.generators().iter().filter(|g| *g != centre).map(|g| projection.mul_vec(g)).collect();
            Cone::with_ambient(n, gens)
        })
        .collect();
    let star_matches_central_fiber = projected.is_ok_and(|p| Fan::from_cones_unchecked(n, p) == *central);
    let next = atilde.mul_vec(centre);
    let previous = atilde.inverse_unimodular().expect("unimodular").mul_vec(centre);
    let local_cones = local.cones();
    let adjacency_present = [previous, next].into_iter().all(|nb| {
        Cone::with_ambient(n + 1, vec![centre.clone(), nb]).is_ok_and(|c| local_cones.contains(&c))
    });

    let checks = DegenerationChecks {
        det_matches: atilde.det() == d.matrix().det(),
        truncation_valid,
        truncation_regular: truncation.is_regular(),
        equivariant,
        star_matches_central_fiber,
        adjacency_present,
        central_fiber_complete: central.is_complete(),
        central_fiber_regular: central.is_regular(),
        smooth_flag: None,
    };
    Ok(Built { truncation, checks })
}

pub fn nakamura_fan(d: &KatoData, window: i64) -> Result<DegenerationFan> {
    let n = d.dim();
    let a = d.matrix();
    let c = ones(n);
    let atilde = block(a, &a.mul_vec(&c));
    let centre = LatticeVector::unit(n + 1, n);
    // Forget the last coordinate.
    let projection = IntMatrix::from_big_rows((0..n).map(|i| LatticeVector::unit(n + 1, i).0).collect());
    let central = nakamura_central_fiber(d)?;
    let built = build(d, &atilde, &centre, &projection, &central, window)?;
    let mut notes = Vec::new();
    if lattice_preimage(d, &c).is_some() {
        notes.push("c ∈ Im(I - A): the smooth fibers of the family are all isomorphic".into());
    }
    Ok(DegenerationFan {
        kind: DegenerationKind::Nakamura,
        ambient_dim: n + 1,
        atilde,
        window: window.max(0),
        truncation_max_cones: built.truncation.max_cone_count(),
        truncation: built.truncation,
        central_fiber: central,
        checks: built.checks,
        notes,
    })
}

/// An integer `y` with `(I - A) y = u`.
fn lattice_preimage(d: &KatoData, u: &LatticeVector) -> Option<LatticeVector> {
    let n = d.dim();
    let m = IntMatrix::identity(n).sub(d.matrix());
    solve_diophantine(&m, u).map(|(y, _)| y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum USource {
    /// `u = c`.
    Canonical,
    /// `u = (A^l - I)(e_j + e_k)` for two indices outside `P(A)`.
    Constructive,
    /// Smallest sup-norm lattice point found by enumeration.
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotrivialChoice {
    pub u: Option<LatticeVector>,
    pub source: Option<USource>,
    /// When `u` is absent: a nonzero nonnegative functional vanishing on
    /// `Im(I - A)`, hence positive on `Int C_0` and zero on the image.
    pub functional: Option<LatticeVector>,
    pub certificate: Option<String>,
}

fn admissible(d: &KatoData, u: &LatticeVector) -> bool {
    u.is_strictly_positive() && u.is_primitive() && lattice_preimage(d, u).is_some()
}

pub fn isotrivial_u(d: &KatoData, bound: i64) -> IsotrivialChoice {
    let n = d.dim();
    let k = d.kato();
    if d.kind() != KatoType::Hyperbolic {
        let identity = IntMatrix::identity(n);
        let m = identity.sub(d.matrix());
        let functional = match d.kind() {
            KatoType::Parabolic => LatticeVector::unit(n, k.complement()[0]),
            _ => ones(n),
        };
        debug_assert!(m.transpose().mul_vec(&functional).is_zero());
        let name = match d.kind() {
            KatoType::Parabolic => format!("e{}*", k.complement()[0] + 1),
            _ => "e1* + ... + en*".to_string(),
        };
        let certificate = format!("{name} vanishes on Im(I - A) and is positive on Int C_0");
        return IsotrivialChoice { u: None, source: None, functional: Some(functional), certificate: Some(certificate) };
    }
    let found = |u: LatticeVector, source| IsotrivialChoice { u: Some(u), source: Some(source), functional: None, certificate: None };

    let c = ones(n);
    if admissible(d, &c) {
        return found(c, USource::Canonical);
    }
    let comp = k.complement();
    let start = LatticeVector::unit(n, comp[0]).add(&LatticeVector::unit(n, comp[1]));
    let a = d.matrix();
    let mut image = start.clone();
    for _ in 0..64 {
        image = a.mul_vec(&image);
        let w = image.sub(&start);
        if w.is_strictly_positive() {
            for candidate in [w.clone(), w.primitive()] {
                if admissible(d, &candidate) {
                    return found(candidate, USource::Constructive);
                }
            }
            break;
        }
    }
    for radius in 1..=bound.max(1) {
        let mut u = vec![1i64; n];
        loop {
            if u.iter().any(|&x| x == radius) {
                let candidate = LatticeVector::from_i64(&u);
                if admissible(d, &candidate) {
                    return found(candidate, USource::Search);
                }
            }
            let Some(i) = (0..n).rev().find(|&i| u[i] < radius) else { break };
            u[i] += 1;
            for x in &mut u[i + 1..] {
                *x = 1;
            }
        }
    }
    IsotrivialChoice {
        u: None,
        source: None,
        functional: None,
        certificate: Some(format!("no admissible u with entries up to {bound}")),
    }
}

/// The solution of `(A - I) v = Au` with the smallest sup-norm, ties broken
/// lexicographically.
pub fn canonical_v(d: &KatoData, u: &LatticeVector) -> Option<(LatticeVector, bool)> {
    let n = d.dim();
    let a = d.matrix();
    let (v0, kernel) = solve_diophantine(&a.sub(&IntMatrix::identity(n)), &a.mul_vec(u))?;
    Some(shortest_in_coset(&v0, &kernel))
}

// Returns the minimizer and whether the search was exhaustive.
fn shortest_in_coset(v0: &LatticeVector, kernel: &[LatticeVector]) -> (LatticeVector, bool) {
    if kernel.is_empty() {
        return (v0.clone(), true);
    }
    let k = IntMatrix::from_columns(kernel).to_rat();
    let left = k.transpose().mul(&k).inverse().expect("kernel basis is independent").mul(&k.transpose());
    // Any better point x = v0 + Kz has |x| ≤ |v0|, so z = L(x - v0) is boxed.
    let t = v0.sup_norm();
    let bounds: Vec<i64> = (0..left.rows())
        .map(|i| {
            let s: num_rational::BigRational = (0..left.cols())
                .map(|j| left[(i, j)].abs() * num_rational::BigRational::from_integer(&t + v0.0[j].abs()))
                .sum();
            s.floor().to_integer().to_i64().unwrap_or(i64::MAX)
        })
        .collect();
    let size = bounds.iter().try_fold(1u64, |acc, &b| acc.checked_mul(2 * b.unsigned_abs() + 1));
    if size.map_or(true, |s| s > COSET_SEARCH_CAP) {
        return (v0.clone(), false);
    }
    let key = |x: &LatticeVector| (x.sup_norm(), x.0.clone());
    let mut best = v0.clone();
    let mut z: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        let mut x = v0.clone();
        for (zi, kv) in z.iter().zip(kernel) {
            if *zi != 0 {
                x = x.add(&kv.scale(&BigInt::from(*zi)));
            }
        }
        if key(&x) < key(&best) {
            best = x;
        }
        let Some(i) = (0..z.len()).find(|&i| z[i] < bounds[i]) else { break };
        z[i] += 1;
        for (zj, b) in z[..i].iter_mut().zip(&bounds) {
            *zj = -b;
        }
    }
    (best, true)
}

pub fn isotrivial_central_fiber(d: &KatoData, u: &LatticeVector) -> Result<Fan> {
    central_fiber(d, &d.matrix().mul_vec(u), &u.neg())
}

pub fn isotrivial_fan(d: &KatoData, u: &LatticeVector, window: i64) -> Result<DegenerationFan> {
    let n = d.dim();
    if d.kind() != KatoType::Hyperbolic {
        return Err(Error::Unsupported("isotrivial degenerations need data of hyperbolic type".into()));
    }
    if u.dim() != n || !u.is_strictly_positive() || !u.is_primitive() {
        return Err(Error::InvalidKatoData(format!("u = {u} must be primitive and strictly positive")));
    }
    let a = d.matrix();
    let Some((v, exhaustive)) = canonical_v(d, u) else {
        return Err(Error::InvalidKatoData(format!("u = {u} is not in (I - A)Z^n")));
    };
    let atilde = block(a, &LatticeVector::zero(n));
    let centre = v.extend(BigInt::one());
    // q(x, t) = x - t v sends the central ray to 0.
    let mut projection = IntMatrix::zeros(n, n + 1);
    for i in 0..n {
        projection[(i, i)] = BigInt::one();
        projection[(i, n)] = -v.0[i].clone();
    }
    let central = isotrivial_central_fiber(d, u)?;
    let built = build(d, &atilde, &centre, &projection, &central, window)?;
    let mut checks = built.checks;
    checks.smooth_flag = Some(*u == ones(n));
    let mut notes = Vec::new();
    if !exhaustive {
        notes.push("v is a solution of (A - I)v = Au but not certified to have the smallest sup-norm".into());
    }
    Ok(DegenerationFan {
        kind: DegenerationKind::Isotrivial { u: u.clone(), v },
        ambient_dim: n + 1,
        atilde,
        window: window.max(0),
        truncation_max_cones: built.truncation.max_cone_count(),
        truncation: built.truncation,
        central_fiber: central,
        checks,
        notes,
    })
}

/// Number of `(n+1)`-dimensional cones of a window that are not regular.
pub fn singular_cone_count(f: &Fan) -> usize {
    f.max_cones().filter(|c| !c.is_regular()).count()
}

/// `|det|` of every maximal cone of the central fiber, sorted.
pub fn central_multiplicities(df: &DegenerationFan) -> Vec<BigInt> {
    let mut m: Vec<BigInt> = df.central_fiber.max_cones().map(|c| c.multiplicity().abs()).collect();
    m.sort();
    m
}

pub fn kernel_rank(d: &KatoData) -> usize {
    int_kernel(&d.matrix().sub(&IntMatrix::identity(d.dim()))).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_kato_data;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn v(x: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(x)
    }

    fn inoue_hirzebruch() -> KatoData {
        let fan = Fan::from_star_script(2, &[v(&[1, 1]), v(&[1, 2])], &[]).unwrap();
        KatoData::new(fan, vec![v(&[1, 1]), v(&[1, 2])], None).unwrap()
    }

    fn figure_two() -> KatoData {
        let fan = Fan::from_star_script(3, &[v(&[1, 1, 1]), v(&[1, 2, 1])], &[]).unwrap();
        KatoData::new(fan, vec![v(&[1, 0, 0]), v(&[1, 2, 1]), v(&[1, 1, 1])], None).unwrap()
    }

    fn parabolic() -> KatoData {
        let fan = Fan::standard(2).star_subdivide(&v(&[1, 1])).unwrap();
        KatoData::new(fan, vec![v(&[1, 0]), v(&[1, 1])], None).unwrap()
    }

    fn hopf() -> KatoData {
        KatoData::new(Fan::standard(3), vec![v(&[0, 1, 0]), v(&[0, 0, 1]), v(&[1, 0, 0])], None).unwrap()
    }

    #[test]
    fn nakamura_inoue_hirzebruch() {
        let d = inoue_hirzebruch();
        let df = nakamura_fan(&d, DEFAULT_WINDOW).unwrap();
        assert_eq!(df.atilde, IntMatrix::from_rows(&[vec![1, 1, 2], vec![1, 2, 3], vec![0, 0, 1]]));
        assert_eq!(df.atilde.det(), BigInt::one());
        let expected = Fan::new(
            2,
            [
                vec![v(&[1, 0]), v(&[1, 1])],
                vec![v(&[1, 2]), v(&[0, 1])],
                vec![v(&[2, 3]), v(&[1, 2])],
                vec![v(&[2, 3]), v(&[1, 1])],
                vec![v(&[-1, -1]), v(&[0, 1])],
                vec![v(&[-1, -1]), v(&[1, 0])],
            ]
            .into_iter()
            .map(|g| Cone::new(g).unwrap()),
        )
        .unwrap();
        assert_eq!(df.central_fiber, expected);
        assert_eq!(df.central_fiber.max_cone_count(), 6);
        assert!(df.checks.all_pass(), "{:?}", df.checks);
        assert!(df.checks.truncation_regular && df.checks.central_fiber_regular);
    }

    #[test]
    fn window_zero_is_the_fundamental_domain() {
        let d = figure_two();
        let df = nakamura_fan(&d, 0).unwrap();
        assert!(df.checks.truncation_valid && df.checks.truncation_regular);
        let n = d.dim();
        let e = LatticeVector::unit(n + 1, n);
        // Every maximal cone contains e.
        assert!(df.truncation.max_cones().all(|c| c.has_generator(&e)));
        assert!(df.checks.all_pass(), "{:?}", df.checks);
    }

    #[test]
    fn isotrivial_choices() {
        let ih = isotrivial_u(&inoue_hirzebruch(), DEFAULT_U_BOUND);
        assert_eq!(ih.u, Some(v(&[1, 1])));
        assert_eq!(ih.source, Some(USource::Canonical));
        assert_eq!(isotrivial_u(&figure_two(), DEFAULT_U_BOUND).u, Some(v(&[1, 1, 1])));
        let p = isotrivial_u(&parabolic(), DEFAULT_U_BOUND);
        assert_eq!(p.u, None);
        assert_eq!(p.functional, Some(v(&[0, 1])));
        assert!(p.certificate.unwrap().contains("e2*"));
        let h = isotrivial_u(&hopf(), DEFAULT_U_BOUND);
        assert_eq!(h.u, None);
        assert_eq!(h.functional, Some(v(&[1, 1, 1])));
    }

    #[test]
    fn isotrivial_with_c_is_the_nakamura_central_fiber() {
        for d in [inoue_hirzebruch(), figure_two()] {
            let c = ones(d.dim());
            let df = isotrivial_fan(&d, &c, DEFAULT_WINDOW).unwrap();
            assert_eq!(df.central_fiber, nakamura_central_fiber(&d).unwrap());
            assert_eq!(df.checks.smooth_flag, Some(true));
            assert!(df.checks.all_pass(), "{:?}", df.checks);
            assert!(df.checks.central_fiber_regular);
        }
    }

    #[test]
    fn other_u_gives_a_singular_central_fiber() {
        let d = inoue_hirzebruch();
        let df = isotrivial_fan(&d, &v(&[2, 1]), DEFAULT_WINDOW).unwrap();
        assert_eq!(df.checks.smooth_flag, Some(false));
        assert!(!df.checks.central_fiber_regular);
        assert!(df.checks.all_pass(), "{:?}", df.checks);
        assert!(central_multiplicities(&df).iter().any(|m| *m > BigInt::one()));
    }

    #[test]
    fn isotrivial_rejections() {
        assert!(isotrivial_fan(&parabolic(), &v(&[1, 1]), 1).is_err());
        let d = inoue_hirzebruch();
        assert!(isotrivial_fan(&d, &v(&[2, 2]), 1).is_err());
        assert!(isotrivial_fan(&d, &v(&[0, 1]), 1).is_err());
    }

    #[test]
    fn v_solves_the_defining_equation() {
        let d = figure_two();
        let u = v(&[1, 1, 1]);
        let (w, exhaustive) = canonical_v(&d, &u).unwrap();
        let a = d.matrix();
        assert_eq!(a.mul_vec(&w).sub(&w), a.mul_vec(&u));
        assert!(exhaustive);
        assert_eq!(kernel_rank(&d), 1);
        // Brute force over a box for the minimal sup-norm.
        let mut best: Option<LatticeVector> = None;
        for x in -6i64..=6 {
            for y in -6i64..=6 {
                for z in -6i64..=6 {
                    let cand = v(&[x, y, z]);
                    if a.mul_vec(&cand).sub(&cand) == a.mul_vec(&u)
                        && best.as_ref().map_or(true, |b| (cand.sup_norm(), cand.0.clone()) < (b.sup_norm(), b.0.clone()))
                    {
                        best = Some(cand);
                    }
                }
            }
        }
        assert_eq!(Some(w), best);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn degenerations_of_random_data(n in 2usize..4, steps in 0usize..3, seed in 0u64..10_000) {
            let mut rng = StdRng::seed_from_u64(seed);
            let d = random_kato_data(n, steps, &mut rng);
            let nak = nakamura_fan(&d, 1).unwrap();
            prop_assert!(nak.checks.all_pass(), "{:?}", nak.checks);
            prop_assert!(nak.checks.truncation_regular && nak.checks.central_fiber_regular);
            let choice = isotrivial_u(&d, DEFAULT_U_BOUND);
            prop_assert_eq!(choice.u.is_some(), d.kind() == KatoType::Hyperbolic);
            if let Some(u) = choice.u {
                let iso = isotrivial_fan(&d, &u, 1).unwrap();
                prop_assert!(iso.checks.all_pass(), "{:?}", iso.checks);
            } else {
                let f = choice.functional.unwrap();
                let m = IntMatrix::identity(n).sub(d.matrix());
                prop_assert!(m.transpose().mul_vec(&f).is_zero());
                prop_assert!(f.is_nonnegative() && !f.is_zero());
            }
        }
    }
}
