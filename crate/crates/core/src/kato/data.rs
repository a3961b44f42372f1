//! Toric Kato data: a modification fan, a distinguished top cone whose
//! generators (in a declared order) form the Kato matrix, and the
//! log-parameters `ℓ` with `λ_j = exp(2πi ℓ_j)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{principal_submatrix, KatoMatrix, KatoType};
use crate::error::{Error, Result};
use crate::fan::{Cone, Fan};
use crate::linalg::{IntMatrix, LatticeVector, Rat};

/// An exact complex rational `re + im·i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat { re: Rat::zero(), im: Rat::zero() }
    }

    /// Parses a pair of rational strings such as `("1/2", "-3")`.
    pub fn parse(re: &str, im: &str) -> Result<Self> {
        Ok(GaussRat { re: parse_rat(re)?, im: parse_rat(im)? })
    }

    pub fn add(&self, other: &Self) -> Self {
        GaussRat { re: &self.re + &other.re, im: &self.im + &other.im }
    }

    pub fn sub(&self, other: &Self) -> Self {
        GaussRat { re: &self.re - &other.re, im: &self.im - &other.im }
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) if self.im.is_negative() => write!(f, "{}-{}i", self.re, -&self.im),
            (false, false) => write!(f, "{}+{}i", self.re, self.im),
        }
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    Rat::from_str(t).map_err(|_| Error::Parse(format!("'{s}' is not a rational number")))
}

/// Log-parameters of the torus factor of the germ.
#[derive(Clone, Debug, PartialEq)]
pub enum LogParams {
    Exact(Vec<GaussRat>),
    /// Lossy input; answers depending on it are tolerance-qualified.
    Approximate(Vec<(f64, f64)>),
}

impl LogParams {
    /// `ℓ = (i, ..., i)`, i.e. every `|λ_j| = e^{-2π}`.
    pub fn imaginary_unit(n: usize) -> Self {
        LogParams::Exact(vec![GaussRat::new(Rat::zero(), Rat::one()); n])
    }

    pub fn len(&self) -> usize {
        match self {
            LogParams::Exact(v) => v.len(),
            LogParams::Approximate(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, LogParams::Exact(_))
    }

    pub fn exact(&self) -> Option<&[GaussRat]> {
        match self {
            LogParams::Exact(v) => Some(v),
            LogParams::Approximate(_) => None,
        }
    }

    pub fn to_f64(&self) -> Vec<(f64, f64)> {
        match self {
            LogParams::Exact(v) => v.iter().map(|z| (rat_f64(&z.re), rat_f64(&z.im))).collect(),
            LogParams::Approximate(v) => v.clone(),
        }
    }

    /// Whether `Im ℓ_j > 0`, i.e. `|λ_j| < 1`.
    fn contracting_at(&self, j: usize) -> bool {
        match self {
            LogParams::Exact(v) => v[j].im.is_positive(),
            LogParams::Approximate(v) => v[j].1 > 0.0,
        }
    }

    /// `m ℓ`, the log-parameter of `λ^m` in the exponent convention
    /// `(λ^m)_j = Π_k λ_k^{m_jk}`.
    pub fn apply(&self, m: &IntMatrix) -> LogParams {
        match self {
            LogParams::Exact(v) => {
                let re: Vec<Rat> = v.iter().map(|z| z.re.clone()).collect();
                let im: Vec<Rat> = v.iter().map(|z| z.im.clone()).collect();
                let (re, im) = (m.mul_rat_vec(&re), m.mul_rat_vec(&im));
                LogParams::Exact(re.into_iter().zip(im).map(|(a, b)| GaussRat::new(a, b)).collect())
            }
            LogParams::Approximate(v) => {
                let mf = m.to_f64();
                LogParams::Approximate(
                    mf.iter()
                        .map(|row| {
                            row.iter().zip(v).fold((0.0, 0.0), |(a, b), (x, (re, im))| (a + x * re, b + x * im))
                        })
                        .collect(),
                )
            }
        }
    }

    fn add(&self, other: &LogParams) -> LogParams {
        match (self, other) {
            (LogParams::Exact(a), LogParams::Exact(b)) => {
                LogParams::Exact(a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
            }
            _ => {
                let (a, b) = (self.to_f64(), other.to_f64());
                LogParams::Approximate(a.iter().zip(&b).map(|(x, y)| (x.0 + y.0, x.1 + y.1)).collect())
            }
        }
    }
}

fn rat_f64(r: &Rat) -> f64 {
    crate::linalg::rat_to_f64(std::slice::from_ref(r))[0]
}

/// Validated toric Kato data.
#[derive(Clone, Debug, PartialEq)]
pub struct KatoData {
    fan: Fan,
    tau: Cone,
    columns: Vec<LatticeVector>,
    kato: KatoMatrix,
    ell: Option<LogParams>,
}

impl KatoData {
    /// Validates every invariant: the fan is a regular subdivision of the
    /// orthant whose new rays are strictly positive, the columns span one of
    /// its maximal cones, they form a Kato matrix, and `ℓ` contracts along
    /// every row of `A` with row sum 1.
    pub fn new(fan: Fan, columns: Vec<LatticeVector>, ell: Option<LogParams>) -> Result<Self> {
        fan.validate().map_err(|e| Error::InvalidKatoData(e.to_string()))?;
        Self::build(fan, columns, ell)
    }

    /// Same checks as [`KatoData::new`] except the pairwise compatibility of
    /// cones, for fans that are valid by construction.
    fn build(fan: Fan, columns: Vec<LatticeVector>, ell: Option<LogParams>) -> Result<Self> {
        let n = fan.dim();
        let bad = |msg: String| Err(Error::InvalidKatoData(msg));
        if n < 2 {
            return bad("dimension must be at least 2".into());
        }
        if columns.len() != n || columns.iter().any(|c| c.dim() != n) {
            return bad(format!("need {n} columns in Z^{n}"));
        }
        if !fan.refines(&Fan::standard(n)) {
            return bad("the fan does not subdivide the positive orthant".into());
        }
        if !fan.is_regular() {
            let c = fan.max_cones().find(|c| !c.is_regular()).expect("some cone is singular");
            return bad(format!("cone {c} is not regular"));
        }
        for r in fan.rays() {
            if r.standard_index().is_none() && !r.is_strictly_positive() {
                return bad(format!("ray {r} is neither standard nor strictly positive"));
            }
        }
        let tau = Cone::new(columns.clone()).map_err(|e| Error::InvalidKatoData(e.to_string()))?;
        if !fan.max_cones().any(|c| *c == tau) {
            return bad(format!("the cone {tau} spanned by the columns is not a maximal cone of the fan"));
        }
        let kato = KatoMatrix::new(IntMatrix::from_columns(&columns))?;
        if let Some(ell) = &ell {
            if ell.len() != n {
                return bad(format!("expected {n} log-parameters, got {}", ell.len()));
            }
            let a = kato.matrix();
            for j in 0..n {
                let row_sum: num_bigint::BigInt = a.row(j).0.iter().sum();
                if row_sum.is_one() && !ell.contracting_at(j) {
                    return bad(format!(
                        "row {} of A sums to 1, so Im ℓ_{} must be positive for the germ to contract",
                        j + 1,
                        j + 1
                    ));
                }
            }
        }
        Ok(KatoData { fan, tau, columns, kato, ell })
    }

    pub fn dim(&self) -> usize {
        self.fan.dim()
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn tau(&self) -> &Cone {
        &self.tau
    }

    /// Generators of the distinguished cone in the declared order.
    pub fn columns(&self) -> &[LatticeVector] {
        &self.columns
    }

    pub fn kato(&self) -> &KatoMatrix {
        &self.kato
    }

    pub fn matrix(&self) -> &IntMatrix {
        self.kato.matrix()
    }

    pub fn kind(&self) -> KatoType {
        self.kato.kind()
    }

    pub fn ell(&self) -> Option<&LogParams> {
        self.ell.as_ref()
    }

    pub fn with_ell(&self, ell: Option<LogParams>) -> Result<Self> {
        Self::build(self.fan.clone(), self.columns.clone(), ell)
    }

    /// Every cone of the fan except the distinguished one.
    pub fn fundamental_cones(&self) -> BTreeSet<Cone> {
        self.fan.cones().into_iter().filter(|c| *c != self.tau).collect()
    }

    /// All cones `A^k σ` with `σ` a cone other than the distinguished one and
    /// `lo <= k < hi`: a finite window of the infinite fan.
    pub fn window_cones(&self, lo: i64, hi: i64) -> BTreeSet<Cone> {
        let base = self.fundamental_cones();
        let mut out = BTreeSet::new();
        for k in lo..hi {
            let m = self.matrix().pow_signed(k).expect("Kato matrices are unimodular");
            out.extend(base.iter().map(|c| c.transform(&m)));
        }
        out
    }

    /// The data of the `k`-th iterate of the germ: fan
    /// `{A^i σ : σ ≠ τ_A, 0 <= i < k} ∪ {A^{k-1} τ_A}`, matrix `A^k`, and
    /// `ℓ' = (I + A + ... + A^{k-1}) ℓ`.
    pub fn power_data(&self, k: u32) -> Result<KatoData> {
        if k == 0 {
            return Err(Error::InvalidKatoData("power must be at least 1".into()));
        }
        if k == 1 {
            return Ok(self.clone());
        }
        let a = self.matrix();
        let last = a.pow(u64::from(k) - 1);
        let mut cones = self.window_cones(0, i64::from(k));
        cones.insert(self.tau.transform(&last));
        let fan = Fan::from_cones_unchecked(self.dim(), cones);
        let columns = self.columns.iter().map(|c| last.mul_vec(c)).collect();
        let ell = self.ell.as_ref().map(|l| {
            let mut acc = l.clone();
            let mut term = l.clone();
            for _ in 1..k {
                term = term.apply(a);
                acc = acc.add(&term);
            }
            acc
        });
        Self::build(fan, columns, ell)
    }

    /// The finite fan `⋃_{l <= k < m} A^k Σ̂_0 ∪ A^m Σ`, where `Σ` is the fan
    /// of the orthant. `(0, 0)` gives the orthant and `(0, 1)` the
    /// modification fan itself.
    pub fn collapsed_fan(&self, l: i64, m: i64) -> Result<Fan> {
        if l > m {
            return Err(Error::InvalidFan(format!("collapsed fan needs l <= m, got l = {l}, m = {m}")));
        }
        let mut cones = self.window_cones(l, m);
        let top = self.matrix().pow_signed(m).expect("Kato matrices are unimodular");
        cones.insert(Cone::orthant(self.dim()).transform(&top));
        Fan::new(self.dim(), cones)
    }

    pub fn germ_report(&self) -> GermReport {
        let n = self.dim();
        let a = self.matrix();
        let pa = self.kato.pa();
        let comp = self.kato.complement();
        let one_based = |v: &[usize]| v.iter().map(|j| j + 1).collect::<Vec<_>>();
        let invariant_set = if comp.is_empty() {
            format!("C^{n}")
        } else {
            let conds: Vec<String> = comp.iter().map(|j| format!("z{} ≠ 0", j + 1)).collect();
            format!("{{{}}}", conds.join(", "))
        };
        let reduced_matrix = (!comp.is_empty()).then(|| principal_submatrix(a, &comp));
        let splitting = match self.kind() {
            KatoType::Hopf => "W_T(F) = T_N (no hyperbolic factor)".to_string(),
            KatoType::Parabolic => "W_T(F) = T_N".to_string(),
            KatoType::Hyperbolic if pa.is_empty() => "W_T(F) has no torus factor (P(A) is empty)".to_string(),
            KatoType::Hyperbolic => format!(
                "W_T(F) = T_P × W_T(F') with dim T_P = {} and F' the germ of A restricted to indices {:?}",
                pa.len(),
                one_based(&comp)
            ),
        };
        let reduced_ell = match (&self.ell, comp.is_empty()) {
            (Some(LogParams::Exact(v)), false) => Some(comp.iter().map(|&j| v[j].to_string()).collect()),
            _ => None,
        };
        GermReport {
            kind: self.kind(),
            p: one_based(pa),
            h_infinity: one_based(&comp),
            invariant_set,
            torus_factor_dim: pa.len(),
            reduced_matrix: reduced_matrix.map(|m| m.to_string()),
            reduced_ell,
            splitting,
            germ: germ_string(a),
        }
    }
}

/// Combinatorial descriptors of the germ `z ↦ λ z^A`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GermReport {
    pub kind: KatoType,
    /// `P(A)`, 1-based.
    pub p: Vec<usize>,
    /// Indices `j ∈ P(A)^c`; the hypersurface at infinity is `⋃ {z_j = 0}`.
    pub h_infinity: Vec<usize>,
    pub invariant_set: String,
    pub torus_factor_dim: usize,
    pub reduced_matrix: Option<String>,
    pub reduced_ell: Option<Vec<String>>,
    pub splitting: String,
    pub germ: String,
}

fn germ_string(a: &IntMatrix) -> String {
    let n = a.rows();
    let comps: Vec<String> = (0..n)
        .map(|j| {
            let mut s = format!("λ{}", j + 1);
            for k in 0..n {
                let e = &a[(j, k)];
                if e.is_zero() {
                    continue;
                }
                if e.is_one() {
                    s.push_str(&format!("·z{}", k + 1));
                } else {
                    s.push_str(&format!("·z{}^{}", k + 1, e));
                }
            }
            s
        })
        .collect();
    format!("F(z) = ({})", comps.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::random::random_kato_data;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn v(x: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(x)
    }

    fn single_blow_up(ell: Option<LogParams>) -> Result<KatoData> {
        let fan = Fan::standard(2).star_subdivide(&v(&[1, 1])).unwrap();
        KatoData::new(fan, vec![v(&[1, 0]), v(&[1, 1])], ell)
    }

    fn inoue_hirzebruch() -> KatoData {
        let fan = Fan::standard(2).star_subdivide(&v(&[1, 1])).unwrap().star_subdivide(&v(&[1, 2])).unwrap();
        KatoData::new(fan, vec![v(&[1, 1]), v(&[1, 2])], None).unwrap()
    }

    fn gi(re: (i64, i64), im: (i64, i64)) -> GaussRat {
        GaussRat::new(rat(re.0, re.1), rat(im.0, im.1))
    }

    #[test]
    fn contraction_criterion() {
        assert!(single_blow_up(Some(LogParams::imaginary_unit(2))).is_ok());
        let flat = LogParams::Exact(vec![gi((0, 1), (1, 1)), gi((0, 1), (0, 1))]);
        assert!(single_blow_up(Some(flat)).is_err());
        // Row 1 of [[1,1],[0,1]] sums to 2, so only Im ℓ_2 matters.
        let ok = LogParams::Exact(vec![gi((0, 1), (0, 1)), gi((1, 2), (1, 3))]);
        assert!(single_blow_up(Some(ok)).is_ok());
    }

    #[test]
    fn distinguished_cone_must_be_in_the_fan() {
        let fan = Fan::standard(2).star_subdivide(&v(&[1, 1])).unwrap();
        assert!(KatoData::new(fan, vec![v(&[1, 0]), v(&[1, 2])], None).is_err());
    }

    #[test]
    fn negative_new_rays_rejected() {
        let fan = Fan::new(2, [Cone::new(vec![v(&[1, 0]), v(&[0, 1])]).unwrap()]).unwrap();
        let hopf = KatoData::new(fan.clone(), vec![v(&[0, 1]), v(&[1, 0])], None).unwrap();
        assert_eq!(hopf.kind(), KatoType::Hopf);
        let bad = Fan::new(2, [Cone::new(vec![v(&[1, 0]), v(&[1, 1])]).unwrap()]).unwrap();
        assert!(KatoData::new(bad, vec![v(&[1, 0]), v(&[1, 1])], None).is_err());
    }

    #[test]
    fn inoue_hirzebruch_square() {
        let d = inoue_hirzebruch();
        let p = d.power_data(2).unwrap();
        let rays: BTreeSet<LatticeVector> = p.fan().rays().into_iter().collect();
        let expected: BTreeSet<LatticeVector> =
            [[1, 0], [0, 1], [1, 1], [1, 2], [2, 3], [3, 5]].iter().map(|r| v(r)).collect();
        assert_eq!(rays, expected);
        assert_eq!(p.fan().max_cone_count(), 5);
        assert_eq!(p.matrix(), &d.matrix().pow(2));
        assert!(p.fan().validate().is_ok());
    }

    #[test]
    fn parabolic_square_has_three_cones() {
        let d = single_blow_up(Some(LogParams::imaginary_unit(2))).unwrap();
        let p = d.power_data(2).unwrap();
        assert_eq!(p.fan().max_cone_count(), 3);
        // ℓ' = (I + A) ℓ with A = [[1,1],[0,1]] and ℓ = (i, i).
        assert_eq!(p.ell().unwrap().exact().unwrap(), &[gi((0, 1), (3, 1)), gi((0, 1), (2, 1))]);
    }

    #[test]
    fn first_power_is_identity() {
        let d = inoue_hirzebruch();
        assert_eq!(d.power_data(1).unwrap(), d);
    }

    #[test]
    fn collapsed_fans() {
        let d = inoue_hirzebruch();
        assert_eq!(d.collapsed_fan(0, 0).unwrap(), Fan::standard(2));
        assert_eq!(&d.collapsed_fan(0, 1).unwrap(), d.fan());
        let f = d.collapsed_fan(-1, 1).unwrap();
        assert!(f.is_regular());
        let inv = d.matrix().inverse_unimodular().unwrap();
        let mut expected: BTreeSet<LatticeVector> = d.fan().rays().iter().map(|r| inv.mul_vec(r)).collect();
        expected.extend(d.fan().rays());
        expected.extend(Fan::standard(2).rays().iter().map(|r| d.matrix().mul_vec(r)));
        assert_eq!(f.rays().into_iter().collect::<BTreeSet<_>>(), expected);
    }

    #[test]
    fn germ_report_for_figure_two_matrix() {
        let fan = Fan::from_star_script(3, &[v(&[1, 1, 1]), v(&[1, 2, 1])], &[]).unwrap();
        let d = KatoData::new(fan, vec![v(&[1, 0, 0]), v(&[1, 2, 1]), v(&[1, 1, 1])], None).unwrap();
        let r = d.germ_report();
        assert_eq!(r.h_infinity, vec![2, 3]);
        assert_eq!(r.invariant_set, "{z2 ≠ 0, z3 ≠ 0}");
        assert_eq!(r.p, vec![1]);
        let para = single_blow_up(None).unwrap().germ_report();
        assert_eq!(para.torus_factor_dim, 1);
        assert_eq!(para.splitting, "W_T(F) = T_N");
    }

    #[test]
    fn parse_gaussian_rationals() {
        let z = GaussRat::parse("-1/2", "3").unwrap();
        assert_eq!(z, gi((-1, 2), (3, 1)));
        assert_eq!(z.to_string(), "-1/2+3i");
        assert!(GaussRat::parse("x", "1").is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10))]
        #[test]
        fn powers_compose(n in 2usize..4, steps in 0usize..3, seed in 0u64..1000) {
            let mut rng = StdRng::seed_from_u64(seed);
            let d = random_kato_data(n, steps, &mut rng);
            let six = d.power_data(6).unwrap();
            let two_three = d.power_data(2).unwrap().power_data(3).unwrap();
            prop_assert_eq!(six.fan(), two_three.fan());
            prop_assert_eq!(six.matrix(), two_three.matrix());
            prop_assert_eq!(six.ell(), two_three.ell());
        }

        #[test]
        fn collapsed_supports_nest(n in 2usize..4, steps in 0usize..2, seed in 0u64..1000) {
            let mut rng = StdRng::seed_from_u64(seed);
            let d = random_kato_data(n, steps, &mut rng);
            let small = d.collapsed_fan(-1, 2).unwrap();
            let big = d.collapsed_fan(-1, 1).unwrap();
            prop_assert!(small.is_regular() && big.is_regular());
            // Rays and cone barycenters of the deeper fan lie in the support
            // of the shallower one.
            for r in small.rays() {
                prop_assert!(big.support_contains(&r));
            }
            for c in small.max_cones() {
                prop_assert!(big.support_contains(&c.barycenter()));
            }
        }
    }
}
