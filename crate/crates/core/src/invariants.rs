//! Topological and analytic invariants of a toric Kato manifold read off
//! from its combinatorial data.

use std::collections::BTreeMap;

use num_traits::Zero;
use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::fan::Cone;
use crate::kato::{KatoData, KatoType};
use crate::linalg::{IntMatrix, LatticeVector};

/// Default number of `ord(s)`-blocks of translates used by truncated
/// computations.
pub const DEFAULT_DEPTH: u32 = 3;

fn choose(m: usize, k: usize) -> i64 {
    if k > m {
        0
    } else {
        num_integer::binomial(m as i64, k as i64)
    }
}

/// Betti numbers `b_0, ..., b_{2n}` from the cone counts `a_0, ..., a_n` of
/// the modification fan.
pub fn betti_from_counts(counts: &[usize]) -> Vec<i64> {
    let n = counts.len() - 1;
    let mut b = vec![0i64; 2 * n + 1];
    for j in [0, 1, 2 * n - 1, 2 * n] {
        b[j] = 1;
    }
    for j in 1..n {
        let mut sum = -1;
        for s in j..=n {
            let sign = if (s - j) % 2 == 0 { 1 } else { -1 };
            sum += sign * choose(s, j) * (counts[n - s] as i64 + choose(n, s + 1));
        }
        b[2 * j] = sum;
    }
    b
}

pub fn betti(d: &KatoData) -> Vec<i64> {
    betti_from_counts(&d.fan().cone_counts())
}

/// `a_n - 1`.
pub fn euler(d: &KatoData) -> i64 {
    d.fan().max_cone_count() as i64 - 1
}

/// Number of irreducible components of the exceptional divisor, `a_1 - n`.
pub fn sharp_d(d: &KatoData) -> usize {
    d.fan().rays().len() - d.dim()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HodgeStatus {
    Exact,
    ConditionalParabolic,
    NotComputed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeNumber {
    pub p: usize,
    pub q: usize,
    pub value: u64,
}

/// The Hodge numbers `h^{0,q}`, `h^{p,0}` and `h^{1,q}` that are known in
/// closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeTable {
    pub status: HodgeStatus,
    pub entries: Vec<HodgeNumber>,
    pub note: Option<String>,
}

impl HodgeTable {
    pub fn get(&self, p: usize, q: usize) -> Option<u64> {
        self.entries.iter().find(|h| h.p == p && h.q == q).map(|h| h.value)
    }
}

pub fn hodge(d: &KatoData) -> HodgeTable {
    let n = d.dim();
    let k = d.kato();
    let (status, note) = match d.kind() {
        KatoType::Hyperbolic => (HodgeStatus::Exact, None),
        KatoType::Parabolic => (
            HodgeStatus::ConditionalParabolic,
            Some("valid for parameters close enough to the Nakamura central fiber".to_string()),
        ),
        KatoType::Hopf => {
            let cycles = k.cycles();
            if cycles.iter().all(|c| c.len() == 1) || cycles.len() == 1 {
                (HodgeStatus::Exact, Some("Hopf quotient: ♯D = 0".to_string()))
            } else {
                return HodgeTable {
                    status: HodgeStatus::NotComputed,
                    entries: Vec::new(),
                    note: Some("Hopf quotient with several nontrivial cycles".to_string()),
                };
            }
        }
    };
    let sharp = sharp_d(d) as u64;
    let mut entries = Vec::new();
    for q in 0..=n {
        entries.push(HodgeNumber { p: 0, q, value: u64::from(q <= 1) });
    }
    for p in 1..=n {
        entries.push(HodgeNumber { p, q: 0, value: 0 });
    }
    for q in 1..=n {
        entries.push(HodgeNumber { p: 1, q, value: if q == 1 { sharp } else { 0 } });
    }
    HodgeTable { status, entries, note }
}

/// Dimensions `h^i` for `i = 0..=n` of the log tangent and log cotangent
/// sheaves of `D_T`; `None` where no closed form is available.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LogCohomology {
    pub tangent: Vec<Option<usize>>,
    pub cotangent: Vec<Option<usize>>,
}

pub fn log_sheaf_cohomology(d: &KatoData) -> LogCohomology {
    let n = d.dim();
    let a = d.matrix();
    let fixed = |m: &IntMatrix| n - m.sub(&IntMatrix::identity(n)).rank();
    let column = |h0: usize| -> Vec<Option<usize>> {
        (0..=n)
            .map(|i| match (i, d.kind()) {
                (0, _) => Some(h0),
                (1, KatoType::Hyperbolic) => Some(h0),
                (_, KatoType::Hyperbolic) => Some(0),
                _ => None,
            })
            .collect()
    };
    LogCohomology { tangent: column(fixed(a)), cotangent: column(fixed(&a.transpose())) }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalReport {
    pub det_sign: i32,
    pub sharp_d: usize,
    pub sharp_dt: usize,
    /// Number of cycles of the permutation `s`, one hypersurface each.
    pub cycles: usize,
    pub statement: String,
    pub kodaira: String,
}

pub fn canonical_report(d: &KatoData) -> CanonicalReport {
    let cycles = d.kato().cycles().len();
    let sharp = sharp_d(d);
    CanonicalReport {
        det_sign: d.kato().det_sign(),
        sharp_d: sharp,
        sharp_dt: sharp + cycles,
        cycles,
        statement: "K_X ⊗ L_{det A} = O_X(-D_T)".to_string(),
        kodaira: "negative".to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveCensus {
    pub elliptic: usize,
    pub rational: usize,
    pub depth: u32,
    /// Whether the counts match the type of the matrix.
    pub consistent: bool,
    pub note: Option<String>,
}

/// Orbits of `(n-1)`-cones under `A`, counted on the window
/// `0 <= k <= depth * ord(s)` of translates of the fundamental domain.
pub fn curve_census(d: &KatoData, depth: u32) -> CurveCensus {
    let n = d.dim();
    let a = d.matrix();
    let ord = d.kato().order_of_s();
    let hi = i64::from(depth) * ord as i64 + 1;
    let cones: Vec<Cone> = d.window_cones(0, hi).into_iter().filter(|c| c.dim() == n - 1).collect();
    let index: BTreeMap<&Cone, usize> = cones.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut uf = UnionFind::new(cones.len());
    for (i, c) in cones.iter().enumerate() {
        if let Some(&j) = index.get(&c.transform(a)) {
            uf.union(i, j);
        }
    }
    let mut classes: BTreeMap<usize, &Cone> = BTreeMap::new();
    for (i, c) in cones.iter().enumerate() {
        classes.entry(uf.find(i)).or_insert(c);
    }
    let max_period = ord as usize * n;
    let mut elliptic = 0;
    for rep in classes.values() {
        let mut image = (*rep).clone();
        let mut periodic = false;
        for _ in 0..max_period {
            image = image.transform(a);
            if image == **rep {
                periodic = true;
                break;
            }
        }
        if periodic {
            elliptic += 1;
        }
    }
    let rational = classes.len() - elliptic;
    let consistent = match d.kind() {
        KatoType::Hopf => rational == 0,
        KatoType::Hyperbolic => elliptic == 0,
        KatoType::Parabolic => elliptic == 1 && rational >= 1,
    };
    let note = (d.kind() == KatoType::Hopf && ord > 1)
        .then(|| "nontrivial permutation: elliptic count is the number of orbits of (n-1)-faces".to_string());
    CurveCensus { elliptic, rational, depth, consistent, note }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Connectivity {
    /// Components of `D` and `D_T` predicted by the structure theory, where
    /// it applies.
    pub expected_d: Option<usize>,
    pub expected_dt: Option<usize>,
    /// Components counted on the dual graph of a truncation.
    pub d_components: usize,
    pub dt_components: usize,
    /// Components of the lift of `D` to the universal cover, seen in the
    /// window `-depth * ord(s) <= k <= depth * ord(s)`.
    pub lifted_d_components: usize,
    pub d_connected: bool,
    pub dt_connected: bool,
    pub agrees: bool,
    pub depth: u32,
}

pub fn divisor_connectivity(d: &KatoData, depth: u32) -> Connectivity {
    let n = d.dim();
    let span = i64::from(depth.max(1)) * d.kato().order_of_s() as i64;
    let d_components = dual_graph_components(d, 0, span + 1, false, true);
    let dt_components = dual_graph_components(d, 0, span + 1, true, true);
    let lifted_d_components = dual_graph_components(d, -span, span + 1, false, false);
    let (expected_d, expected_dt) = match (d.kind(), n) {
        (KatoType::Hopf, 2) => (Some(0), None),
        (KatoType::Hopf, _) => (Some(0), Some(1)),
        (_, 3..) => (Some(1), Some(1)),
        (KatoType::Parabolic, _) => (Some(1), Some(2)),
        (KatoType::Hyperbolic, _) => {
            let c = if d.kato().det_sign() < 0 { 1 } else { 2 };
            (Some(c), Some(c))
        }
    };
    let agrees = expected_d.map_or(true, |e| e == d_components) && expected_dt.map_or(true, |e| e == dt_components);
    Connectivity {
        expected_d,
        expected_dt,
        d_components,
        dt_components,
        lifted_d_components,
        d_connected: expected_d.unwrap_or(d_components) == 1,
        dt_connected: expected_dt.unwrap_or(dt_components) == 1,
        agrees,
        depth,
    }
}

// Components of the graph whose vertices are the rays of the window (without
// the rays `e_k, k ∈ P(A)` unless `with_p`) and whose edges are 2-cones,
// optionally glued along `ρ ~ Aρ`.
fn dual_graph_components(d: &KatoData, lo: i64, hi: i64, with_p: bool, identify: bool) -> usize {
    let pa = d.kato().pa();
    let a = d.matrix();
    let cones = d.window_cones(lo, hi);
    let in_tau_p = |r: &LatticeVector| r.0.iter().enumerate().all(|(i, x)| pa.contains(&i) || x.is_zero());
    let rays: Vec<&LatticeVector> = cones
        .iter()
        .filter(|c| c.dim() == 1)
        .map(|c| &c.generators()[0])
        .filter(|r| with_p || !in_tau_p(r))
        .collect();
    let index: BTreeMap<&LatticeVector, usize> = rays.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    let mut uf = UnionFind::new(rays.len());
    for c in cones.iter().filter(|c| c.dim() == 2) {
        let g = c.generators();
        if let (Some(&i), Some(&j)) = (index.get(&g[0]), index.get(&g[1])) {
            uf.union(i, j);
        }
    }
    if identify {
        for (i, r) in rays.iter().enumerate() {
            if let Some(&j) = index.get(&a.mul_vec(r)) {
                uf.union(i, j);
            }
        }
    }
    let mut roots: Vec<usize> = (0..rays.len()).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Exists,
    Nonexistent,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetricReport {
    pub lck: Verdict,
    /// The support function certifying projectivity of the completed fan
    /// was re-checked exactly.
    pub lck_witness_verified: bool,
    pub balanced: Verdict,
    pub strongly_gauduchon: Verdict,
    pub hermitian_symplectic: Verdict,
    pub pluriclosed: Verdict,
    pub notes: Vec<String>,
}

pub fn metric_report(d: &KatoData) -> MetricReport {
    let completed = d.fan().complete_to_pn().expect("Kato data subdivide the orthant");
    let witness = completed.is_projective();
    let lck_witness_verified = witness.as_ref().is_some_and(|w| w.verify(&completed));
    let lck = if witness.is_some() { Verdict::Exists } else { Verdict::Nonexistent };
    let mut notes = vec!["lcK holds exactly when the projective completion of the modification is projective".to_string()];
    let pluriclosed = if d.dim() >= 3 && d.kind() == KatoType::Hyperbolic {
        Verdict::Nonexistent
    } else {
        notes.push(if d.dim() == 2 {
            "pluriclosed metrics exist on some Kato surfaces".to_string()
        } else {
            "pluriclosed: no closed-form answer outside the hyperbolic case".to_string()
        });
        Verdict::Unknown
    };
    MetricReport {
        lck,
        lck_witness_verified,
        balanced: Verdict::Nonexistent,
        strongly_gauduchon: Verdict::Nonexistent,
        hermitian_symplectic: Verdict::Nonexistent,
        pluriclosed,
        notes,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub dim: usize,
    pub kind: KatoType,
    pub cone_counts: Vec<usize>,
    pub betti: Vec<i64>,
    pub euler: i64,
    pub sharp_d: usize,
    pub sharp_dt: usize,
    pub hodge: HodgeTable,
    pub log_cohomology: LogCohomology,
    pub canonical: CanonicalReport,
    pub census: CurveCensus,
    pub connectivity: Connectivity,
    pub metrics: MetricReport,
}

pub fn invariant_report(d: &KatoData, depth: u32) -> InvariantReport {
    let canonical = canonical_report(d);
    InvariantReport {
        dim: d.dim(),
        kind: d.kind(),
        cone_counts: d.fan().cone_counts(),
        betti: betti(d),
        euler: euler(d),
        sharp_d: canonical.sharp_d,
        sharp_dt: canonical.sharp_dt,
        hodge: hodge(d),
        log_cohomology: log_sheaf_cohomology(d),
        canonical,
        census: curve_census(d, depth),
        connectivity: divisor_connectivity(d, depth),
        metrics: metric_report(d),
    }
}
