//! Simplicial rational cones with primitive generators.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::lp::{feasible_point, Constraint, Relation};
use crate::linalg::{snf, IntMatrix, LatticeVector, Rat};

/// A simplicial cone, stored as its sorted list of primitive generators.
/// The zero cone has no generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    ambient: usize,
    gens: Vec<LatticeVector>,
}

impl Cone {
    /// Normalises generators to primitive vectors, sorts them, and rejects
    /// zero or linearly dependent input.
    pub fn new(gens: Vec<LatticeVector>) -> Result<Self> {
        let ambient = gens.first().map(LatticeVector::dim).ok_or_else(|| {
            Error::InvalidCone("a cone needs at least one generator; use Cone::zero for the origin".into())
        })?;
        Self::with_ambient(ambient, gens)
    }

    pub fn with_ambient(ambient: usize, gens: Vec<LatticeVector>) -> Result<Self> {
        let mut prim = Vec::with_capacity(gens.len());
        for g in gens {
            if g.dim() != ambient {
                return Err(Error::InvalidCone(format!("generator {g} is not in Z^{ambient}")));
            }
            if g.is_zero() {
                return Err(Error::InvalidCone("zero generator".into()));
            }
            prim.push(g.primitive());
        }
        prim.sort();
        if prim.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCone("repeated generator; the cone is degenerate".into()));
        }
        if !prim.is_empty() && IntMatrix::from_columns(&prim).rank() < prim.len() {
            return Err(Error::InvalidCone("generators are linearly dependent; the cone is not simplicial".into()));
        }
        Ok(Cone { ambient, gens: prim })
    }

    pub fn zero(ambient: usize) -> Self {
        Cone { ambient, gens: Vec::new() }
    }

    /// The positive orthant spanned by `e_1, ..., e_n`.
    pub fn orthant(n: usize) -> Self {
        let mut gens: Vec<LatticeVector> = (0..n).map(|j| LatticeVector::unit(n, j)).collect();
        gens.sort();
        Cone { ambient: n, gens }
    }

    pub fn generators(&self) -> &[LatticeVector] {
        &self.gens
    }

    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_full(&self) -> bool {
        self.gens.len() == self.ambient
    }

    pub fn has_generator(&self, v: &LatticeVector) -> bool {
        self.gens.binary_search(v).is_ok()
    }

    /// Index of the generated sublattice in its saturation.
    pub fn multiplicity(&self) -> BigInt {
        if self.gens.is_empty() {
            return BigInt::one();
        }
        let m = IntMatrix::from_columns(&self.gens);
        snf(&m).factors.iter().fold(BigInt::one(), |acc, f| acc * f)
    }

    /// Regular (smooth): generators extend to a basis of `Z^n`.
    pub fn is_regular(&self) -> bool {
        self.multiplicity().is_one()
    }

    /// Faces of dimension `k`.
    pub fn faces_of_dim(&self, k: usize) -> Vec<Cone> {
        subsets(self.gens.len(), k)
            .into_iter()
            .map(|s| Cone { ambient: self.ambient, gens: s.into_iter().map(|i| self.gens[i].clone()).collect() })
            .collect()
    }

    /// All nonzero faces, including the cone itself.
    pub fn faces(&self) -> Vec<Cone> {
        (1..=self.dim()).flat_map(|k| self.faces_of_dim(k)).collect()
    }

    /// Facets, each paired with the generator it omits.
    pub fn facets(&self) -> Vec<(Cone, LatticeVector)> {
        (0..self.gens.len())
            .map(|i| {
                let mut g = self.gens.clone();
                let out = g.remove(i);
                (Cone { ambient: self.ambient, gens: g }, out)
            })
            .collect()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.gens.iter().all(|g| other.has_generator(g))
    }

    /// Coefficients of `v` in terms of the generators, if `v` is in their span.
    pub fn coefficients(&self, v: &LatticeVector) -> Option<Vec<Rat>> {
        if self.gens.is_empty() {
            return v.is_zero().then(Vec::new);
        }
        let m = IntMatrix::from_columns(&self.gens).to_rat();
        m.solve(&v.to_rat())
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.coefficients(v).is_some_and(|c| !c.iter().any(Signed::is_negative))
    }

    pub fn contains_in_relative_interior(&self, v: &LatticeVector) -> bool {
        self.coefficients(v).is_some_and(|c| c.iter().all(Signed::is_positive))
    }

    /// Smallest face containing `v`, assuming `v` lies in the cone.
    pub fn carrier_face(&self, v: &LatticeVector) -> Option<Cone> {
        let c = self.coefficients(v)?;
        if c.iter().any(Signed::is_negative) {
            return None;
        }
        let gens = self.gens.iter().zip(&c).filter(|(_, x)| x.is_positive()).map(|(g, _)| g.clone()).collect();
        Some(Cone { ambient: self.ambient, gens })
    }

    /// Image under an invertible integer matrix; stays primitive when the
    /// matrix is unimodular.
    pub fn transform(&self, m: &IntMatrix) -> Cone {
        let mut gens: Vec<LatticeVector> = self.gens.iter().map(|g| m.mul_vec(g).primitive()).collect();
        gens.sort();
        Cone { ambient: m.rows(), gens }
    }

    /// Join with extra generators, which must keep the cone simplicial.
    pub fn join(&self, extra: &[LatticeVector]) -> Result<Cone> {
        let mut g = self.gens.clone();
        g.extend(extra.iter().cloned());
        Cone::with_ambient(self.ambient, g)
    }

    /// The cone in one dimension higher with a zero appended to every generator.
    pub fn lift(&self) -> Cone {
        let gens = self.gens.iter().map(|g| g.extend(BigInt::zero())).collect();
        Cone { ambient: self.ambient + 1, gens }
    }

    /// Sum of the generators, made primitive.
    pub fn barycenter(&self) -> LatticeVector {
        self.gens.iter().fold(LatticeVector::zero(self.ambient), |acc, g| acc.add(g)).primitive()
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(&self.gens)
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Whether two simplicial cones meet in a common face. Decided by a
/// separating functional: zero on the shared generators, at least 1 on the
/// rest of `a`, at most -1 on the rest of `b`.
pub fn cones_compatible(a: &Cone, b: &Cone) -> bool {
    if a == b {
        return true;
    }
    if let Some(ans) = shared_facet_shortcut(a, b) {
        return ans;
    }
    if let Some(ans) = full_compatible(a, b) {
        return ans;
    }
    separating_functional_exists(a, b)
}

fn separating_functional_exists(a: &Cone, b: &Cone) -> bool {
    let n = a.ambient;
    let to_rat = |g: &LatticeVector| g.to_rat();
    let mut cons = Vec::new();
    for g in &a.gens {
        let rel = if b.has_generator(g) { (Relation::Eq, Rat::zero()) } else { (Relation::Ge, Rat::one()) };
        cons.push(Constraint::new(to_rat(g), rel.0, rel.1));
    }
    for g in &b.gens {
        if !a.has_generator(g) {
            cons.push(Constraint::new(to_rat(g), Relation::Le, -Rat::one()));
        }
    }
    feasible_point(n, &cons).is_some()
}

// For full cones the functional is determined by its values `c_i >= 1` on
// the generators of `a` outside `b` (it vanishes on the shared ones), so the
// test is `c >= 1, M c <= -1` with `M[g][i] = <α_i, g>` for the dual basis
// `α` of `a` and the generators `g` of `b` outside `a`.
fn full_compatible(a: &Cone, b: &Cone) -> Option<bool> {
    if !a.is_full() || !b.is_full() {
        return None;
    }
    let inv = a.matrix().to_rat().inverse()?;
    let own: Vec<usize> = (0..a.gens.len()).filter(|&i| !b.has_generator(&a.gens[i])).collect();
    let rows: Vec<Vec<Rat>> = b
        .gens
        .iter()
        .filter(|g| !a.has_generator(g))
        .map(|g| {
            own.iter()
                .map(|&i| (0..a.ambient).map(|k| &inv[(i, k)] * Rat::from_integer(g.0[k].clone())).sum())
                .collect()
        })
        .collect();
    if rows.iter().any(|r: &Vec<Rat>| r.iter().all(|x| !x.is_negative())) {
        return Some(false);
    }
    if rows.iter().all(|r| r.iter().all(|x| !x.is_positive())) {
        return Some(true);
    }
    // Substitute c = 1 + y with y >= 0.
    let k = own.len();
    let mut cons: Vec<Constraint> = (0..k)
        .map(|i| Constraint::new((0..k).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect(), Relation::Ge, Rat::zero()))
        .collect();
    for r in rows {
        let total: Rat = r.iter().sum();
        cons.push(Constraint::new(r, Relation::Le, -Rat::one() - total));
    }
    Some(feasible_point(k, &cons).is_some())
}

// Two full cones sharing a facet are compatible iff the two opposite
// generators lie strictly on opposite sides of the facet hyperplane.
fn shared_facet_shortcut(a: &Cone, b: &Cone) -> Option<bool> {
    let n = a.ambient;
    if !a.is_full() || !b.is_full() {
        return None;
    }
    let common: Vec<&LatticeVector> = a.gens.iter().filter(|g| b.has_generator(g)).collect();
    if common.len() != n - 1 {
        return None;
    }
    let pa = a.gens.iter().find(|g| !b.has_generator(g))?;
    let pb = b.gens.iter().find(|g| !a.has_generator(g))?;
    let side = |p: &LatticeVector| {
        let mut cols: Vec<LatticeVector> = common.iter().map(|g| (*g).clone()).collect();
        cols.push(p.clone());
        IntMatrix::from_columns(&cols).det()
    };
    let (sa, sb) = (side(pa), side(pb));
    Some(sa.is_positive() && sb.is_negative() || sa.is_negative() && sb.is_positive())
}
