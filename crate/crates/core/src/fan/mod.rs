//! Simplicial fans: validation, face counts, star subdivisions and their
//! inverses, regularization, completeness and projectivity.

mod cone;
mod projective;

pub use cone::{cones_compatible, Cone};
pub use projective::{is_projective_direct, ProjectivityWitness};

pub(crate) use cone::subsets;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, LatticeVector};

/// Hard cap on the number of subdivisions `regularize` may perform.
pub const REGULARIZE_CAP: usize = 10_000;

/// A simplicial fan, stored by its maximal cones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan {
    dim: usize,
    max_cones: BTreeSet<Cone>,
}

impl Fan {
    /// Builds and validates a fan; non-maximal input cones are dropped.
    pub fn new(dim: usize, cones: impl IntoIterator<Item = Cone>) -> Result<Fan> {
        let fan = Self::from_cones_unchecked(dim, cones);
        fan.validate()?;
        Ok(fan)
    }

    pub fn from_cones_unchecked(dim: usize, cones: impl IntoIterator<Item = Cone>) -> Fan {
        let all: BTreeSet<Cone> = cones.into_iter().filter(|c| c.dim() > 0).collect();
        let max_cones =
            all.iter().filter(|c| !all.iter().any(|d| d != *c && c.is_face_of(d))).cloned().collect();
        Fan { dim, max_cones }
    }

    /// The orthant `C_0` together with all its faces.
    pub fn standard(n: usize) -> Fan {
        Fan { dim: n, max_cones: BTreeSet::from([Cone::orthant(n)]) }
    }

    /// Pairwise check that cones meet in common faces.
    pub fn validate(&self) -> Result<()> {
        for c in &self.max_cones {
            if c.ambient() != self.dim {
                return Err(Error::InvalidFan(format!("cone {c} is not in dimension {}", self.dim)));
            }
        }
        let cones: Vec<&Cone> = self.max_cones.iter().collect();
        for (i, a) in cones.iter().enumerate() {
            for b in &cones[i + 1..] {
                if !cones_compatible(a, b) {
                    return Err(Error::InvalidFan(format!("cones {a} and {b} do not meet in a common face")));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_cones(&self) -> impl Iterator<Item = &Cone> {
        self.max_cones.iter()
    }

    pub fn max_cone_count(&self) -> usize {
        self.max_cones.len()
    }

    pub fn cones_of_dim(&self, k: usize) -> BTreeSet<Cone> {
        self.max_cones.iter().filter(|c| c.dim() >= k).flat_map(|c| c.faces_of_dim(k)).collect()
    }

    /// Every nonzero cone of the fan.
    pub fn cones(&self) -> BTreeSet<Cone> {
        self.max_cones.iter().flat_map(Cone::faces).collect()
    }

    pub fn rays(&self) -> Vec<LatticeVector> {
        let set: BTreeSet<LatticeVector> =
            self.max_cones.iter().flat_map(|c| c.generators().iter().cloned()).collect();
        set.into_iter().collect()
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        self.max_cones.iter().any(|m| c.is_face_of(m))
    }

    pub fn has_ray(&self, v: &LatticeVector) -> bool {
        self.max_cones.iter().any(|m| m.has_generator(v))
    }

    /// `[a_0, a_1, ..., a_n]`: the number of cones of each dimension.
    pub fn cone_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.dim + 1];
        counts[0] = 1;
        for c in self.cones() {
            counts[c.dim()] += 1;
        }
        counts
    }

    pub fn is_pure(&self) -> bool {
        self.max_cones.iter().all(Cone::is_full)
    }

    pub fn is_regular(&self) -> bool {
        self.max_cones.iter().all(Cone::is_regular)
    }

    pub fn support_contains(&self, v: &LatticeVector) -> bool {
        self.max_cones.iter().any(|c| c.contains(v))
    }

    pub fn transform(&self, m: &IntMatrix) -> Fan {
        Fan { dim: m.rows(), max_cones: self.max_cones.iter().map(|c| c.transform(m)).collect() }
    }

    /// Replaces every cone containing `v` by the joins of `v` with its faces
    /// not containing `v`.
    pub fn star_subdivide(&self, v: &LatticeVector) -> Result<Fan> {
        if v.dim() != self.dim || v.is_zero() || !v.is_primitive() {
            return Err(Error::InvalidFan(format!("subdivision ray {v} must be a primitive vector of Z^{}", self.dim)));
        }
        if self.has_ray(v) {
            return Err(Error::InvalidFan(format!("{v} is already a ray of the fan")));
        }
        let mut out = BTreeSet::new();
        let mut hit = false;
        for c in &self.max_cones {
            let Some(carrier) = c.carrier_face(v) else {
                out.insert(c.clone());
                continue;
            };
            hit = true;
            for g in carrier.generators() {
                let mut gens: Vec<LatticeVector> = c.generators().iter().filter(|h| *h != g).cloned().collect();
                gens.push(v.clone());
                out.insert(Cone::with_ambient(self.dim, gens)?);
            }
        }
        if !hit {
            return Err(Error::InvalidFan(format!("{v} lies outside the support")));
        }
        Ok(Fan { dim: self.dim, max_cones: out })
    }

    /// Every fan obtained by deleting the ray `v` and re-covering its star
    /// with cones on the surrounding rays, i.e. every fan whose star
    /// subdivision at `v` gives back `self`. Ordered canonically.
    pub fn remove_ray_options(&self, v: &LatticeVector) -> Vec<(Cone, Fan)> {
        let star: Vec<&Cone> = self.max_cones.iter().filter(|c| c.has_generator(v)).collect();
        if star.is_empty() {
            return Vec::new();
        }
        let link: Vec<LatticeVector> = star
            .iter()
            .flat_map(|c| c.generators().iter().filter(|g| *g != v).cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut options = Vec::new();
        for k in 2..=self.dim.min(link.len()) {
            for s in subsets(link.len(), k) {
                let sigma_gens: Vec<LatticeVector> = s.iter().map(|&i| link[i].clone()).collect();
                // Each star cone must contain all but one generator of sigma.
                let shapes_ok = star.iter().all(|c| sigma_gens.iter().filter(|g| !c.has_generator(g)).count() == 1);
                if !shapes_ok {
                    continue;
                }
                let Ok(sigma) = Cone::with_ambient(self.dim, sigma_gens.clone()) else { continue };
                if !sigma.contains_in_relative_interior(v) {
                    continue;
                }
                let mut groups: BTreeMap<Vec<LatticeVector>, usize> = BTreeMap::new();
                for c in &star {
                    let rest: Vec<LatticeVector> =
                        c.generators().iter().filter(|g| *g != v && !sigma.has_generator(g)).cloned().collect();
                    *groups.entry(rest).or_default() += 1;
                }
                if groups.values().any(|&count| count != k) {
                    continue;
                }
                let mut new_cones = Vec::new();
                let mut ok = true;
                for rest in groups.keys() {
                    match sigma.join(rest) {
                        Ok(c) => new_cones.push(c),
                        Err(_) => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    continue;
                }
                let mut cones: BTreeSet<Cone> =
                    self.max_cones.iter().filter(|c| !c.has_generator(v)).cloned().collect();
                let compatible = new_cones.iter().enumerate().all(|(i, a)| {
                    cones.iter().all(|b| cones_compatible(a, b))
                        && new_cones[i + 1..].iter().all(|b| cones_compatible(a, b))
                });
                if !compatible {
                    continue;
                }
                cones.extend(new_cones);
                options.push((sigma, Fan { dim: self.dim, max_cones: cones }));
            }
        }
        options
    }

    /// Removes the ray `v`, merging its star into cones on the surrounding
    /// rays. When several such merges exist the canonically first is used.
    pub fn remove_ray(&self, v: &LatticeVector) -> Result<Fan> {
        self.remove_ray_avoiding(v, None)
    }

    /// Like [`Fan::remove_ray`], but prefers a merge whose central cone is not
    /// `avoid` when another one exists.
    pub fn remove_ray_avoiding(&self, v: &LatticeVector, avoid: Option<&Cone>) -> Result<Fan> {
        if !self.has_ray(v) {
            return Err(Error::InvalidFan(format!("{v} is not a ray of the fan")));
        }
        let options = self.remove_ray_options(v);
        let pick = options
            .iter()
            .find(|(sigma, _)| Some(sigma) != avoid)
            .or_else(|| options.first())
            .map(|(_, f)| f.clone());
        pick.ok_or_else(|| {
            Error::InvalidFan(format!("the star of {v} cannot be re-expressed by cones on its neighbouring rays"))
        })
    }

    /// Subdivides the orthant at each ray in turn, then removes the listed
    /// rays. A removed ray is contracted away from the face it was inserted
    /// into whenever another contraction exists, so a blow-up followed by a
    /// removal acts as a flip rather than an undo.
    pub fn from_star_script(n: usize, rays: &[LatticeVector], removals: &[LatticeVector]) -> Result<Fan> {
        let mut fan = Fan::standard(n);
        let mut carriers: BTreeMap<LatticeVector, Cone> = BTreeMap::new();
        for r in rays {
            if r.dim() != n {
                return Err(Error::InvalidFan(format!("script ray {r} is not in Z^{n}")));
            }
            let carrier = fan.max_cones.iter().find_map(|c| c.carrier_face(r));
            fan = fan.star_subdivide(r)?;
            if let Some(c) = carrier {
                carriers.insert(r.clone(), c);
            }
        }
        for r in removals {
            fan = fan.remove_ray_avoiding(r, carriers.get(r))?;
        }
        Ok(fan)
    }

    /// Star-subdivides non-regular cones at their primitive barycenters,
    /// lowest-dimensional first, until the fan is regular.
    pub fn regularize(&self) -> Result<Fan> {
        let mut fan = self.clone();
        for _ in 0..REGULARIZE_CAP {
            let bad = fan.cones().into_iter().filter(|c| !c.is_regular()).min_by(|a, b| (a.dim(), a).cmp(&(b.dim(), b)));
            let Some(bad) = bad else { return Ok(fan) };
            fan = fan.star_subdivide(&bad.barycenter())?;
        }
        Err(Error::RegularizationCap(REGULARIZE_CAP))
    }

    /// Whether every cone of `self` sits inside a cone of `coarse` and the two
    /// supports agree. Both fans must be pure of full dimension.
    pub fn refines(&self, coarse: &Fan) -> bool {
        if self.dim != coarse.dim || !self.is_pure() || !coarse.is_pure() {
            return false;
        }
        let mut buckets: BTreeMap<&Cone, Vec<&Cone>> = BTreeMap::new();
        for c in &self.max_cones {
            let Some(host) = coarse.max_cones.iter().find(|s| c.generators().iter().all(|g| s.contains(g))) else {
                return false;
            };
            buckets.entry(host).or_default().push(c);
        }
        for host in &coarse.max_cones {
            let Some(inside) = buckets.get(host) else { return false };
            let mut facet_count: BTreeMap<Cone, usize> = BTreeMap::new();
            for c in inside {
                for (f, _) in c.facets() {
                    *facet_count.entry(f).or_default() += 1;
                }
            }
            for (f, count) in facet_count {
                let on_boundary = match host_coefficients(host, &f) {
                    Some(zero_somewhere) => zero_somewhere,
                    None => return false,
                };
                let expected = if on_boundary { 1 } else { 2 };
                if count != expected {
                    return false;
                }
            }
        }
        true
    }

    /// Pure, every codimension-one cone in exactly two maximal cones, and the
    /// adjacency graph connected.
    pub fn is_complete(&self) -> bool {
        if !self.is_pure() || self.max_cones.is_empty() {
            return false;
        }
        let cones: Vec<&Cone> = self.max_cones.iter().collect();
        let mut owners: BTreeMap<Cone, Vec<usize>> = BTreeMap::new();
        for (i, c) in cones.iter().enumerate() {
            for (f, _) in c.facets() {
                owners.entry(f).or_default().push(i);
            }
        }
        if owners.values().any(|o| o.len() != 2) {
            return false;
        }
        let mut adj = vec![Vec::new(); cones.len()];
        for o in owners.values() {
            adj[o[0]].push(o[1]);
            adj[o[1]].push(o[0]);
        }
        let mut seen = vec![false; cones.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// A strictly convex support function, if one exists.
    pub fn is_projective(&self) -> Option<ProjectivityWitness> {
        projective::find_witness(self)
    }

    /// Adjoins `e_0 = -(1, ..., 1)` and its joins with the boundary cones of
    /// `C_0`, turning a subdivision of the orthant into a complete fan.
    pub fn complete_to_pn(&self) -> Result<Fan> {
        let n = self.dim;
        if !self.refines(&Fan::standard(n)) {
            return Err(Error::InvalidFan("completion needs a subdivision of the positive orthant".into()));
        }
        let e0 = LatticeVector(vec![BigInt::from(-1); n]);
        let mut cones = self.max_cones.clone();
        for tau in self.cones_of_dim(n - 1) {
            if on_orthant_boundary(&tau) {
                cones.insert(tau.join(std::slice::from_ref(&e0))?);
            }
        }
        Ok(Fan { dim: n, max_cones: cones })
    }

    /// Cones of `self` lying in the boundary of the orthant.
    pub fn boundary_cones(&self) -> BTreeSet<Cone> {
        self.cones().into_iter().filter(on_orthant_boundary).collect()
    }
}

fn on_orthant_boundary(c: &Cone) -> bool {
    let n = c.ambient();
    (0..n).any(|i| c.generators().iter().all(|g| g.0[i].is_zero()))
}

// For a cone `f` inside the full cone `host`, whether `f` lies in a proper
// face of `host`. `None` if `f` is not inside `host`.
fn host_coefficients(host: &Cone, f: &Cone) -> Option<bool> {
    let coeffs: Vec<Vec<_>> = f.generators().iter().map(|g| host.coefficients(g)).collect::<Option<_>>()?;
    if coeffs.iter().flatten().any(Signed::is_negative) {
        return None;
    }
    Some((0..host.dim()).any(|j| coeffs.iter().all(|c| c[j].is_zero())))
}
