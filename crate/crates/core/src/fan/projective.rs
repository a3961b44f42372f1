//! Strictly convex support functions on complete simplicial fans.
//!
//! The search solves for the values of the support function on rays, with one
//! strict inequality per wall between adjacent maximal cones. On a complete
//! fan, convexity across every wall is equivalent to global convexity, and the
//! resulting linear forms are then checked against the full system (agreement
//! on shared faces, and a margin of at least 1 at every ray outside each cone).

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::{Cone, Fan};
use crate::linalg::lp::{feasible_point, Constraint, Relation};
use crate::linalg::{IntMatrix, LatticeVector, Rat};

/// One linear form per maximal cone; together they form a strictly convex
/// piecewise linear function.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectivityWitness {
    pub forms: BTreeMap<Cone, Vec<Rat>>,
}

fn pair(m: &[Rat], v: &LatticeVector) -> Rat {
    m.iter().zip(&v.0).map(|(a, b)| a * Rat::from_integer(b.clone())).sum()
}

impl ProjectivityWitness {
    /// Re-checks the defining system exactly: forms agree on generators of
    /// shared faces, and `<m_σ, v_ρ> <= ψ(v_ρ) - 1` for every ray `ρ ∉ σ`.
    pub fn verify(&self, fan: &Fan) -> bool {
        let cones: Vec<&Cone> = fan.max_cones().collect();
        if cones.len() != self.forms.len() || cones.iter().any(|c| !self.forms.contains_key(*c)) {
            return false;
        }
        let mut psi: BTreeMap<&LatticeVector, Rat> = BTreeMap::new();
        for c in &cones {
            let m = &self.forms[*c];
            for g in c.generators() {
                let val = pair(m, g);
                if let Some(prev) = psi.get(g) {
                    if *prev != val {
                        return false;
                    }
                } else {
                    psi.insert(g, val);
                }
            }
        }
        for c in &cones {
            let m = &self.forms[*c];
            for (r, val) in &psi {
                if c.has_generator(r) {
                    continue;
                }
                if pair(m, r) > val - Rat::one() {
                    return false;
                }
            }
        }
        true
    }
}

pub(super) fn find_witness(fan: &Fan) -> Option<ProjectivityWitness> {
    if !fan.is_complete() {
        return None;
    }
    let rays = fan.rays();
    let index: BTreeMap<&LatticeVector, usize> = rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let cones: Vec<&Cone> = fan.max_cones().collect();

    let mut walls: BTreeMap<Cone, Vec<usize>> = BTreeMap::new();
    for (i, c) in cones.iter().enumerate() {
        for (f, _) in c.facets() {
            walls.entry(f).or_default().push(i);
        }
    }
    let mut cons = Vec::new();
    for (wall, owners) in &walls {
        let (a, b) = (cones[owners[0]], cones[owners[1]]);
        let far = b.generators().iter().find(|g| !wall.has_generator(g))?;
        let coeffs = a.coefficients(far)?;
        let mut row = vec![Rat::zero(); rays.len()];
        row[index[far]] += Rat::one();
        for (g, c) in a.generators().iter().zip(&coeffs) {
            row[index[g]] -= c;
        }
        cons.push(Constraint::new(row, Relation::Ge, Rat::one()));
    }
    let psi = feasible_point(rays.len(), &cons)?;

    let mut forms = BTreeMap::new();
    for c in &cones {
        let g = IntMatrix::from_columns(c.generators()).transpose().to_rat();
        let rhs: Vec<Rat> = c.generators().iter().map(|r| psi[index[r]].clone()).collect();
        forms.insert((*c).clone(), g.solve(&rhs)?);
    }
    // Rescale so the tightest outside-ray margin is exactly 1.
    let mut min_slack: Option<Rat> = None;
    for c in &cones {
        for r in &rays {
            if c.has_generator(r) {
                continue;
            }
            let slack = &psi[index[r]] - pair(&forms[*c], r);
            if !slack.is_positive() {
                return None;
            }
            if min_slack.as_ref().map_or(true, |m| slack < *m) {
                min_slack = Some(slack);
            }
        }
    }
    if let Some(s) = min_slack {
        if s < Rat::one() {
            let f = s.recip();
            for m in forms.values_mut() {
                for x in m.iter_mut() {
                    *x *= &f;
                }
            }
        }
    }
    Some(ProjectivityWitness { forms })
}

/// The literal system over all linear forms `m_σ` at once, with agreement on
/// every shared generator and the margin-1 inequality at every outside ray.
/// Slower than [`Fan::is_projective`]; kept as an independent check.
pub fn is_projective_direct(fan: &Fan) -> bool {
    if !fan.is_complete() {
        return false;
    }
    let n = fan.dim();
    let cones: Vec<&Cone> = fan.max_cones().collect();
    let nv = n * cones.len();
    let var = |ci: usize, k: usize| ci * n + k;
    let mut home: BTreeMap<&LatticeVector, usize> = BTreeMap::new();
    for (i, c) in cones.iter().enumerate() {
        for g in c.generators() {
            home.entry(g).or_insert(i);
        }
    }
    let mut cons = Vec::new();
    for (i, a) in cones.iter().enumerate() {
        for (j, b) in cones.iter().enumerate().skip(i + 1) {
            for g in a.generators().iter().filter(|g| b.has_generator(g)) {
                let mut row = vec![Rat::zero(); nv];
                for k in 0..n {
                    row[var(i, k)] += Rat::from_integer(g.0[k].clone());
                    row[var(j, k)] -= Rat::from_integer(g.0[k].clone());
                }
                cons.push(Constraint::new(row, Relation::Eq, Rat::zero()));
            }
        }
    }
    for (i, c) in cones.iter().enumerate() {
        for (r, &h) in &home {
            if c.has_generator(r) {
                continue;
            }
            let mut row = vec![Rat::zero(); nv];
            for k in 0..n {
                row[var(i, k)] += Rat::from_integer(r.0[k].clone());
                row[var(h, k)] -= Rat::from_integer(r.0[k].clone());
            }
            cons.push(Constraint::new(row, Relation::Le, -Rat::one()));
        }
    }
    feasible_point(nv, &cons).is_some()
}
