//! Exact two-phase simplex over `BigRational` with Bland's rule.
//!
//! Variables are free; each is split into a difference of two nonnegative
//! columns internally. Strict inequalities are the caller's business: the
//! homogeneous systems used by the fan code express `> 0` as `>= 1`.

use num_traits::{One, Signed, Zero};

use super::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub relation: Relation,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rat>, relation: Relation, rhs: Rat) -> Self {
        Constraint { coeffs, relation, rhs }
    }

    pub fn satisfied_by(&self, x: &[Rat]) -> bool {
        let lhs: Rat = self.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal { point: Vec<Rat>, value: Rat },
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rat {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, obj: &mut [Rat], r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = self.rows[r].clone();
        let nz: Vec<usize> = (0..=self.width).filter(|&j| !prow[j].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                let d = &prow[j] * &f;
                row[j] -= d;
            }
        }
        if !obj[c].is_zero() {
            let f = obj[c].clone();
            for &j in &nz {
                let d = &prow[j] * &f;
                obj[j] -= d;
            }
        }
        self.basis[r] = c;
    }

    /// Minimises the objective row in place; `allowed` masks entering columns.
    /// Returns false when unbounded.
    fn optimise(&mut self, obj: &mut [Rat], allowed: &[bool]) -> bool {
        loop {
            let Some(c) = (0..self.width).find(|&j| allowed[j] && obj[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else { return false };
            self.pivot(obj, r, c);
        }
    }
}

/// Minimises `objective · x` subject to the constraints, `x` free.
/// With `objective = None` this is a pure feasibility problem.
pub fn solve(num_vars: usize, constraints: &[Constraint], objective: Option<&[Rat]>) -> LpOutcome {
    let m = constraints.len();
    let n_split = 2 * num_vars;
    let n_slack = constraints.iter().filter(|c| c.relation != Relation::Eq).count();
    let n_art = m;
    let width = n_split + n_slack + n_art;

    let mut rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut slack = n_split;
    for (i, con) in constraints.iter().enumerate() {
        assert_eq!(con.coeffs.len(), num_vars, "constraint has wrong arity");
        let flip = con.rhs.is_negative();
        let sign = if flip { -Rat::one() } else { Rat::one() };
        let mut row = vec![Rat::zero(); width + 1];
        for (k, a) in con.coeffs.iter().enumerate() {
            if !a.is_zero() {
                row[k] = a * &sign;
                row[num_vars + k] = -(a * &sign);
            }
        }
        match con.relation {
            Relation::Le => {
                row[slack] = sign.clone();
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = -sign.clone();
                slack += 1;
            }
            Relation::Eq => {}
        }
        row[n_split + n_slack + i] = Rat::one();
        row[width] = &con.rhs * &sign;
        rows.push(row);
        basis.push(n_split + n_slack + i);
    }
    let mut t = Tableau { rows, basis, width };

    // Phase I: minimise the sum of artificials.
    let mut obj = vec![Rat::zero(); width + 1];
    for row in &t.rows {
        for j in 0..=width {
            if j < n_split + n_slack || j == width {
                obj[j] -= &row[j];
            }
        }
    }
    let all = vec![true; width];
    t.optimise(&mut obj, &all);
    if !obj[width].is_zero() {
        return LpOutcome::Infeasible;
    }

    // Drive remaining artificials out of the basis; drop redundant rows.
    let is_art = |j: usize| j >= n_split + n_slack && j < width;
    let mut i = 0;
    while i < t.rows.len() {
        if is_art(t.basis[i]) {
            if let Some(c) = (0..n_split + n_slack).find(|&j| !t.rows[i][j].is_zero()) {
                let mut dummy = vec![Rat::zero(); width + 1];
                t.pivot(&mut dummy, i, c);
            } else {
                t.rows.remove(i);
                t.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }

    let allowed: Vec<bool> = (0..width).map(|j| !is_art(j)).collect();
    let mut obj = vec![Rat::zero(); width + 1];
    if let Some(c) = objective {
        assert_eq!(c.len(), num_vars, "objective has wrong arity");
        for k in 0..num_vars {
            obj[k] = c[k].clone();
            obj[num_vars + k] = -c[k].clone();
        }
        for (r, &b) in t.basis.iter().enumerate() {
            if obj[b].is_zero() {
                continue;
            }
            let f = obj[b].clone();
            for j in 0..=width {
                let d = &t.rows[r][j] * &f;
                obj[j] -= d;
            }
        }
        if !t.optimise(&mut obj, &allowed) {
            return LpOutcome::Unbounded;
        }
    }

    let mut vals = vec![Rat::zero(); width];
    for (r, &b) in t.basis.iter().enumerate() {
        vals[b] = t.rhs(r).clone();
    }
    let point: Vec<Rat> = (0..num_vars).map(|k| &vals[k] - &vals[num_vars + k]).collect();
    let value = match objective {
        Some(c) => c.iter().zip(&point).map(|(a, b)| a * b).sum(),
        None => Rat::zero(),
    };
    LpOutcome::Optimal { point, value }
}

/// Some point satisfying all constraints, or `None` when infeasible.
pub fn feasible_point(num_vars: usize, constraints: &[Constraint]) -> Option<Vec<Rat>> {
    match solve(num_vars, constraints, None) {
        LpOutcome::Optimal { point, .. } => Some(point),
        _ => None,
    }
}
