//! Plain-text and JSON renderings of the computed reports.
//!
//! The text layout is stable: one `key: value` line per quantity, sections
//! separated by blank lines, so reports can be diffed and grepped.

use std::fmt::Write;

use serde::Serialize;

use crate::degen::{DegenerationFan, DegenerationKind, IsotrivialChoice};
use crate::invariants::{CurveCensus, InvariantReport, Verdict};
use crate::iso::{IsoAnswer, IsoVerdict};
use crate::kato::{perron, GermReport, KatoData, PerronData};

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn opt_list(xs: &[Option<usize>]) -> String {
    xs.iter().map(|x| x.map_or("?".to_string(), |v| v.to_string())).collect::<Vec<_>>().join(", ")
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Exists => "exists",
        Verdict::Nonexistent => "none",
        Verdict::Unknown => "unknown",
    }
}

pub fn invariants_text(r: &InvariantReport) -> String {
    let n = r.dim;
    let mut s = String::new();
    let _ = writeln!(s, "dimension: {n}");
    let _ = writeln!(s, "type: {}", r.kind);
    let _ = writeln!(s, "cone counts a_1..a_n: ({})", list(&r.cone_counts));
    let _ = writeln!(s, "betti b_0..b_{}: ({})", 2 * n, list(&r.betti));
    let _ = writeln!(s, "euler characteristic: χ = a_{n} - 1 = {}", r.euler);
    let _ = writeln!(s, "exceptional divisor: ♯D = a_1 - n = {}", r.sharp_d);
    let _ = writeln!(s, "toric divisor: ♯D_T = {}", r.sharp_dt);
    let _ = writeln!(s);
    let _ = writeln!(s, "hodge status: {}", serde_json::to_value(r.hodge.status).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default());
    if let Some(h) = r.hodge.get(1, 1) {
        let _ = writeln!(s, "h^{{1,1}} = ♯D = {h}");
    }
    for (p, q) in [(0, 0), (0, 1), (0, 2), (1, 0), (1, 2)] {
        if let Some(h) = r.hodge.get(p, q) {
            let _ = writeln!(s, "h^{{{p},{q}}} = {h}");
        }
    }
    if let Some(note) = &r.hodge.note {
        let _ = writeln!(s, "hodge note: {note}");
    }
    let _ = writeln!(s, "log tangent h^0..h^{n}: ({})", opt_list(&r.log_cohomology.tangent));
    let _ = writeln!(s, "log cotangent h^0..h^{n}: ({})", opt_list(&r.log_cohomology.cotangent));
    let _ = writeln!(s);
    let _ = writeln!(s, "canonical bundle: {}", r.canonical.statement);
    let _ = writeln!(s, "kodaira dimension: {}", r.canonical.kodaira);
    let _ = writeln!(s);
    s.push_str(&census_text(&r.census));
    let c = &r.connectivity;
    let show = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
    let _ = writeln!(s, "components of D: {} (expected {})", c.d_components, show(c.expected_d));
    let _ = writeln!(s, "components of D_T: {} (expected {})", c.dt_components, show(c.expected_dt));
    let _ = writeln!(s, "components of the lifted D: {}", c.lifted_d_components);
    let _ = writeln!(s, "connectivity agrees: {}", c.agrees);
    let _ = writeln!(s);
    let m = &r.metrics;
    let _ = writeln!(s, "lcK metric: {} (witness verified: {})", verdict(m.lck), m.lck_witness_verified);
    let _ = writeln!(s, "balanced metric: {}", verdict(m.balanced));
    let _ = writeln!(s, "strongly Gauduchon metric: {}", verdict(m.strongly_gauduchon));
    let _ = writeln!(s, "Hermitian-symplectic structure: {}", verdict(m.hermitian_symplectic));
    let _ = writeln!(s, "pluriclosed metric: {}", verdict(m.pluriclosed));
    for note in &m.notes {
        let _ = writeln!(s, "note: {note}");
    }
    s
}

pub fn census_text(c: &CurveCensus) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "elliptic curves: {}", c.elliptic);
    let _ = writeln!(s, "rational curves: {}", c.rational);
    let _ = writeln!(s, "census depth: {}", c.depth);
    let _ = writeln!(s, "census consistent with type: {}", c.consistent);
    if let Some(note) = &c.note {
        let _ = writeln!(s, "census note: {note}");
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub germ: GermReport,
    pub perron: PerronData,
}

pub fn classification(d: &KatoData) -> Classification {
    Classification { germ: d.germ_report(), perron: perron(d.kato()) }
}

pub fn classify_text(c: &Classification) -> String {
    let g = &c.germ;
    let mut s = String::new();
    let _ = writeln!(s, "type: {}", g.kind);
    let _ = writeln!(s, "P(A): {{{}}}", list(&g.p));
    let _ = writeln!(s, "hypersurface at infinity: {}", if g.h_infinity.is_empty() { "empty".to_string() } else { format!("z_j = 0 for j in {{{}}}", list(&g.h_infinity)) });
    let _ = writeln!(s, "invariant set: {}", g.invariant_set);
    let _ = writeln!(s, "torus factor dimension: {}", g.torus_factor_dim);
    if let Some(m) = &g.reduced_matrix {
        let _ = writeln!(s, "reduced matrix: {m}");
    }
    if let Some(l) = &g.reduced_ell {
        let _ = writeln!(s, "reduced log-parameters: ({})", l.join(", "));
    }
    let _ = writeln!(s, "splitting: {}", g.splitting);
    let _ = writeln!(s, "germ: {}", g.germ);
    match &c.perron {
        PerronData::Hyperbolic(p) => {
            let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.12}")).collect::<Vec<_>>().join(", ");
            let _ = writeln!(s, "perron eigenvalue: {:.12} ± {:.1e}", p.alpha, p.alpha_error);
            let _ = writeln!(s, "perron vector f: ({})", fmt(&p.f));
            let _ = writeln!(s, "dual vector f*: ({})", fmt(&p.f_star));
        }
        PerronData::Parabolic { index } => {
            let _ = writeln!(s, "support half-space: e{}* > 0", index + 1);
        }
        PerronData::Hopf => {
            let _ = writeln!(s, "support: boundary of the orthant");
        }
    }
    s
}

pub fn iso_text(v: &IsoVerdict) -> String {
    let mut s = String::new();
    let answer = match v.answer {
        IsoAnswer::Yes => "Yes",
        IsoAnswer::No => "No",
        IsoAnswer::Unknown => "Unknown",
    };
    match (&v.answer, &v.certificate) {
        (IsoAnswer::No, Some(c)) => {
            let _ = writeln!(s, "{answer}: {c}");
        }
        _ => {
            let _ = writeln!(s, "{answer}");
        }
    }
    if let Some(w) = &v.witness {
        let _ = writeln!(s, "Q = {}", w.q);
        let _ = writeln!(s, "shifts: {}..={}", w.min_shift, w.max_shift);
        if let Some(c) = &v.certificate {
            let _ = writeln!(s, "reason: {c}");
        }
    }
    let _ = writeln!(s, "candidates checked: {}", v.candidates);
    if v.approximate {
        let _ = writeln!(s, "approximate: log-parameters compared up to the tolerance");
    }
    for note in &v.notes {
        let _ = writeln!(s, "note: {note}");
    }
    s
}

pub fn degeneration_text(df: &DegenerationFan, choice: Option<&IsotrivialChoice>) -> String {
    let mut s = String::new();
    match &df.kind {
        DegenerationKind::Nakamura => {
            let _ = writeln!(s, "kind: Nakamura");
        }
        DegenerationKind::Isotrivial { u, v } => {
            let _ = writeln!(s, "kind: isotrivial");
            let _ = writeln!(s, "u: {u}");
            let _ = writeln!(s, "v: {v}");
        }
    }
    if let Some(src) = choice.and_then(|c| c.source) {
        let _ = writeln!(s, "u chosen by: {}", serde_json::to_value(src).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default());
    }
    let _ = writeln!(s, "extended matrix: {}", df.atilde);
    let _ = writeln!(s, "window: {}", df.window);
    let _ = writeln!(s, "window maximal cones: {}", df.truncation_max_cones);
    let _ = writeln!(s, "central fiber maximal cones: {}", df.central_fiber.max_cone_count());
    let c = &df.checks;
    let _ = writeln!(s, "det matches: {}", c.det_matches);
    let _ = writeln!(s, "window is a fan: {}", c.truncation_valid);
    let _ = writeln!(s, "window regular: {}", c.truncation_regular);
    let _ = writeln!(s, "equivariant: {}", c.equivariant);
    let _ = writeln!(s, "star of central ray = central fiber: {}", c.star_matches_central_fiber);
    let _ = writeln!(s, "gluing cones present: {}", c.adjacency_present);
    let _ = writeln!(s, "central fiber complete: {}", c.central_fiber_complete);
    let _ = writeln!(s, "central fiber regular: {}", c.central_fiber_regular);
    if let Some(flag) = c.smooth_flag {
        let _ = writeln!(s, "predicted smooth (u = c): {flag}");
    }
    for note in &df.notes {
        let _ = writeln!(s, "note: {note}");
    }
    s
}

pub fn absent_u_text(choice: &IsotrivialChoice) -> String {
    let mut s = String::from("no isotrivial degeneration\n");
    if let Some(c) = &choice.certificate {
        let _ = writeln!(s, "certificate: {c}");
    }
    s
}
