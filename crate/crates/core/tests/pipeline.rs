use toric_kato::fixtures;
use toric_kato::invariants::invariant_report;
use toric_kato::io::{document_of, parse, parse_document, serialize, to_toml};
use toric_kato::iso::{find_equivariant_iso, IsoAnswer, IsoOptions};

#[test]
fn serialized_fixtures_keep_their_invariants() {
    for name in fixtures::names() {
        let Ok(d) = fixtures::data(name) else { continue };
        let text = serialize(&d);
        let back = parse(&text).unwrap_or_else(|e| panic!("{name}: {e}\n{text}"));
        assert_eq!(invariant_report(&d, 2), invariant_report(&back, 2), "{name}");
        assert_eq!(find_equivariant_iso(&d, &back, &IsoOptions::default()).answer, IsoAnswer::Yes, "{name}");
    }
}

#[test]
fn canonical_form_is_a_fixed_point() {
    for name in fixtures::names() {
        let doc = parse_document(fixtures::text(name).unwrap()).unwrap();
        let once = match doc.to_kato_data() {
            Ok(d) => to_toml(&document_of(&d, doc.name.as_deref())),
            Err(_) => continue,
        };
        let again = parse_document(&once).unwrap();
        let twice = to_toml(&document_of(&again.to_kato_data().unwrap(), again.name.as_deref()));
        assert_eq!(once, twice, "{name}");
    }
}

#[test]
fn covers_scale_the_curve_census() {
    let d = fixtures::data("fig2").unwrap();
    let r1 = invariant_report(&d, 3);
    let r2 = invariant_report(&d.power_data(2).unwrap(), 3);
    assert_eq!(r2.euler, 2 * r1.euler);
    assert_eq!(r2.sharp_d, 2 * r1.sharp_d);
    assert_eq!(r2.kind, r1.kind);
}

// Relabelling the coordinates of the lattice gives conjugate data. Reordering
// the columns of τ alone would change the embedding, hence the manifold.
#[test]
fn invariants_do_not_depend_on_the_chart() {
    use toric_kato::kato::KatoData;
    use toric_kato::linalg::{IntMatrix, LatticeVector};
    for name in ["fig1", "fig2", "inoue_hirzebruch", "inoue_a", "hopf3", "non_lck4"] {
        let d = fixtures::data(name).unwrap();
        let n = d.dim();
        let relabel = IntMatrix::from_columns(&(0..n).map(|j| LatticeVector::unit(n, (j + 1) % n)).collect::<Vec<_>>());
        // The image of e_j becomes the image of e_{j+1}.
        let mut cols: Vec<_> = d.columns().iter().map(|c| relabel.mul_vec(c)).collect();
        cols.rotate_right(1);
        let e = KatoData::new(d.fan().transform(&relabel), cols, d.ell().cloned()).unwrap();
        assert_eq!(*e.matrix(), relabel.mul(d.matrix()).mul(&relabel.inverse_unimodular().unwrap()), "{name}");
        let (base, r) = (invariant_report(&d, 2), invariant_report(&e, 2));
        assert_eq!(r.kind, base.kind, "{name}");
        assert_eq!(r.betti, base.betti, "{name}");
        assert_eq!((r.euler, r.sharp_d, r.sharp_dt), (base.euler, base.sharp_d, base.sharp_dt), "{name}");
        assert_eq!(r.hodge, base.hodge, "{name}");
        assert_eq!((r.census.elliptic, r.census.rational), (base.census.elliptic, base.census.rational), "{name}");
        assert_eq!(r.connectivity.d_components, base.connectivity.d_components, "{name}");
        assert_eq!(r.metrics.lck, base.metrics.lck, "{name}");
        assert_eq!(find_equivariant_iso(&d, &e, &IsoOptions::default()).answer, IsoAnswer::Yes, "{name}");
    }
}
