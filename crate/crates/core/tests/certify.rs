use freealg::certify::{certify_elements, CertifyOptions, ModelId, Status, WordKind};
use freealg::series::{IterPrec, Window};

fn opts(window: Window) -> CertifyOptions {
    CertifyOptions { window, ..Default::default() }
}

#[test]
fn symmetrized_pairs_are_free() {
    for pair in [["cauchon_sym", "cauchon_conj_sym"], ["cauchon_sym", "cauchon_conj1_sym"]] {
        let r = certify_elements(&pair, ModelId::Weyl, WordKind::FreeMonoid, 3, &CertifyOptions::default()).unwrap();
        assert_eq!((r.status, r.rank), (Status::Certified, 15), "{r}");
    }
}

#[test]
fn certification_survives_a_larger_window() {
    for w in [Window::new(-16, 24), Window::new(-16, 48), Window::new(-24, 64)] {
        let r = certify_elements(&["S", "T"], ModelId::Weyl, WordKind::FreeGroup, 2, &opts(w)).unwrap();
        assert_eq!(r.status, Status::Certified, "window {w:?}: {r}");
    }
}

#[test]
fn reports_do_not_depend_on_scheduling() {
    let mut o = CertifyOptions::default();
    let a = certify_elements(&["S1", "T1"], ModelId::Weyl, WordKind::FreeMonoid, 3, &o).unwrap();
    o.parallel = false;
    let b = certify_elements(&["S1", "T1"], ModelId::Weyl, WordKind::FreeMonoid, 3, &o).unwrap();
    assert!(a.same_outcome(&b));
}

#[test]
fn truncation_never_refutes() {
    let o = opts(Window::new(-16, 2));
    let r = certify_elements(&["cauchon_s", "cauchon_conj"], ModelId::Weyl, WordKind::FreeGroup, 2, &o).unwrap();
    assert_ne!(r.status, Status::Dependent, "{r}");
    let r = certify_elements(
        &["cauchon_u", "cauchon_u"],
        ModelId::Weyl,
        WordKind::FreeMonoid,
        2,
        &CertifyOptions::default(),
    )
    .unwrap();
    assert_eq!(r.status, Status::Inconclusive);
    assert!(r.witness.is_none());
}

#[test]
fn exact_dependencies_carry_witnesses() {
    let r = certify_elements(&["g+g^-1", "g^-1+g"], ModelId::Fga, WordKind::FreeMonoid, 2, &CertifyOptions::default())
        .unwrap();
    assert_eq!(r.status, Status::Dependent);
    assert_eq!(r.witness.as_ref().map(Vec::len), Some(r.word_count));
    let report = freealg::certify::FreenessReport::from_json(&r.to_json()).unwrap();
    assert_eq!(report, r);
}

#[test]
fn iterated_series_model_agrees_with_weyl_model() {
    let o = CertifyOptions { caps: IterPrec { x: 8, y: 16, z: 16 }, ..Default::default() };
    for (pair, kind, len, words) in [
        (["S", "T"], WordKind::FreeGroup, 2, 17),
        (["S1", "T1"], WordKind::FreeMonoid, 3, 15),
        (["1+S1^2", "1+T1^2"], WordKind::FreeMonoid, 3, 15),
    ] {
        let it = certify_elements(&pair, ModelId::Iter, kind, len, &o).unwrap();
        let wy = certify_elements(&pair, ModelId::Weyl, kind, len, &o).unwrap();
        assert_eq!((it.status, it.rank, it.word_count), (Status::Certified, words, words), "{it}");
        assert_eq!(wy.status, Status::Certified, "{wy}");
    }
    let tight = CertifyOptions { caps: IterPrec { x: 2, y: 2, z: 2 }, retry: false, ..Default::default() };
    let r = certify_elements(&["S", "T"], ModelId::Iter, WordKind::FreeGroup, 2, &tight).unwrap();
    assert_eq!(r.status, Status::Inconclusive, "{r}");
}
