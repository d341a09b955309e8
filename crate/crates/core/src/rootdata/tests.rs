use super::*;

fn spec(name: &str, q: u64) -> GroupSpec {
    config::group_spec_from_config(&named_group(name, q).unwrap()).unwrap()
}

#[test]
fn sl2_dual_is_pgl2() {
    let sl2 = spec("sl2", 3);
    let pgl2 = spec("pgl2", 3);
    let d = dual_datum(sl2.datum());
    assert_eq!(d.roots(), pgl2.datum().roots());
    assert_eq!(d.coroots(), pgl2.datum().coroots());
}

#[test]
fn gl2_self_dual_and_involution() {
    let gl2 = spec("gl2", 3);
    let d = dual_datum(gl2.datum());
    assert_eq!(d.roots(), gl2.datum().roots());
    assert_eq!(d.coroots(), gl2.datum().coroots());
    let b2 = parse_group_spec("type = \"B2\"\nq = 3\n").unwrap();
    assert_eq!(dual_datum(&dual_datum(b2.datum())), *b2.datum());
    assert_eq!(dual_datum(b2.datum()).cartan_label(), "C2");
}

#[test]
fn pgl2_centralizers() {
    let g = spec("pgl2", 3);
    let d = g.datum();
    let w = d.weyl_group(&[], DEFAULT_ORDER_BOUND).unwrap();
    let zero = TorsionPoint::zero(1);
    assert_eq!(centralizer_subdatum(d, &zero).unwrap().datum.num_roots(), 2);
    assert_eq!(component_group_of_centralizer(d, &w, &zero).unwrap(), vec![0]);
    let half = TorsionPoint::new(&[1], 2);
    assert_eq!(centralizer_subdatum(d, &half).unwrap().datum.num_roots(), 0);
    assert_eq!(component_group_of_centralizer(d, &w, &half).unwrap().len(), 2);
}

#[test]
fn gl2_generic_point_has_trivial_component_group() {
    let g = spec("gl2", 5);
    let w = g.datum().weyl_group(&[], DEFAULT_ORDER_BOUND).unwrap();
    let s = TorsionPoint::new(&[1, 0], 4);
    assert_eq!(component_group_of_centralizer(g.datum(), &w, &s).unwrap(), vec![0]);
}

#[test]
fn so5_has_a1xa1_pseudo_levi() {
    let g = spec("so5", 3);
    let d = g.datum();
    let mut found = false;
    for a in 0..2 {
        for b in 0..2 {
            let s = TorsionPoint::new(&[a, b], 2);
            let c = centralizer_subdatum(d, &s).unwrap();
            let direct = d.roots().iter().filter(|r| s.pairs_integrally(r)).count();
            assert_eq!(c.datum.num_roots(), direct);
            if c.subsystem.type_label() == "A1xA1" {
                found = true;
                assert_eq!(direct, 4);
            }
        }
    }
    assert!(found);
}

#[test]
fn unreduced_point_rejected() {
    let g = spec("pgl2", 3);
    let s = TorsionPoint::new(&[1], 2);
    let wrong_rank = TorsionPoint::new(&[1, 1], 2);
    assert!(centralizer_subdatum(g.datum(), &s).is_ok());
    assert!(matches!(centralizer_subdatum(g.datum(), &wrong_rank), Err(Error::UnreducedPoint(_))));
}

#[test]
fn whittaker_sizes() {
    assert_eq!(whittaker_torsor_size(&spec("gl2", 3)).unwrap(), 1);
    assert_eq!(whittaker_torsor_size(&spec("sl2", 3)).unwrap(), 2);
    assert_eq!(whittaker_torsor_size(&spec("sl2", 4)).unwrap(), 1);
    assert_eq!(whittaker_torsor_size(&spec("pgl2", 3)).unwrap(), 1);
    // SL3: Z = μ3, q = 4 ≡ 1 mod 3 so all of μ3 is rational
    assert_eq!(whittaker_torsor_size(&spec("sl3", 4)).unwrap(), 3);
    assert_eq!(whittaker_torsor_size(&spec("sl3", 5)).unwrap(), 1);
}

#[test]
fn weyl_orders() {
    for (t, n) in [("A1", 2), ("A2", 6), ("B2", 8), ("C2", 8), ("G2", 12), ("A1xA1", 4), ("T2", 1)] {
        let g = parse_group_spec(&format!("type = \"{t}\"\nq = 5\n")).unwrap();
        let w = g.datum().weyl_group(&[], DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(w.order(), n, "{t}");
    }
    let o2 = spec("o2", 3);
    let w = o2.datum().weyl_group(o2.component_group(), DEFAULT_ORDER_BOUND).unwrap();
    assert_eq!((w.order(), w.connected_order()), (2, 1));
    assert!(!o2.is_connected());
}

#[test]
fn twisted_gl3_frobenius() {
    let g = parse_group_spec("type = \"A2\"\nisogeny = \"GL\"\nq = 2\ntwist = [1, 0]\n").unwrap();
    assert_eq!(g.twist().diagram(), &[1, 0]);
    let sigma = g.twist().sigma_x();
    assert_eq!(sigma.mul(sigma), IntMatrix::identity(3));
}
