use lspace_core::abelian::{pairing_and_label, same_points, smith_normal_form, ProjInterval};
use lspace_core::cfd::{build_cfd, build_cfd_at, cfd_twist_compare};
use lspace_core::coloring::{color, simple_knot_support, surgery_is_lspace_oracle, Color};
use lspace_core::corpus::{n_family, negative_trefoil, solid_torus, t25, trefoil};
use lspace_core::gluing::{
    b_sets, judicious_slope, predicted_dtau, splice_is_lspace, spliced_manifold, SpliceProblem,
};
use lspace_core::interval::{
    check_corollary_consistency, is_lspace_slope, lspace_interval, nls_detected, validate_witness,
    IntervalKind,
};
use lspace_core::seifert::{
    fiber_complement, sfs_dtau, sfs_fiber_interval, sfs_is_lspace, sfs_normalize, SeifertData,
};
use lspace_core::{Error, FinAbGroup, FloerSimpleManifold, GluingMatrix, GroupElement, Rat, Slope};

fn z(x: i64) -> GroupElement {
    GroupElement::new(x, vec![])
}

fn free_parts(v: &[GroupElement]) -> Vec<i64> {
    v.iter().map(|h| h.free).collect()
}

#[test]
fn smith_normal_form_examples() {
    assert_eq!(
        smith_normal_form(&[vec![1, 0], vec![0, 1]]).diagonal,
        vec![1, 1]
    );
    assert_eq!(
        smith_normal_form(&[vec![2, 0], vec![0, 3]]).diagonal,
        vec![1, 6]
    );
    assert_eq!(
        smith_normal_form(&[vec![2, 4], vec![6, 8]]).diagonal,
        vec![2, 4]
    );
}

#[test]
fn iota_coordinates_examples() {
    assert_eq!(trefoil().iota_coordinates(&z(1)), Some((1, 0)));
    let n2 = n_family(2);
    assert_eq!(
        n2.iota_coordinates(&GroupElement::new(0, vec![1])),
        Some((0, 1))
    );
    assert_eq!(n2.iota_coordinates(&GroupElement::new(1, vec![0])), None);
}

#[test]
fn labels() {
    let (beta, n, label) = pairing_and_label(Slope::new(3, 1), Slope::new(2, 1));
    assert_eq!((beta, n, label), (1, 2, Some(Rat::new(1, 2))));
    assert_eq!(
        pairing_and_label(Slope::new(3, 1), Slope::new(3, 1)).2,
        Some(Rat::new(0, 1))
    );
    assert_eq!(pairing_and_label(Slope::new(3, 1), Slope::L).2, None);
}

#[test]
fn gluing_images() {
    let open = ProjInterval::open(Slope::new(1, 1), Slope::M);
    let phi = GluingMatrix::new([[1, 0], [1, -1]]).unwrap();
    assert!(same_points(&phi.apply_interval(&open), &open));
    let phi = GluingMatrix::new([[3, -5], [1, -2]]).unwrap();
    let want = ProjInterval::closed(Slope::new(2, 1), Slope::new(3, 1)).complement();
    assert!(same_points(&phi.apply_interval(&open), &want));
    assert_eq!(
        phi.apply_interval(&ProjInterval::Everything),
        ProjInterval::Everything
    );
    assert!(matches!(
        GluingMatrix::new([[1, 0], [0, 1]]),
        Err(Error::DeterminantError(1))
    ));
}

#[test]
fn record_validation() {
    let s = solid_torus();
    assert_eq!((s.g(), s.k()), (1, 1));
    assert_eq!(trefoil().g(), 1);
    let g = FinAbGroup::trivial();
    let bad = FloerSimpleManifold::new(g.clone(), z(1), z(0), vec![z(0)], None);
    assert!(matches!(bad, Err(Error::ZeroInComplement)));
    let bad = FloerSimpleManifold::new(g.clone(), z(1), z(1), vec![], None);
    assert!(matches!(bad, Err(Error::NonTorsionLongitude(1))));
    let bad = FloerSimpleManifold::new(g, z(2), z(0), vec![], None);
    assert!(matches!(
        bad,
        Err(Error::BadMeridianFreePart {
            expected: 1,
            found: 2
        })
    ));
}

#[test]
fn torsion_coefficients_and_invariants() {
    let t = trefoil();
    assert_eq!([0, 1, -1].map(|x| t.tau_coefficient(&z(x))), [1, 0, 0]);
    let m = t.milnor_invariants().unwrap();
    assert_eq!(
        (m.delta_bar.clone(), m.norm, m.monic, m.gst),
        (vec![1, -1, 1], 1, true, false)
    );
    let m = n_family(2).milnor_invariants().unwrap();
    assert_eq!(
        (m.delta_bar.clone(), m.norm, m.gst, m.k),
        (vec![1, 1], 0, true, 1)
    );
    let m = solid_torus().milnor_invariants().unwrap();
    assert_eq!((m.delta_bar.clone(), m.gst), (vec![1], true));
}

#[test]
fn dtau_examples() {
    assert!(solid_torus().dtau().all.is_empty());
    let d = trefoil().dtau();
    assert_eq!(
        d.positive
            .iter()
            .map(|e| (e.delta, e.gamma))
            .collect::<Vec<_>>(),
        vec![(1, 0)]
    );
    let d = n_family(2).dtau();
    assert_eq!(
        d.all.iter().map(|e| (e.delta, e.gamma)).collect::<Vec<_>>(),
        vec![(0, 1)]
    );
    assert!(d.positive.is_empty());
}

#[test]
fn semigroup_closure() {
    assert!(trefoil().gamma_closed(20).closed);
    assert!(solid_torus().gamma_closed(20).closed);
    // τ^c = {1, 2}: D^τ = {1, 2} and Γ = {0, 3, 4, ...} is closed
    let g = FinAbGroup::trivial();
    let y = FloerSimpleManifold::new(g, z(1), z(0), vec![z(1), z(2)], None).unwrap();
    assert!(y.gamma_closed(20).closed);
}

#[test]
fn hfk_supports() {
    assert_eq!(
        free_parts(&solid_torus().hfk_support(Slope::M).unwrap()),
        vec![0]
    );
    let s = trefoil().hfk_support(Slope::new(3, 1)).unwrap();
    assert_eq!(free_parts(&s), vec![0, 2, 4]);
    assert!(matches!(
        trefoil().hfk_support(Slope::M),
        Err(Error::NotFloerSimpleSlope(_))
    ));
}

#[test]
fn witnesses() {
    let t = trefoil();
    let r = validate_witness(&t, Slope::new(3, 1)).unwrap();
    assert_eq!(r.bounds[0].b_plus, 2);
    assert!(matches!(
        validate_witness(&t, Slope::new(1, 1)),
        Err(Error::WitnessOnIntervalBoundary { .. })
    ));
    assert!(matches!(
        validate_witness(&t, Slope::L),
        Err(Error::WitnessOnLongitude)
    ));
}

#[test]
fn interval_examples() {
    let t = trefoil();
    let w = Slope::new(3, 1);
    assert!(is_lspace_slope(&t, w, Slope::new(2, 1)).unwrap());
    assert!(!is_lspace_slope(&t, w, Slope::new(-1, 1)).unwrap());
    assert!(!is_lspace_slope(&solid_torus(), Slope::M, Slope::L).unwrap());
    assert_eq!(
        lspace_interval(&t, w).unwrap().kind,
        IntervalKind::ClosedInterval {
            lo: Slope::new(1, 1),
            hi: Slope::M
        }
    );
    assert_eq!(
        lspace_interval(&t25(), Slope::new(6, 1)).unwrap().kind,
        IntervalKind::ClosedInterval {
            lo: Slope::new(3, 1),
            hi: Slope::M
        }
    );
    assert_eq!(
        lspace_interval(&solid_torus(), Slope::M).unwrap().kind,
        IntervalKind::AllButLongitude
    );
    for w in [Slope::M, Slope::new(1, 1), Slope::new(2, -3)] {
        assert_eq!(
            lspace_interval(&n_family(2), w).unwrap().kind,
            IntervalKind::AllButLongitude
        );
    }
}

#[test]
fn consistency_examples() {
    let t = trefoil();
    let w = Slope::new(3, 1);
    let c = check_corollary_consistency(&t, w, Slope::new(2, 1)).unwrap();
    assert!(c.consistent && c.direct);
    let c = check_corollary_consistency(&t, w, Slope::new(1, -1)).unwrap();
    assert!(c.consistent && !c.direct);
    let c = check_corollary_consistency(&n_family(2), Slope::M, Slope::L).unwrap();
    assert!(c.consistent && !c.direct);
}

#[test]
fn nls_detected_examples() {
    let t = nls_detected(&trefoil(), Slope::new(3, 1)).unwrap();
    assert!(same_points(
        &t,
        &ProjInterval::open(Slope::new(1, 1), Slope::M).complement()
    ));
    assert!(t.contains(Slope::new(1, 1)) && t.contains(Slope::M) && t.contains(Slope::L));
    for y in [solid_torus(), n_family(2)] {
        assert!(same_points(
            &nls_detected(&y, Slope::M).unwrap(),
            &ProjInterval::Point { at: Slope::L }
        ));
    }
}

#[test]
fn seifert_normalization() {
    assert_eq!(
        sfs_normalize(&SeifertData::new(0, &[(5, 3)])).unwrap().data,
        SeifertData::new(1, &[(2, 3)])
    );
    assert_eq!(
        sfs_normalize(&SeifertData::new(0, &[(-1, 2), (1, 3)]))
            .unwrap()
            .data,
        SeifertData::new(-1, &[(1, 2), (1, 3)])
    );
    assert!(matches!(
        sfs_normalize(&SeifertData::new(0, &[(4, 2)])),
        Err(Error::IntegerFiberSlope(4, 2))
    ));
}

#[test]
fn seifert_examples() {
    let v = sfs_is_lspace(&SeifertData::new(-1, &[(1, 2), (1, 2)])).unwrap();
    assert_eq!((v.lspace, v.reason), (false, "euler-zero"));
    assert!(
        sfs_is_lspace(&SeifertData::new(0, &[(1, 2), (1, 3), (1, 5)]))
            .unwrap()
            .lspace
    );
    let v = sfs_is_lspace(&SeifertData::new(-1, &[(1, 2), (1, 3), (1, 7)])).unwrap();
    assert!(!v.lspace);
    assert_eq!(
        v.orbifold_bounds,
        Some((Rat::new(-43, 42), Rat::new(37, 210)))
    );
    assert_eq!(v.euler, Rat::new(-1, 42));
}

#[test]
fn seifert_dtau_examples() {
    assert!(sfs_dtau(&SeifertData::new(0, &[(1, 2)]))
        .unwrap()
        .entries
        .is_empty());
    let t = sfs_dtau(&SeifertData::new(0, &[(1, 2), (1, 2)])).unwrap();
    assert_eq!(t.entries.len(), 1);
    let e = &t.entries[0];
    assert_eq!((e.j, e.x, e.delta, e.b_minus, e.a_minus), (1, 1, 0, -1, 1));
}

#[test]
fn fiber_thresholds() {
    let f = sfs_fiber_interval(&SeifertData::new(-1, &[(1, 2), (1, 3), (1, 5)]), 3).unwrap();
    assert_eq!((f.lower, f.upper), (Rat::new(0, 1), Rat::new(1, 5)));
    assert!(f.lspace);
    // 2/7 lies above the upper threshold, so this filling is an L-space.
    let f = sfs_fiber_interval(&SeifertData::new(-1, &[(1, 2), (1, 3), (2, 7)]), 3).unwrap();
    assert!(f.lspace);
    assert!(
        sfs_is_lspace(&SeifertData::new(-1, &[(1, 2), (1, 3), (2, 7)]))
            .unwrap()
            .lspace
    );
    let f = sfs_fiber_interval(&SeifertData::new(-1, &[(1, 2), (1, 3), (1, 6)]), 3).unwrap();
    assert!(!f.lspace);
}

#[test]
fn seifert_fiber_complement_agrees() {
    for d in [
        SeifertData::new(-1, &[(1, 2), (1, 3), (2, 7)]),
        SeifertData::new(-1, &[(1, 2), (1, 3), (1, 7)]),
        SeifertData::new(-1, &[(1, 2), (1, 2)]),
        SeifertData::new(-2, &[(1, 2), (2, 3), (3, 4)]),
    ] {
        let fc = fiber_complement(&d).unwrap();
        let via = is_lspace_slope(&fc.manifold, fc.mu_l, fc.mu_0).unwrap();
        let oracle = surgery_is_lspace_oracle(&fc.manifold, fc.mu_l, fc.mu_0).unwrap_or(false);
        assert_eq!(via, sfs_is_lspace(&d).unwrap().lspace, "{d}");
        assert_eq!(oracle, via, "{d}");
    }
}

fn trefoils(rows: [[i64; 2]; 2]) -> SpliceProblem {
    SpliceProblem {
        y1: trefoil(),
        y2: trefoil(),
        phi: GluingMatrix::new(rows).unwrap(),
    }
}

#[test]
fn splice_examples() {
    let v = splice_is_lspace(&trefoils([[1, 0], [1, -1]])).unwrap();
    assert!(!v.lspace);
    assert_eq!(v.reason, "not-rational-homology-sphere");
    assert!(
        splice_is_lspace(&trefoils([[3, -5], [1, -2]]))
            .unwrap()
            .lspace
    );
    let p = SpliceProblem {
        y1: solid_torus(),
        y2: trefoil(),
        phi: GluingMatrix::new([[1, 0], [2, -1]]).unwrap(),
    };
    assert!(matches!(
        judicious_slope(&p),
        Err(Error::NotRationalHomologySphere)
    ));
}

#[test]
fn judicious_trefoils() {
    let js = judicious_slope(&trefoils([[3, -5], [1, -2]])).unwrap();
    assert_eq!(
        (js.mu1, js.p1, js.p2, js.q2, js.q_star),
        (Slope::new(6, 1), 6, 13, 4, 5)
    );
    assert_eq!(
        (js.lambda1, js.lambda2, js.q_bar1, js.q_bar2),
        ((5, 1), (-10, -3), 5, 3)
    );
    let (b1, b2) = b_sets(&js);
    assert_eq!(
        (
            b1.into_iter().collect::<Vec<_>>(),
            b2.into_iter().collect::<Vec<_>>()
        ),
        (vec![5], vec![9])
    );
    let sp = spliced_manifold(&js).unwrap();
    assert_eq!(sp.manifold.g(), 1);
    let actual: std::collections::BTreeSet<_> = sp
        .manifold
        .dtau()
        .all
        .into_iter()
        .map(|d| d.element)
        .collect();
    assert_eq!(predicted_dtau(&js, &sp), actual);
}

#[test]
fn judicious_solid_tori() {
    for k in -3..=3 {
        let p = SpliceProblem {
            y1: solid_torus(),
            y2: solid_torus(),
            phi: GluingMatrix::new([[0, 1], [1, k]]).unwrap(),
        };
        let js = judicious_slope(&p).unwrap();
        // q* = −1 is normalized to 1; τ^c is empty on both sides, so the first admissible p₁ is 2.
        assert_eq!(js.p1, 2, "k = {k}");
        let (b1, b2) = b_sets(&js);
        assert!(b1.is_empty() && b2.is_empty());
        let sp = spliced_manifold(&js).unwrap();
        assert!(is_lspace_slope(&sp.manifold, sp.mu_l, sp.lambda_l).unwrap());
    }
    let empty = SpliceProblem {
        y1: trefoil(),
        y2: trefoil(),
        phi: GluingMatrix::new([[-1, 1], [0, 1]]).unwrap(),
    };
    assert!(matches!(
        judicious_slope(&empty),
        Err(Error::HypothesisNotMet(_))
    ));
}

#[test]
fn colors() {
    let t = trefoil();
    let mu = Slope::new(3, 1);
    assert_eq!(color(&t, mu, &z(6)).unwrap(), Color::Red);
    assert_eq!(color(&t, mu, &z(-1)).unwrap(), Color::Blue);
    assert_eq!(color(&t, mu, &z(2)).unwrap(), Color::Black);
}

#[test]
fn oracle_examples() {
    for nu in [Slope::M, Slope::new(1, 1), Slope::new(5, -2)] {
        assert!(surgery_is_lspace_oracle(&solid_torus(), Slope::M, nu).unwrap());
    }
    assert!(surgery_is_lspace_oracle(&trefoil(), Slope::new(3, 1), Slope::new(2, 1)).unwrap());
    assert!(!surgery_is_lspace_oracle(&t25(), Slope::new(4, 1), Slope::new(2, 1)).unwrap());
    assert!(matches!(
        surgery_is_lspace_oracle(&trefoil(), Slope::new(3, 1), Slope::L),
        Err(Error::LongitudeFilling)
    ));
}

#[test]
fn simple_knots() {
    assert_eq!(simple_knot_support(1, 7), vec![0]);
    assert_eq!(simple_knot_support(3, 7), vec![0, 1, 2]);
    assert_eq!(simple_knot_support(5, 7).len(), 5);
}

#[test]
fn cfd_worked_example() {
    let g = build_cfd_at(&negative_trefoil(), (5, -1), (-9, 2)).unwrap();
    assert_eq!(free_parts(&g.v0), vec![0, 2, 3, 4, 6]);
    assert_eq!(free_parts(&g.v1), vec![0, 2, 3, 4, 5, 6, 7, 8, 10]);
    assert_eq!(g.shift, z(4));
    let dot = g.to_dot();
    assert_eq!(dot.matches("rho1\"").count(), 5);
    assert_eq!(dot.matches("rho23\"").count(), 4);
}

#[test]
fn cfd_auto_framing() {
    for y in [trefoil(), t25(), solid_torus(), n_family(2), n_family(3)] {
        let g = build_cfd(&y).unwrap();
        assert!(g.valences().iter().all(|(_, n)| *n == 2));
        assert_eq!(
            g.v0.len() as i64,
            y.filling_order(Slope::new(g.mu.0, g.mu.1)).unwrap()
        );
    }
    let g = build_cfd(&solid_torus()).unwrap();
    assert_eq!(g.v0.len(), 1);
}

#[test]
fn twist_comparisons() {
    assert!(cfd_twist_compare(&n_family(2)).unwrap());
    assert!(cfd_twist_compare(&solid_torus()).unwrap());
    assert!(!cfd_twist_compare(&trefoil()).unwrap());
}
