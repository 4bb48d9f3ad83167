use foliation_lab::blowup::{blowup_once, reduce_singularities, ChartId, ReductionStatus};
use foliation_lab::exactalg::{rat, Poly};
use foliation_lab::foliation::{forms_proportional, ProjFoliation};
use foliation_lab::forms::{contract_radial, pullback, OneForm};
use foliation_lab::logcalc::examples::log_combination_form;
use foliation_lab::logcalc::{rham_saito_divide, verify_prop1, verify_prop3};
use foliation_lab::testkit::*;
use proptest::prelude::*;

#[test]
fn divided_power_matches_tangent_cone() {
    let mut r = rng(11);
    let mut seen = 0;
    let mut dicritical = 0;
    while seen < 100 {
        let Some(g) = random_germ(&mut r, 3) else {
            continue;
        };
        let (nu, m, first_level, cone) = first_level_data(&g);
        assert!(m == nu || m == nu + 1, "m = {m}, nu = {nu}");
        assert_eq!(m == nu + 1, first_level);
        assert_eq!(first_level, cone);
        dicritical += first_level as usize;
        seen += 1;
    }
    // radial linear part plus random quadratic terms: always dicritical at
    // the first level
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    let mut radial_seen = 0;
    while radial_seen < 50 {
        let Some(q) = random_germ(&mut r, 2) else {
            continue;
        };
        let w = OneForm::new(vec![
            -&y + q.omega().coeff(0).homogeneous_part(2),
            &x + q.omega().coeff(1).homogeneous_part(2),
        ])
        .unwrap();
        let Ok(g) = foliation_lab::foliation::GermFoliation::at_origin(w) else {
            continue;
        };
        let (nu, m, first_level, cone) = first_level_data(&g);
        assert_eq!((nu, m), (1, 2));
        assert!(first_level && cone);
        radial_seen += 1;
    }
    assert!(dicritical < seen);
}

#[test]
fn strict_transforms_multiply_back() {
    let mut r = rng(12);
    let mut seen = 0;
    while seen < 60 {
        let Some(g) = random_germ(&mut r, 3) else {
            continue;
        };
        for id in [ChartId::One, ChartId::Two] {
            let st = blowup_once(&g, id);
            let e = st.chart.divisor().pow(st.divided_power);
            assert_eq!(
                st.omega_tilde.scale_poly(&e),
                pullback(&st.chart.map(), g.omega()).unwrap()
            );
        }
        seen += 1;
    }
}

#[test]
fn separatrices_persist_through_blowup() {
    for case in random_nondicritical(13, 20)
        .into_iter()
        .chain(named_nondicritical())
    {
        let st = blowup_once(&case.germ, ChartId::One);
        let nu_f = case.germ.local_curve(&case.curve).order().unwrap();
        let pulled = case.curve.substitute(&st.chart.map()).unwrap();
        let strict = pulled.div_var_power(0, nu_f);
        if strict.is_constant() {
            continue;
        }
        let g = foliation_lab::foliation::GermFoliation::at_origin(st.omega_tilde.clone()).unwrap();
        assert!(g.is_invariant(&strict).unwrap(), "{}", case.label);
    }
}

#[test]
fn prop1_on_generated_corpus() {
    for case in prop1_corpus(21, 100) {
        assert!(
            verify_prop1(&case.germ, &case.curve).unwrap(),
            "{}",
            case.label
        );
    }
}

#[test]
fn prop3_on_nondicritical_corpus() {
    for case in random_nondicritical(22, 20)
        .into_iter()
        .chain(named_nondicritical())
    {
        let r = verify_prop3(&case.germ, &case.curve, 12).unwrap();
        assert!(r.all_logarithmic, "{}", case.label);
        assert_eq!(r.tree.status, ReductionStatus::Complete);
    }
}

#[test]
fn reduction_leaves_are_reduced() {
    for case in named_nondicritical() {
        let t = reduce_singularities(&case.germ, 12);
        for leaf in t.leaves() {
            if leaf.germ.is_singular() {
                assert!(leaf.germ.is_reduced_singularity().unwrap());
            }
        }
    }
}

#[test]
fn reduced_test_agrees_with_eigen_oracle() {
    let mut r = rng(31);
    for (lp, eig) in eigen_corpus(30, 200) {
        assert_eq!(lp.is_reduced(), eig.reduced(), "{lp:?} {eig:?}");
        if let Some(g) = germ_with_linear_part(&lp, &mut r) {
            assert_eq!(g.linear_part().unwrap(), lp);
            assert_eq!(g.is_reduced_singularity().unwrap(), eig.reduced());
        }
    }
}

#[test]
fn invariance_of_products() {
    let z = |i| Poly::var(3, i);
    let comps = vec![(z(0), rat(1)), (z(1), rat(2)), (z(2) - z(1), rat(-3))];
    let w = log_combination_form(&comps);
    let fol = ProjFoliation::from_form(w).unwrap();
    let (f, g) = (z(0) * z(1), z(2) - z(1));
    assert!(fol.is_invariant(&(&f * &g)).unwrap());
    assert!(fol.is_invariant(&f).unwrap() && fol.is_invariant(&g).unwrap());
    let h = z(0) + z(2);
    assert!(!fol.is_invariant(&(&f * &h)).unwrap());
    assert!(!fol.is_invariant(&h).unwrap());
}

#[test]
fn first_integral_constructions_divide() {
    for (fol, h, a) in first_integral_corpus(41, 20) {
        let r = rham_saito_divide(fol.omega(), &h).unwrap();
        assert!(r.certified);
        let ra = r.a.unwrap();
        assert!(ra.associated(&a));
        assert!(contract_radial(fol.omega()).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn proj_new_is_scale_invariant(k in arb_rat().prop_filter("nonzero", |k| *k != rat(0))) {
        let (_, fol, _) = foliation_lab::logcalc::examples::extremal_d1();
        let scaled = ProjFoliation::from_form(fol.omega().scale(&k)).unwrap();
        prop_assert_eq!(scaled, fol);
    }

    #[test]
    fn homogenize_then_dehomogenize(w in arb_one_form(2, 3, 4)) {
        prop_assume!(!w.is_zero());
        prop_assume!(w.content().is_constant());
        let fol = ProjFoliation::homogenize_affine(&w).unwrap();
        prop_assert!(contract_radial(fol.omega()).is_zero());
        prop_assert!(forms_proportional(&fol.affine_chart(0), &w));
    }
}
