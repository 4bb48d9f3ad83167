use foliation_lab::exactalg::{gcd, Poly};
use foliation_lab::forms::{contract_radial, d_poly, wedge};
use foliation_lab::parse::parse_poly;
use foliation_lab::testkit::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(
        a in arb_poly(3, 3, 5),
        b in arb_poly(3, 3, 5),
        c in arb_poly(3, 3, 5),
    ) {
        check_ring_axioms(&a, &b, &c)?;
    }

    #[test]
    fn gcd_divides_and_is_divisible(
        a in arb_poly(2, 2, 3),
        b in arb_poly(2, 2, 3),
        c in arb_nonzero_poly(2, 2, 3),
    ) {
        check_gcd_divisibility(&a, &b, &c)?;
    }

    #[test]
    fn order_is_additive(a in arb_nonzero_poly(3, 4, 4), b in arb_nonzero_poly(3, 4, 4)) {
        check_order_additivity(&a, &b)?;
    }

    #[test]
    fn d_squared_vanishes(p in arb_poly(3, 4, 6)) {
        check_d_squared(&p)?;
    }

    #[test]
    fn pullback_is_functorial(
        phi in arb_map(2, 2, 2),
        psi in arb_map(2, 2, 2),
        w in arb_one_form(2, 2, 3),
        p in arb_poly(2, 3, 4),
    ) {
        check_pullback_functorial(&phi, &psi, &w, &p)?;
    }

    #[test]
    fn exact_division_roundtrips(a in arb_poly(2, 3, 4), b in arb_nonzero_poly(2, 2, 3)) {
        prop_assert_eq!((&a * &b).divexact(&b).unwrap(), a);
    }

    #[test]
    fn squarefree_part_strips_squares(a in arb_nonzero_poly(2, 2, 3)) {
        let sq = (&a * &a).squarefree_part();
        prop_assert!(sq.associated(&a.squarefree_part()));
    }

    #[test]
    fn gcd_of_coprime_multiples(a in arb_nonzero_poly(2, 2, 3), c in arb_nonzero_poly(2, 2, 3)) {
        // gcd(a c, c) is c up to a constant
        let g = gcd(&(&a * &c), &c);
        prop_assert!(g.associated(&c));
    }

    #[test]
    fn wedge_is_alternating(w in arb_one_form(3, 2, 3), p in arb_poly(3, 2, 3)) {
        prop_assert!(wedge(&w, &w).unwrap().is_zero());
        let dp = d_poly(&p);
        prop_assert!(wedge(&dp, &dp).unwrap().is_zero());
    }

    #[test]
    fn euler_identity_for_exact_forms(p in arb_poly(3, 4, 5), k in 0u32..4) {
        // i_R dh = k h for h homogeneous of degree k
        let h = p.homogeneous_part(k);
        let k_rat = foliation_lab::exactalg::rat(k as i64);
        prop_assert_eq!(contract_radial(&d_poly(&h)), h.scale(&k_rat));
    }

    #[test]
    fn render_reparses(p in arb_poly(3, 4, 6)) {
        let names = ["a", "b", "c"];
        prop_assert_eq!(parse_poly(&p.render(&names), &names).unwrap(), p);
    }

    #[test]
    fn substitution_is_a_ring_map(
        a in arb_poly(2, 2, 3),
        b in arb_poly(2, 2, 3),
        phi in arb_map(2, 3, 2),
    ) {
        let s = |p: &Poly| p.substitute(&phi).unwrap();
        prop_assert_eq!(s(&(&a * &b)), s(&a) * s(&b));
        prop_assert_eq!(s(&(&a + &b)), s(&a) + s(&b));
    }
}
