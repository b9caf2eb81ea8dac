use dirac_core::lp::Problem;
use dirac_core::norms::{lambda_datum, lambda_norm_sq, spin_norm_sq};
use dirac_core::structure::{Basis, KType, Weight, RANK};
use dirac_core::weyl::{make_dominant, Group};
use dirac_core::{rational::int, Engine};
use proptest::prelude::*;

fn e() -> &'static Engine {
    Engine::shared()
}

fn ktype() -> impl Strategy<Value = KType> {
    (proptest::array::uniform6(0i64..6), -45i64..45).prop_map(|(a, g)| {
        let [a0, b, c, d, ee, f] = a;
        let r = (-2 * a0 - 3 * b - 4 * c - 6 * d - 5 * ee - 4 * f + g).rem_euclid(3);
        KType([a0, b, c, d, ee, f, g - r])
    })
}

fn weight(r: i64) -> impl Strategy<Value = Weight> {
    proptest::array::uniform7(-r..=r)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn projection_is_idempotent_and_dominant(eta in weight(25)) {
        let e = e();
        let p = e.cone.project(&eta).unwrap().coords();
        prop_assert!(p.iter().all(|x| *x >= int(0)));
        prop_assert_eq!(e.cone.project_rational(&p).unwrap(), p);
    }

    #[test]
    fn projection_does_not_increase_norm(eta in weight(25)) {
        let e = e();
        let p = e.cone.project(&eta).unwrap();
        prop_assert!(dirac_core::cone::norm2(&e.lat, &p) <= e.lat.norm2(&eta));
    }

    #[test]
    fn lambda_is_chamber_independent(k in ktype()) {
        let e = e();
        let d = lambda_datum(e, &k).unwrap();
        prop_assert_eq!(d.lambda_norm_sq, lambda_norm_sq(e, &k).unwrap());
    }

    #[test]
    fn norms_are_contragredient_invariant(k in ktype()) {
        let e = e();
        let d = k.contragredient();
        prop_assert_eq!(d.contragredient(), k);
        prop_assert_eq!(lambda_norm_sq(e, &k).unwrap(), lambda_norm_sq(e, &d).unwrap());
        prop_assert_eq!(spin_norm_sq(e, &k), spin_norm_sq(e, &d));
        prop_assert_eq!(e.lat.norm2(&e.lat.ktype_weight(&k)), e.lat.norm2(&e.lat.ktype_weight(&d)));
    }

    #[test]
    fn spin_norm_is_at_least_lambda_norm(k in ktype()) {
        let e = e();
        prop_assert!(spin_norm_sq(e, &k) >= lambda_norm_sq(e, &k).unwrap());
    }

    #[test]
    fn basis_conversions_round_trip(k in ktype(), w in weight(30)) {
        let e = e();
        let a = e.datum.to_ambient_ints(Basis::Varpi, &k.0);
        prop_assert_eq!(e.datum.from_ambient(Basis::Varpi, &a).unwrap(), k.0.map(int));
        prop_assert_eq!(e.datum.from_ambient(Basis::Zeta, &a).unwrap(), e.lat.ktype_weight(&k).map(int));
        let b = e.datum.to_ambient_ints(Basis::Zeta, &w);
        prop_assert_eq!(e.datum.from_ambient(Basis::Zeta, &b).unwrap(), w.map(int));
        prop_assert_eq!(e.lat.from_varpi(&e.lat.to_varpi(&w)), Some(w));
    }

    #[test]
    fn dominant_representative_is_stable(w in weight(12)) {
        let e = e();
        let mut d = w;
        make_dominant(&e.lat, &mut d, RANK);
        prop_assert!(d.iter().all(|&x| x >= 0));
        prop_assert_eq!(e.lat.norm2(&d), e.lat.norm2(&w));
        let amb = e.datum.to_ambient_ints(Basis::Zeta, &w);
        let (rep, word) = dirac_core::weyl::dominant_rep(&e.datum, &e.lat, &amb, Group::G).unwrap();
        prop_assert_eq!(rep, e.datum.to_ambient_ints(Basis::Zeta, &d));
        prop_assert_eq!(word.apply_weight(&e.lat, &w), d);
    }

    #[test]
    fn usmall_answers_carry_checkable_certificates(k in ktype()) {
        let e = e();
        let cert = dirac_core::norms::usmall_certificate(e, &k);
        prop_assert!(dirac_core::norms::usmall_problem(e, &k.0).check(&cert));
    }

    #[test]
    fn lp_certificates_check(a in proptest::collection::vec(proptest::collection::vec(-4i64..5, 5), 3), b in proptest::collection::vec(-6i64..7, 3)) {
        let p = Problem::new(a, b);
        let f = p.feasibility();
        prop_assert!(p.check(&f));
    }
}
