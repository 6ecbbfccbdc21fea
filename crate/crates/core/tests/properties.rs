//! Randomized invariants of the arithmetic, parser and ideal operations.

use mixmult_core::problem::{parse_poly, parse_problem};
use mixmult_core::{Field, Ideal, Polynomial, Ring, RingRef};
use proptest::prelude::*;

fn ring(field: Field) -> RingRef {
    Ring::bigraded("S", &["x", "y"], &["z"], field).unwrap()
}

/// Polynomial text with small integer coefficients and exponents.
fn poly_text() -> impl Strategy<Value = String> {
    prop::collection::vec((-9i64..=9, 0u32..3, 0u32..3, 0u32..3), 0..5).prop_map(|terms| {
        if terms.is_empty() {
            return "0".to_string();
        }
        terms
            .iter()
            .map(|(c, a, b, d)| format!("({c})*x^{a}*y^{b}*z^{d}"))
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

/// Homogeneous text of degree `d` in `x, y, z` (single grading view).
fn form_text(d: u32) -> impl Strategy<Value = String> {
    prop::collection::vec((1i64..=20, 0..=d, 0..=d), 1..4).prop_map(move |terms| {
        terms
            .iter()
            .map(|(c, a, b)| {
                let a = (*a).min(d);
                let b = (*b).min(d - a);
                format!("{c}*x^{a}*y^{b}*z^{}", d - a - b)
            })
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

fn p(text: &str, r: &RingRef) -> Polynomial {
    parse_poly(text, r).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_text(), b in poly_text(), c in poly_text()) {
        for field in [Field::Rationals, Field::prime(7).unwrap(), Field::prime(32003).unwrap()] {
            let r = ring(field);
            let (a, b, c) = (p(&a, &r), p(&b, &r), p(&c, &r));
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            prop_assert!(a.sub(&a).unwrap().is_zero());
            prop_assert_eq!(a.add(&a.neg()).unwrap(), Polynomial::zero(&r));
        }
    }

    #[test]
    fn reduction_mod_p_is_a_homomorphism(a in poly_text(), b in poly_text()) {
        let q = ring(Field::Rationals);
        let fp = ring(Field::prime(7).unwrap());
        let over_q = p(&a, &q).mul(&p(&b, &q)).unwrap().add(&p(&a, &q)).unwrap();
        let over_p = p(&a, &fp).mul(&p(&b, &fp)).unwrap().add(&p(&a, &fp)).unwrap();
        prop_assert_eq!(p(&over_q.to_string(), &fp), over_p);
    }

    #[test]
    fn print_then_parse_is_identity(a in poly_text()) {
        for field in [Field::Rationals, Field::prime(32003).unwrap()] {
            let r = ring(field);
            let f = p(&a, &r);
            prop_assert_eq!(p(&f.to_string(), &r), f);
        }
    }

    #[test]
    fn problem_file_round_trip(a in form_text(2), b in form_text(3)) {
        let text = format!("field F 32003\nring R vars x:1 y:1 z:1\nideal I in R = {a} ; {b}\nideal K in R = intersect I I\n");
        let parsed = parse_problem(&text, &Field::Rationals).unwrap();
        let again = parse_problem(&parsed.to_string(), &Field::Rationals).unwrap();
        prop_assert_eq!(parsed.to_string(), again.to_string());
        prop_assert!(parsed.ideal("I").unwrap().equals(&again.ideal("I").unwrap()).unwrap());
    }
}

fn graded() -> RingRef {
    Ring::graded("R", &["x", "y", "z"], Field::prime(32003).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn normal_form_is_idempotent(g1 in form_text(2), g2 in form_text(2), f in form_text(3)) {
        let r = graded();
        let i = Ideal::new(&r, vec![p(&g1, &r), p(&g2, &r)]).unwrap();
        let f = p(&f, &r);
        let nf = i.normal_form(&f).unwrap();
        prop_assert_eq!(i.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(i.contains(&f.sub(&nf).unwrap()).unwrap());
        prop_assert!(i.verify_basis());
    }

    #[test]
    fn saturation_laws(g1 in form_text(2), g2 in form_text(1), j in form_text(1)) {
        let r = graded();
        let i = Ideal::new(&r, vec![p(&g1, &r), p(&g2, &r)]).unwrap();
        let j = Ideal::new(&r, vec![p(&j, &r)]).unwrap();
        let s = i.saturation(&j).unwrap();
        prop_assert!(i.is_subset_of(&s).unwrap());
        prop_assert!(s.saturation(&j).unwrap().equals(&s).unwrap());
        prop_assert!(i.quotient(&j).unwrap().is_subset_of(&s).unwrap());
        prop_assert!(i.intersection(&j).unwrap().is_subset_of(&i).unwrap());
    }
}
