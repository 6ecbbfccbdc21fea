use mixmult_core::ideal_mixed::*;
use mixmult_core::problem::parse_problem;
use mixmult_core::{Field, Genericity, Ideal};
use num_bigint::BigInt;

fn load(name: &str) -> (Ideal, Ideal) {
    let path = format!("{}/fixtures/{name}.mm", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(path).unwrap();
    let p = parse_problem(&text, &Field::Rationals).unwrap();
    (p.ideal("A").unwrap(), p.ideal("J").unwrap())
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn twisted_cubic() {
    let (a, j) = load("twisted_cubic");
    let s = GradedSetting::new(a, None, j).unwrap();
    assert_eq!(analytic_spread(&s).unwrap(), 3);
    let (_, rep) = mixed_multiplicities(&s, &Genericity::default()).unwrap();
    assert_eq!(rep.e, ints(&[1, 2, 1]));
    let (rees, diag) = rees_and_diagonal(&s, &rep).unwrap();
    assert_eq!(rees, BigInt::from(4));
    assert_eq!(diag, Some(BigInt::from(10)));
    let (_, agree) = rees_bigraded_crosscheck(&s, &rep.e).unwrap();
    assert!(agree);
}

#[test]
fn three_points() {
    let (a, j) = load("three_points");
    let s = GradedSetting::new(a, None, j).unwrap();
    let (_, rep) = mixed_multiplicities(&s, &Genericity::default()).unwrap();
    assert_eq!(rep.e, ints(&[1, 2, 1]));
    assert_eq!(order_of(&s).unwrap(), (2, true));
    let hyp = Hypotheses {
        generic_ci: true,
        least_degrees: Some((2, 2)),
    };
    let f = group_formulas(&closed_form_oracles(&s, &hyp, &Genericity::default()).unwrap());
    assert_eq!(f["e2"], vec![(2, BigInt::from(1))]);
    assert_eq!(f["e1"], vec![(1, BigInt::from(2))]);
}

#[test]
fn rigidity_fails_off_regular_rings() {
    let (a, j) = load("rigidity_counterexample");
    let s = GradedSetting::new(a, None, j).unwrap();
    let (chain, rep) = mixed_multiplicities(&s, &Genericity::default()).unwrap();
    assert_eq!(rep.s_j, 2);
    assert_eq!(rep.e, ints(&[1, 0]));
    assert_eq!(rep.rho, Some(0));
    assert_eq!(chain.dim(1), 1);
    assert!(!rep.ht_checked);
}

#[test]
fn mixed_degree_generators_use_rees_route() {
    let (a, j) = load("mixed_degree");
    let s = GradedSetting::new(a, None, j).unwrap();
    assert!(matches!(
        mixed_multiplicities(&s, &Genericity::default()),
        Err(mixmult_core::Error::Unsupported(_))
    ));
    let (_, rep) = mixed_multiplicities_rees(&s).unwrap();
    assert_eq!(rep.e, ints(&[1, 1]));
}
