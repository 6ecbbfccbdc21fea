use mixmult_core::problem::parse_problem;
use mixmult_core::sv::*;
use mixmult_core::{Field, Genericity};
use num_bigint::BigInt;

fn join(name: &str) -> JoinSetting {
    let path = format!("{}/fixtures/{name}.mm", env!("CARGO_MANIFEST_DIR"));
    let p = parse_problem(
        &std::fs::read_to_string(path).unwrap(),
        &Field::prime(32003).unwrap(),
    )
    .unwrap();
    JoinSetting::new(p.ideal("X").unwrap(), p.ideal("Y").unwrap()).unwrap()
}

fn check(name: &str, sum: i64, degrees: Option<(u64, u64)>) {
    let js = join(name);
    let a = sv_degrees(&js, &Genericity::with_seed(1)).unwrap();
    let b = sv_degrees(&js, &Genericity::with_seed(2)).unwrap();
    assert_eq!(a.degs, b.degs);
    assert_eq!(a.degs.len(), 3);
    assert!(a.degs.iter().all(|d| *d >= BigInt::from(0)));
    assert_eq!(a.sum(), BigInt::from(sum));
    assert!(bezout_check(&a, degrees).holds());
}

#[test]
fn two_lines() {
    check("two_lines", 1, Some((1, 1)));
}

#[test]
fn two_conics() {
    check("two_conics", 4, Some((2, 2)));
}

#[test]
fn line_with_itself() {
    check("line_self", 1, None);
}
