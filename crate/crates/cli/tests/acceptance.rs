//! One line per acceptance criterion. Values are exact integers; each
//! criterion also carries a wall-clock limit.

use std::time::{Duration, Instant};

use mixmult_cli::run_cli;
use mixmult_core::bigraded::{
    degrees_report, e_positivity_with_sequence, e_table_full, e_value_with_sequence,
    BigradedAlgebra,
};
use mixmult_core::fixtures::load;
use mixmult_core::ideal_mixed::{
    closed_form_oracles, group_formulas, mixed_multiplicities, order_of, rees_and_diagonal,
    rees_bigraded_crosscheck, GradedSetting, Hypotheses,
};
use mixmult_core::selftest::{run_selftest, SelftestConfig};
use mixmult_core::sv::{bezout_check, sv_degrees, JoinSetting};
use mixmult_core::{Genericity, Polynomial};
use num_bigint::BigInt;

type Check = Result<(), String>;

/// Number, name, time limit in seconds, check.
type Criterion = (u32, &'static str, u64, fn() -> Check);

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Check {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn graded(name: &str) -> Result<GradedSetting, String> {
    let p = load(name).map_err(|e| e.to_string())?;
    GradedSetting::new(p.ideal("A").unwrap(), None, p.ideal("J").unwrap())
        .map_err(|e| e.to_string())
}

fn c1_three_components() -> Check {
    let alg = BigradedAlgebra::new(
        load("bigraded_three_components")
            .unwrap()
            .ideal("I")
            .unwrap(),
    )
    .unwrap();
    let rep = degrees_report(&alg).map_err(|e| e.to_string())?;
    expect(
        "(r, r1, r2)",
        (rep.r, rep.r1, rep.r2),
        (Some(4), Some(3), Some(3)),
    )?;
    expect(
        "top diagonal",
        e_table_full(&alg).unwrap().diagonal(),
        ints(&[0, 0, 1, 0, 0]),
    )?;
    let ring = alg.ring();
    let seq: Vec<Polynomial> = ["x4", "x2", "y4", "y2"]
        .iter()
        .map(|v| Polynomial::var(ring, ring.var_index(v).unwrap()))
        .collect();
    let pos = e_positivity_with_sequence(&alg, 3, &seq[..1]).map_err(|e| e.to_string())?;
    expect(
        "e13 witness dim with x4",
        (pos.witness_dim, pos.positive),
        (3, false),
    )?;
    let v = e_value_with_sequence(&alg, 2, 2, &seq).map_err(|e| e.to_string())?;
    expect("e22 via (x4, x2, y4, y2)", v.value, BigInt::from(1))
}

fn c2_nilpotent() -> Check {
    let alg =
        BigradedAlgebra::new(load("bigraded_nilpotent").unwrap().ideal("I").unwrap()).unwrap();
    expect(
        "P is zero",
        alg.hilbert_polynomial().unwrap().is_zero(),
        true,
    )?;
    let i = alg.ideal();
    let dims = [
        i.krull_dim(),
        i.sum(alg.r1()).unwrap().krull_dim(),
        i.sum(alg.r2()).unwrap().krull_dim(),
    ];
    expect("dims of R, R/R_(1), R/R_(2)", dims, [3, 3, 3])
}

fn c3_counterexample() -> Check {
    let s = graded("rigidity_counterexample")?;
    let (chain, rep) =
        mixed_multiplicities(&s, &Genericity::default()).map_err(|e| e.to_string())?;
    expect("s(J)", rep.s_j, 2)?;
    expect("(e0, e1)", rep.e, ints(&[1, 0]))?;
    expect("rho", rep.rho, Some(0))?;
    expect("dim A/(a1):J^inf", chain.dim(1), 1)?;
    let ring = s.ambient.clone();
    let var = |n: &str| Polynomial::var(&ring, ring.var_index(n).unwrap());
    let witness =
        s.ia.with_generators(&[var("x4")])
            .unwrap()
            .saturation(&s.j)
            .unwrap();
    let expected =
        s.ia.with_generators(&[var("x2"), var("x3"), var("x4")])
            .unwrap();
    expect(
        "x4 A : J^inf = (x2, x3, x4) A",
        witness.equals(&expected).unwrap(),
        true,
    )
}

fn c4_twisted_cubic() -> Check {
    let s = graded("twisted_cubic")?;
    let (_, rep) = mixed_multiplicities(&s, &Genericity::default()).map_err(|e| e.to_string())?;
    expect("(e0, e1, e2)", rep.e.clone(), ints(&[1, 2, 1]))?;
    let (table, agree) = rees_bigraded_crosscheck(&s, &rep.e).map_err(|e| e.to_string())?;
    expect("Rees route agrees", agree, true)?;
    expect(
        "Rees route diagonal, e_{3,0} first",
        table.diagonal(),
        ints(&[0, 1, 2, 1]),
    )?;
    let (rees, diag) = rees_and_diagonal(&s, &rep).unwrap();
    expect("rees_mult", rees, BigInt::from(4))?;
    expect("diagonal degree", diag, Some(BigInt::from(10)))
}

fn c5_three_points() -> Check {
    let s = graded("three_points")?;
    let (_, rep) = mixed_multiplicities(&s, &Genericity::default()).map_err(|e| e.to_string())?;
    expect("(e0, e1, e2)", rep.e.clone(), ints(&[1, 2, 1]))?;
    expect("o(J)", order_of(&s).unwrap().0, 2)?;
    let hyp = Hypotheses {
        generic_ci: true,
        least_degrees: Some((2, 2)),
    };
    let f = group_formulas(&closed_form_oracles(&s, &hyp, &Genericity::default()).unwrap());
    expect("e1 formula", f["e1"].clone(), vec![(1, rep.e[1].clone())])?;
    expect(
        "e2 = c1 c2 - r",
        f["e2"].clone(),
        vec![(2, BigInt::from(4 - 3))],
    )?;
    expect(
        "rees_mult",
        rees_and_diagonal(&s, &rep).unwrap().0,
        BigInt::from(4),
    )
}

fn sv_case(name: &str, sum: i64, degrees: (u64, u64)) -> Check {
    let p = load(name).unwrap();
    let js = JoinSetting::new(p.ideal("X").unwrap(), p.ideal("Y").unwrap())
        .map_err(|e| e.to_string())?;
    let a = sv_degrees(&js, &Genericity::with_seed(0)).map_err(|e| e.to_string())?;
    let b = sv_degrees(&js, &Genericity::with_seed(0x5a5a)).map_err(|e| e.to_string())?;
    expect(&format!("{name}: sum"), a.sum(), BigInt::from(sum))?;
    expect(
        &format!("{name}: all nonnegative"),
        a.degs.iter().all(|d| *d >= BigInt::from(0)),
        true,
    )?;
    expect(&format!("{name}: seeds agree"), &a.degs, &b.degs)?;
    expect(
        &format!("{name}: Bezout"),
        bezout_check(&a, Some(degrees)).holds(),
        true,
    )
}

fn c6_sv() -> Check {
    sv_case("two_lines", 1, (1, 1))?;
    sv_case("two_conics", 4, (2, 2))
}

fn c7_property_suites() -> Check {
    let cfg = SelftestConfig::default();
    let report = run_selftest(&cfg);
    let count = |n: &str| report.suite(n).map(|s| s.passed + s.failed).unwrap_or(0);
    expect(
        "hilbert oracle instances >= 50",
        count("a_hilbert_oracle") >= 50,
        true,
    )?;
    expect(
        "saturation dimension instances >= 20",
        count("c_saturation_dims") >= 20,
        true,
    )?;
    expect("saturation pairs >= 50", count("f_saturation") >= 50, true)?;
    expect(
        "reduction fixtures >= 2",
        count("h_reduction_invariance") >= 2,
        true,
    )?;
    expect("window", cfg.window, 8)?;
    if !report.ok() {
        let failures: Vec<String> = report
            .suites
            .iter()
            .flat_map(|s| s.failures.clone())
            .collect();
        return Err(format!(
            "{} failures: {}",
            report.failed(),
            failures.join("; ")
        ));
    }
    // the CLI entry point runs the same suites
    expect(
        "selftest subcommand exit code",
        run_cli(["mixmult", "selftest"]).code,
        0,
    )
}

fn c8_hypothesis_labels() -> Check {
    // Hypotheses that cannot be checked are labels: without them the
    // dependent formulas are withheld rather than asserted.
    let s = graded("three_points")?;
    let unlabeled = group_formulas(
        &closed_form_oracles(&s, &Hypotheses::default(), &Genericity::default()).unwrap(),
    );
    expect(
        "no deviation formula without label",
        unlabeled.contains_key("deviation"),
        false,
    )?;
    let labeled = Hypotheses {
        generic_ci: true,
        least_degrees: None,
    };
    let f = group_formulas(&closed_form_oracles(&s, &labeled, &Genericity::default()).unwrap());
    expect(
        "deviation formula with label",
        f.get("deviation").cloned(),
        Some(vec![(2, BigInt::from(1))]),
    )
}

#[test]
fn acceptance() {
    let criteria: Vec<Criterion> = vec![
        (
            1,
            "three-component bigraded example",
            30,
            c1_three_components,
        ),
        (2, "nilpotent product, P = 0", 5, c2_nilpotent),
        (3, "rigidity counterexample", 10, c3_counterexample),
        (4, "twisted cubic, two routes", 120, c4_twisted_cubic),
        (5, "three points, closed forms", 60, c5_three_points),
        (6, "Stückrad–Vogel degrees", 240, c6_sv),
        (7, "property suites", 900, c7_property_suites),
        (
            8,
            "unverifiable hypotheses are labels",
            60,
            c8_hypothesis_labels,
        ),
    ];
    let mut failed = 0;
    for (n, name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(limit);
        let ok = outcome.is_ok() && within;
        if !ok {
            failed += 1;
        }
        let detail = match (&outcome, within) {
            (Err(e), _) => e.clone(),
            (Ok(()), false) => "time limit exceeded".to_string(),
            (Ok(()), true) => "exact match".to_string(),
        };
        println!(
            "criterion {n} {:<4} {name}: {detail} (tolerance: exact integers; limit {limit} s; took {:.2} s)",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
