//! Fixture checks and randomized property suites, runnable from the library
//! so that the command-line `selftest` and the test harness share one code path.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::bigraded::{
    degrees_report, e_positivity, e_table_full, e_value_via_criterion, e_value_with_sequence,
    saturation_dims, sum_check, BigradedAlgebra, SumCheck,
};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar, DEFAULT_PRIME};
use crate::fixtures;
use crate::generic::{random_combination, Genericity};
use crate::groebner::Ideal;
use crate::hilbert::{hilbert_function, polynomial_of, series_of};
use crate::ideal_mixed::{
    analytic_spread, closed_form_oracles, group_formulas, mixed_multiplicities, order_of,
    reduction_invariance_check, rees_and_diagonal, rees_bigraded_crosscheck, GradedSetting,
    Hypotheses,
};
use crate::monomial::Monomial;
use crate::poly::{Homogeneity, Polynomial};
use crate::ring::{Ring, RingRef};
use crate::sv::{bezout_check, sv_degrees, JoinSetting};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    /// Instances whose preconditions could not be established.
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    fn new(name: &str) -> SuiteOutcome {
        SuiteOutcome {
            name: name.to_string(),
            passed: 0,
            failed: 0,
            skipped: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, label: impl fmt::Display, outcome: Result<bool>) {
        match outcome {
            Ok(true) => self.passed += 1,
            Ok(false) => {
                self.failed += 1;
                self.failures.push(format!("{label}: mismatch"));
            }
            Err(e) => {
                self.failed += 1;
                self.failures.push(format!("{label}: {e}"));
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestReport {
    pub suites: Vec<SuiteOutcome>,
}

impl SelftestReport {
    pub fn passed(&self) -> usize {
        self.suites.iter().map(|s| s.passed).sum()
    }

    pub fn failed(&self) -> usize {
        self.suites.iter().map(|s| s.failed).sum()
    }

    pub fn ok(&self) -> bool {
        self.failed() == 0
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteOutcome> {
        self.suites.iter().find(|s| s.name == name)
    }
}

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub genericity: Genericity,
    /// Random bigraded ideals for the Hilbert, degree and swap suites.
    pub hilbert_instances: usize,
    /// Bidegrees with `u + v ≤ window` are compared.
    pub window: u32,
    pub saturation_pairs: usize,
    pub mixed_instances: usize,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig {
            genericity: Genericity::default(),
            hilbert_instances: 50,
            window: 8,
            saturation_pairs: 50,
            mixed_instances: 12,
        }
    }
}

fn default_field() -> Field {
    Field::Prime(DEFAULT_PRIME)
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, parts: &[(&[usize], u32)]) -> Monomial {
    let mut e = vec![0u32; n];
    for (vars, d) in parts {
        for _ in 0..*d {
            e[vars[rng.gen_range(0..vars.len())]] += 1;
        }
    }
    Monomial(e)
}

fn random_form(
    rng: &mut ChaCha8Rng,
    ring: &RingRef,
    parts: &[(&[usize], u32)],
    max_terms: usize,
) -> Polynomial {
    loop {
        let nterms = rng.gen_range(1..=max_terms);
        let terms: Vec<(Monomial, Scalar)> = (0..nterms)
            .map(|_| {
                (
                    random_monomial(rng, ring.nvars(), parts),
                    ring.field.random(rng, DEFAULT_PRIME),
                )
            })
            .collect();
        let f = Polynomial::from_terms(ring, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random bihomogeneous ideal in at most five variables with generators of
/// total degree at most three.
pub fn random_bigraded_ideal(rng: &mut ChaCha8Rng, field: &Field) -> Result<Ideal> {
    let n1 = rng.gen_range(1..=3usize);
    let n2 = rng.gen_range(1..=(5 - n1).min(3));
    let xs: Vec<String> = (1..=n1).map(|i| format!("x{i}")).collect();
    let ys: Vec<String> = (1..=n2).map(|i| format!("y{i}")).collect();
    let xr: Vec<&str> = xs.iter().map(String::as_str).collect();
    let yr: Vec<&str> = ys.iter().map(String::as_str).collect();
    let ring = Ring::bigraded("S", &xr, &yr, field.clone())?;
    let (xv, yv) = (ring.first_kind(), ring.second_kind());
    let ngens = rng.gen_range(1..=3);
    let mut gens = Vec::new();
    for _ in 0..ngens {
        let (a, b) = loop {
            let a = rng.gen_range(0..=2u32);
            let b = rng.gen_range(0..=2u32);
            if (1..=3).contains(&(a + b)) {
                break (a, b);
            }
        };
        gens.push(random_form(rng, &ring, &[(&xv, a), (&yv, b)], 3));
    }
    Ideal::new(&ring, gens)
}

/// Random pair of homogeneous ideals in `k[x1..xn]`, `n ∈ {2, 3}`.
pub fn random_graded_pair(rng: &mut ChaCha8Rng, field: &Field) -> Result<(Ideal, Ideal)> {
    let n = rng.gen_range(2..=3usize);
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let ring = Ring::graded("R", &refs, field.clone())?;
    let all: Vec<usize> = (0..n).collect();
    let ideal = |rng: &mut ChaCha8Rng| -> Result<Ideal> {
        let k = rng.gen_range(1..=3);
        let gens = (0..k)
            .map(|_| {
                let d = rng.gen_range(1..=2);
                random_form(rng, &ring, &[(&all, d)], 3)
            })
            .collect();
        Ideal::new(&ring, gens)
    };
    let i = ideal(rng)?;
    let j = ideal(rng)?;
    Ok((i, j))
}

/// Random setting `A = k[x0..xn]/I_A` with `J` generated in one degree.
pub fn random_equigenerated_setting(rng: &mut ChaCha8Rng, field: &Field) -> Result<GradedSetting> {
    let n = rng.gen_range(2..=3usize);
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let ring = Ring::graded("R", &refs, field.clone())?;
    let all: Vec<usize> = (0..n).collect();
    let ia = if n == 3 && rng.gen_bool(0.3) {
        Ideal::new(&ring, vec![random_form(rng, &ring, &[(&all, 2)], 3)])?
    } else {
        Ideal::zero(&ring)
    };
    loop {
        let d = rng.gen_range(1..=2);
        let k = rng.gen_range(1..=3);
        let gens = (0..k)
            .map(|_| random_form(rng, &ring, &[(&all, d)], 2))
            .collect();
        let j = Ideal::new(&ring, gens)?;
        if ia.sum(&j)?.equals(&ia)? {
            continue;
        }
        return GradedSetting::new(ia.clone(), None, j);
    }
}

fn for_each_monomial(vars: &[usize], d: u32, exps: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    match vars.split_first() {
        None => {
            if d == 0 {
                f(exps)
            }
        }
        Some((&v, rest)) => {
            for e in 0..=d {
                exps[v] = e;
                for_each_monomial(rest, d - e, exps, f);
            }
            exps[v] = 0;
        }
    }
}

fn monomials_of(ring: &RingRef, u: u32, v: u32) -> Vec<Monomial> {
    let (xs, ys) = (ring.first_kind(), ring.second_kind());
    let mut out = Vec::new();
    let mut exps = vec![0u32; ring.nvars()];
    for_each_monomial(&xs, u, &mut exps, &mut |e| {
        let mut inner = e.to_vec();
        for_each_monomial(&ys, v, &mut inner, &mut |e2| {
            out.push(Monomial(e2.to_vec()))
        });
    });
    out
}

/// `dim_k (S/I)_(u,v)` by linear algebra on the generators' multiples. Uses
/// no Gröbner basis, so it is an independent check of the Hilbert machinery.
pub fn hilbert_by_rank(ideal: &Ideal, u: u32, v: u32) -> Result<usize> {
    let ring = ideal.ring();
    let field = &ring.field;
    let cols = monomials_of(ring, u, v);
    let index: BTreeMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
    for g in ideal.generators() {
        let d = match g.bidegree()? {
            Homogeneity::Bihomogeneous(d) => d,
            Homogeneity::Inhomogeneous => return Err(Error::Inhomogeneous(g.to_string())),
        };
        if d.d1 > u || d.d2 > v {
            continue;
        }
        for m in monomials_of(ring, u - d.d1, v - d.d2) {
            if pivots.len() == cols.len() {
                break;
            }
            let mut row: BTreeMap<usize, Scalar> = g
                .mul_term(&m, &field.one())
                .terms()
                .iter()
                .map(|(mono, c)| (index[mono], c.clone()))
                .collect();
            while let Some((&lead, c)) = row.iter().next() {
                let Some(p) = pivots.get(&lead) else { break };
                let c = c.clone();
                for (col, pc) in p {
                    let val = field.sub(row.get(col).unwrap_or(&field.zero()), &field.mul(&c, pc));
                    if field.is_zero(&val) {
                        row.remove(col);
                    } else {
                        row.insert(*col, val);
                    }
                }
            }
            if let Some((&lead, c)) = row.iter().next() {
                let inv = field.inv(c);
                let normalized = row
                    .into_iter()
                    .map(|(k, x)| (k, field.mul(&x, &inv)))
                    .collect();
                pivots.insert(lead, normalized);
            }
        }
    }
    Ok(cols.len() - pivots.len())
}

fn hilbert_agreement(ideal: &Ideal, window: u32) -> Result<bool> {
    let series = series_of(ideal)?;
    let poly = polynomial_of(&series);
    for total in 0..=window {
        for u in 0..=total {
            let v = total - u;
            let by_rank = BigInt::from(hilbert_by_rank(ideal, u, v)?);
            if series.coefficient(u, v) != by_rank || hilbert_function(ideal, u, v)? != by_rank {
                return Ok(false);
            }
            if u >= poly.stability.0
                && v >= poly.stability.1
                && poly.eval(u as i64, v as i64) != by_rank
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn saturation_degrees_agree(alg: &BigradedAlgebra) -> Result<bool> {
    let d = saturation_dims(alg)?;
    let same = |a: i64, b: i64| a == b || (a <= 0 && b <= 0);
    Ok(same(d[0], d[1]) && same(d[2], d[3]))
}

fn swap_agreement(alg: &BigradedAlgebra) -> Result<bool> {
    let sw = alg.swapped()?;
    let s = series_of(alg.ideal())?;
    let t = series_of(sw.ideal())?;
    if s.swapped() != t {
        return Ok(false);
    }
    let (p, q) = (polynomial_of(&s), polynomial_of(&t));
    if p.swapped().coeffs != q.coeffs {
        return Ok(false);
    }
    let (a, b) = (degrees_report(alg)?, degrees_report(&sw)?);
    if (a.r, a.r1, a.r2) != (b.r, b.r2, b.r1) {
        return Ok(false);
    }
    Ok(e_table_full(alg)?.swapped() == e_table_full(&sw)?)
}

/// Every top-diagonal cell: criterion positivity and value against the table.
fn criterion_cells(
    alg: &BigradedAlgebra,
    cfg: &Genericity,
    suite: &mut SuiteOutcome,
    label: &str,
) -> Result<()> {
    let table = e_table_full(alg)?;
    let Some(r) = table.r else { return Ok(()) };
    for i in 0..=r {
        let j = r - i;
        let entry = table.get(i, j);
        let outcome = (|| -> Result<bool> {
            let rep = degrees_report(alg)?;
            let value = e_value_via_criterion(alg, i, j, cfg)?;
            let in_range = i as i64 <= rep.r1.unwrap_or(-1) && j as i64 <= rep.r2.unwrap_or(-1);
            let positive = if in_range {
                e_positivity(alg, i, j, cfg)?.positive
            } else {
                false
            };
            Ok(positive == (entry > BigInt::zero()) && value.value == entry)
        })();
        suite.record(format!("{label} e_{i}{j}"), outcome);
    }
    Ok(())
}

fn bigraded_fixture(name: &str) -> Result<BigradedAlgebra> {
    BigradedAlgebra::new(fixtures::load(name)?.ideal("I")?)
}

fn graded_fixture(name: &str) -> Result<GradedSetting> {
    let p = fixtures::load(name)?;
    GradedSetting::new(p.ideal("A")?, None, p.ideal("J")?)
}

fn join_fixture(name: &str) -> Result<JoinSetting> {
    let p = fixtures::load(name)?;
    JoinSetting::new(p.ideal("X")?, p.ideal("Y")?)
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn fixture_checks(cfg: &Genericity) -> SuiteOutcome {
    let mut s = SuiteOutcome::new("fixtures");
    s.record(
        "three components",
        (|| {
            let alg = bigraded_fixture("bigraded_three_components")?;
            let rep = degrees_report(&alg)?;
            let diag = e_table_full(&alg)?.diagonal();
            let ring = alg.ring();
            let seq: Vec<Polynomial> = ["x4", "x2", "y4", "y2"]
                .iter()
                .map(|v| Polynomial::var(ring, ring.var_index(v).unwrap()))
                .collect();
            let e22 = e_value_with_sequence(&alg, 2, 2, &seq)?.value;
            Ok((rep.r, rep.r1, rep.r2) == (Some(4), Some(3), Some(3))
                && diag == ints(&[0, 0, 1, 0, 0])
                && e22.is_one())
        })(),
    );
    s.record(
        "nilpotent product",
        (|| {
            let alg = bigraded_fixture("bigraded_nilpotent")?;
            let p = alg.hilbert_polynomial()?;
            let dims = [
                alg.ideal().krull_dim(),
                alg.ideal().sum(alg.r1())?.krull_dim(),
                alg.ideal().sum(alg.r2())?.krull_dim(),
            ];
            Ok(p.is_zero() && degrees_report(&alg)?.r.is_none() && dims == [3, 3, 3])
        })(),
    );
    s.record(
        "rigidity counterexample",
        (|| {
            let st = graded_fixture("rigidity_counterexample")?;
            let (chain, rep) = mixed_multiplicities(&st, cfg)?;
            Ok(rep.s_j == 2 && rep.e == ints(&[1, 0]) && rep.rho == Some(0) && chain.dim(1) == 1)
        })(),
    );
    s.record(
        "twisted cubic",
        (|| {
            let st = graded_fixture("twisted_cubic")?;
            let (_, rep) = mixed_multiplicities(&st, cfg)?;
            let (rees, diag) = rees_and_diagonal(&st, &rep)?;
            let (_, agree) = rees_bigraded_crosscheck(&st, &rep.e)?;
            Ok(rep.e == ints(&[1, 2, 1])
                && agree
                && rees == BigInt::from(4)
                && diag == Some(BigInt::from(10)))
        })(),
    );
    s.record(
        "three points",
        (|| {
            let st = graded_fixture("three_points")?;
            let (_, rep) = mixed_multiplicities(&st, cfg)?;
            let (rees, _) = rees_and_diagonal(&st, &rep)?;
            let hyp = Hypotheses {
                generic_ci: true,
                least_degrees: Some((2, 2)),
            };
            let f = group_formulas(&closed_form_oracles(&st, &hyp, cfg)?);
            let e1 = f.get("e1").and_then(|v| v.first()).map(|x| x.1.clone());
            let e2 = f.get("e2").and_then(|v| v.first()).map(|x| x.1.clone());
            Ok(rep.e == ints(&[1, 2, 1])
                && order_of(&st)?.0 == 2
                && e1 == Some(rep.e[1].clone())
                && e2 == Some(rep.e[2].clone())
                && rees == BigInt::from(4))
        })(),
    );
    for (name, sum, degs) in [
        ("two_lines", 1u64, Some((1, 1))),
        ("two_conics", 4, Some((2, 2))),
        ("line_self", 1, None),
    ] {
        s.record(
            format!("sv {name}"),
            (|| {
                let js = join_fixture(name)?;
                let a = sv_degrees(&js, cfg)?;
                let b = sv_degrees(&js, &cfg.reseeded(99))?;
                let nonneg = a.degs.iter().all(|d| *d >= BigInt::zero());
                Ok(a.degs == b.degs
                    && nonneg
                    && a.sum() == BigInt::from(sum)
                    && bezout_check(&a, degs).holds())
            })(),
        );
    }
    s
}

/// Runs the fixture checks and all property suites.
pub fn run_selftest(config: &SelftestConfig) -> SelftestReport {
    let cfg = &config.genericity;
    let field = default_field();
    let mut rng = cfg.reseeded(0xbeef).rng();
    let mut suites = vec![fixture_checks(cfg)];

    let mut hilbert = SuiteOutcome::new("a_hilbert_oracle");
    let mut degree = SuiteOutcome::new("b_degree_equalities");
    let mut degree2 = SuiteOutcome::new("c_saturation_dims");
    let mut sums = SuiteOutcome::new("e_multiplicity_sum");
    let mut swap = SuiteOutcome::new("g_grading_swap");
    let mut algebras: Vec<(String, BigradedAlgebra)> = Vec::new();
    for name in fixtures::BIGRADED {
        match bigraded_fixture(name) {
            Ok(a) => algebras.push((name.to_string(), a)),
            Err(e) => hilbert.record(name, Err(e)),
        }
    }
    let nfixtures = algebras.len();
    for k in 0..config.hilbert_instances {
        match random_bigraded_ideal(&mut rng, &field).and_then(BigradedAlgebra::new) {
            Ok(a) => algebras.push((format!("random #{k}"), a)),
            Err(e) => hilbert.record(format!("random #{k}"), Err(e)),
        }
    }
    for (idx, (label, alg)) in algebras.iter().enumerate() {
        if idx >= nfixtures || alg.ring().nvars() <= 6 {
            hilbert.record(label, hilbert_agreement(alg.ideal(), config.window));
        }
        degree.record(
            label,
            degrees_report(alg).map(|r| {
                r.r.is_some()
                    == alg
                        .hilbert_polynomial()
                        .map(|p| !p.is_zero())
                        .unwrap_or(false)
            }),
        );
        degree2.record(label, saturation_degrees_agree(alg));
        match sum_check(alg) {
            Ok(SumCheck::Holds { .. }) => sums.passed += 1,
            Ok(SumCheck::PreconditionUnknown) => sums.skipped += 1,
            Ok(SumCheck::Fails { multiplicity, sum }) => sums.record(
                label,
                Err(Error::Assertion(format!("e = {multiplicity}, sum = {sum}"))),
            ),
            Err(Error::Precondition(_)) => sums.skipped += 1,
            Err(e) => sums.record(label, Err(e)),
        }
        swap.record(label, swap_agreement(alg));
    }

    let mut criterion = SuiteOutcome::new("d_positivity_criterion");
    for (label, alg) in algebras.iter().take(nfixtures + 10) {
        if let Err(e) = criterion_cells(alg, cfg, &mut criterion, label) {
            criterion.record(label, Err(e));
        }
    }

    let mut saturation = SuiteOutcome::new("f_saturation");
    for k in 0..config.saturation_pairs {
        saturation.record(
            format!("pair #{k}"),
            (|| {
                let (i, j) = random_graded_pair(&mut rng, &field)?;
                let s = i.saturation(&j)?;
                let all: Vec<usize> = (0..i.ring().nvars()).collect();
                let f = random_form(&mut rng, i.ring(), &[(&all, 2)], 2);
                let bigger = i.with_generators(&[f])?.saturation(&j)?;
                Ok(i.is_subset_of(&s)?
                    && i.quotient(&j)?.is_subset_of(&s)?
                    && s.quotient(&j)?.equals(&s)?
                    && s.saturation(&j)?.equals(&s)?
                    && s.is_subset_of(&bigger)?)
            })(),
        );
    }

    let mut reduction = SuiteOutcome::new("h_reduction_invariance");
    for name in ["reduction_plane", "reduction_space"] {
        reduction.record(
            name,
            (|| {
                let p = fixtures::load(name)?;
                let a = GradedSetting::new(p.ideal("A")?, None, p.ideal("J")?)?;
                let b = GradedSetting::new(p.ideal("A")?, None, p.ideal("Jr")?)?;
                Ok(reduction_invariance_check(&a, &b, cfg)?.equal)
            })(),
        );
    }
    reduction.record(
        "twisted cubic minimal reduction",
        (|| {
            let a = graded_fixture("twisted_cubic")?;
            let ring = a.ambient.clone();
            let parts: Vec<(Monomial, Polynomial)> =
                a.j.generators()
                    .iter()
                    .map(|g| (Monomial::one(ring.nvars()), g.clone()))
                    .collect();
            let mut r = cfg.reseeded(5).rng();
            let s = analytic_spread(&a)? as usize;
            let gens = (0..s)
                .map(|_| random_combination(&ring, &parts, &mut r, cfg.sample_bound))
                .collect();
            let b = GradedSetting::new(a.ia.clone(), None, Ideal::new(&ring, gens)?)?;
            Ok(reduction_invariance_check(&a, &b, cfg)?.equal)
        })(),
    );

    let mut rigidity = SuiteOutcome::new("i_rigidity");
    let mut routes = SuiteOutcome::new("two_routes");
    let mut settings: Vec<(String, GradedSetting)> = Vec::new();
    for name in [
        "rigidity_counterexample",
        "twisted_cubic",
        "three_points",
        "reduction_plane",
        "reduction_space",
    ] {
        match graded_fixture(name) {
            Ok(s) => settings.push((name.to_string(), s)),
            Err(e) => rigidity.record(name, Err(e)),
        }
    }
    for k in 0..config.mixed_instances {
        match random_equigenerated_setting(&mut rng, &field) {
            Ok(s) => settings.push((format!("random #{k}"), s)),
            Err(e) => rigidity.record(format!("random #{k}"), Err(e)),
        }
    }
    for (label, st) in &settings {
        match mixed_multiplicities(st, cfg) {
            Ok((_, rep)) => {
                rigidity.passed += 1;
                routes.record(
                    label,
                    rees_bigraded_crosscheck(st, &rep.e).map(|(_, agree)| agree),
                );
                let again = mixed_multiplicities(st, cfg).map(|(_, r)| r == rep);
                routes.record(format!("{label} determinism"), again);
            }
            Err(e) => rigidity.record(label, Err(e)),
        }
    }

    suites.extend([
        hilbert, degree, degree2, criterion, sums, saturation, swap, reduction, rigidity, routes,
    ]);
    SelftestReport { suites }
}
