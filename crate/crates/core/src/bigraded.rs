//! Standard bigraded algebras `S/I`: degrees of the Hilbert polynomial via
//! saturations, filter-regular sequences, and the positivity criterion for
//! mixed multiplicities.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::generic::{random_linear_form, Genericity};
use crate::groebner::Ideal;
use crate::hilbert::{e_table, polynomial_of, series_of, total_multiplicity, ETable, HilbertPoly2};
use crate::poly::{Homogeneity, Polynomial};
use crate::ring::{Bidegree, RingRef};

/// `S / I` with `S` standard bigraded. Ideals of the algebra are represented
/// by their preimages in `S`.
#[derive(Clone, Debug)]
pub struct BigradedAlgebra {
    ring: RingRef,
    ideal: Ideal,
    r1: Ideal,
    r2: Ideal,
    rpp: Ideal,
    sat: OnceLock<Ideal>,
}

impl BigradedAlgebra {
    pub fn new(ideal: Ideal) -> Result<BigradedAlgebra> {
        let ring = ideal.ring().clone();
        if !ring.is_standard_bigraded() {
            return Err(Error::NonStandardGrading(ring.to_string()));
        }
        ideal.require_bihomogeneous()?;
        let xs = ring.first_kind();
        let ys = ring.second_kind();
        let r1 = Ideal::of_vars(&ring, &xs);
        let r2 = Ideal::of_vars(&ring, &ys);
        let mut prods = Vec::new();
        for &x in &xs {
            for &y in &ys {
                prods.push(Polynomial::var(&ring, x).mul(&Polynomial::var(&ring, y))?);
            }
        }
        let rpp = Ideal::new(&ring, prods)?;
        Ok(BigradedAlgebra {
            ring,
            ideal,
            r1,
            r2,
            rpp,
            sat: OnceLock::new(),
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// The ideal generated by the (1,0) variables.
    pub fn r1(&self) -> &Ideal {
        &self.r1
    }

    pub fn r2(&self) -> &Ideal {
        &self.r2
    }

    pub fn rpp(&self) -> &Ideal {
        &self.rpp
    }

    /// `I : R_{++}^∞`, the preimage of `0 : R_{++}^∞`.
    pub fn saturated(&self) -> Result<&Ideal> {
        if let Some(s) = self.sat.get() {
            return Ok(s);
        }
        let s = self.ideal.saturation(&self.rpp)?;
        Ok(self.sat.get_or_init(|| s))
    }

    /// The same algebra with the two gradings exchanged.
    pub fn swapped(&self) -> Result<BigradedAlgebra> {
        let ring = self.ring.swapped();
        BigradedAlgebra::new(self.ideal.with_ring(&ring))
    }

    /// Quotient of this algebra by extra elements.
    pub fn quotient_by(&self, extra: &[Polynomial]) -> Result<BigradedAlgebra> {
        BigradedAlgebra::new(self.ideal.with_generators(extra)?)
    }

    pub fn hilbert_polynomial(&self) -> Result<HilbertPoly2> {
        Ok(polynomial_of(&series_of(&self.ideal)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreesReport {
    /// `dim R/0:R_{++}^∞ - 2`; `None` when `R_{++}` is nilpotent.
    pub r: Option<i64>,
    pub r1: Option<i64>,
    pub r2: Option<i64>,
    /// Dimensions of `R/0:R_{++}^∞`, `R/(0:R_{++}^∞ + R_(2))`, `R/(0:R_{++}^∞ + R_(1))`.
    pub dims: [i64; 3],
    /// `deg P`, `deg_u P`, `deg_v P` read off the Hilbert polynomial.
    pub poly_degrees: Option<(u32, u32, u32)>,
}

pub fn degrees_report(alg: &BigradedAlgebra) -> Result<DegreesReport> {
    let sat = alg.saturated()?;
    let p = alg.hilbert_polynomial()?;
    let poly_degrees = p
        .degree
        .map(|d| (d, p.deg_u().unwrap_or(0), p.deg_v().unwrap_or(0)));
    if sat.is_unit() {
        if !p.is_zero() {
            return Err(Error::Assertion(
                "R_{++} is nilpotent but P is nonzero".into(),
            ));
        }
        return Ok(DegreesReport {
            r: None,
            r1: None,
            r2: None,
            dims: [-1, -1, -1],
            poly_degrees,
        });
    }
    let d0 = sat.krull_dim();
    let d2 = sat.sum(alg.r2())?.krull_dim();
    let d1 = sat.sum(alg.r1())?.krull_dim();
    let (r, r1, r2) = (d0 - 2, d2 - 1, d1 - 1);
    match poly_degrees {
        Some((d, du, dv)) if (d as i64, du as i64, dv as i64) == (r, r1, r2) => {}
        other => {
            return Err(Error::Assertion(format!(
                "saturation degrees ({r},{r1},{r2}) disagree with polynomial degrees {other:?}"
            )))
        }
    }
    Ok(DegreesReport {
        r: Some(r),
        r1: Some(r1),
        r2: Some(r2),
        dims: [d0, d2, d1],
        poly_degrees,
    })
}

/// One step of a filter-regularity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepCheck {
    pub passed: bool,
    /// A basis element of `prev : z` outside `prev : R_{++}^∞` when the step fails.
    pub witness: Option<Polynomial>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterRegularCertificate {
    pub elements: Vec<Polynomial>,
    pub bidegrees: Vec<Bidegree>,
    pub checks: Vec<StepCheck>,
    pub seed: Option<u64>,
    /// Number of random candidates drawn (0 for a caller-supplied sequence).
    pub attempts: usize,
}

impl FilterRegularCertificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn bihomogeneous_degree(z: &Polynomial) -> Result<Bidegree> {
    match z.bidegree()? {
        Homogeneity::Bihomogeneous(d) => Ok(d),
        Homogeneity::Inhomogeneous => Err(Error::Inhomogeneous(z.to_string())),
    }
}

/// `prev : z ⊆ prev : R_{++}^∞` where `sat = prev : R_{++}^∞`.
fn check_step(prev: &Ideal, sat: &Ideal, z: &Polynomial) -> Result<StepCheck> {
    if sat.is_unit() {
        return Ok(StepCheck {
            passed: true,
            witness: None,
        });
    }
    let colon = prev.quotient_by(z)?;
    for g in colon.groebner_basis() {
        if !sat.contains(g)? {
            return Ok(StepCheck {
                passed: false,
                witness: Some(g.clone()),
            });
        }
    }
    Ok(StepCheck {
        passed: true,
        witness: None,
    })
}

pub fn is_filter_regular(
    alg: &BigradedAlgebra,
    seq: &[Polynomial],
) -> Result<FilterRegularCertificate> {
    let mut bidegrees = Vec::with_capacity(seq.len());
    for z in seq {
        bidegrees.push(bihomogeneous_degree(z)?);
    }
    let mut checks = Vec::with_capacity(seq.len());
    let mut prev = alg.ideal().clone();
    for z in seq {
        let sat = prev.saturation(alg.rpp())?;
        checks.push(check_step(&prev, &sat, z)?);
        prev = prev.with_generators(std::slice::from_ref(z))?;
    }
    Ok(FilterRegularCertificate {
        elements: seq.to_vec(),
        bidegrees,
        checks,
        seed: None,
        attempts: 0,
    })
}

/// Extends `start` (assumed filter-regular) by random linear forms of the
/// requested bidegrees, verifying each step.
pub fn extend_filter_regular(
    alg: &BigradedAlgebra,
    start: &[Polynomial],
    pattern: &[Bidegree],
    cfg: &Genericity,
) -> Result<FilterRegularCertificate> {
    let ring = alg.ring();
    let mut rng = cfg.rng();
    let mut elements = start.to_vec();
    let mut bidegrees = Vec::new();
    for z in start {
        bidegrees.push(bihomogeneous_degree(z)?);
    }
    let mut checks: Vec<StepCheck> = start
        .iter()
        .map(|_| StepCheck {
            passed: true,
            witness: None,
        })
        .collect();
    let mut attempts = 0;
    let mut prev = alg.ideal().with_generators(start)?;
    for &d in pattern {
        let vars = if d == Bidegree::new(1, 0) {
            ring.first_kind()
        } else if d == Bidegree::new(0, 1) {
            ring.second_kind()
        } else {
            return Err(Error::Precondition(format!(
                "pattern entry {d} is not (1,0) or (0,1)"
            )));
        };
        if vars.is_empty() {
            return Err(Error::Precondition(format!("no variables of degree {d}")));
        }
        let sat = prev.saturation(alg.rpp())?;
        let mut found = None;
        for _ in 0..cfg.max_retries.max(1) {
            attempts += 1;
            let z = random_linear_form(ring, &vars, &mut rng, cfg.sample_bound);
            let check = check_step(&prev, &sat, &z)?;
            if check.passed {
                found = Some((z, check));
                break;
            }
        }
        let (z, check) = found.ok_or_else(|| Error::GenericityExhausted {
            attempts: cfg.max_retries,
            context: format!("filter-regular element of degree {d}"),
        })?;
        prev = prev.with_generators(std::slice::from_ref(&z))?;
        elements.push(z);
        bidegrees.push(d);
        checks.push(check);
    }
    Ok(FilterRegularCertificate {
        elements,
        bidegrees,
        checks,
        seed: Some(cfg.seed),
        attempts,
    })
}

pub fn find_filter_regular(
    alg: &BigradedAlgebra,
    pattern: &[Bidegree],
    cfg: &Genericity,
) -> Result<FilterRegularCertificate> {
    extend_filter_regular(alg, &[], pattern, cfg)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Positivity {
    pub positive: bool,
    /// `dim R/((x_1..x_i) : R_{++}^∞ + R_(1))`.
    pub witness_dim: i64,
    pub certificate: FilterRegularCertificate,
}

fn check_diagonal(alg: &BigradedAlgebra, i: u32, j: u32) -> Result<DegreesReport> {
    let rep = degrees_report(alg)?;
    match rep.r {
        Some(r) if r == (i + j) as i64 => Ok(rep),
        r => Err(Error::Precondition(format!(
            "({i},{j}) is not on the top diagonal (r = {r:?})"
        ))),
    }
}

/// Positivity criterion for `e_ij`, using random (1,0) forms.
pub fn e_positivity(alg: &BigradedAlgebra, i: u32, j: u32, cfg: &Genericity) -> Result<Positivity> {
    check_diagonal(alg, i, j)?;
    let cert = find_filter_regular(alg, &vec![Bidegree::new(1, 0); i as usize], cfg)?;
    positivity_from(alg, j, cert)
}

/// Positivity criterion for `e_ij` with a caller-chosen sequence of `i` forms of degree (1,0).
pub fn e_positivity_with_sequence(
    alg: &BigradedAlgebra,
    j: u32,
    xs: &[Polynomial],
) -> Result<Positivity> {
    check_diagonal(alg, xs.len() as u32, j)?;
    let cert = is_filter_regular(alg, xs)?;
    if cert.bidegrees.iter().any(|d| *d != Bidegree::new(1, 0)) {
        return Err(Error::Precondition(
            "sequence elements must have degree (1,0)".into(),
        ));
    }
    if !cert.passed() {
        return Err(Error::Precondition("sequence is not filter-regular".into()));
    }
    positivity_from(alg, j, cert)
}

fn positivity_from(
    alg: &BigradedAlgebra,
    j: u32,
    cert: FilterRegularCertificate,
) -> Result<Positivity> {
    let q = alg.ideal().with_generators(&cert.elements)?;
    let witness_dim = q.saturation(alg.rpp())?.sum(alg.r1())?.krull_dim();
    Ok(Positivity {
        positive: witness_dim == j as i64 + 1,
        witness_dim,
        certificate: cert,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionValue {
    pub value: BigInt,
    /// Present when the positive branch ran.
    pub certificate: Option<FilterRegularCertificate>,
    pub witness_dim: Option<i64>,
}

/// `e_ij` as `e(R/(x_1..x_i, y_1..y_j) : R_{++}^∞)` with random forms.
pub fn e_value_via_criterion(
    alg: &BigradedAlgebra,
    i: u32,
    j: u32,
    cfg: &Genericity,
) -> Result<CriterionValue> {
    let rep = check_diagonal(alg, i, j)?;
    if i as i64 > rep.r1.unwrap_or(-1) || j as i64 > rep.r2.unwrap_or(-1) {
        return Ok(CriterionValue {
            value: BigInt::zero(),
            certificate: None,
            witness_dim: None,
        });
    }
    let pos = e_positivity(alg, i, j, cfg)?;
    if !pos.positive {
        return Ok(CriterionValue {
            value: BigInt::zero(),
            certificate: None,
            witness_dim: Some(pos.witness_dim),
        });
    }
    let cert = extend_filter_regular(
        alg,
        &pos.certificate.elements,
        &vec![Bidegree::new(0, 1); j as usize],
        &cfg.reseeded(1),
    )?;
    let value = multiplicity_after(alg, &cert.elements)?;
    Ok(CriterionValue {
        value,
        certificate: Some(cert),
        witness_dim: Some(pos.witness_dim),
    })
}

/// Same as [`e_value_via_criterion`] with a fixed sequence: `i` forms of
/// degree (1,0) followed by `j` of degree (0,1).
pub fn e_value_with_sequence(
    alg: &BigradedAlgebra,
    i: u32,
    j: u32,
    seq: &[Polynomial],
) -> Result<CriterionValue> {
    if seq.len() != (i + j) as usize {
        return Err(Error::Precondition(format!("expected {} elements", i + j)));
    }
    let rep = check_diagonal(alg, i, j)?;
    if i as i64 > rep.r1.unwrap_or(-1) || j as i64 > rep.r2.unwrap_or(-1) {
        return Ok(CriterionValue {
            value: BigInt::zero(),
            certificate: None,
            witness_dim: None,
        });
    }
    let pos = e_positivity_with_sequence(alg, j, &seq[..i as usize])?;
    if !pos.positive {
        return Ok(CriterionValue {
            value: BigInt::zero(),
            certificate: None,
            witness_dim: Some(pos.witness_dim),
        });
    }
    let cert = is_filter_regular(alg, seq)?;
    if !cert.passed() {
        return Err(Error::Precondition("sequence is not filter-regular".into()));
    }
    let expected = [Bidegree::new(1, 0), Bidegree::new(0, 1)];
    for (k, d) in cert.bidegrees.iter().enumerate() {
        if *d != expected[usize::from(k >= i as usize)] {
            return Err(Error::Precondition(format!("element {k} has degree {d}")));
        }
    }
    let value = multiplicity_after(alg, seq)?;
    Ok(CriterionValue {
        value,
        certificate: Some(cert),
        witness_dim: Some(pos.witness_dim),
    })
}

fn multiplicity_after(alg: &BigradedAlgebra, seq: &[Polynomial]) -> Result<BigInt> {
    let q = alg.ideal().with_generators(seq)?.saturation(alg.rpp())?;
    let (d, e) = total_multiplicity(&q)?;
    if d != 2 {
        return Err(Error::Assertion(format!(
            "saturated quotient has dimension {d}, expected 2"
        )));
    }
    Ok(e)
}

/// Mixed multiplicities read off the Hilbert polynomial.
pub fn e_table_full(alg: &BigradedAlgebra) -> Result<ETable> {
    e_table(&alg.hilbert_polynomial()?, None)
}

/// Outcome of the identity `e(R) = Σ_{i+j=d-2} e_ij(R)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SumCheck {
    Holds {
        multiplicity: BigInt,
        sum: BigInt,
    },
    Fails {
        multiplicity: BigInt,
        sum: BigInt,
    },
    /// `0 : R_(1)^∞ = 0` or `0 : R_(2)^∞ = 0` could not be established.
    PreconditionUnknown,
}

pub fn sum_check(alg: &BigradedAlgebra) -> Result<SumCheck> {
    let i = alg.ideal();
    if !i.saturation(alg.r1())?.equals(i)? || !i.saturation(alg.r2())?.equals(i)? {
        return Ok(SumCheck::PreconditionUnknown);
    }
    let (d, multiplicity) = total_multiplicity(i)?;
    let p = alg.hilbert_polynomial()?;
    let sum: BigInt = p
        .coeffs
        .iter()
        .filter(|(&(a, b), _)| (a + b) as i64 == d - 2)
        .map(|(_, c)| c.clone())
        .sum();
    Ok(if sum == multiplicity {
        SumCheck::Holds { multiplicity, sum }
    } else {
        SumCheck::Fails { multiplicity, sum }
    })
}

/// Dimensions that should agree between `R_{++}` and `R_(k)` saturations:
/// `[dim R/(0:R_{++}^∞ + R_(1)), dim R/(0:R_(1)^∞ + R_(1)),
///   dim R/(0:R_{++}^∞ + R_(2)), dim R/(0:R_(2)^∞ + R_(2))]`.
pub fn saturation_dims(alg: &BigradedAlgebra) -> Result<[i64; 4]> {
    let sat = alg.saturated()?;
    let i = alg.ideal();
    Ok([
        sat.sum(alg.r1())?.krull_dim(),
        i.saturation(alg.r1())?.sum(alg.r1())?.krull_dim(),
        sat.sum(alg.r2())?.krull_dim(),
        i.saturation(alg.r2())?.sum(alg.r2())?.krull_dim(),
    ])
}

/// Result of testing that a reduction of `R_(1)` needs `dim R/R_(2)` elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadCheck {
    pub spread: i64,
    pub elements: Vec<Polynomial>,
    /// `s` random (1,0) forms generate a reduction.
    pub is_reduction: bool,
    /// `s - 1` forms never suffice (dimension stays positive).
    pub fewer_fail: bool,
}

pub fn spread_check(alg: &BigradedAlgebra, cfg: &Genericity) -> Result<SpreadCheck> {
    let base = alg.ideal().sum(alg.r2())?;
    let spread = base.krull_dim();
    if spread < 0 {
        return Err(Error::Precondition("R/R_(2) is zero".into()));
    }
    let xs = alg.ring().first_kind();
    let mut rng = cfg.rng();
    for _ in 0..cfg.max_retries.max(1) {
        let elements: Vec<Polynomial> = (0..spread)
            .map(|_| random_linear_form(alg.ring(), &xs, &mut rng, cfg.sample_bound))
            .collect();
        let full = base.with_generators(&elements)?;
        if full.krull_dim() == 0 {
            let fewer = if spread == 0 {
                true
            } else {
                base.with_generators(&elements[..elements.len() - 1])?
                    .krull_dim()
                    >= 1
            };
            return Ok(SpreadCheck {
                spread,
                elements,
                is_reduction: true,
                fewer_fail: fewer,
            });
        }
    }
    Err(Error::GenericityExhausted {
        attempts: cfg.max_retries,
        context: "reduction of R_(1)".into(),
    })
}
