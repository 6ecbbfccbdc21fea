//! Mixed multiplicities `e_i(I|J)` of a standard graded algebra `A = k[x]/I_A`
//! with respect to an `m`-primary ideal `I` and a homogeneous ideal `J`.
//!
//! Two independent routes are provided. The chain route saturates
//! successively by `J` after adding generic elements of `J`; it needs `J`
//! generated in a single degree. The Rees route builds the bigraded algebra
//! `⊕ m^v J^u / m^{v+1} J^u` from a presentation of the Rees algebra and reads
//! the top diagonal of its Hilbert polynomial; it needs `I = m`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::bigraded::BigradedAlgebra;
use crate::error::{Error, Result};
use crate::generic::{random_combination, Genericity};
use crate::groebner::{ring_weights, Ideal};
use crate::hilbert::{binom, e_table, polynomial_of, series_of, total_multiplicity, ETable};
use crate::monomial::{Monomial, TermOrder};
use crate::poly::{Homogeneity, Polynomial};
use crate::ring::{Bidegree, Ring, RingRef, Variable};

/// `A = ambient / I_A` together with `I` and `J` (all given by preimages).
#[derive(Clone, Debug)]
pub struct GradedSetting {
    pub ambient: RingRef,
    pub ia: Ideal,
    pub m: Ideal,
    pub i: Ideal,
    pub j: Ideal,
}

fn homogeneous_degree(f: &Polynomial) -> Result<u32> {
    match f.bidegree()? {
        Homogeneity::Bihomogeneous(d) => Ok(d.d1),
        Homogeneity::Inhomogeneous => Err(Error::Inhomogeneous(f.to_string())),
    }
}

/// Common degree of the generators, if they share one.
fn common_degree(ideal: &Ideal) -> Result<Option<u32>> {
    let mut degs = ideal.generators().iter().map(homogeneous_degree);
    let Some(first) = degs.next().transpose()? else {
        return Ok(None);
    };
    for d in degs {
        if d? != first {
            return Ok(None);
        }
    }
    Ok(Some(first))
}

impl GradedSetting {
    /// `i = None` means `I = m`.
    pub fn new(ia: Ideal, i: Option<Ideal>, j: Ideal) -> Result<GradedSetting> {
        let ambient = ia.ring().clone();
        if !ambient.is_standard_graded() {
            return Err(Error::NonStandardGrading(ambient.to_string()));
        }
        let m = Ideal::of_vars(&ambient, &(0..ambient.nvars()).collect::<Vec<_>>());
        let i = i.unwrap_or_else(|| m.clone());
        for (name, ideal) in [("I_A", &ia), ("I", &i), ("J", &j)] {
            if !ideal.ring().same_as(&ambient) {
                return Err(Error::RingMismatch(
                    ideal.ring().name.clone(),
                    ambient.name.clone(),
                ));
            }
            ideal
                .require_bihomogeneous()
                .map_err(|e| Error::Inhomogeneous(format!("{name}: {e}")))?;
        }
        if j.is_zero() {
            return Err(Error::Precondition("J must be nonzero".into()));
        }
        if ia.is_unit() {
            return Err(Error::Precondition("A is the zero ring".into()));
        }
        if ia.sum(&i)?.krull_dim() > 0 {
            return Err(Error::Precondition("I is not m-primary in A".into()));
        }
        Ok(GradedSetting {
            ambient,
            ia,
            m,
            i,
            j,
        })
    }

    pub fn i_is_m(&self) -> Result<bool> {
        self.ia.sum(&self.i)?.equals(&self.ia.sum(&self.m)?)
    }

    /// `A` is a polynomial ring.
    pub fn is_regular(&self) -> bool {
        self.ia.is_zero() || self.ia.groebner_basis().is_empty()
    }

    /// Common degree of the generators of `J`, if any.
    pub fn j_degree(&self) -> Result<Option<u32>> {
        common_degree(&self.j)
    }

    /// `e(I, ambient/Q)` for `Q ⊇ I_A`.
    pub fn samuel(&self, q: &Ideal) -> Result<(i64, BigInt)> {
        let (d, e) = total_multiplicity(q)?;
        if self.i_is_m()? {
            return Ok((d, e));
        }
        match common_degree(&self.i)? {
            Some(t) => Ok((d, BigInt::from(t).pow(d.max(0) as u32) * e)),
            None => Err(Error::Unsupported(
                "I must be m or generated in a single degree".into(),
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub element: Polynomial,
    pub ideal: Ideal,
    pub nzd_ok: bool,
    /// Krull dimension of `ambient / S_k`.
    pub dim: i64,
    pub attempts: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatChain {
    pub d_work: u32,
    pub s0: Ideal,
    pub dim0: i64,
    pub steps: Vec<ChainStep>,
    pub seed: u64,
}

impl SatChain {
    pub fn ideal(&self, k: usize) -> &Ideal {
        if k == 0 {
            &self.s0
        } else {
            &self.steps[k - 1].ideal
        }
    }

    pub fn dim(&self, k: usize) -> i64 {
        if k == 0 {
            self.dim0
        } else {
            self.steps[k - 1].dim
        }
    }
}

/// `S_0 = I_A : J^∞`, `S_k = (S_{k-1} + (a_k)) : J^∞` with generic `a_k ∈ J`
/// certified as non-zerodivisors on `ambient / S_{k-1}`.
pub fn sat_chain(s: &GradedSetting, upto: usize, cfg: &Genericity) -> Result<SatChain> {
    let spread = analytic_spread(s)?;
    if upto as i64 > spread {
        return Err(Error::Precondition(format!(
            "upto = {upto} exceeds the analytic spread {spread}"
        )));
    }
    sat_chain_unchecked(s, upto, cfg)
}

fn sat_chain_unchecked(s: &GradedSetting, upto: usize, cfg: &Genericity) -> Result<SatChain> {
    let d_work = s.j_degree()?.ok_or_else(|| {
        Error::Unsupported("the chain route needs J generated in a single degree".into())
    })?;
    let ring = &s.ambient;
    let parts: Vec<(Monomial, Polynomial)> =
        s.j.generators()
            .iter()
            .map(|g| (Monomial::one(ring.nvars()), g.clone()))
            .collect();
    let mut rng = cfg.rng();
    let s0 = s.ia.saturation(&s.j)?;
    let dim0 = s0.krull_dim();
    let mut steps: Vec<ChainStep> = Vec::new();
    for k in 1..=upto {
        let prev = if k == 1 {
            s0.clone()
        } else {
            steps[k - 2].ideal.clone()
        };
        let mut chosen = None;
        for attempt in 1..=cfg.max_retries.max(1) {
            let a = random_combination(ring, &parts, &mut rng, cfg.sample_bound);
            if prev.is_nzd(&a)? {
                chosen = Some((a, attempt));
                break;
            }
        }
        let (a, attempts) = chosen.ok_or_else(|| Error::GenericityExhausted {
            attempts: cfg.max_retries,
            context: format!("non-zerodivisor a_{k} in J"),
        })?;
        let next = prev
            .with_generators(std::slice::from_ref(&a))?
            .saturation(&s.j)?;
        let dim = next.krull_dim();
        steps.push(ChainStep {
            element: a,
            ideal: next,
            nzd_ok: true,
            dim,
            attempts,
        });
    }
    Ok(SatChain {
        d_work,
        s0,
        dim0,
        steps,
        seed: cfg.seed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedIdealReport {
    /// `dim A / 0:J^∞`.
    pub dim_a: i64,
    pub s_j: i64,
    /// `dim A - dim A/J`, which equals the height of `J` when `A` is a polynomial ring.
    pub ht_j: i64,
    /// Whether the lower bound `ht J - 1 ≤ ρ` was asserted.
    pub ht_checked: bool,
    /// `e_0 .. e_{s(J)-1}`.
    pub e: Vec<BigInt>,
    /// Largest index with `e_i > 0`.
    pub rho: Option<usize>,
}

/// Codimension of `J` in `A`.
pub fn height_estimate(s: &GradedSetting) -> Result<i64> {
    Ok(s.ia.krull_dim() - s.ia.sum(&s.j)?.krull_dim())
}

/// Reads `e_i` off a chain built up to `s(J)` and checks the structural
/// constraints: vanishing from `s(J)` on, positivity on an initial interval,
/// and the height bound when `A` is a polynomial ring.
pub fn e_i_values(s: &GradedSetting, chain: &SatChain) -> Result<MixedIdealReport> {
    let s_j = analytic_spread(s)?;
    if chain.dim0 < 0 {
        return Err(Error::Precondition("J is nilpotent in A".into()));
    }
    if (chain.steps.len() as i64) < s_j {
        return Err(Error::Precondition(format!(
            "chain has {} steps, need {s_j}",
            chain.steps.len()
        )));
    }
    let mut values = Vec::new();
    for k in 0..=chain.steps.len() {
        let v = if chain.dim(k) == chain.dim0 - k as i64 && chain.dim(k) >= 0 {
            s.samuel(chain.ideal(k))?.1
        } else {
            BigInt::zero()
        };
        values.push(v);
    }
    finish_report(s, chain.dim0, s_j, values)
}

fn finish_report(
    s: &GradedSetting,
    dim_a: i64,
    s_j: i64,
    values: Vec<BigInt>,
) -> Result<MixedIdealReport> {
    if let Some(k) = values.iter().position(|v| v.is_negative()) {
        return Err(Error::Assertion(format!("e_{k} is negative")));
    }
    let first_zero = values
        .iter()
        .position(|v| v.is_zero())
        .unwrap_or(values.len());
    if values[first_zero..].iter().any(|v| !v.is_zero()) {
        return Err(Error::Assertion(format!(
            "positive e_i after e_{first_zero} = 0"
        )));
    }
    if values
        .iter()
        .skip(s_j.max(0) as usize)
        .any(|v| !v.is_zero())
    {
        return Err(Error::Assertion(format!(
            "e_i > 0 for some i ≥ s(J) = {s_j}"
        )));
    }
    let e: Vec<BigInt> = values.into_iter().take(s_j.max(0) as usize).collect();
    let rho = if first_zero == 0 {
        None
    } else {
        Some(first_zero - 1)
    };
    let ht_j = height_estimate(s)?;
    let ht_checked = s.is_regular();
    if let Some(r) = rho {
        if r as i64 >= s_j {
            return Err(Error::Assertion(format!(
                "rho = {r} is not below s(J) = {s_j}"
            )));
        }
        if ht_checked && (r as i64) < ht_j - 1 {
            return Err(Error::Assertion(format!(
                "rho = {r} is below ht J - 1 = {}",
                ht_j - 1
            )));
        }
    }
    Ok(MixedIdealReport {
        dim_a,
        s_j,
        ht_j,
        ht_checked,
        e,
        rho,
    })
}

/// Chain route end to end: builds the chain up to `s(J)` and reads off the values.
pub fn mixed_multiplicities(
    s: &GradedSetting,
    cfg: &Genericity,
) -> Result<(SatChain, MixedIdealReport)> {
    let s_j = analytic_spread(s)?;
    let chain = sat_chain_unchecked(s, s_j.max(0) as usize, cfg)?;
    let report = e_i_values(s, &chain)?;
    Ok((chain, report))
}

/// Presentation `k[x, T] / K` of the Rees algebra `A[Jt]`, `T_l ↦ g_l t`.
#[derive(Clone, Debug)]
pub struct ReesPresentation {
    /// Variables `x_1..x_n` then `T_1..T_m`.
    pub ring: RingRef,
    pub kernel: Ideal,
    pub nx: usize,
    /// Degrees of the generators of `J` used for `T_l`.
    pub degrees: Vec<u32>,
}

fn fresh_names(ring: &Ring, prefix: &str, count: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(count);
    let mut k = 1;
    while out.len() < count {
        let name = format!("{prefix}{k}");
        if ring.var_index(&name).is_none() {
            out.push(name);
        }
        k += 1;
    }
    out
}

pub fn rees_presentation(s: &GradedSetting) -> Result<ReesPresentation> {
    let ring = &s.ambient;
    let n = ring.nvars();
    let gens: Vec<Polynomial> = s.j.generators().to_vec();
    let degrees = gens
        .iter()
        .map(homogeneous_degree)
        .collect::<Result<Vec<_>>>()?;
    let m = gens.len();
    let tnames = fresh_names(ring, "T", m);
    let tag = fresh_names(ring, "t", 1).remove(0);

    // k[x, T, t] with x:1, T_l: deg g_l + 1, t:1, so T_l - g_l t is homogeneous
    let mut vars: Vec<Variable> = ring.vars.clone();
    for (name, d) in tnames.iter().zip(&degrees) {
        vars.push(Variable {
            name: name.clone(),
            degree: Bidegree::new(d + 1, 0),
        });
    }
    vars.push(Variable {
        name: tag,
        degree: Bidegree::new(1, 0),
    });
    let big = Ring::new(format!("{}_rees_t", ring.name), vars, ring.field.clone())?;
    let xmap: Vec<usize> = (0..n).collect();
    let t = Polynomial::var(&big, n + m);
    let mut rel: Vec<Polynomial> =
        s.ia.generators()
            .iter()
            .map(|f| f.embed(&big, &xmap))
            .collect();
    for (l, g) in gens.iter().enumerate() {
        let gt = g.embed(&big, &xmap).mul(&t)?;
        rel.push(Polynomial::var(&big, n + l).sub(&gt)?);
    }
    let eliminated = Ideal::new(&big, rel)?.eliminate(&[n + m]);

    let mut xt_vars: Vec<Variable> = ring.vars.clone();
    for (name, d) in tnames.iter().zip(&degrees) {
        xt_vars.push(Variable {
            name: name.clone(),
            degree: Bidegree::new(d + 1, 0),
        });
    }
    let xt = Ring::new(format!("{}_rees", ring.name), xt_vars, ring.field.clone())?;
    let kernel_gens = eliminated
        .generators()
        .iter()
        .map(|f| {
            let terms = f
                .terms()
                .iter()
                .map(|(mono, c)| (Monomial(mono.0[..n + m].to_vec()), c.clone()))
                .collect();
            Polynomial::from_terms(&xt, terms)
        })
        .collect();
    let kernel = Ideal::new(&xt, kernel_gens)?;
    Ok(ReesPresentation {
        ring: xt,
        kernel,
        nx: n,
        degrees,
    })
}

/// `s(J) = dim F(J)` with `F(J) = A[Jt] / m A[Jt]`.
pub fn analytic_spread(s: &GradedSetting) -> Result<i64> {
    let rp = rees_presentation(s)?;
    let xs = Ideal::of_vars(&rp.ring, &(0..rp.nx).collect::<Vec<_>>());
    Ok(rp.kernel.sum(&xs)?.krull_dim())
}

/// `o(J)` and whether the order formula applies (A regular).
pub fn order_of(s: &GradedSetting) -> Result<(u32, bool)> {
    let o =
        s.j.groebner_basis()
            .iter()
            .filter_map(|g| g.total_degree())
            .min()
            .ok_or_else(|| Error::Precondition("J must be nonzero".into()))?;
    Ok((o, s.is_regular()))
}

/// Output of the Rees route.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReesRoute {
    /// Standard bigraded `⊕ m^v J^u / m^{v+1} J^u` with `T:(1,0)`, `x:(0,1)`.
    pub algebra_ring: RingRef,
    pub table: ETable,
    /// `e_i = e_{i, r-i}` for `i = 0..=r`.
    pub e: Vec<BigInt>,
}

/// Mixed multiplicities `e_i(m|J)` via the associated graded ring of the
/// Rees algebra with respect to `m`.
pub fn rees_route(s: &GradedSetting) -> Result<ReesRoute> {
    if !s.i_is_m()? {
        return Err(Error::Unsupported("the Rees route needs I = m".into()));
    }
    let rp = rees_presentation(s)?;
    let n = rp.nx;
    let total = rp.ring.nvars();
    // ω(x) = 0, ω(T_l) = deg g_l; keep the highest ω part of each basis element.
    let mut omega = vec![0u32; n];
    omega.extend(rp.degrees.iter().copied());
    let order = TermOrder::weight_then(omega.clone(), ring_weights(&rp.ring));
    let degs: Vec<Bidegree> = (0..total)
        .map(|i| {
            if i < n {
                Bidegree::new(0, 1)
            } else {
                Bidegree::new(1, 0)
            }
        })
        .collect();
    let bigraded = rp.ring.regraded(&format!("{}_mJ", s.ambient.name), &degs)?;
    let initial: Vec<Polynomial> = rp
        .kernel
        .basis_for(&order)
        .into_iter()
        .map(|(_, f)| {
            let top = f
                .terms()
                .iter()
                .map(|(m, _)| m.weighted_degree(&omega))
                .max()
                .unwrap_or(0);
            let terms = f
                .terms()
                .iter()
                .filter(|(m, _)| m.weighted_degree(&omega) == top)
                .cloned()
                .collect();
            Polynomial::from_terms(&bigraded, terms)
        })
        .collect();
    let alg = BigradedAlgebra::new(Ideal::new(&bigraded, initial)?)?;
    let table = e_table(&polynomial_of(&series_of(alg.ideal())?), None)?;
    let e = match table.r {
        None => Vec::new(),
        Some(r) => (0..=r).map(|i| table.get(i, r - i)).collect(),
    };
    Ok(ReesRoute {
        algebra_ring: bigraded,
        table,
        e,
    })
}

/// Report built from the Rees route, with the same structural checks as the chain route.
pub fn mixed_multiplicities_rees(s: &GradedSetting) -> Result<(ReesRoute, MixedIdealReport)> {
    let route = rees_route(s)?;
    let s_j = analytic_spread(s)?;
    let dim_a = s.ia.saturation(&s.j)?.krull_dim();
    if dim_a < 0 {
        return Err(Error::Precondition("J is nilpotent in A".into()));
    }
    if route.table.r.map(|r| r as i64) != Some(dim_a - 1) {
        return Err(Error::Assertion(format!(
            "deg P = {:?} but dim A/0:J^∞ - 1 = {}",
            route.table.r,
            dim_a - 1
        )));
    }
    let mut values = route.e.clone();
    values.resize(values.len().max(s_j.max(0) as usize + 1), BigInt::zero());
    let report = finish_report(s, dim_a, s_j, values)?;
    Ok((route, report))
}

/// Compares the chain route with the Rees route.
pub fn rees_bigraded_crosscheck(s: &GradedSetting, chain_e: &[BigInt]) -> Result<(ETable, bool)> {
    if common_degree(&s.j)?.is_none() {
        return Err(Error::Unsupported(
            "J must be generated in a single degree".into(),
        ));
    }
    let route = rees_route(s)?;
    let mut from_table = route.e.clone();
    while from_table.last().is_some_and(|v| v.is_zero()) && from_table.len() > chain_e.len() {
        from_table.pop();
    }
    let mut padded = chain_e.to_vec();
    padded.resize(from_table.len().max(padded.len()), BigInt::zero());
    from_table.resize(padded.len(), BigInt::zero());
    Ok((route.table, padded == from_table))
}

/// Caller-supplied labels for hypotheses that are not checked algorithmically.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Hypotheses {
    /// `J` is generically a complete intersection.
    pub generic_ci: bool,
    /// Two forms of the least degrees `c1 ≤ c2` in `J` without common factor.
    pub least_degrees: Option<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormulaValue {
    pub formula: &'static str,
    pub index: usize,
    pub value: BigInt,
}

/// Values predicted by the closed-form corollaries whose hypotheses hold.
pub fn closed_form_oracles(
    s: &GradedSetting,
    hyp: &Hypotheses,
    cfg: &Genericity,
) -> Result<Vec<FormulaValue>> {
    if !s.i_is_m()? {
        return Err(Error::Unsupported(
            "closed forms are stated for I = m".into(),
        ));
    }
    let mut out = Vec::new();
    let ht = height_estimate(s)?;
    let (_, e_a) = total_multiplicity(&s.ia)?;
    let (_, e_aj) = total_multiplicity(&s.ia.sum(&s.j)?)?;
    let s_j = analytic_spread(s)?;
    let c = s.j_degree()?;

    // e_i = e(A/(a_1..a_i)) for i < ht J, with generic a_i
    if let Some(c0) = c {
        let ring = &s.ambient;
        let parts: Vec<(Monomial, Polynomial)> =
            s.j.generators()
                .iter()
                .map(|g| (Monomial::one(ring.nvars()), g.clone()))
                .collect();
        let mut rng = cfg.reseeded(7).rng();
        let mut q = s.ia.clone();
        for i in 0..ht.max(0) as usize {
            if i > 0 {
                let a = random_combination(ring, &parts, &mut rng, cfg.sample_bound);
                q = q.with_generators(&[a])?;
            }
            out.push(FormulaValue {
                formula: "parameter",
                index: i,
                value: total_multiplicity(&q)?.1,
            });
        }
        for i in 0..ht.max(0) as usize {
            out.push(FormulaValue {
                formula: "homogen",
                index: i,
                value: BigInt::from(c0).pow(i as u32) * &e_a,
            });
        }
        if hyp.generic_ci && s_j > ht && ht >= 0 {
            let v = BigInt::from(c0).pow(ht as u32) * &e_a - &e_aj;
            out.push(FormulaValue {
                formula: "deviation",
                index: ht as usize,
                value: v,
            });
        }
    }
    if s.is_regular() && ht >= 2 {
        let (o, _) = order_of(s)?;
        out.push(FormulaValue {
            formula: "e1",
            index: 1,
            value: BigInt::from(o),
        });
        let least = hyp.least_degrees.or(c.map(|c| (c, c)));
        if let Some((c1, c2)) = least {
            let prod = BigInt::from(c1) * BigInt::from(c2);
            if ht >= 3 {
                out.push(FormulaValue {
                    formula: "e2",
                    index: 2,
                    value: prod,
                });
            } else if hyp.generic_ci {
                out.push(FormulaValue {
                    formula: "e2",
                    index: 2,
                    value: prod - &e_aj,
                });
            }
        }
    }
    Ok(out)
}

/// `Σ e_i` and, for a polynomial ring in `n+1` variables with `J` generated
/// in one degree, `Σ binom(n, i) e_i`.
pub fn rees_and_diagonal(
    s: &GradedSetting,
    report: &MixedIdealReport,
) -> Result<(BigInt, Option<BigInt>)> {
    let rees: BigInt = report.e.iter().sum();
    let diag = if s.is_regular() && s.j_degree()?.is_some() {
        let n = BigInt::from(s.ambient.nvars() as i64 - 1);
        Some(
            report
                .e
                .iter()
                .enumerate()
                .map(|(i, e)| binom(&n, i as u32) * e)
                .sum(),
        )
    } else {
        None
    };
    Ok((rees, diag))
}

/// Smallest `n ≤ bound` with `J^{n+1} = J' J^n`.
pub fn reduction_number(j: &Ideal, jp: &Ideal, bound: u32) -> Result<Option<u32>> {
    if !jp.is_subset_of(j)? {
        return Ok(None);
    }
    let mut jn = Ideal::unit(j.ring());
    for n in 0..=bound {
        let next = jn.product(j)?;
        if next.equals(&jp.product(&jn)?)? {
            return Ok(Some(n));
        }
        jn = Ideal::new(j.ring(), next.groebner_basis().to_vec())?;
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCheck {
    pub reduction_number: u32,
    pub e: Vec<BigInt>,
    pub e_reduction: Vec<BigInt>,
    pub equal: bool,
}

/// Mixed multiplicities by whichever route applies: the chain route when
/// `J` is generated in one degree, otherwise the Rees route.
pub fn mixed_multiplicities_any(s: &GradedSetting, cfg: &Genericity) -> Result<MixedIdealReport> {
    if s.j_degree()?.is_some() {
        Ok(mixed_multiplicities(s, cfg)?.1)
    } else {
        Ok(mixed_multiplicities_rees(s)?.1)
    }
}

/// `e_i(I|J) = e_i(I|J')` for a reduction `J' ⊆ J`, verified within `n ≤ 10`.
pub fn reduction_invariance_check(
    s: &GradedSetting,
    sp: &GradedSetting,
    cfg: &Genericity,
) -> Result<ReductionCheck> {
    if !s.ia.equals(&sp.ia)? || !s.i.equals(&sp.i)? {
        return Err(Error::Precondition("settings must share A and I".into()));
    }
    let n = reduction_number(&s.j, &sp.j, 10)?
        .ok_or_else(|| Error::Precondition("reduction not confirmed with n ≤ 10".into()))?;
    let e = mixed_multiplicities_any(s, cfg)?.e;
    let e_reduction = mixed_multiplicities_any(sp, cfg)?.e;
    let equal = e == e_reduction;
    Ok(ReductionCheck {
        reduction_number: n,
        e,
        e_reduction,
        equal,
    })
}

/// `e_0 = e(I, A/0:J^∞)`, checked independently of any chain.
pub fn e0_direct(s: &GradedSetting) -> Result<BigInt> {
    Ok(s.samuel(&s.ia.saturation(&s.j)?)?.1)
}

/// Convenience: the full vector padded with zeros to `len`.
pub fn padded(e: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut v = e.to_vec();
    v.resize(len.max(v.len()), BigInt::zero());
    v
}

/// Map from formula name to its predicted `(index, value)` pairs.
pub fn group_formulas(values: &[FormulaValue]) -> BTreeMap<&'static str, Vec<(usize, BigInt)>> {
    let mut out: BTreeMap<&'static str, Vec<(usize, BigInt)>> = BTreeMap::new();
    for v in values {
        out.entry(v.formula)
            .or_default()
            .push((v.index, v.value.clone()));
    }
    out
}
