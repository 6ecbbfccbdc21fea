//! Bigraded Hilbert series, Hilbert functions, Hilbert polynomials and the
//! table of mixed multiplicities.
//!
//! Everything is computed from the degrevlex leading-term ideal, so the ring
//! must be standard bigraded: each variable has degree (1,0) or (0,1).

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::monomial::Monomial;
use crate::ring::{Bidegree, Ring};

/// Sparse bivariate integer polynomial in `t1, t2`.
pub type Poly2 = BTreeMap<(u32, u32), BigInt>;

fn p2_add_shifted(acc: &mut Poly2, p: &Poly2, shift: (u32, u32), sign: i32) {
    for (&(a, b), c) in p {
        let key = (a + shift.0, b + shift.1);
        let e = acc.entry(key).or_insert_with(BigInt::zero);
        if sign >= 0 {
            *e += c;
        } else {
            *e -= c;
        }
        if e.is_zero() {
            acc.remove(&key);
        }
    }
}

fn p2_one() -> Poly2 {
    let mut p = Poly2::new();
    p.insert((0, 0), BigInt::one());
    p
}

fn p2_mul(a: &Poly2, b: &Poly2) -> Poly2 {
    let mut out = Poly2::new();
    for (&(i, j), c) in b {
        let scaled: Poly2 = a.iter().map(|(k, v)| (*k, v * c)).collect();
        p2_add_shifted(&mut out, &scaled, (i, j), 1);
    }
    out
}

/// `1 - t^d`.
fn one_minus(d: Bidegree) -> Poly2 {
    let mut p = p2_one();
    p2_add_shifted(&mut p, &p2_one(), (d.d1, d.d2), -1);
    p
}

/// Generalized binomial coefficient `binom(s, k)` for any integer `s`.
pub fn binom(s: &BigInt, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= s - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Number of monomials of degree `k` in `n` variables.
fn count_monomials(n: usize, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n == 0 {
        return if k == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    binom(&BigInt::from(k + n as i64 - 1), n as u32 - 1)
}

/// `numerator / ((1-t1)^n1 (1-t2)^n2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries2 {
    pub numerator: Poly2,
    pub n1: usize,
    pub n2: usize,
}

impl HilbertSeries2 {
    /// Coefficient of `t1^u t2^v`, i.e. the Hilbert function.
    pub fn coefficient(&self, u: u32, v: u32) -> BigInt {
        self.numerator
            .iter()
            .map(|(&(a, b), c)| {
                c * count_monomials(self.n1, u as i64 - a as i64)
                    * count_monomials(self.n2, v as i64 - b as i64)
            })
            .sum()
    }

    /// Exchanges the roles of the two gradings.
    pub fn swapped(&self) -> HilbertSeries2 {
        HilbertSeries2 {
            numerator: self
                .numerator
                .iter()
                .map(|(&(a, b), c)| ((b, a), c.clone()))
                .collect(),
            n1: self.n2,
            n2: self.n1,
        }
    }
}

fn require_standard(ring: &Ring) -> Result<(Vec<Bidegree>, usize, usize)> {
    if !ring.is_standard_bigraded() {
        return Err(Error::NonStandardGrading(ring.to_string()));
    }
    let degs: Vec<Bidegree> = ring.vars.iter().map(|v| v.degree).collect();
    let n1 = degs.iter().filter(|d| d.d1 == 1).count();
    Ok((degs.clone(), n1, degs.len() - n1))
}

/// Keeps only the minimal elements under divisibility, sorted.
fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    let mut out: Vec<Monomial> = Vec::new();
    for m in gens {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out.sort();
    out.dedup();
    out
}

struct Numerator<'a> {
    degs: &'a [Bidegree],
    memo: HashMap<Vec<Monomial>, Poly2>,
}

impl Numerator<'_> {
    fn deg(&self, m: &Monomial) -> Bidegree {
        m.0.iter()
            .zip(self.degs)
            .fold(Bidegree::default(), |acc, (&e, d)| {
                Bidegree::new(acc.d1 + e * d.d1, acc.d2 + e * d.d2)
            })
    }

    /// `gens` must be minimal and sorted.
    fn compute(&mut self, gens: Vec<Monomial>) -> Poly2 {
        if gens.is_empty() {
            return p2_one();
        }
        if gens.iter().any(|m| m.is_one()) {
            return Poly2::new();
        }
        if gens.len() == 1 {
            return one_minus(self.deg(&gens[0]));
        }
        let n = gens[0].nvars();
        let mut counts = vec![0usize; n];
        for m in &gens {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    counts[i] += 1;
                }
            }
        }
        let (pivot, &best) = counts
            .iter()
            .enumerate()
            .max_by_key(|(i, &c)| (c, std::cmp::Reverse(*i)))
            .unwrap();
        if best <= 1 {
            // pairwise coprime
            return gens
                .iter()
                .fold(p2_one(), |acc, m| p2_mul(&acc, &one_minus(self.deg(m))));
        }
        if let Some(hit) = self.memo.get(&gens) {
            return hit.clone();
        }
        let x = Monomial::var(n, pivot);
        // M + (x)
        let mut plus: Vec<Monomial> = gens.iter().filter(|m| m.0[pivot] == 0).cloned().collect();
        plus.push(x.clone());
        let plus = minimalize(plus);
        // M : x
        let colon = minimalize(
            gens.iter()
                .map(|m| {
                    let mut e = m.0.clone();
                    if e[pivot] > 0 {
                        e[pivot] -= 1;
                    }
                    Monomial(e)
                })
                .collect(),
        );
        let mut out = self.compute(plus);
        let rest = self.compute(colon);
        let d = self.degs[pivot];
        p2_add_shifted(&mut out, &rest, (d.d1, d.d2), 1);
        self.memo.insert(gens, out.clone());
        out
    }
}

/// Series numerator of `k[x]/(gens)` for a monomial ideal in a standard
/// bigraded ring with the given variable degrees.
pub fn monomial_numerator(degs: &[Bidegree], gens: &[Monomial]) -> Poly2 {
    let mut state = Numerator {
        degs,
        memo: HashMap::new(),
    };
    state.compute(minimalize(gens.to_vec()))
}

/// Hilbert series of `ring / I`.
pub fn series_of(ideal: &Ideal) -> Result<HilbertSeries2> {
    let (degs, n1, n2) = require_standard(ideal.ring())?;
    ideal.require_bihomogeneous()?;
    let numerator = monomial_numerator(&degs, &ideal.leading_monomials());
    Ok(HilbertSeries2 { numerator, n1, n2 })
}

/// `dim_k (ring/I)_(u,v)` by counting standard monomials of bidegree (u,v).
pub fn hilbert_function(ideal: &Ideal, u: u32, v: u32) -> Result<BigInt> {
    let ring = ideal.ring();
    require_standard(ring)?;
    ideal.require_bihomogeneous()?;
    let lead = ideal.leading_monomials();
    let xs = ring.first_kind();
    let ys = ring.second_kind();
    let n = ring.nvars();
    let mut count = BigInt::zero();
    let mut exps = vec![0u32; n];
    for_each_composition(&xs, u, &mut exps, &mut |exps| {
        for_each_composition(&ys, v, exps, &mut |exps| {
            let m = Monomial(exps.to_vec());
            if !lead.iter().any(|g| g.divides(&m)) {
                count += 1;
            }
        });
    });
    Ok(count)
}

/// Calls `f` for every exponent assignment of total `d` on `vars`.
fn for_each_composition(
    vars: &[usize],
    d: u32,
    exps: &mut Vec<u32>,
    f: &mut dyn FnMut(&mut Vec<u32>),
) {
    match vars.split_first() {
        None => {
            if d == 0 {
                f(exps);
            }
        }
        Some((&v, rest)) => {
            if rest.is_empty() {
                exps[v] = d;
                f(exps);
                exps[v] = 0;
                return;
            }
            for e in (0..=d).rev() {
                exps[v] = e;
                for_each_composition(rest, d - e, exps, f);
            }
            exps[v] = 0;
        }
    }
}

/// `P(u,v) = Σ a_ij binom(u,i) binom(v,j)`; an empty map means `P ≡ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPoly2 {
    pub coeffs: BTreeMap<(u32, u32), BigInt>,
    /// Total degree; `None` when `P ≡ 0`.
    pub degree: Option<u32>,
    /// `P(u,v)` equals the Hilbert function for `u ≥ u*`, `v ≥ v*`.
    pub stability: (u32, u32),
}

impl HilbertPoly2 {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_u(&self) -> Option<u32> {
        self.coeffs.keys().map(|k| k.0).max()
    }

    pub fn deg_v(&self) -> Option<u32> {
        self.coeffs.keys().map(|k| k.1).max()
    }

    pub fn eval(&self, u: i64, v: i64) -> BigInt {
        self.coeffs
            .iter()
            .map(|(&(i, j), c)| c * binom(&BigInt::from(u), i) * binom(&BigInt::from(v), j))
            .sum()
    }

    pub fn swapped(&self) -> HilbertPoly2 {
        HilbertPoly2 {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
            degree: self.degree,
            stability: (self.stability.1, self.stability.0),
        }
    }
}

/// Coefficients of `binom(u + s, k)` in the basis `binom(u, i)`.
fn shifted_binomial(s: i64, k: u32) -> Vec<BigInt> {
    let s = BigInt::from(s);
    (0..=k).map(|i| binom(&s, k - i)).collect()
}

pub fn polynomial_of(series: &HilbertSeries2) -> HilbertPoly2 {
    let u_star = series.numerator.keys().map(|k| k.0).max().unwrap_or(0);
    let v_star = series.numerator.keys().map(|k| k.1).max().unwrap_or(0);
    let mut coeffs: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
    if series.n1 > 0 && series.n2 > 0 {
        let k1 = series.n1 as u32 - 1;
        let k2 = series.n2 as u32 - 1;
        for (&(a, b), c) in &series.numerator {
            let bu = shifted_binomial(k1 as i64 - a as i64, k1);
            let bv = shifted_binomial(k2 as i64 - b as i64, k2);
            for (i, x) in bu.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in bv.iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    *coeffs
                        .entry((i as u32, j as u32))
                        .or_insert_with(BigInt::zero) += c * x * y;
                }
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
    }
    let degree = coeffs.keys().map(|k| k.0 + k.1).max();
    HilbertPoly2 {
        coeffs,
        degree,
        stability: (u_star, v_star),
    }
}

/// Top-diagonal coefficients of the Hilbert polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ETable {
    /// `deg P`, or `None` when `P ≡ 0`.
    pub r: Option<u32>,
    /// `e[(i, j)]` for every `i + j = r`, zeros included.
    pub e: BTreeMap<(u32, u32), BigInt>,
    /// `deg_u P` and `deg_v P`, `-1` when `P ≡ 0`.
    pub r1: i64,
    pub r2: i64,
}

impl ETable {
    pub fn get(&self, i: u32, j: u32) -> BigInt {
        self.e.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// `(e_{r,0}, e_{r-1,1}, …, e_{0,r})`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        match self.r {
            None => Vec::new(),
            Some(r) => (0..=r).rev().map(|i| self.get(i, r - i)).collect(),
        }
    }

    pub fn swapped(&self) -> ETable {
        ETable {
            r: self.r,
            e: self
                .e
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
            r1: self.r2,
            r2: self.r1,
        }
    }
}

pub fn e_table(p: &HilbertPoly2, r_expected: Option<Option<u32>>) -> Result<ETable> {
    if let Some(exp) = r_expected {
        if exp != p.degree {
            return Err(Error::Assertion(format!(
                "Hilbert polynomial has degree {:?}, expected {:?}",
                p.degree, exp
            )));
        }
    }
    let mut e = BTreeMap::new();
    if let Some(r) = p.degree {
        for i in 0..=r {
            let c = p.coeffs.get(&(i, r - i)).cloned().unwrap_or_default();
            if c.is_negative() {
                return Err(Error::Assertion(format!(
                    "negative top coefficient a_{},{} = {c}",
                    i,
                    r - i
                )));
            }
            e.insert((i, r - i), c);
        }
    }
    let to_i = |d: Option<u32>| d.map_or(-1, |d| d as i64);
    Ok(ETable {
        r: p.degree,
        e,
        r1: to_i(p.deg_u()),
        r2: to_i(p.deg_v()),
    })
}

/// `(d, e)`: Krull dimension and multiplicity of `ring / I` in the total grading.
pub fn total_multiplicity(ideal: &Ideal) -> Result<(i64, BigInt)> {
    let series = series_of(ideal)?;
    let (d, e) = total_from_numerator(&series)?;
    let kd = ideal.krull_dim();
    if kd != d {
        return Err(Error::Assertion(format!(
            "pole order {d} differs from Krull dimension {kd}"
        )));
    }
    Ok((d, e))
}

/// Specializes `t1 = t2 = t`, cancels `(1-t)` factors, and returns the pole
/// order with the numerator value at 1.
pub fn total_from_numerator(series: &HilbertSeries2) -> Result<(i64, BigInt)> {
    let mut uni: Vec<BigInt> = Vec::new();
    for (&(a, b), c) in &series.numerator {
        let k = (a + b) as usize;
        if uni.len() <= k {
            uni.resize(k + 1, BigInt::zero());
        }
        uni[k] += c;
    }
    while uni.last().is_some_and(|c| c.is_zero()) {
        uni.pop();
    }
    if uni.is_empty() {
        return Err(Error::Precondition("unit ideal has no multiplicity".into()));
    }
    let mut pole = (series.n1 + series.n2) as i64;
    loop {
        let at_one: BigInt = uni.iter().sum();
        if !at_one.is_zero() {
            if at_one.is_negative() {
                return Err(Error::Assertion(format!("negative multiplicity {at_one}")));
            }
            return Ok((pole, at_one));
        }
        // synthetic division by (1 - t): q_k = Σ_{i ≤ k} c_i
        let mut q = Vec::with_capacity(uni.len() - 1);
        let mut run = BigInt::zero();
        for c in &uni[..uni.len() - 1] {
            run += c;
            q.push(run.clone());
        }
        uni = q;
        pole -= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::Polynomial;
    use crate::ring::{Ring, RingRef};

    fn xy() -> RingRef {
        Ring::bigraded("R", &["x"], &["y"], Field::Rationals).unwrap()
    }

    #[test]
    fn zero_ideal_series() {
        let r = xy();
        let s = series_of(&Ideal::zero(&r)).unwrap();
        assert_eq!(s.numerator, p2_one());
        let p = polynomial_of(&s);
        assert_eq!(p.degree, Some(0));
        assert_eq!(
            total_multiplicity(&Ideal::zero(&r)).unwrap(),
            (2, BigInt::one())
        );
        assert_eq!(
            hilbert_function(&Ideal::zero(&r), 3, 5).unwrap(),
            BigInt::one()
        );
    }

    #[test]
    fn principal_bidegree_one_one() {
        let r = xy();
        let f = Polynomial::var(&r, 0).mul(&Polynomial::var(&r, 1)).unwrap();
        let i = Ideal::new(&r, vec![f]).unwrap();
        let s = series_of(&i).unwrap();
        assert_eq!(s.numerator, one_minus(Bidegree::new(1, 1)));
        assert!(polynomial_of(&s).is_zero());
        for (u, v) in [(0, 0), (2, 0), (0, 3), (1, 1), (2, 4)] {
            let want = if u * v == 0 { 1 } else { 0 };
            assert_eq!(hilbert_function(&i, u, v).unwrap(), BigInt::from(want));
        }
    }

    #[test]
    fn binomial_basis_reading() {
        let mut coeffs = BTreeMap::new();
        coeffs.insert((1, 1), BigInt::one());
        coeffs.insert((1, 0), BigInt::one());
        coeffs.insert((0, 0), BigInt::one());
        let p = HilbertPoly2 {
            coeffs,
            degree: Some(2),
            stability: (0, 0),
        };
        let t = e_table(&p, None).unwrap();
        assert_eq!(
            t.diagonal(),
            vec![BigInt::zero(), BigInt::one(), BigInt::zero()]
        );
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binom(&BigInt::from(-1), 3), BigInt::from(-1));
        assert_eq!(binom(&BigInt::from(5), 2), BigInt::from(10));
        assert_eq!(binom(&BigInt::from(2), 3), BigInt::zero());
    }
}
