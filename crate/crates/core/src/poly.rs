//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept sorted in decreasing degrevlex order with no zero
//! coefficients, so structural equality is mathematical equality.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::monomial::Monomial;
use crate::ring::{Bidegree, RingRef};

pub type Term = (Monomial, Scalar);

#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

/// Total-degree reverse lexicographic comparison.
pub fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.0.iter().zip(&b.0).rev() {
        match x.cmp(y) {
            Ordering::Equal => {}
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

/// Result of [`Polynomial::bidegree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Bihomogeneous(Bidegree),
    Inhomogeneous,
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &RingRef, c: Scalar) -> Self {
        Polynomial::from_terms(ring, vec![(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &RingRef) -> Self {
        Polynomial::constant(ring, ring.field.one())
    }

    pub fn var(ring: &RingRef, i: usize) -> Self {
        Polynomial::from_terms(
            ring,
            vec![(Monomial::var(ring.nvars(), i), ring.field.one())],
        )
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Scalar) -> Self {
        Polynomial::from_terms(ring, vec![(m, c)])
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &RingRef, mut terms: Vec<Term>) -> Self {
        let field = &ring.field;
        for (m, _) in &terms {
            assert_eq!(
                m.nvars(),
                ring.nvars(),
                "exponent vector length does not match ring"
            );
        }
        terms.sort_by(|a, b| grevlex(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if field.is_zero(lc) {
                            out.pop();
                        }
                    }
                    out.push((m, c))
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if field.is_zero(lc) {
                out.pop();
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(
                self.ring.name.clone(),
                other.ring.name.clone(),
            ))
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let field = &self.ring.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => grevlex(&a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { field.neg(c) } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let (m, a) = &self.terms[i];
                    let b = &other.terms[j].1;
                    let c = if negate {
                        field.sub(a, b)
                    } else {
                        field.add(a, b)
                    };
                    if !field.is_zero(&c) {
                        out.push((m.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Polynomial {
        let field = &self.ring.field;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), field.neg(c)))
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        let field = &self.ring.field;
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), field.mul(a, c)))
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    /// Multiplication by a term; monomial multiplication preserves the order.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        let field = &self.ring.field;
        if field.is_zero(c) {
            return Polynomial::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, a)| (t.mul(m), field.mul(a, c)))
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let field = &self.ring.field;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                terms.push((a.try_mul(b)?, field.mul(ca, cb)));
            }
        }
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    pub fn pow(&self, k: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn make_monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, lc)) => self.scale(&self.ring.field.inv(lc)),
        }
    }

    pub fn monomial_bidegree(&self, m: &Monomial) -> Bidegree {
        m.0.iter()
            .enumerate()
            .fold(Bidegree::default(), |acc, (i, &e)| {
                let d = self.ring.degree(i);
                Bidegree::new(acc.d1 + e * d.d1, acc.d2 + e * d.d2)
            })
    }

    /// Common bidegree of all terms.
    pub fn bidegree(&self) -> Result<Homogeneity> {
        let mut it = self.terms.iter().map(|(m, _)| self.monomial_bidegree(m));
        let first = it.next().ok_or(Error::ZeroPolynomial)?;
        if it.all(|d| d == first) {
            Ok(Homogeneity::Bihomogeneous(first))
        } else {
            Ok(Homogeneity::Inhomogeneous)
        }
    }

    pub fn is_bihomogeneous(&self) -> bool {
        self.is_zero() || matches!(self.bidegree(), Ok(Homogeneity::Bihomogeneous(_)))
    }

    /// Homogeneous for the total grading `d1 + d2`.
    pub fn is_homogeneous(&self) -> bool {
        let mut it = self
            .terms
            .iter()
            .map(|(m, _)| self.monomial_bidegree(m).total());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Exact quotient `self / g`; fails unless `g` divides `self`.
    pub fn exact_div(&self, g: &Polynomial) -> Result<Polynomial> {
        self.check_ring(g)?;
        let field = &self.ring.field;
        let (lm, lc) = g.terms.first().ok_or(Error::DivisionByZero)?;
        let lc_inv = field.inv(lc);
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !lm.divides(&m) {
                return Err(Error::Invalid("exact division has a remainder".into()));
            }
            let qm = lm.quotient_of(&m);
            let qc = field.mul(&c, &lc_inv);
            rem = rem.sub(&g.mul_term(&qm, &qc))?;
            quot.push((qm, qc));
        }
        Ok(Polynomial::from_terms(&self.ring, quot))
    }

    /// Moves the polynomial into `target`, sending variable `i` to `index_map[i]`.
    pub fn embed(&self, target: &RingRef, index_map: &[usize]) -> Polynomial {
        assert_eq!(index_map.len(), self.ring.nvars());
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; n];
                for (i, &x) in m.0.iter().enumerate() {
                    e[index_map[i]] += x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        Polynomial::from_terms(target, terms)
    }

    /// Reinterprets the polynomial over a ring with identical variables but a
    /// different grading.
    pub fn with_ring(&self, target: &RingRef) -> Polynomial {
        assert_eq!(target.nvars(), self.ring.nvars());
        assert_eq!(target.field, self.ring.field);
        Polynomial {
            ring: target.clone(),
            terms: self.terms.clone(),
        }
    }

    /// Substitutes `images[i]` (polynomials in `target`) for variable `i`.
    pub fn substitute(&self, target: &RingRef, images: &[Polynomial]) -> Result<Polynomial> {
        assert_eq!(images.len(), self.ring.nvars());
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e)?)?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    fn fmt_monomial(&self, m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.ring.vars[i].name)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let v = self.ring.field.display_value(c);
            let neg = v.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = v.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                self.fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}
