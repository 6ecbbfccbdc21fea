//! Ideals with cached reduced Gröbner bases and the standard ideal operations.

mod dim;
pub(crate) mod engine;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use dim::monomial_dim;
pub(crate) use engine::Engine;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder, TermOrder};
use crate::poly::{Homogeneity, Polynomial, Term};
use crate::ring::RingRef;

/// An ideal given by generators. Immutable; the degrevlex reduced basis is
/// computed on first use and shared between clones.
#[derive(Clone)]
pub struct Ideal {
    ring: RingRef,
    gens: Vec<Polynomial>,
    gb: Arc<OnceLock<Vec<Polynomial>>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({self})")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Sugar weights: total degree with respect to the ring's grading.
pub(crate) fn ring_weights(ring: &RingRef) -> Vec<u32> {
    ring.vars.iter().map(|v| v.degree.total()).collect()
}

/// Prepends `k` zero exponents to every term.
fn lift_terms(f: &Polynomial, k: usize) -> Vec<Term> {
    f.terms()
        .iter()
        .map(|(m, c)| {
            let mut e = vec![0; k];
            e.extend_from_slice(&m.0);
            (Monomial(e), c.clone())
        })
        .collect()
}

fn drop_prefix(ring: &RingRef, terms: Vec<Term>, k: usize) -> Polynomial {
    let terms = terms
        .into_iter()
        .map(|(m, c)| (Monomial(m.0[k..].to_vec()), c))
        .collect();
    Polynomial::from_terms(ring, terms)
}

impl Ideal {
    pub fn new(ring: &RingRef, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if !g.ring().same_as(ring) {
                return Err(Error::RingMismatch(
                    g.ring().name.clone(),
                    ring.name.clone(),
                ));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal {
            ring: ring.clone(),
            gens,
            gb: Arc::new(OnceLock::new()),
        })
    }

    pub fn zero(ring: &RingRef) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: Vec::new(),
            gb: Arc::new(OnceLock::new()),
        }
    }

    pub fn unit(ring: &RingRef) -> Ideal {
        Ideal::from_basis(ring, vec![Polynomial::one(ring)])
    }

    /// Ideal generated by the listed variables.
    pub fn of_vars(ring: &RingRef, vars: &[usize]) -> Ideal {
        let gens: Vec<Polynomial> = vars.iter().map(|&i| Polynomial::var(ring, i)).collect();
        Ideal::from_basis(ring, gens)
    }

    /// `gens` must already be the reduced degrevlex basis (up to order).
    fn from_basis(ring: &RingRef, mut gens: Vec<Polynomial>) -> Ideal {
        gens.sort_by(|a, b| crate::poly::grevlex(&a.terms()[0].0, &b.terms()[0].0));
        let cell = OnceLock::new();
        let _ = cell.set(gens.clone());
        Ideal {
            ring: ring.clone(),
            gens,
            gb: Arc::new(cell),
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    fn engine_basis(&self, order: &TermOrder) -> Vec<Vec<Term>> {
        let engine = Engine::new(&self.ring.field, order);
        engine.groebner(self.gens.iter().map(|g| g.terms().to_vec()).collect())
    }

    /// Reduced Gröbner basis for degrevlex, sorted by increasing leading monomial.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| {
            let order = TermOrder::degrevlex(self.ring.nvars());
            self.engine_basis(&order)
                .into_iter()
                .map(|t| Polynomial::from_terms(&self.ring, t))
                .collect()
        })
    }

    /// Reduced Gröbner basis for another order. Elements are returned in the
    /// canonical storage order, paired with their leading monomial.
    pub fn groebner_basis_with(&self, order: &MonomialOrder) -> Vec<(Monomial, Polynomial)> {
        let order = TermOrder::from_order(order, self.ring.nvars());
        self.basis_for(&order)
    }

    pub(crate) fn basis_for(&self, order: &TermOrder) -> Vec<(Monomial, Polynomial)> {
        self.engine_basis(order)
            .into_iter()
            .map(|t| (t[0].0.clone(), Polynomial::from_terms(&self.ring, t)))
            .collect()
    }

    /// Minimal generators of the degrevlex leading-term ideal.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner_basis()
            .iter()
            .map(|g| g.terms()[0].0.clone())
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis()
            .first()
            .is_some_and(|g| g.is_constant())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !f.ring().same_as(&self.ring) {
            return Err(Error::RingMismatch(
                f.ring().name.clone(),
                self.ring.name.clone(),
            ));
        }
        let order = TermOrder::degrevlex(self.ring.nvars());
        let engine = Engine::new(&self.ring.field, &order);
        let reducers: Vec<&[Term]> = self.groebner_basis().iter().map(|g| g.terms()).collect();
        let r = engine.reduce(f.terms().to_vec(), &reducers);
        Ok(Polynomial::from_terms(&self.ring, r))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals (reduced bases coincide).
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        Ok(self.groebner_basis() == other.groebner_basis())
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(
                self.ring.name.clone(),
                other.ring.name.clone(),
            ))
        }
    }

    pub fn is_bihomogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_bihomogeneous())
    }

    /// Fails with `Inhomogeneous` naming the first offending generator.
    pub fn require_bihomogeneous(&self) -> Result<()> {
        for g in &self.gens {
            if g.bidegree()? == Homogeneity::Inhomogeneous {
                return Err(Error::Inhomogeneous(g.to_string()));
            }
        }
        Ok(())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn with_generators(&self, extra: &[Polynomial]) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f.mul(g)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn power(&self, k: u32) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            let next = acc.product(self)?;
            // keep generator lists small
            acc = Ideal::new(&self.ring, next.groebner_basis().to_vec())?;
        }
        Ok(acc)
    }

    /// Eliminates the variables in `block`; the result lives in the same ring.
    pub fn eliminate(&self, block: &[usize]) -> Ideal {
        let order = TermOrder::elimination(block, ring_weights(&self.ring));
        let kept = self
            .engine_basis(&order)
            .into_iter()
            .filter(|t| t.iter().all(|(m, _)| block.iter().all(|&b| m.0[b] == 0)))
            .map(|t| Polynomial::from_terms(&self.ring, t))
            .collect();
        Ideal {
            ring: self.ring.clone(),
            gens: kept,
            gb: Arc::new(OnceLock::new()),
        }
    }

    /// `I ∩ J` by eliminating `t` from `t·I + (1-t)·J`.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let field = &self.ring.field;
        let n = self.ring.nvars();
        let mut weights = vec![0];
        weights.extend(ring_weights(&self.ring));
        let order = TermOrder::elimination(&[0], weights);
        let t = Monomial::var(n + 1, 0);
        let mut input: Vec<Vec<Term>> = Vec::new();
        for f in &self.gens {
            input.push(
                lift_terms(f, 1)
                    .into_iter()
                    .map(|(m, c)| (m.mul(&t), c))
                    .collect(),
            );
        }
        for g in &other.gens {
            let base = lift_terms(g, 1);
            let mut terms = base.clone();
            terms.extend(base.into_iter().map(|(m, c)| (m.mul(&t), field.neg(&c))));
            input.push(terms);
        }
        let engine = Engine::new(field, &order);
        let gens: Vec<Polynomial> = engine
            .groebner(input)
            .into_iter()
            .filter(|f| f.iter().all(|(m, _)| m.0[0] == 0))
            .map(|f| drop_prefix(&self.ring, f, 1))
            .collect();
        Ideal::new(&self.ring, gens)
    }

    /// `I : g = (I ∩ (g)) / g`.
    pub fn quotient_by(&self, g: &Polynomial) -> Result<Ideal> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !g.ring().same_as(&self.ring) {
            return Err(Error::RingMismatch(
                g.ring().name.clone(),
                self.ring.name.clone(),
            ));
        }
        if self.is_unit() || self.contains(g)? {
            return Ok(Ideal::unit(&self.ring));
        }
        let principal = Ideal::new(&self.ring, vec![g.clone()])?;
        let meet = self.intersection(&principal)?;
        let gens = meet
            .gens
            .iter()
            .map(|f| f.exact_div(g))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }

    /// `I : J = ∩_j I : g_j`.
    pub fn quotient(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut acc = Ideal::unit(&self.ring);
        for g in &other.gens {
            let q = self.quotient_by(g)?;
            acc = acc.intersection(&q)?;
        }
        Ok(acc)
    }

    /// `I : J^∞`, iterating `I ← I : J` until the reduced basis stabilizes.
    pub fn saturation(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut cur = self.clone();
        loop {
            let next = cur.quotient(other)?;
            if next.equals(&cur)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Krull dimension of `ring / I`; `-1` for the unit ideal.
    pub fn krull_dim(&self) -> i64 {
        monomial_dim(self.ring.nvars(), &self.leading_monomials())
    }

    /// `f` is a non-zerodivisor on `ring / I`.
    pub fn is_nzd(&self, f: &Polynomial) -> Result<bool> {
        if f.is_zero() {
            return Ok(self.is_unit());
        }
        self.quotient_by(f)?.equals(self)
    }

    /// Transports the ideal along a variable map (see [`Polynomial::embed`]).
    pub fn embed(&self, target: &RingRef, index_map: &[usize]) -> Result<Ideal> {
        Ideal::new(
            target,
            self.gens
                .iter()
                .map(|g| g.embed(target, index_map))
                .collect(),
        )
    }

    /// Same generators over a ring with identical variables and a new grading.
    pub fn with_ring(&self, target: &RingRef) -> Ideal {
        let gens = self.gens.iter().map(|g| g.with_ring(target)).collect();
        let gb = match self.gb.get() {
            Some(b) => {
                let cell = OnceLock::new();
                let _ = cell.set(b.iter().map(|g| g.with_ring(target)).collect());
                cell
            }
            None => OnceLock::new(),
        };
        Ideal {
            ring: target.clone(),
            gens,
            gb: Arc::new(gb),
        }
    }

    /// Checks that the cached basis satisfies Buchberger's criterion.
    pub fn verify_basis(&self) -> bool {
        let order = TermOrder::degrevlex(self.ring.nvars());
        let engine = Engine::new(&self.ring.field, &order);
        let g: Vec<Vec<Term>> = self
            .groebner_basis()
            .iter()
            .map(|p| p.terms().to_vec())
            .collect();
        engine.is_groebner(&g)
    }
}

/// Equality as ideals (same ring, same reduced basis).
impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other).unwrap_or(false)
    }
}

impl Eq for Ideal {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::ring::Ring;

    fn ring3() -> RingRef {
        Ring::graded("R", &["x", "y", "z"], Field::Rationals).unwrap()
    }

    fn v(r: &RingRef, i: usize) -> Polynomial {
        Polynomial::var(r, i)
    }

    fn mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.mul(b).unwrap()
    }

    #[test]
    fn intersection_of_coordinate_ideals() {
        let r = ring3();
        let a = Ideal::of_vars(&r, &[0]);
        let b = Ideal::of_vars(&r, &[1]);
        let c = a.intersection(&b).unwrap();
        assert_eq!(c.groebner_basis(), &[mul(&v(&r, 0), &v(&r, 1))]);
    }

    #[test]
    fn monomial_quotient() {
        let r = ring3();
        let x2y = mul(&mul(&v(&r, 0), &v(&r, 0)), &v(&r, 1));
        let i = Ideal::new(&r, vec![x2y]).unwrap();
        let q = i.quotient_by(&v(&r, 0)).unwrap();
        assert_eq!(q.groebner_basis(), &[mul(&v(&r, 0), &v(&r, 1))]);
    }

    #[test]
    fn saturation_and_dim() {
        let r = ring3();
        let (x, y, z) = (v(&r, 0), v(&r, 1), v(&r, 2));
        let i = Ideal::new(&r, vec![mul(&mul(&x, &x), &y), mul(&x, &z)]).unwrap();
        let s = i.saturation(&Ideal::of_vars(&r, &[0])).unwrap();
        assert!(s.equals(&Ideal::of_vars(&r, &[1, 2])).unwrap());
        let j = Ideal::new(&r, vec![mul(&x, &y), mul(&x, &z)]).unwrap();
        assert_eq!(j.krull_dim(), 2);
        assert_eq!(Ideal::unit(&r).krull_dim(), -1);
        assert_eq!(Ideal::zero(&r).krull_dim(), 3);
    }

    #[test]
    fn nzd() {
        let r = ring3();
        let (x, y) = (v(&r, 0), v(&r, 1));
        assert!(Ideal::new(&r, vec![y.clone()]).unwrap().is_nzd(&x).unwrap());
        assert!(!Ideal::new(&r, vec![mul(&x, &y)])
            .unwrap()
            .is_nzd(&x)
            .unwrap());
    }
}
