//! Buchberger's algorithm over raw exponent-vector polynomials.
//!
//! Pairs are pruned with the Gebauer–Möller update (coprime and chain
//! criteria) and selected by lowest sugar, then lowest lcm.

use std::cmp::Ordering;

use crate::field::{Field, Scalar};
use crate::monomial::{Monomial, TermOrder};
use crate::poly::Term;

pub(crate) struct Engine<'a> {
    pub field: &'a Field,
    pub order: &'a TermOrder,
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

struct Basis {
    polys: Vec<Vec<Term>>,
    sugar: Vec<u64>,
    masks: Vec<u64>,
    active: Vec<bool>,
}

impl Basis {
    fn lm(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }
}

impl<'a> Engine<'a> {
    pub fn new(field: &'a Field, order: &'a TermOrder) -> Self {
        Engine { field, order }
    }

    pub fn sort(&self, terms: &mut Vec<Term>) {
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        // combine duplicates
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms.drain(..) {
            if let Some((lm, lc)) = out.last_mut() {
                if *lm == m {
                    *lc = self.field.add(lc, &c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !self.field.is_zero(c));
        *terms = out;
    }

    pub fn monic(&self, f: &mut [Term]) {
        if let Some((_, lc)) = f.first() {
            if !self.field.is_one(lc) {
                let inv = self.field.inv(lc);
                for (_, c) in f.iter_mut() {
                    *c = self.field.mul(c, &inv);
                }
            }
        }
    }

    /// `f - c * m * g`, both operands sorted.
    fn sub_mul(&self, f: &[Term], c: &Scalar, m: &Monomial, g: &[Term]) -> Vec<Term> {
        let field = self.field;
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let shifted: Vec<Term> = g.iter().map(|(t, a)| (t.mul(m), field.mul(a, c))).collect();
        while i < f.len() || j < shifted.len() {
            let ord = match (f.get(i), shifted.get(j)) {
                (Some(a), Some(b)) => self.order.cmp(&a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(f[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (t, a) = &shifted[j];
                    out.push((t.clone(), field.neg(a)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = field.sub(&f[i].1, &shifted[j].1);
                    if !field.is_zero(&v) {
                        out.push((f[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Full reduction of `f` by the monic polynomials `reducers`.
    pub fn reduce(&self, f: Vec<Term>, reducers: &[&[Term]]) -> Vec<Term> {
        let masks: Vec<u64> = reducers.iter().map(|g| g[0].0.support_mask()).collect();
        self.reduce_masked(f, reducers, &masks)
    }

    fn reduce_masked(&self, mut p: Vec<Term>, reducers: &[&[Term]], masks: &[u64]) -> Vec<Term> {
        let mut rem: Vec<Term> = Vec::new();
        while !p.is_empty() {
            let (m, c) = &p[0];
            let mmask = m.support_mask();
            let found = reducers
                .iter()
                .zip(masks)
                .find(|(g, &gm)| gm & !mmask == 0 && g[0].0.divides(m));
            match found {
                Some((g, _)) => {
                    let q = g[0].0.quotient_of(m);
                    let c = c.clone();
                    p = self.sub_mul(&p, &c, &q, g);
                }
                None => {
                    rem.push(p.remove(0));
                }
            }
        }
        rem
    }

    fn spoly(&self, f: &[Term], g: &[Term], lcm: &Monomial) -> Vec<Term> {
        let mf = f[0].0.quotient_of(lcm);
        let mg = g[0].0.quotient_of(lcm);
        let one = self.field.one();
        let left: Vec<Term> = f.iter().map(|(t, a)| (t.mul(&mf), a.clone())).collect();
        self.sub_mul(&left, &one, &mg, g)
    }

    /// Reduced Gröbner basis of the ideal generated by `input`, sorted by
    /// increasing leading monomial.
    pub fn groebner(&self, input: Vec<Vec<Term>>) -> Vec<Vec<Term>> {
        let mut basis = Basis {
            polys: Vec::new(),
            sugar: Vec::new(),
            masks: Vec::new(),
            active: Vec::new(),
        };
        let mut pairs: Vec<Pair> = Vec::new();

        let mut input: Vec<Vec<Term>> = input
            .into_iter()
            .map(|mut f| {
                self.sort(&mut f);
                f
            })
            .filter(|f| !f.is_empty())
            .collect();
        input.sort_by(|a, b| self.order.cmp(&a[0].0, &b[0].0));

        for f in input {
            let sugar = f
                .iter()
                .map(|(m, _)| self.order.sugar(m))
                .max()
                .unwrap_or(0);
            let h = self.reduce_by_basis(f, &basis);
            if h.is_empty() {
                continue;
            }
            self.insert(&mut basis, &mut pairs, h, sugar);
            if self.has_unit(&basis) {
                return vec![vec![(
                    Monomial::one(self.order.grading().len()),
                    self.field.one(),
                )]];
            }
        }

        while !pairs.is_empty() {
            let k = (0..pairs.len())
                .min_by(|&a, &b| {
                    pairs[a]
                        .sugar
                        .cmp(&pairs[b].sugar)
                        .then_with(|| self.order.cmp(&pairs[a].lcm, &pairs[b].lcm))
                })
                .expect("nonempty");
            let pair = pairs.swap_remove(k);
            let s = self.spoly(&basis.polys[pair.i], &basis.polys[pair.j], &pair.lcm);
            let h = self.reduce_by_basis(s, &basis);
            if h.is_empty() {
                continue;
            }
            self.insert(&mut basis, &mut pairs, h, pair.sugar);
            if self.has_unit(&basis) {
                return vec![vec![(
                    Monomial::one(self.order.grading().len()),
                    self.field.one(),
                )]];
            }
        }

        self.interreduce(
            (0..basis.polys.len())
                .filter(|&i| basis.active[i])
                .map(|i| basis.polys[i].clone())
                .collect(),
        )
    }

    fn has_unit(&self, basis: &Basis) -> bool {
        basis
            .polys
            .iter()
            .zip(&basis.active)
            .any(|(p, &a)| a && p[0].0.is_one())
    }

    fn reduce_by_basis(&self, f: Vec<Term>, basis: &Basis) -> Vec<Term> {
        let idx: Vec<usize> = (0..basis.polys.len())
            .filter(|&i| basis.active[i])
            .collect();
        let reducers: Vec<&[Term]> = idx.iter().map(|&i| basis.polys[i].as_slice()).collect();
        let masks: Vec<u64> = idx.iter().map(|&i| basis.masks[i]).collect();
        let mut h = self.reduce_masked(f, &reducers, &masks);
        self.monic(&mut h);
        h
    }

    /// Gebauer–Möller update for the new element `h`.
    fn insert(&self, basis: &mut Basis, pairs: &mut Vec<Pair>, h: Vec<Term>, sugar: u64) {
        let hi = basis.polys.len();
        let hlm = h[0].0.clone();
        let hsugar = sugar;

        let active: Vec<usize> = (0..hi).filter(|&i| basis.active[i]).collect();
        let cands: Vec<(usize, Monomial)> =
            active.iter().map(|&g| (g, hlm.lcm(basis.lm(g)))).collect();

        // chain criterion among the new pairs
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            let (ga, ref la) = cands[a];
            if hlm.coprime(basis.lm(ga)) {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                let lb = &cands[b].1;
                if lb.divides(la) && (lb != la || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        let mut new_pairs = Vec::new();
        for (k, (g, l)) in cands.into_iter().enumerate() {
            if !keep[k] || hlm.coprime(basis.lm(g)) {
                continue;
            }
            let sg = basis.sugar[g] + self.order.sugar(&l) - self.order.sugar(basis.lm(g));
            let sh = hsugar + self.order.sugar(&l) - self.order.sugar(&hlm);
            new_pairs.push(Pair {
                i: g,
                j: hi,
                lcm: l,
                sugar: sg.max(sh),
            });
        }

        // old pairs made redundant by h
        pairs.retain(|p| {
            !(hlm.divides(&p.lcm)
                && hlm.lcm(basis.lm(p.i)) != p.lcm
                && hlm.lcm(basis.lm(p.j)) != p.lcm)
        });
        pairs.extend(new_pairs);

        for &g in &active {
            if hlm.divides(basis.lm(g)) {
                basis.active[g] = false;
            }
        }
        basis.masks.push(hlm.support_mask());
        basis.polys.push(h);
        basis.sugar.push(hsugar);
        basis.active.push(true);
    }

    /// Minimal, fully tail-reduced, monic basis from a Gröbner basis whose
    /// leading monomials are pairwise non-dividing.
    pub fn interreduce(&self, mut g: Vec<Vec<Term>>) -> Vec<Vec<Term>> {
        g.sort_by(|a, b| self.order.cmp(&a[0].0, &b[0].0));
        // drop elements whose leading monomial is divisible by another's
        let mut minimal: Vec<Vec<Term>> = Vec::new();
        for f in g {
            if minimal.iter().any(|h| h[0].0.divides(&f[0].0)) {
                continue;
            }
            minimal.push(f);
        }
        let n = minimal.len();
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let others: Vec<&[Term]> = (0..n)
                .filter(|&j| j != k)
                .map(|j| minimal[j].as_slice())
                .collect();
            let head = minimal[k][0].clone();
            let tail = minimal[k][1..].to_vec();
            let mut red = vec![head];
            red.extend(self.reduce(tail, &others));
            self.monic(&mut red);
            out.push(red);
        }
        out
    }

    /// Checks that every S-polynomial of `g` reduces to zero.
    pub fn is_groebner(&self, g: &[Vec<Term>]) -> bool {
        let reducers: Vec<&[Term]> = g.iter().map(|f| f.as_slice()).collect();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let l = g[i][0].0.lcm(&g[j][0].0);
                let s = self.spoly(&g[i], &g[j], &l);
                if !self.reduce(s, &reducers).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}
