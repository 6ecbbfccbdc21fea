//! Exponent vectors and monomial orders.

use std::cmp::Ordering;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.try_mul(other).expect("exponent overflow")
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask of variables with positive exponent (variables past 64 share bit 63).
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1u64 << i.min(63)))
    }

    pub fn weighted_degree(&self, w: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(w)
            .map(|(e, w)| *e as u64 * *w as u64)
            .sum()
    }
}

/// Monomial orders offered to callers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic on total degree.
    DegRevLex,
    /// The listed variables are eliminated first; ties broken by degrevlex.
    Elimination(Vec<usize>),
}

/// Internal order: weight rows compared lexicographically, then reverse lex.
///
/// Every variable must be positive in at least one row, which makes the order
/// a well-order. The last row doubles as the sugar grading for pair selection.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    rows: Vec<Vec<u32>>,
}

impl TermOrder {
    pub fn degrevlex(n: usize) -> Self {
        TermOrder {
            rows: vec![vec![1; n]],
        }
    }

    pub fn weighted(weights: Vec<u32>) -> Self {
        assert!(
            weights.iter().all(|&w| w > 0),
            "grading weights must be positive"
        );
        TermOrder {
            rows: vec![weights],
        }
    }

    /// Eliminates `block`; `weights` is the sugar grading and may vanish on
    /// block variables.
    pub fn elimination(block: &[usize], weights: Vec<u32>) -> Self {
        let mut first = vec![0; weights.len()];
        for &b in block {
            first[b] = 1;
        }
        let order = TermOrder {
            rows: vec![first, weights],
        };
        order.check_positive();
        order
    }

    fn check_positive(&self) {
        let n = self.rows[0].len();
        assert!(
            (0..n).all(|i| self.rows.iter().any(|r| r[i] > 0)),
            "every variable needs a positive weight in some row"
        );
    }

    /// Compares `weight` first (higher wins), then the positive grading `weights`.
    pub fn weight_then(weight: Vec<u32>, weights: Vec<u32>) -> Self {
        let order = TermOrder {
            rows: vec![weight, weights],
        };
        order.check_positive();
        order
    }

    pub fn from_order(order: &MonomialOrder, n: usize) -> Self {
        match order {
            MonomialOrder::DegRevLex => TermOrder::degrevlex(n),
            MonomialOrder::Elimination(block) => TermOrder::elimination(block, vec![1; n]),
        }
    }

    pub fn grading(&self) -> &[u32] {
        self.rows.last().expect("at least one row")
    }

    pub fn sugar(&self, m: &Monomial) -> u64 {
        m.weighted_degree(self.grading())
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for row in &self.rows {
            match a.weighted_degree(row).cmp(&b.weighted_degree(row)) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        // Reverse lex: the monomial with the smaller exponent in the last
        // differing variable is larger.
        for (x, y) in a.0.iter().zip(&b.0).rev() {
            match x.cmp(y) {
                Ordering::Equal => {}
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial(e.to_vec())
    }

    #[test]
    fn degrevlex_basics() {
        let o = TermOrder::degrevlex(3);
        // x > y > z
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 1, 0]), &m(&[0, 0, 1])), Ordering::Greater);
        // x*z < y^2 in degrevlex
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[0, 0, 0]), &m(&[0, 0, 1])), Ordering::Less);
    }

    #[test]
    fn elimination_puts_block_first() {
        let o = TermOrder::elimination(&[0], vec![1, 1, 1]);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
    }

    #[test]
    fn overflow_is_detected() {
        let a = m(&[u32::MAX, 0]);
        assert_eq!(a.try_mul(&m(&[1, 0])), Err(Error::ExponentOverflow));
    }
}
