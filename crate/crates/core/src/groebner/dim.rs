//! Krull dimension of `k[x]/M` for a monomial ideal `M`.
//!
//! `dim = n - τ` where `τ` is the smallest set of variables meeting the
//! support of every minimal generator.

use crate::monomial::Monomial;

/// Dimension of `k[x_0..x_{n-1}] / (gens)`; `-1` when some generator is 1.
pub fn monomial_dim(n: usize, gens: &[Monomial]) -> i64 {
    if gens.iter().any(|m| m.is_one()) {
        return -1;
    }
    let supports: Vec<Vec<usize>> = gens
        .iter()
        .map(|m| (0..n).filter(|&i| m.0[i] > 0).collect())
        .collect();
    let mut best = n;
    let mut chosen = vec![false; n];
    hitting_set(&supports, &mut chosen, 0, &mut best);
    n as i64 - best as i64
}

fn hitting_set(supports: &[Vec<usize>], chosen: &mut [bool], size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    // first unhit generator with the smallest support
    let open = supports
        .iter()
        .filter(|s| !s.iter().any(|&v| chosen[v]))
        .min_by_key(|s| s.len());
    let Some(s) = open else {
        *best = size;
        return;
    };
    if size + 1 >= *best {
        return;
    }
    for &v in s {
        chosen[v] = true;
        hitting_set(supports, chosen, size + 1, best);
        chosen[v] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(monomial_dim(3, &[]), 3);
        // (xy, xz): components (x), (y,z)
        let g = [Monomial(vec![1, 1, 0]), Monomial(vec![1, 0, 1])];
        assert_eq!(monomial_dim(3, &g), 2);
        assert_eq!(monomial_dim(2, &[Monomial(vec![0, 0])]), -1);
        let g = [
            Monomial(vec![1, 0, 0]),
            Monomial(vec![0, 1, 0]),
            Monomial(vec![0, 0, 2]),
        ];
        assert_eq!(monomial_dim(3, &g), 0);
    }
}
