//! Seeded randomness for generic elements.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::DEFAULT_PRIME;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::RingRef;

/// Controls every random choice: the seed, how often a failed genericity
/// check is retried, and the sampling range used over `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Genericity {
    pub seed: u64,
    pub max_retries: usize,
    pub sample_bound: u32,
}

impl Default for Genericity {
    fn default() -> Self {
        Genericity {
            seed: 0,
            max_retries: 16,
            sample_bound: DEFAULT_PRIME,
        }
    }
}

impl Genericity {
    pub fn with_seed(seed: u64) -> Self {
        Genericity {
            seed,
            ..Default::default()
        }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// Same settings, seed replaced by a value derived from it.
    pub fn reseeded(&self, salt: u64) -> Self {
        let seed = self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15).rotate_left(17);
        Genericity { seed, ..*self }
    }
}

/// Nonzero random combination `Σ c_k m_k` of the given polynomials with
/// monomial multipliers `m_k`.
pub fn random_combination(
    ring: &RingRef,
    parts: &[(Monomial, Polynomial)],
    rng: &mut ChaCha8Rng,
    bound: u32,
) -> Polynomial {
    loop {
        let mut acc = Polynomial::zero(ring);
        for (m, g) in parts {
            let c = ring.field.random(rng, bound);
            acc = acc.add(&g.mul_term(m, &c)).expect("same ring");
        }
        if !acc.is_zero() {
            return acc;
        }
    }
}

/// Random nonzero linear form in the variables `vars`.
pub fn random_linear_form(
    ring: &RingRef,
    vars: &[usize],
    rng: &mut ChaCha8Rng,
    bound: u32,
) -> Polynomial {
    let n = ring.nvars();
    let parts: Vec<(Monomial, Polynomial)> = vars
        .iter()
        .map(|&v| (Monomial::one(n), Polynomial::var(ring, v)))
        .collect();
    random_combination(ring, &parts, rng, bound)
}
