//! Degrees of the Stückrad–Vogel cycles of `X ∩ Y ⊂ P^n`, read off the
//! mixed multiplicities `e_i(m|J)` of the ruled join with respect to the
//! diagonal ideal `J = (x_0 - y_0, …, x_n - y_n)`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::generic::Genericity;
use crate::groebner::Ideal;
use crate::ideal_mixed::{mixed_multiplicities, GradedSetting, MixedIdealReport};
use crate::poly::Polynomial;
use crate::ring::{Ring, RingRef, Variable};

#[derive(Clone, Debug)]
pub struct JoinSetting {
    /// Projective dimension of the ambient space.
    pub n: usize,
    pub ix: Ideal,
    pub iy: Ideal,
    /// `k[x_0..x_n, y_0..y_n]`.
    pub join_ring: RingRef,
    pub graded: GradedSetting,
}

fn suffixed(ring: &Ring, suffix: &str, taken: &[Variable]) -> Vec<Variable> {
    ring.vars
        .iter()
        .map(|v| {
            let mut name = format!("{}{suffix}", v.name);
            while taken.iter().any(|t| t.name == name) {
                name.push('\'');
            }
            Variable {
                name,
                degree: v.degree,
            }
        })
        .collect()
}

impl JoinSetting {
    /// `ix` and `iy` must live in standard graded rings with the same number of variables.
    pub fn new(ix: Ideal, iy: Ideal) -> Result<JoinSetting> {
        let (rx, ry) = (ix.ring().clone(), iy.ring().clone());
        for r in [&rx, &ry] {
            if !r.is_standard_graded() {
                return Err(Error::NonStandardGrading(r.to_string()));
            }
        }
        if rx.nvars() != ry.nvars() || rx.nvars() == 0 {
            return Err(Error::Precondition(
                "X and Y must lie in the same projective space".into(),
            ));
        }
        if rx.field != ry.field {
            return Err(Error::Precondition(
                "X and Y must be defined over the same field".into(),
            ));
        }
        if ix.is_unit() || iy.is_unit() {
            return Err(Error::Precondition("X and Y must be nonempty".into()));
        }
        let k = rx.nvars();
        let xs = suffixed(&rx, "_1", &[]);
        let ys = suffixed(&ry, "_2", &xs);
        let vars: Vec<Variable> = xs.into_iter().chain(ys).collect();
        let join_ring = Ring::new("join", vars, rx.field.clone())?;
        let xmap: Vec<usize> = (0..k).collect();
        let ymap: Vec<usize> = (k..2 * k).collect();
        let a = ix
            .embed(&join_ring, &xmap)?
            .sum(&iy.embed(&join_ring, &ymap)?)?;
        let diag = (0..k)
            .map(|i| Polynomial::var(&join_ring, i).sub(&Polynomial::var(&join_ring, k + i)))
            .collect::<Result<Vec<_>>>()?;
        let j = Ideal::new(&join_ring, diag)?;
        let graded = GradedSetting::new(a, None, j)?;
        Ok(JoinSetting {
            n: k - 1,
            ix,
            iy,
            join_ring,
            graded,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SVReport {
    /// `deg v_i` for `i = 1..=n+1`.
    pub degs: Vec<BigInt>,
    /// `e_0..e_{n+1}` (trailing zeros included).
    pub e_list: Vec<BigInt>,
    /// Seeds actually used; two entries when the first draw was rejected.
    pub seeds: Vec<u64>,
    pub mixed: MixedIdealReport,
}

impl SVReport {
    pub fn sum(&self) -> BigInt {
        self.degs.iter().sum()
    }
}

fn attempt(
    js: &JoinSetting,
    cfg: &Genericity,
) -> Result<(Vec<BigInt>, Vec<BigInt>, MixedIdealReport)> {
    let (_, mixed) = mixed_multiplicities(&js.graded, cfg)?;
    let mut e = mixed.e.clone();
    e.resize(js.n + 2, BigInt::zero());
    let degs: Vec<BigInt> = (1..=js.n + 1).map(|i| &e[i - 1] - &e[i]).collect();
    if let Some(i) = degs.iter().position(|d| d.is_negative()) {
        return Err(Error::Assertion(format!(
            "deg v_{} = {} is negative",
            i + 1,
            degs[i]
        )));
    }
    Ok((degs, e, mixed))
}

/// `deg v_i = e_{i-1}(m|J) - e_i(m|J)`. An assertion failure is retried once
/// with fresh randomness before it is reported.
pub fn sv_degrees(js: &JoinSetting, cfg: &Genericity) -> Result<SVReport> {
    match attempt(js, cfg) {
        Ok((degs, e_list, mixed)) => Ok(SVReport {
            degs,
            e_list,
            seeds: vec![cfg.seed],
            mixed,
        }),
        Err(Error::Assertion(_)) => {
            let retry = cfg.reseeded(0x5eed);
            let (degs, e_list, mixed) = attempt(js, &retry)?;
            Ok(SVReport {
                degs,
                e_list,
                seeds: vec![cfg.seed, retry.seed],
                mixed,
            })
        }
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutCheck {
    /// `Σ deg v_i = e_0(m|J)`.
    pub telescopes: bool,
    /// `Σ deg v_i = deg X · deg Y`, when the degrees were supplied.
    pub matches_product: Option<bool>,
}

impl BezoutCheck {
    pub fn holds(&self) -> bool {
        self.telescopes && self.matches_product != Some(false)
    }
}

/// `degrees` carries `(deg X, deg Y)` for instances known to meet properly.
pub fn bezout_check(report: &SVReport, degrees: Option<(u64, u64)>) -> BezoutCheck {
    let sum = report.sum();
    let e0 = report.e_list.first().cloned().unwrap_or_default();
    BezoutCheck {
        telescopes: sum == e0,
        matches_product: degrees.map(|(a, b)| sum == BigInt::from(a) * BigInt::from(b)),
    }
}
