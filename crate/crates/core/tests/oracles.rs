//! Independent brute-force oracles checked against the Gröbner-based routines.

use mixmult_core::hilbert::{polynomial_of, series_of};
use mixmult_core::problem::parse_poly;
use mixmult_core::{Field, Ideal, Monomial, Polynomial, Ring, RingRef, Scalar};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P: u64 = 32003;

fn fp() -> Field {
    Field::prime(P).unwrap()
}

/// All exponent vectors on `vars` of total degree `d` (other entries zero).
fn monomials(n: usize, vars: &[usize], d: u32) -> Vec<Vec<u32>> {
    if vars.is_empty() {
        return if d == 0 { vec![vec![0; n]] } else { vec![] };
    }
    let mut out = Vec::new();
    for e in 0..=d {
        for mut rest in monomials(n, &vars[1..], d - e) {
            rest[vars[0]] = e;
            out.push(rest);
        }
    }
    out
}

fn bimonomials(ring: &RingRef, u: u32, v: u32) -> Vec<Vec<u32>> {
    let n = ring.nvars();
    let (xs, ys) = (ring.first_kind(), ring.second_kind());
    let mut out = Vec::new();
    for a in monomials(n, &xs, u) {
        for b in monomials(n, &ys, v) {
            out.push(a.iter().zip(&b).map(|(p, q)| p + q).collect());
        }
    }
    out
}

fn residue(field: &Field, c: &Scalar) -> u64 {
    match (field, c) {
        (_, Scalar::Fp(x)) => *x as u64,
        _ => panic!("oracle works over prime fields"),
    }
}

/// Rank of a dense matrix over F_p.
fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][col], P - 2);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % P;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                let pivot = rows[rank].clone();
                for (x, p) in rows[r].iter_mut().zip(&pivot) {
                    *x = (*x + P * P - f * p) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    acc
}

fn degree_of(f: &Polynomial) -> (u32, u32) {
    let m = &f.terms()[0].0;
    let d = f.monomial_bidegree(m);
    (d.d1, d.d2)
}

/// Rows of `{m·g}` in bidegree (u,v), as dense vectors over `cols`.
fn multiples(ideal: &Ideal, u: u32, v: u32, cols: &[Vec<u32>]) -> Vec<Vec<u64>> {
    let ring = ideal.ring();
    let mut rows = Vec::new();
    for g in ideal.generators() {
        let (a, b) = degree_of(g);
        if a > u || b > v {
            continue;
        }
        for m in bimonomials(ring, u - a, v - b) {
            let prod = g.mul_term(&Monomial(m), &ring.field.one());
            let mut row = vec![0u64; cols.len()];
            for (mono, c) in prod.terms() {
                let k = cols.iter().position(|col| *col == mono.0).unwrap();
                row[k] = residue(&ring.field, c);
            }
            rows.push(row);
        }
    }
    rows
}

fn random_form(rng: &mut ChaCha8Rng, ring: &RingRef, u: u32, v: u32, terms: usize) -> Polynomial {
    let all = bimonomials(ring, u, v);
    let t = (0..terms)
        .map(|_| {
            let m = all[rng.gen_range(0..all.len())].clone();
            (Monomial(m), Scalar::Fp(rng.gen_range(1..P as u32)))
        })
        .collect();
    Polynomial::from_terms(ring, t)
}

fn random_ideal(rng: &mut ChaCha8Rng, ring: &RingRef) -> Ideal {
    let k = rng.gen_range(1..=3);
    let gens = (0..k)
        .map(|_| {
            let (u, v) = loop {
                let u = rng.gen_range(0..=2);
                let v = if ring.second_kind().is_empty() {
                    0
                } else {
                    rng.gen_range(0..=2)
                };
                if u + v >= 1 {
                    break (u, v);
                }
            };
            random_form(rng, ring, u, v, 3)
        })
        .filter(|f| !f.is_zero())
        .collect();
    Ideal::new(ring, gens).unwrap()
}

#[test]
fn hilbert_function_matches_dense_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let ring = Ring::bigraded("S", &["x1", "x2"], &["y1", "y2"], fp()).unwrap();
    for _ in 0..25 {
        let ideal = random_ideal(&mut rng, &ring);
        let series = series_of(&ideal).unwrap();
        for u in 0..=4 {
            for v in 0..=4 - u {
                let cols = bimonomials(&ring, u, v);
                let rank = rank_mod_p(multiples(&ideal, u, v, &cols));
                assert_eq!(
                    series.coefficient(u, v),
                    BigInt::from(cols.len() - rank),
                    "{ideal} at ({u},{v})"
                );
            }
        }
    }
}

#[test]
fn membership_matches_linear_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let ring = Ring::graded("R", &["x", "y", "z"], fp()).unwrap();
    for _ in 0..30 {
        let ideal = random_ideal(&mut rng, &ring);
        for d in 1..=4 {
            let f = random_form(&mut rng, &ring, d, 0, 2);
            if f.is_zero() {
                continue;
            }
            let cols = bimonomials(&ring, d, 0);
            let rows = multiples(&ideal, d, 0, &cols);
            let base = rank_mod_p(rows.clone());
            let mut with_f = rows;
            let mut row = vec![0u64; cols.len()];
            for (m, c) in f.terms() {
                row[cols.iter().position(|col| *col == m.0).unwrap()] = residue(&ring.field, c);
            }
            with_f.push(row);
            let member = rank_mod_p(with_f) == base;
            assert_eq!(ideal.contains(&f).unwrap(), member, "{f} in {ideal}");
        }
    }
}

fn monomial_ideal(ring: &RingRef, gens: &[Vec<u32>]) -> Ideal {
    let one = ring.field.one();
    Ideal::new(
        ring,
        gens.iter()
            .map(|e| Polynomial::monomial(ring, Monomial(e.clone()), one.clone()))
            .collect(),
    )
    .unwrap()
}

/// `I : (x_k)^∞` for monomial `I`: drop `x_k` from every generator.
fn sat_by_var(gens: &[Vec<u32>], k: usize) -> Vec<Vec<u32>> {
    gens.iter()
        .map(|g| {
            let mut g = g.clone();
            g[k] = 0;
            g
        })
        .collect()
}

fn lcm_all(a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    a.iter()
        .flat_map(|x| {
            b.iter()
                .map(move |y| x.iter().zip(y).map(|(p, q)| *p.max(q)).collect())
        })
        .collect()
}

/// Krull dimension of a monomial quotient by exhaustive search over variable subsets.
fn brute_dim(n: usize, gens: &[Vec<u32>]) -> i64 {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return -1;
    }
    (0u32..1 << n)
        .filter(|&s| {
            gens.iter().all(|g| {
                g.iter()
                    .enumerate()
                    .any(|(i, &e)| e > 0 && s & (1 << i) == 0)
            })
        })
        .map(|s| s.count_ones() as i64)
        .max()
        .unwrap()
}

#[test]
fn monomial_saturation_and_dimension_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let ring = Ring::graded("R", &["a", "b", "c", "d"], fp()).unwrap();
    for _ in 0..40 {
        let k = rng.gen_range(1..=4);
        let gens: Vec<Vec<u32>> = (0..k)
            .map(|_| (0..4).map(|_| rng.gen_range(0..=2)).collect())
            .collect();
        let ideal = monomial_ideal(&ring, &gens);
        assert_eq!(ideal.krull_dim(), brute_dim(4, &gens), "{ideal}");

        let v = rng.gen_range(0..4);
        let expect = monomial_ideal(&ring, &sat_by_var(&gens, v));
        let j = Ideal::of_vars(&ring, &[v]);
        assert!(ideal.saturation(&j).unwrap().equals(&expect).unwrap());

        let w = (v + 1) % 4;
        let both = lcm_all(&sat_by_var(&gens, v), &sat_by_var(&gens, w));
        let expect = monomial_ideal(&ring, &both);
        let j = Ideal::of_vars(&ring, &[v, w]);
        assert!(
            ideal.saturation(&j).unwrap().equals(&expect).unwrap(),
            "{ideal} : ({v},{w})^∞"
        );
    }
}

#[test]
fn free_algebra_polynomial_is_a_product_of_binomials() {
    for (m, n) in [(1usize, 1usize), (2, 1), (2, 3), (3, 3)] {
        let xs: Vec<String> = (0..m).map(|i| format!("x{i}")).collect();
        let ys: Vec<String> = (0..n).map(|i| format!("y{i}")).collect();
        let xr: Vec<&str> = xs.iter().map(String::as_str).collect();
        let yr: Vec<&str> = ys.iter().map(String::as_str).collect();
        let ring = Ring::bigraded("S", &xr, &yr, Field::Rationals).unwrap();
        let p = polynomial_of(&series_of(&Ideal::zero(&ring)).unwrap());
        for u in 0..6i64 {
            for v in 0..6i64 {
                let expect = binomial(u + m as i64 - 1, m as i64 - 1)
                    * binomial(v + n as i64 - 1, n as i64 - 1);
                assert_eq!(p.eval(u, v), BigInt::from(expect));
            }
        }
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn parsed_intersection_matches_hand_computation() {
    let ring = Ring::graded("R", &["x", "y"], Field::Rationals).unwrap();
    let a = Ideal::new(&ring, vec![parse_poly("x", &ring).unwrap()]).unwrap();
    let b = Ideal::new(&ring, vec![parse_poly("x + y", &ring).unwrap()]).unwrap();
    let expect = Ideal::new(&ring, vec![parse_poly("x^2 + x*y", &ring).unwrap()]).unwrap();
    assert!(a.intersection(&b).unwrap().equals(&expect).unwrap());
}
