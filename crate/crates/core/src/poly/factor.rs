//! Factorization over finite fields: squarefree split, exhaustive root scan
//! for fields with at most 64 elements, distinct-degree factorization, then
//! Cantor–Zassenhaus equal-degree splitting.
//!
//! Randomness comes from a fixed-seed ChaCha stream, so factorizations (and
//! everything built on them) are reproducible.

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::squarefree::squarefree_raw;
use super::{dense, Polynomial};
use crate::error::{Error, Result};
use crate::field::{Field, Value};

const ROOT_SCAN_LIMIT: u64 = 64;
const SPLIT_SEED: u64 = 0x7269_706c_6520_3333;

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by degree, then coefficients.
pub fn factor_finite(f: &Polynomial) -> Result<Vec<(Polynomial, usize)>> {
    let field = f.field();
    field.require_finite()?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(factor_raw(field, f.coeffs())
        .into_iter()
        .map(|(g, m)| (Polynomial::new(field, g), m))
        .collect())
}

pub(crate) fn factor_raw(field: &Field, f: &[Value]) -> Vec<(Vec<Value>, usize)> {
    let monic = dense::monic(field, f);
    let mut out = Vec::new();
    let parts = squarefree_raw(field, &monic).expect("finite fields are perfect");
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    for (g, m) in parts {
        for h in factor_squarefree(field, &g, &mut rng) {
            out.push((h, m));
        }
    }
    sort_factors(&mut out);
    out
}

pub(crate) fn sort_factors(v: &mut [(Vec<Value>, usize)]) {
    v.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
}

/// Irreducible factors of a monic squarefree polynomial.
fn factor_squarefree(field: &Field, f: &[Value], rng: &mut ChaCha8Rng) -> Vec<Vec<Value>> {
    let mut out = Vec::new();
    let mut rest = f.to_vec();
    if field.size_u64().is_some_and(|q| q <= ROOT_SCAN_LIMIT) {
        let q = field.size_u64().unwrap();
        for i in 0..q {
            if rest.len() <= 1 {
                break;
            }
            let a = field.element_at(i);
            if dense::eval(field, &rest, &a).is_zero() {
                let lin = vec![field.neg(&a), field.one()];
                rest = dense::exact_div(field, &rest, &lin);
                out.push(lin);
            }
        }
    }
    if rest.len() > 1 {
        for (g, d) in distinct_degree(field, &rest) {
            equal_degree(field, &g, d, rng, &mut out);
        }
    }
    out
}

/// `h ↦ h^q mod f` as an `F_q`-linear map, stored as the images of `z^i`.
pub(crate) struct Frobenius {
    images: Vec<Vec<Value>>,
    modulus: Vec<Value>,
}

impl Frobenius {
    pub(crate) fn new(field: &Field, modulus: &[Value]) -> Self {
        let q = field.size().expect("finite field").clone();
        let n = modulus.len() - 1;
        let z = vec![field.zero(), field.one()];
        let zq = dense::powmod(field, &z, &q, modulus);
        let mut images = Vec::with_capacity(n);
        let mut acc = dense::rem(field, &[field.one()], modulus);
        for _ in 0..n {
            images.push(acc.clone());
            acc = dense::mulmod(field, &acc, &zq, modulus);
        }
        Frobenius {
            images,
            modulus: modulus.to_vec(),
        }
    }

    pub(crate) fn apply(&self, field: &Field, h: &[Value]) -> Vec<Value> {
        let h = dense::rem(field, h, &self.modulus);
        let mut acc: Vec<Value> = Vec::new();
        for (c, img) in h.iter().zip(&self.images) {
            if c.is_zero() {
                continue;
            }
            acc = dense::add(field, &acc, &dense::scale(field, img, c));
        }
        acc
    }
}

fn distinct_degree(field: &Field, f: &[Value]) -> Vec<(Vec<Value>, usize)> {
    let mut out = Vec::new();
    let frob = Frobenius::new(field, f);
    let z = vec![field.zero(), field.one()];
    let mut h = dense::rem(field, &z, f);
    let mut rest = f.to_vec();
    let mut d = 1;
    while rest.len() > 2 * d {
        h = frob.apply(field, &h);
        let g = dense::gcd(field, &dense::sub(field, &h, &z), &rest);
        if g.len() > 1 {
            rest = dense::exact_div(field, &rest, &g);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.len() > 1 {
        let deg = rest.len() - 1;
        out.push((rest, deg));
    }
    out
}

fn equal_degree(
    field: &Field,
    f: &[Value],
    d: usize,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Vec<Value>>,
) {
    let n = f.len() - 1;
    if n == d {
        out.push(f.to_vec());
        return;
    }
    let q = field.size().unwrap().clone();
    let p = field.characteristic();
    let frob = Frobenius::new(field, f);
    loop {
        let a: Vec<Value> = dense::trimmed((0..n).map(|_| field.random(rng)).collect());
        if a.len() <= 1 {
            continue;
        }
        let g = dense::gcd(field, &a, f);
        let candidate = if g.len() > 1 {
            g
        } else if p == 2 {
            // absolute trace of F_{q^d} over F_2
            let s = field_degree_over_prime(field);
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..(s * d) {
                t = dense::mulmod(field, &t, &t, f);
                acc = dense::add(field, &acc, &t);
            }
            dense::gcd(field, &acc, f)
        } else {
            // a^((q^d - 1)/2) = (norm of a down to F_q)^((q-1)/2)
            let mut norm = a.clone();
            let mut conj = a.clone();
            for _ in 1..d {
                conj = frob.apply(field, &conj);
                norm = dense::mulmod(field, &norm, &conj, f);
            }
            let e = (&q - BigUint::one()) / BigUint::from(2u32);
            let b = dense::powmod(field, &norm, &e, f);
            let b1 = dense::sub(field, &b, &[field.one()]);
            dense::gcd(field, &b1, f)
        };
        if candidate.len() > 1 && candidate.len() < f.len() {
            let other = dense::exact_div(field, f, &candidate);
            equal_degree(field, &candidate, d, rng, out);
            equal_degree(field, &other, d, rng, out);
            return;
        }
    }
}

fn field_degree_over_prime(field: &Field) -> usize {
    let mut s = 1;
    let mut f = field.clone();
    while let Some(b) = f.base().cloned() {
        s *= f.extension_degree();
        f = b;
    }
    s
}

/// Rabin's irreducibility test over a finite field.
pub(crate) fn is_irreducible(field: &Field, m: &[Value]) -> bool {
    let m = dense::monic(field, m);
    let n = match m.len().checked_sub(1) {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let frob = Frobenius::new(field, &m);
    let z = vec![field.zero(), field.one()];
    let mut powers = Vec::with_capacity(n + 1);
    let mut h = dense::rem(field, &z, &m);
    powers.push(h.clone());
    for _ in 0..n {
        h = frob.apply(field, &h);
        powers.push(h.clone());
    }
    // powers[k] = z^(q^k) mod m
    if powers[n] != dense::rem(field, &z, &m) {
        return false;
    }
    for r in prime_divisors(n) {
        let g = dense::gcd(field, &dense::sub(field, &powers[n / r], &z), &m);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_irreducible_poly(f: &Polynomial) -> Result<bool> {
    f.field().require_finite()?;
    Ok(is_irreducible(f.field(), f.coeffs()))
}

/// Distinct roots of `f` lying in its (finite) coefficient field.
pub fn roots_in_field(f: &Polynomial) -> Result<Vec<Value>> {
    let field = f.field();
    field.require_finite()?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots: Vec<Value> = factor_raw(field, f.coeffs())
        .into_iter()
        .filter(|(g, _)| g.len() == 2)
        .map(|(g, _)| field.neg(&g[0]))
        .collect();
    roots.sort();
    Ok(roots)
}

/// First monic irreducible of degree `n` in enumeration order.
pub(crate) fn find_irreducible(field: &Field, n: usize) -> Vec<Value> {
    let q = field.size_u64().expect("small finite field");
    let mut idx: u64 = 0;
    loop {
        let mut c = Vec::with_capacity(n + 1);
        let mut k = idx;
        for _ in 0..n {
            c.push(field.element_at(k % q));
            k /= q;
        }
        c.push(field.one());
        if !c[0].is_zero() && is_irreducible(field, &c) {
            return c;
        }
        idx += 1;
    }
}
