//! Coefficient-vector kernels shared by the field tower and [`Polynomial`].
//!
//! Vectors are ascending (`v[i]` is the coefficient of `z^i`) and trimmed:
//! the zero polynomial is the empty vector.
//!
//! [`Polynomial`]: crate::poly::Polynomial

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::field::{Field, FieldKind, Value};

const KARATSUBA_THRESHOLD: usize = 64;

pub(crate) fn trim(v: &mut Vec<Value>) {
    while v.last().is_some_and(Value::is_zero) {
        v.pop();
    }
}

pub(crate) fn trimmed(mut v: Vec<Value>) -> Vec<Value> {
    trim(&mut v);
    v
}

pub(crate) fn degree(a: &[Value]) -> Option<usize> {
    a.len().checked_sub(1)
}

fn prime_of(f: &Field) -> Option<u64> {
    match f.kind() {
        FieldKind::Prime(p) => Some(*p),
        _ => None,
    }
}

fn residues(a: &[Value]) -> Vec<u64> {
    a.iter()
        .map(|v| match v {
            Value::Residue(x) => *x,
            _ => unreachable!("non-residue coefficient over a prime field"),
        })
        .collect()
}

fn from_residues(v: Vec<u64>) -> Vec<Value> {
    trimmed(v.into_iter().map(Value::Residue).collect())
}

pub(crate) fn add(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = Vec::with_capacity(long.len());
    for (i, x) in long.iter().enumerate() {
        match short.get(i) {
            Some(y) => out.push(f.add(x, y)),
            None => out.push(x.clone()),
        }
    }
    trimmed(out)
}

pub(crate) fn neg(f: &Field, a: &[Value]) -> Vec<Value> {
    a.iter().map(|x| f.neg(x)).collect()
}

pub(crate) fn sub(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => f.sub(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => f.neg(y),
            (None, None) => unreachable!(),
        });
    }
    trimmed(out)
}

pub(crate) fn scale(f: &Field, a: &[Value], c: &Value) -> Vec<Value> {
    if c.is_zero() {
        return Vec::new();
    }
    trimmed(a.iter().map(|x| f.mul(x, c)).collect())
}

/// `a * z^k`.
pub(crate) fn shift(a: &[Value], k: usize, f: &Field) -> Vec<Value> {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); k];
    out.extend_from_slice(a);
    out
}

pub(crate) fn mul(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if let Some(p) = prime_of(f) {
        return from_residues(mul_mod_p(&residues(a), &residues(b), p));
    }
    if a.len().min(b.len()) < KARATSUBA_THRESHOLD {
        return schoolbook(f, a, b);
    }
    karatsuba(f, a, b)
}

fn schoolbook(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let t = f.mul(x, y);
            out[i + j] = f.add(&out[i + j], &t);
        }
    }
    trimmed(out)
}

fn karatsuba(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    if a.len().min(b.len()) < KARATSUBA_THRESHOLD {
        return schoolbook(f, a, b);
    }
    let half = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(half.min(a.len()));
    let (b0, b1) = b.split_at(half.min(b.len()));
    let a0 = trimmed(a0.to_vec());
    let b0 = trimmed(b0.to_vec());
    let z0 = mul(f, &a0, &b0);
    let z2 = mul(f, a1, b1);
    let z1 = sub(
        f,
        &sub(f, &mul(f, &add(f, &a0, a1), &add(f, &b0, b1)), &z0),
        &z2,
    );
    let mut out = add(f, &z0, &shift(&z1, half, f));
    out = add(f, &out, &shift(&z2, 2 * half, f));
    out
}

fn mul_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len() + b.len() - 1;
    // Accumulate in u128 and reduce lazily; p < 2^62 so each product is < 2^124.
    let mut acc = vec![0u128; n];
    let limit = u128::MAX - (p as u128) * (p as u128);
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let slot = &mut acc[i + j];
            *slot += x as u128 * y as u128;
            if *slot >= limit {
                *slot %= p as u128;
            }
        }
    }
    acc.into_iter().map(|x| (x % p as u128) as u64).collect()
}

/// Division with remainder; `b` must be nonzero.
pub(crate) fn divrem(f: &Field, a: &[Value], b: &[Value]) -> (Vec<Value>, Vec<Value>) {
    let db = degree(b).expect("division by the zero polynomial");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let lc_inv = f.inv(&b[db]).expect("nonzero leading coefficient");
    let mut rem = a.to_vec();
    let mut quot = vec![f.zero(); a.len() - db];
    for k in (0..quot.len()).rev() {
        let c = f.mul(&rem[k + db], &lc_inv);
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let t = f.mul(&c, bj);
            rem[k + j] = f.sub(&rem[k + j], &t);
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (trimmed(quot), trimmed(rem))
}

pub(crate) fn rem(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    if a.len() < b.len() {
        return a.to_vec();
    }
    if let Some(p) = prime_of(f) {
        return from_residues(rem_mod_p(residues(a), &residues(b), p));
    }
    divrem(f, a, b).1
}

fn rem_mod_p(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let lc_inv = inv_mod_p(b[db], p);
    for k in (0..=(a.len() - 1 - db)).rev() {
        let top = a[k + db];
        if top == 0 {
            continue;
        }
        let c = (top as u128 * lc_inv as u128 % p as u128) as u64;
        for (j, &bj) in b.iter().enumerate() {
            if bj == 0 {
                continue;
            }
            let t = (c as u128 * bj as u128 % p as u128) as u64;
            a[k + j] = (a[k + j] + p - t) % p;
        }
    }
    a.truncate(db);
    a
}

pub(crate) fn inv_mod_p(x: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, x as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "{x} not invertible mod {p}");
    s0.rem_euclid(p as i128) as u64
}

pub(crate) fn divides(f: &Field, d: &[Value], a: &[Value]) -> bool {
    rem(f, a, d).is_empty()
}

pub(crate) fn exact_div(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    let (q, r) = divrem(f, a, b);
    debug_assert!(r.is_empty(), "inexact polynomial division");
    q
}

pub(crate) fn monic(f: &Field, a: &[Value]) -> Vec<Value> {
    match a.last() {
        None => Vec::new(),
        Some(lc) if *lc == f.one() => a.to_vec(),
        Some(lc) => {
            let inv = f.inv(lc).expect("nonzero leading coefficient");
            scale(f, a, &inv)
        }
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub(crate) fn gcd(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    if coprime_by_specialization(f, a, b) {
        return vec![f.one()];
    }
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        // monic remainders keep coefficients small over Q and K(u)
        let r = monic(f, &rem(f, &x, &y));
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Over `K(u)`, a certificate that `a` and `b` are coprime: a value `u0`
/// where no coefficient has a pole and both leading coefficients survive,
/// such that the specialized polynomials are coprime over `K`. A common
/// factor would specialize to one of the same degree (Gauss's lemma).
fn coprime_by_specialization(f: &Field, a: &[Value], b: &[Value]) -> bool {
    let FieldKind::FunctionField { base, .. } = f.kind() else {
        return false;
    };
    if a.len() < 2 || b.len() < 2 {
        return false;
    }
    let tries = base.size_u64().map_or(32, |q| q.min(32));
    (0..tries).any(|i| {
        let u0 = if base.is_finite() {
            base.element_at(i)
        } else {
            base.from_u64(i)
        };
        let at = |poly: &[Value]| -> Option<Vec<Value>> {
            let v = poly
                .iter()
                .map(|c| match c {
                    Value::Frac(n, d) => {
                        let den = eval(base, d, &u0);
                        (!den.is_zero()).then(|| base.div(&eval(base, n, &u0), &den).unwrap())
                    }
                    _ => None,
                })
                .collect::<Option<Vec<_>>>()?;
            (!v.last().unwrap().is_zero()).then_some(v)
        };
        match (at(a), at(b)) {
            (Some(x), Some(y)) => gcd(base, &x, &y).len() == 1,
            _ => false,
        }
    })
}

/// Returns `(g, s, t)` with `s*a + t*b = g` and `g` monic.
pub(crate) fn ext_gcd(f: &Field, a: &[Value], b: &[Value]) -> (Vec<Value>, Vec<Value>, Vec<Value>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    let mut s0 = vec![f.one()];
    let mut s1 = Vec::new();
    let mut t0 = Vec::new();
    let mut t1 = vec![f.one()];
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        let t2 = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last() {
        None => (r0, s0, t0),
        Some(lc) => {
            let inv = f.inv(lc).expect("nonzero");
            (
                scale(f, &r0, &inv),
                scale(f, &s0, &inv),
                scale(f, &t0, &inv),
            )
        }
    }
}

pub(crate) fn derivative(f: &Field, a: &[Value]) -> Vec<Value> {
    trimmed(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(&f.from_u64(i as u64), c))
            .collect(),
    )
}

/// The k-th Hasse derivative: coefficient `binom(i, k) * a_i` at `z^(i-k)`.
/// Unlike the ordinary k-th derivative it stays informative in positive
/// characteristic.
pub(crate) fn hasse_derivative(f: &Field, a: &[Value], k: usize) -> Vec<Value> {
    if a.len() <= k {
        return Vec::new();
    }
    let p = f.characteristic();
    trimmed(
        (k..a.len())
            .map(|i| {
                let b = binomial_mod(i as u64, k as u64, p);
                f.mul(&f.from_biguint(&b), &a[i])
            })
            .collect(),
    )
}

/// `binom(n, k)`, reduced mod `p` when `p > 0` (Lucas).
fn binomial_mod(n: u64, k: u64, p: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    if p == 0 {
        let mut r = BigUint::one();
        for i in 0..k {
            r = r * BigUint::from(n - i) / BigUint::from(i + 1);
        }
        return r;
    }
    let (mut n, mut k) = (n, k);
    let mut r: u128 = 1;
    while n > 0 || k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return BigUint::zero();
        }
        let mut c: u128 = 1;
        for i in 0..ki {
            c = c * ((ni - i) as u128) % p as u128;
            c = c * inv_mod_p((i + 1) % p, p) as u128 % p as u128;
        }
        r = r * c % p as u128;
        n /= p;
        k /= p;
    }
    BigUint::from(r as u64)
}

pub(crate) fn eval(f: &Field, a: &[Value], x: &Value) -> Value {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

/// Evaluates `a` (coefficients in `base`) at `x` in the extension `top`.
pub(crate) fn eval_embedded(top: &Field, base: &Field, a: &[Value], x: &Value) -> Value {
    let mut acc = top.zero();
    for c in a.iter().rev() {
        let c = top
            .embed(base, c)
            .expect("coefficient field below evaluation field");
        acc = top.add(&top.mul(&acc, x), &c);
    }
    acc
}

pub(crate) fn mulmod(f: &Field, a: &[Value], b: &[Value], m: &[Value]) -> Vec<Value> {
    rem(f, &mul(f, a, b), m)
}

pub(crate) fn powmod(f: &Field, a: &[Value], e: &BigUint, m: &[Value]) -> Vec<Value> {
    let mut result = rem(f, &[f.one()], m);
    let base = rem(f, a, m);
    for i in (0..e.bits()).rev() {
        result = mulmod(f, &result, &result, m);
        if e.bit(i) {
            result = mulmod(f, &result, &base, m);
        }
    }
    result
}

pub(crate) fn pow(f: &Field, a: &[Value], mut e: u64) -> Vec<Value> {
    let mut result = vec![f.one()];
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = mul(f, &result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(f, &base, &base);
        }
    }
    result
}

/// `a(b(z))`.
pub(crate) fn compose(f: &Field, a: &[Value], b: &[Value]) -> Vec<Value> {
    let mut acc = Vec::new();
    for c in a.iter().rev() {
        acc = add(f, &mul(f, &acc, b), std::slice::from_ref(c));
    }
    acc
}

/// `z^deg * a(1/z)` padded to the given degree.
pub(crate) fn reverse(a: &[Value], deg: usize, f: &Field) -> Vec<Value> {
    let mut out = vec![f.zero(); deg + 1];
    for (i, c) in a.iter().enumerate() {
        out[deg - i] = c.clone();
    }
    trimmed(out)
}
