//! Exact ground fields: the rationals, prime fields, simple extensions
//! `K[u]/(m(u))` and rational function fields `K(u)`, stacked into finite
//! towers.
//!
//! A [`Field`] is a cheap, shareable handle to a descriptor. Arithmetic is
//! done through the handle on raw [`Value`] payloads; [`FieldElement`] pairs
//! a payload with its field for the public API.

mod element;
mod parse;
mod prime;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::{dense, factor, rational_roots, Polynomial};

pub use element::{arith, invert, ArithOp, FieldElement};
pub(crate) use parse::is_identifier;
pub(crate) use prime::prime_divisors;

/// Largest supported prime characteristic; keeps residue products in `u128`.
pub const MAX_PRIME: u64 = 1 << 62;

/// Canonical payload of a field element.
///
/// Two elements of the same field are equal iff their payloads are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    /// Reduced fraction with positive denominator.
    Rational(BigRational),
    /// Residue in `[0, p)`.
    Residue(u64),
    /// Ascending coefficients over the base, trimmed, shorter than the modulus.
    Ext(Vec<Value>),
    /// Numerator and monic denominator over the base, coprime.
    Frac(Vec<Value>, Vec<Value>),
}

impl Value {
    pub fn is_zero(&self) -> bool {
        match self {
            Value::Rational(r) => r.is_zero(),
            Value::Residue(x) => *x == 0,
            Value::Ext(c) => c.is_empty(),
            Value::Frac(n, _) => n.is_empty(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rational,
    Prime(u64),
    /// `base[var]/(modulus)`, modulus monic, ascending, irreducible.
    Extension {
        base: Field,
        var: String,
        modulus: Vec<Value>,
    },
    /// `base(var)`.
    FunctionField {
        base: Field,
        var: String,
    },
}

struct Inner {
    kind: FieldKind,
    characteristic: u64,
    size: Option<BigUint>,
    depth: usize,
    text: String,
}

/// Handle to an exact field. Clones share the descriptor.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.text.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.0.text)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.text)
    }
}

impl Field {
    fn from_kind(kind: FieldKind) -> Field {
        let (characteristic, size, depth) = match &kind {
            FieldKind::Rational => (0, None, 0),
            FieldKind::Prime(p) => (*p, Some(BigUint::from(*p)), 0),
            FieldKind::Extension { base, modulus, .. } => (
                base.characteristic(),
                base.size().map(|s| s.pow((modulus.len() - 1) as u32)),
                base.depth() + 1,
            ),
            FieldKind::FunctionField { base, .. } => {
                (base.characteristic(), None, base.depth() + 1)
            }
        };
        let text = match &kind {
            FieldKind::Rational => "Q".to_string(),
            FieldKind::Prime(p) => format!("F{p}"),
            FieldKind::Extension { base, var, modulus } => {
                format!("{base}[{var}]/({})", parse::render_poly(base, modulus, var))
            }
            FieldKind::FunctionField { base, var } => format!("{base}({var})"),
        };
        Field(Arc::new(Inner {
            kind,
            characteristic,
            size,
            depth,
            text,
        }))
    }

    pub fn rational() -> Field {
        Field::from_kind(FieldKind::Rational)
    }

    pub fn prime(p: u64) -> Result<Field> {
        if p >= MAX_PRIME {
            return Err(Error::Unsupported(format!(
                "prime {p} exceeds the supported bound 2^62"
            )));
        }
        if !prime::is_prime(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(Field::from_kind(FieldKind::Prime(p)))
    }

    /// `base[var]/(modulus)` after validating the modulus.
    ///
    /// Over a finite base the modulus must be irreducible (Rabin's test).
    /// Over the rationals only moduli of degree at most three are accepted,
    /// where having no rational root already forces irreducibility. Other
    /// bases are rejected.
    pub fn extension(base: &Field, var: &str, modulus: Vec<Value>) -> Result<Field> {
        base.check_new_var(var)?;
        let modulus = dense::trimmed(modulus);
        let render = || parse::render_poly(base, &modulus, var);
        if modulus.len() < 3 {
            return Err(Error::InvalidModulus(format!(
                "{} has degree < 2",
                render()
            )));
        }
        if modulus.last() != Some(&base.one()) {
            return Err(Error::InvalidModulus(format!("{} is not monic", render())));
        }
        if base.is_finite() {
            if !factor::is_irreducible(base, &modulus) {
                return Err(Error::Reducible(render()));
            }
        } else if base.is_rational() {
            if modulus.len() > 4 {
                return Err(Error::Unsupported(format!(
                    "irreducibility of {} over Q: only degree <= 3 is decidable here",
                    render()
                )));
            }
            let g = dense::gcd(base, &modulus, &dense::derivative(base, &modulus));
            if g.len() > 1 || !rational_roots::rational_roots(&modulus).is_empty() {
                return Err(Error::Reducible(render()));
            }
        } else {
            return Err(Error::Unsupported(format!(
                "cannot certify irreducibility over `{base}`"
            )));
        }
        Ok(Field::from_kind(FieldKind::Extension {
            base: base.clone(),
            var: var.to_string(),
            modulus,
        }))
    }

    /// Extension by a modulus the caller already knows to be irreducible.
    pub(crate) fn extension_unchecked(base: &Field, var: &str, modulus: Vec<Value>) -> Field {
        debug_assert!(modulus.len() >= 3);
        Field::from_kind(FieldKind::Extension {
            base: base.clone(),
            var: var.to_string(),
            modulus,
        })
    }

    pub fn function_field(base: &Field, var: &str) -> Result<Field> {
        base.check_new_var(var)?;
        Ok(Field::from_kind(FieldKind::FunctionField {
            base: base.clone(),
            var: var.to_string(),
        }))
    }

    /// Parses a field description such as `Q`, `F7`, `F2[w]/(w^2+w+1)` or
    /// `F5(u)`.
    pub fn parse(src: &str) -> Result<Field> {
        parse::parse_field(src)
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0.kind
    }

    /// Canonical textual descriptor (parses back to an equal field).
    pub fn descriptor(&self) -> &str {
        &self.0.text
    }

    pub fn characteristic(&self) -> u64 {
        self.0.characteristic
    }

    /// Number of elements, `None` when infinite.
    pub fn size(&self) -> Option<&BigUint> {
        self.0.size.as_ref()
    }

    /// Number of elements as `u64`, if finite and representable.
    pub fn size_u64(&self) -> Option<u64> {
        self.size().and_then(|s| s.to_u64())
    }

    pub fn is_finite(&self) -> bool {
        self.0.size.is_some()
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.0.kind, FieldKind::Rational)
    }

    pub fn depth(&self) -> usize {
        self.0.depth
    }

    pub fn base(&self) -> Option<&Field> {
        match &self.0.kind {
            FieldKind::Extension { base, .. } | FieldKind::FunctionField { base, .. } => Some(base),
            _ => None,
        }
    }

    /// Degree of the top extension step (1 for prime fields and `Q`).
    pub fn extension_degree(&self) -> usize {
        match &self.0.kind {
            FieldKind::Extension { modulus, .. } => modulus.len() - 1,
            _ => 1,
        }
    }

    /// Names of all adjoined variables, bottom to top.
    pub fn variables(&self) -> Vec<String> {
        let mut out = self.base().map(Field::variables).unwrap_or_default();
        match &self.0.kind {
            FieldKind::Extension { var, .. } | FieldKind::FunctionField { var, .. } => {
                out.push(var.clone())
            }
            _ => {}
        }
        out
    }

    fn check_new_var(&self, var: &str) -> Result<()> {
        // `z` is the polynomial variable and `inf` the point at infinity
        if !is_identifier(var) || var == "inf" || var == crate::poly::VAR {
            return Err(Error::parse(format!("invalid variable name `{var}`")));
        }
        if self.variables().iter().any(|v| v == var) {
            return Err(Error::parse(format!(
                "variable `{var}` already used in `{self}`"
            )));
        }
        Ok(())
    }

    /// A variable name not yet used in the tower.
    pub(crate) fn fresh_var(&self, prefix: &str) -> String {
        let used = self.variables();
        (1..)
            .map(|i| format!("{prefix}{i}"))
            .find(|v| !used.contains(v))
            .unwrap()
    }

    /// The adjoined generator of the top level, if any.
    pub fn generator(&self) -> Option<Value> {
        match &self.0.kind {
            FieldKind::Extension { base, .. } => Some(Value::Ext(vec![base.zero(), base.one()])),
            FieldKind::FunctionField { base, .. } => {
                Some(Value::Frac(vec![base.zero(), base.one()], vec![base.one()]))
            }
            _ => None,
        }
    }

    pub fn zero(&self) -> Value {
        match &self.0.kind {
            FieldKind::Rational => Value::Rational(BigRational::zero()),
            FieldKind::Prime(_) => Value::Residue(0),
            FieldKind::Extension { .. } => Value::Ext(Vec::new()),
            FieldKind::FunctionField { base, .. } => Value::Frac(Vec::new(), vec![base.one()]),
        }
    }

    pub fn one(&self) -> Value {
        match &self.0.kind {
            FieldKind::Rational => Value::Rational(BigRational::one()),
            FieldKind::Prime(_) => Value::Residue(1),
            FieldKind::Extension { base, .. } => Value::Ext(vec![base.one()]),
            FieldKind::FunctionField { base, .. } => {
                Value::Frac(vec![base.one()], vec![base.one()])
            }
        }
    }

    pub fn is_one(&self, v: &Value) -> bool {
        *v == self.one()
    }

    pub fn from_i64(&self, n: i64) -> Value {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_u64(&self, n: u64) -> Value {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_biguint(&self, n: &BigUint) -> Value {
        self.from_bigint(&BigInt::from_biguint(Sign::Plus, n.clone()))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Value {
        match &self.0.kind {
            FieldKind::Rational => Value::Rational(BigRational::from_integer(n.clone())),
            FieldKind::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Value::Residue(r.to_u64().unwrap())
            }
            FieldKind::Extension { base, .. } => {
                Value::Ext(dense::trimmed(vec![base.from_bigint(n)]))
            }
            FieldKind::FunctionField { base, .. } => {
                Value::Frac(dense::trimmed(vec![base.from_bigint(n)]), vec![base.one()])
            }
        }
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<Value> {
        let n = self.from_bigint(r.numer());
        let d = self.from_bigint(r.denom());
        self.div(&n, &d)
    }

    pub fn add(&self, a: &Value, b: &Value) -> Value {
        match (&self.0.kind, a, b) {
            (FieldKind::Rational, Value::Rational(x), Value::Rational(y)) => Value::Rational(x + y),
            (FieldKind::Prime(p), Value::Residue(x), Value::Residue(y)) => {
                let s = x + y;
                Value::Residue(if s >= *p { s - p } else { s })
            }
            (FieldKind::Extension { base, .. }, Value::Ext(x), Value::Ext(y)) => {
                Value::Ext(dense::add(base, x, y))
            }
            (FieldKind::FunctionField { base, .. }, Value::Frac(n1, d1), Value::Frac(n2, d2)) => {
                if d1 == d2 {
                    self.make_frac(base, dense::add(base, n1, n2), d1.clone())
                } else {
                    let n = dense::add(base, &dense::mul(base, n1, d2), &dense::mul(base, n2, d1));
                    self.make_frac(base, n, dense::mul(base, d1, d2))
                }
            }
            _ => panic!("value does not belong to field {}", self),
        }
    }

    pub fn neg(&self, a: &Value) -> Value {
        match (&self.0.kind, a) {
            (FieldKind::Rational, Value::Rational(x)) => Value::Rational(-x),
            (FieldKind::Prime(p), Value::Residue(x)) => {
                Value::Residue(if *x == 0 { 0 } else { p - x })
            }
            (FieldKind::Extension { base, .. }, Value::Ext(x)) => Value::Ext(dense::neg(base, x)),
            (FieldKind::FunctionField { base, .. }, Value::Frac(n, d)) => {
                Value::Frac(dense::neg(base, n), d.clone())
            }
            _ => panic!("value does not belong to field {}", self),
        }
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Value {
        match (&self.0.kind, a, b) {
            (FieldKind::Prime(p), Value::Residue(x), Value::Residue(y)) => {
                Value::Residue(if x >= y { x - y } else { x + p - y })
            }
            (FieldKind::Extension { base, .. }, Value::Ext(x), Value::Ext(y)) => {
                Value::Ext(dense::sub(base, x, y))
            }
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Value {
        match (&self.0.kind, a, b) {
            (FieldKind::Rational, Value::Rational(x), Value::Rational(y)) => Value::Rational(x * y),
            (FieldKind::Prime(p), Value::Residue(x), Value::Residue(y)) => {
                Value::Residue((*x as u128 * *y as u128 % *p as u128) as u64)
            }
            (FieldKind::Extension { base, modulus, .. }, Value::Ext(x), Value::Ext(y)) => {
                if x.is_empty() || y.is_empty() {
                    return Value::Ext(Vec::new());
                }
                if x.len() == 1 {
                    return Value::Ext(dense::scale(base, y, &x[0]));
                }
                if y.len() == 1 {
                    return Value::Ext(dense::scale(base, x, &y[0]));
                }
                Value::Ext(reduce_monic(base, dense::mul(base, x, y), modulus))
            }
            (FieldKind::FunctionField { base, .. }, Value::Frac(n1, d1), Value::Frac(n2, d2)) => {
                if n1.is_empty() || n2.is_empty() {
                    return self.zero();
                }
                self.make_frac(base, dense::mul(base, n1, n2), dense::mul(base, d1, d2))
            }
            _ => panic!("value does not belong to field {}", self),
        }
    }

    pub fn inv(&self, a: &Value) -> Result<Value> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match (&self.0.kind, a) {
            (FieldKind::Rational, Value::Rational(x)) => Value::Rational(x.recip()),
            (FieldKind::Prime(p), Value::Residue(x)) => Value::Residue(dense::inv_mod_p(*x, *p)),
            (FieldKind::Extension { base, modulus, .. }, Value::Ext(x)) => {
                if x.len() == 1 {
                    return Ok(Value::Ext(vec![base.inv(&x[0])?]));
                }
                let (g, s, _) = dense::ext_gcd(base, x, modulus);
                debug_assert_eq!(g, vec![base.one()]);
                Value::Ext(dense::rem(base, &s, modulus))
            }
            (FieldKind::FunctionField { base, .. }, Value::Frac(n, d)) => {
                self.make_frac(base, d.clone(), n.clone())
            }
            _ => panic!("value does not belong to field {}", self),
        })
    }

    pub fn div(&self, a: &Value, b: &Value) -> Result<Value> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Value, e: &BigUint) -> Value {
        let mut result = self.one();
        for i in (0..e.bits()).rev() {
            result = self.mul(&result, &result);
            if e.bit(i) {
                result = self.mul(&result, a);
            }
        }
        result
    }

    pub fn pow_u64(&self, a: &Value, e: u64) -> Value {
        self.pow(a, &BigUint::from(e))
    }

    fn make_frac(&self, base: &Field, num: Vec<Value>, den: Vec<Value>) -> Value {
        assert!(!den.is_empty(), "zero denominator in {}", self);
        if num.is_empty() {
            return self.zero();
        }
        let g = dense::gcd(base, &num, &den);
        let (num, den) = if g.len() > 1 {
            (
                dense::exact_div(base, &num, &g),
                dense::exact_div(base, &den, &g),
            )
        } else {
            (num, den)
        };
        let lc = den.last().unwrap();
        if base.is_one(lc) {
            return Value::Frac(num, den);
        }
        let inv = base.inv(lc).unwrap();
        Value::Frac(
            dense::scale(base, &num, &inv),
            dense::scale(base, &den, &inv),
        )
    }

    /// Brings `v` into canonical form (idempotent).
    pub fn canonical(&self, v: &Value) -> Result<Value> {
        Ok(match (&self.0.kind, v) {
            (FieldKind::Rational, Value::Rational(_)) => v.clone(),
            (FieldKind::Prime(p), Value::Residue(x)) => Value::Residue(x % p),
            (FieldKind::Extension { base, modulus, .. }, Value::Ext(c)) => {
                let c = c
                    .iter()
                    .map(|x| base.canonical(x))
                    .collect::<Result<Vec<_>>>()?;
                Value::Ext(reduce_monic(base, dense::trimmed(c), modulus))
            }
            (FieldKind::FunctionField { base, .. }, Value::Frac(n, d)) => {
                let n = n
                    .iter()
                    .map(|x| base.canonical(x))
                    .collect::<Result<Vec<_>>>()?;
                let d = d
                    .iter()
                    .map(|x| base.canonical(x))
                    .collect::<Result<Vec<_>>>()?;
                let d = dense::trimmed(d);
                if d.is_empty() {
                    return Err(Error::DivisionByZero);
                }
                self.make_frac(base, dense::trimmed(n), d)
            }
            _ => {
                return Err(Error::parse(format!(
                    "payload {v:?} does not belong to field {self}"
                )))
            }
        })
    }

    /// Image of `v ∈ from` in `self`, where `from` is a level of this tower.
    pub fn embed(&self, from: &Field, v: &Value) -> Result<Value> {
        if self == from {
            return Ok(v.clone());
        }
        match &self.0.kind {
            FieldKind::Extension { base, .. } => {
                let x = base.embed(from, v)?;
                Ok(Value::Ext(dense::trimmed(vec![x])))
            }
            FieldKind::FunctionField { base, .. } => {
                let x = base.embed(from, v)?;
                Ok(Value::Frac(dense::trimmed(vec![x]), vec![base.one()]))
            }
            _ => Err(Error::FieldMismatch {
                left: from.to_string(),
                right: self.to_string(),
            }),
        }
    }

    /// Inverse of [`Field::embed`]: the value in `to` if `v` lies in that
    /// subfield of the tower.
    pub fn restrict(&self, to: &Field, v: &Value) -> Option<Value> {
        if self == to {
            return Some(v.clone());
        }
        let base = self.base()?;
        let x = match v {
            Value::Ext(c) if c.len() <= 1 => c.first().cloned().unwrap_or_else(|| base.zero()),
            Value::Frac(n, d) if n.len() <= 1 && d.len() == 1 => {
                n.first().cloned().unwrap_or_else(|| base.zero())
            }
            _ => return None,
        };
        base.restrict(to, &x)
    }

    /// Whether `sub` is a level of this tower (including `self`).
    pub fn contains_field(&self, sub: &Field) -> bool {
        self == sub || self.base().is_some_and(|b| b.contains_field(sub))
    }

    /// The `p`-th root of `v` in characteristic `p`, when it exists.
    pub fn pth_root(&self, v: &Value) -> Option<Value> {
        let p = self.characteristic();
        if p == 0 {
            return None;
        }
        match (&self.0.kind, v) {
            (FieldKind::Prime(_), _) => Some(v.clone()),
            (FieldKind::Extension { .. }, _) => {
                let q = self.size()?;
                Some(self.pow(v, &(q / BigUint::from(p))))
            }
            (FieldKind::FunctionField { base, .. }, Value::Frac(n, d)) => {
                let root = |c: &[Value]| -> Option<Vec<Value>> {
                    let mut out = Vec::new();
                    for (i, x) in c.iter().enumerate() {
                        if !(i as u64).is_multiple_of(p) {
                            if !x.is_zero() {
                                return None;
                            }
                            continue;
                        }
                        out.push(base.pth_root(x)?);
                    }
                    Some(dense::trimmed(out))
                };
                Some(self.make_frac(base, root(n)?, root(d)?))
            }
            _ => None,
        }
    }

    /// The `index`-th element of a finite field in the canonical enumeration
    /// order (little-endian digits over the prime field).
    pub fn element_at(&self, index: u64) -> Value {
        match &self.0.kind {
            FieldKind::Prime(p) => Value::Residue(index % p),
            FieldKind::Extension { base, modulus, .. } => {
                let b = base.size_u64().expect("finite base of small size");
                let mut idx = index;
                let mut c = Vec::with_capacity(modulus.len() - 1);
                for _ in 0..modulus.len() - 1 {
                    c.push(base.element_at(idx % b));
                    idx /= b;
                }
                Value::Ext(dense::trimmed(c))
            }
            _ => panic!("element_at on infinite field {}", self),
        }
    }

    /// Inverse of [`Field::element_at`].
    pub fn index_of(&self, v: &Value) -> u64 {
        match (&self.0.kind, v) {
            (FieldKind::Prime(_), Value::Residue(x)) => *x,
            (FieldKind::Extension { base, .. }, Value::Ext(c)) => {
                let b = base.size_u64().expect("finite base of small size");
                c.iter()
                    .rev()
                    .fold(0u64, |acc, x| acc * b + base.index_of(x))
            }
            _ => panic!("index_of on infinite field {}", self),
        }
    }

    /// Deterministic enumeration used for candidate streams; infinite fields
    /// enumerate a fixed sequence of "small" elements.
    pub fn nth_element(&self, index: u64) -> Value {
        match &self.0.kind {
            FieldKind::Rational => Value::Rational(nth_rational(index)),
            FieldKind::FunctionField { base, .. } => {
                if base.is_finite() {
                    // Polynomials in the variable, digits over the base.
                    let b = base.size_u64().unwrap_or(u64::MAX);
                    let mut idx = index;
                    let mut c = Vec::new();
                    while idx > 0 {
                        c.push(base.element_at(idx % b));
                        idx /= b;
                    }
                    Value::Frac(dense::trimmed(c), vec![base.one()])
                } else {
                    let x = base.nth_element(index);
                    Value::Frac(dense::trimmed(vec![x]), vec![base.one()])
                }
            }
            FieldKind::Extension { base, .. } if !self.is_finite() => {
                let x = base.nth_element(index);
                Value::Ext(dense::trimmed(vec![x]))
            }
            _ => match self.size_u64() {
                Some(q) if index >= q => panic!("index {index} out of range for {self}"),
                _ => self.element_at(index),
            },
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Value {
        match &self.0.kind {
            FieldKind::Rational => {
                let n: i64 = rng.gen_range(-30..=30);
                let d: i64 = rng.gen_range(1..=12);
                Value::Rational(BigRational::new(n.into(), d.into()))
            }
            FieldKind::Prime(p) => Value::Residue(rng.gen_range(0..*p)),
            FieldKind::Extension { base, modulus, .. } => Value::Ext(dense::trimmed(
                (0..modulus.len() - 1).map(|_| base.random(rng)).collect(),
            )),
            FieldKind::FunctionField { base, .. } => {
                let dn = rng.gen_range(0..=2);
                let dd = rng.gen_range(0..=2);
                let num: Vec<Value> = (0..=dn).map(|_| base.random(rng)).collect();
                let mut den: Vec<Value> = (0..dd).map(|_| base.random(rng)).collect();
                den.push(base.one());
                self.make_frac(base, dense::trimmed(num), den)
            }
        }
    }

    /// Canonical element string (see the crate docs for the formats).
    pub fn format(&self, v: &Value) -> String {
        parse::format_value(self, v)
    }

    /// Parses either a canonical element string or an arithmetic expression
    /// in the tower variables, e.g. `w+1` or `2/3`.
    pub fn parse_value(&self, s: &str) -> Result<Value> {
        parse::parse_value(self, s)
    }

    /// Expression form of `v` in the tower variables.
    pub fn render(&self, v: &Value) -> String {
        parse::render_value(self, v)
    }

    pub fn element(&self, v: Value) -> FieldElement {
        FieldElement::new(self.clone(), v)
    }

    pub(crate) fn ensure_same(&self, other: &Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    pub(crate) fn require_finite(&self) -> Result<&BigUint> {
        self.size()
            .ok_or_else(|| Error::NotFinite(self.to_string()))
    }
}

fn reduce_monic(base: &Field, a: Vec<Value>, modulus: &[Value]) -> Vec<Value> {
    if a.len() < modulus.len() {
        return a;
    }
    dense::rem(base, &a, modulus)
}

/// 0, 1, -1, 2, -2, 1/2, -1/2, 3, ... : integers interleaved with fractions,
/// ordered by height.
fn nth_rational(index: u64) -> BigRational {
    if index == 0 {
        return BigRational::zero();
    }
    let mut remaining = index - 1;
    let mut height: u64 = 1;
    loop {
        // all reduced a/b with max(|a|, b) == height, both signs
        let mut batch = Vec::new();
        for b in 1..=height {
            for a in 1..=height {
                if a.max(b) == height && a.gcd(&b) == 1 {
                    batch.push(BigRational::new(a.into(), b.into()));
                }
            }
        }
        batch.sort_by(|x, y| {
            let kx = (x.denom().clone(), x.numer().clone());
            let ky = (y.denom().clone(), y.numer().clone());
            kx.cmp(&ky)
        });
        let n = 2 * batch.len() as u64;
        if remaining < n {
            let r = &batch[(remaining / 2) as usize];
            return if remaining.is_multiple_of(2) {
                r.clone()
            } else {
                -r.clone()
            };
        }
        remaining -= n;
        height += 1;
    }
}

/// Monic generator of a finite extension, as `FieldElement`, plus the
/// extension field: the root of `m` adjoined to its coefficient field.
///
/// `m` must be monic of degree at least two and irreducible (certified over
/// finite fields and, for degree at most three, over `Q`).
pub fn adjoin_root(m: &Polynomial) -> Result<(Field, FieldElement)> {
    let base = m.field();
    let var = base.fresh_var("a");
    adjoin_root_named(m, &var)
}

pub fn adjoin_root_named(m: &Polynomial, var: &str) -> Result<(Field, FieldElement)> {
    let base = m.field();
    match m.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(d) if d < 2 => {
            return Err(Error::InvalidModulus(format!(
                "{} has degree {d}; use its root directly",
                m
            )))
        }
        _ => {}
    }
    let ext = Field::extension(base, var, m.coeffs().to_vec())?;
    let root = ext.generator().unwrap();
    Ok((ext.clone(), FieldElement::new(ext, root)))
}

pub(crate) fn parse_poly_expr(field: &Field, var: &str, expr: &str) -> Result<Vec<Value>> {
    parse::parse_poly(field, var, expr)
}

pub(crate) fn render_poly_expr(field: &Field, coeffs: &[Value], var: &str) -> String {
    parse::render_poly(field, coeffs, var)
}
