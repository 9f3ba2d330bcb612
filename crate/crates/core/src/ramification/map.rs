use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Value};
use crate::poly::{dense, Polynomial};
use crate::projline::{Mobius, ProjPoint};

/// A nonconstant self-map `P/Q` of the projective line.
///
/// Canonical form: `gcd(P, Q) = 1`, and `Q` is monic when it has positive
/// degree, otherwise `Q = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMap {
    num: Polynomial,
    den: Polynomial,
    degree: usize,
}

impl RationalMap {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        num.field().ensure_same(den.field())?;
        let field = num.field().clone();
        if num.is_zero() && den.is_zero() {
            return Err(Error::parse("numerator and denominator are both zero"));
        }
        let g = dense::gcd(&field, num.coeffs(), den.coeffs());
        let (mut p, mut q) = if g.len() > 1 {
            (
                dense::exact_div(&field, num.coeffs(), &g),
                dense::exact_div(&field, den.coeffs(), &g),
            )
        } else {
            (num.into_coeffs(), den.into_coeffs())
        };
        if q.is_empty() {
            return Err(Error::ConstantMap);
        }
        let lc = field.inv(q.last().unwrap())?;
        if !field.is_one(&lc) {
            p = dense::scale(&field, &p, &lc);
            q = dense::scale(&field, &q, &lc);
        }
        let degree = p.len().max(q.len()) - 1;
        if degree == 0 {
            return Err(Error::ConstantMap);
        }
        Ok(RationalMap {
            num: Polynomial::new(&field, p),
            den: Polynomial::new(&field, q),
            degree,
        })
    }

    /// Parses numerator and denominator expressions in `z`.
    pub fn parse(field: &Field, num: &str, den: &str) -> Result<Self> {
        RationalMap::new(
            Polynomial::parse(field, num)?,
            Polynomial::parse(field, den)?,
        )
    }

    /// Builds a map from serialized coefficient lists.
    pub fn from_strings<S: AsRef<str>>(field: &Field, num: &[S], den: &[S]) -> Result<Self> {
        RationalMap::new(
            Polynomial::from_strings(field, num)?,
            Polynomial::from_strings(field, den)?,
        )
    }

    pub fn identity(field: &Field) -> Self {
        RationalMap::power(field, 1)
    }

    /// `z^n`, `n ≥ 1`.
    pub fn power(field: &Field, n: usize) -> Self {
        assert!(n >= 1);
        let mut c = vec![field.zero(); n + 1];
        c[n] = field.one();
        RationalMap {
            num: Polynomial::new(field, c),
            den: Polynomial::one(field),
            degree: n,
        }
    }

    pub fn from_mobius(phi: &Mobius) -> Self {
        let f = phi.field();
        let [a, b, c, d] = phi.values().clone();
        RationalMap::new(
            Polynomial::new(f, vec![b, a]),
            Polynomial::new(f, vec![d, c]),
        )
        .expect("invertible matrices give degree-one maps")
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Whether this is `z^n` for some `n`.
    pub fn as_power(&self) -> Option<usize> {
        let c = self.num.coeffs();
        let monomial = c[..c.len() - 1].iter().all(Value::is_zero) && self.num.is_monic();
        (monomial && self.den.degree() == Some(0)).then_some(self.degree)
    }

    /// Image of `x`, by homogeneous evaluation.
    pub fn eval(&self, x: &ProjPoint) -> Result<ProjPoint> {
        let field = self.field();
        field.ensure_same(x.field())?;
        let (u, v) = match x.affine_value() {
            Some(a) => (self.num.eval(a), self.den.eval(a)),
            None => (self.num.coeff(self.degree), self.den.coeff(self.degree)),
        };
        Ok(ProjPoint::from_raw_pair(field, &u, &v))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RationalMap) -> Result<RationalMap> {
        let field = self.field().clone();
        field.ensure_same(inner.field())?;
        if let Some(k) = inner.as_power() {
            // substitution z -> z^k just spreads the coefficients
            let spread = |p: &Polynomial| {
                let mut c = vec![field.zero(); (p.coeffs().len().max(1) - 1) * k + 1];
                for (i, x) in p.coeffs().iter().enumerate() {
                    c[i * k] = x.clone();
                }
                Polynomial::new(&field, c)
            };
            return RationalMap::new(spread(&self.num), spread(&self.den));
        }
        // P(X/Y) Y^d and Q(X/Y) Y^d at X = inner.num, Y = inner.den
        let d = self.degree;
        let x = inner.num.coeffs();
        let y = inner.den.coeffs();
        let mut xp = vec![vec![field.one()]];
        let mut yp = vec![vec![field.one()]];
        for i in 1..=d {
            xp.push(dense::mul(&field, &xp[i - 1], x));
            yp.push(dense::mul(&field, &yp[i - 1], y));
        }
        let mut num = Vec::new();
        let mut den = Vec::new();
        for i in 0..=d {
            let (pi, qi) = (self.num.coeff(i), self.den.coeff(i));
            if pi.is_zero() && qi.is_zero() {
                continue;
            }
            let t = dense::mul(&field, &xp[i], &yp[d - i]);
            if !pi.is_zero() {
                num = dense::add(&field, &num, &dense::scale(&field, &t, &pi));
            }
            if !qi.is_zero() {
                den = dense::add(&field, &den, &dense::scale(&field, &t, &qi));
            }
        }
        RationalMap::new(Polynomial::new(&field, num), Polynomial::new(&field, den))
    }

    /// The same map over an extension of its field.
    pub fn lift(&self, top: &Field) -> Result<RationalMap> {
        Ok(RationalMap {
            num: self.num.lift(top)?,
            den: self.den.lift(top)?,
            degree: self.degree,
        })
    }

    /// `P` or `(P)/(Q)`.
    pub fn render(&self) -> String {
        if self.den.degree() == Some(0) {
            self.num.render()
        } else {
            format!("({})/({})", self.num.render(), self.den.render())
        }
    }
}

impl fmt::Display for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.render(), self.field())
    }
}

pub fn map_make(num: Polynomial, den: Polynomial) -> Result<RationalMap> {
    RationalMap::new(num, den)
}

pub fn map_eval(f: &RationalMap, x: &ProjPoint) -> Result<ProjPoint> {
    f.eval(x)
}

/// `f ∘ g`.
pub fn map_compose(f: &RationalMap, g: &RationalMap) -> Result<RationalMap> {
    f.compose(g)
}

/// The affine Wronskian `W = P'Q − PQ'` and the order of the critical form
/// at `∞`, `2d − 2 − deg W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalForm {
    pub wronskian: Polynomial,
    pub infinity_order: usize,
}

impl CriticalForm {
    /// Total degree of the critical divisor; always `2d − 2`.
    pub fn total_degree(&self) -> usize {
        self.wronskian.degree().unwrap_or(0) + self.infinity_order
    }
}

pub fn critical_form(f: &RationalMap) -> Result<CriticalForm> {
    let p = &f.num;
    let q = &f.den;
    let w = &(&p.derivative() * q) - &(p * &q.derivative());
    let Some(deg) = w.degree() else {
        return Err(Error::Inseparable);
    };
    let top = 2 * f.degree - 2;
    debug_assert!(deg <= top);
    Ok(CriticalForm {
        wronskian: w,
        infinity_order: top - deg,
    })
}
