//! Dense univariate polynomials over any field of the tower.

pub(crate) mod dense;
pub(crate) mod factor;
pub(crate) mod rational_roots;
pub(crate) mod resultant;
mod squarefree;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Value};

pub use factor::{factor_finite, is_irreducible_poly, roots_in_field};
pub use rational_roots::rational_roots_of;
pub use resultant::resultant;
pub use squarefree::{squarefree_decomposition, SquarefreeDecomposition};

/// Variable name used when rendering polynomials.
pub const VAR: &str = "z";

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `z^i`.
/// The zero polynomial has no coefficients and degree `None` (−∞).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Value>,
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, dropping trailing zeros.
    pub fn new(field: &Field, coeffs: Vec<Value>) -> Self {
        Polynomial {
            field: field.clone(),
            coeffs: dense::trimmed(coeffs),
        }
    }

    pub fn from_elements(field: &Field, coeffs: &[FieldElement]) -> Result<Self> {
        let mut out = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            field.ensure_same(c.field())?;
            out.push(c.value().clone());
        }
        Ok(Polynomial::new(field, out))
    }

    pub fn zero(field: &Field) -> Self {
        Polynomial::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Self {
        Polynomial::new(field, vec![field.one()])
    }

    pub fn constant(field: &Field, c: Value) -> Self {
        Polynomial::new(field, vec![c])
    }

    /// The polynomial `z`.
    pub fn identity(field: &Field) -> Self {
        Polynomial::new(field, vec![field.zero(), field.one()])
    }

    /// `z - a`.
    pub fn linear_root(field: &Field, a: &Value) -> Self {
        Polynomial::new(field, vec![field.neg(a), field.one()])
    }

    /// Parses an expression in `z`, such as `z^3 - 2`.
    pub fn parse(field: &Field, expr: &str) -> Result<Self> {
        let c = crate::field::parse_poly_expr(field, VAR, expr)?;
        Ok(Polynomial::new(field, c))
    }

    /// Parses the serialized form: ascending element strings.
    pub fn from_strings<S: AsRef<str>>(field: &Field, items: &[S]) -> Result<Self> {
        let c = items
            .iter()
            .map(|s| field.parse_value(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::new(field, c))
    }

    /// Serialized form: ascending element strings, `[]` for zero.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| self.field.format(c)).collect()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Value] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Value> {
        self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        dense::degree(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> Value {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<&Value> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| self.field.is_one(c))
    }

    pub fn monic(&self) -> Self {
        Polynomial::new(&self.field, dense::monic(&self.field, &self.coeffs))
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(&self.field, dense::derivative(&self.field, &self.coeffs))
    }

    pub fn eval(&self, x: &Value) -> Value {
        dense::eval(&self.field, &self.coeffs, x)
    }

    pub fn eval_element(&self, x: &FieldElement) -> Result<FieldElement> {
        self.field.ensure_same(x.field())?;
        Ok(self.field.element(self.eval(x.value())))
    }

    pub fn scale(&self, c: &Value) -> Self {
        Polynomial::new(&self.field, dense::scale(&self.field, &self.coeffs, c))
    }

    pub fn pow(&self, e: u64) -> Self {
        Polynomial::new(&self.field, dense::pow(&self.field, &self.coeffs, e))
    }

    /// `self(inner(z))`.
    pub fn compose(&self, inner: &Polynomial) -> Result<Self> {
        self.field.ensure_same(&inner.field)?;
        Ok(Polynomial::new(
            &self.field,
            dense::compose(&self.field, &self.coeffs, &inner.coeffs),
        ))
    }

    pub fn div_rem(&self, other: &Polynomial) -> Result<(Self, Self)> {
        self.field.ensure_same(&other.field)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = dense::divrem(&self.field, &self.coeffs, &other.coeffs);
        Ok((
            Polynomial::new(&self.field, q),
            Polynomial::new(&self.field, r),
        ))
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        !self.is_zero() && dense::divides(&self.field, &self.coeffs, &other.coeffs)
    }

    /// Re-embeds the coefficients into an extension `top` of the field.
    pub fn lift(&self, top: &Field) -> Result<Self> {
        let c = self
            .coeffs
            .iter()
            .map(|c| top.embed(&self.field, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::new(top, c))
    }

    /// Polynomial expression in `z`.
    pub fn render(&self) -> String {
        crate::field::render_poly_expr(&self.field, &self.coeffs, VAR)
    }

    fn assert_same(&self, other: &Polynomial) {
        assert!(
            self.field == other.field,
            "polynomials over different fields: {} vs {}",
            self.field,
            other.field
        );
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.render(), self.field)
    }
}

// The operator impls panic on mismatched fields, like slice indexing; the
// fallible entry points (`poly_gcd`, `resultant`, ...) return errors instead.

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same(rhs);
        Polynomial::new(
            &self.field,
            dense::add(&self.field, &self.coeffs, &rhs.coeffs),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same(rhs);
        Polynomial::new(
            &self.field,
            dense::sub(&self.field, &self.coeffs, &rhs.coeffs),
        )
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same(rhs);
        Polynomial::new(
            &self.field,
            dense::mul(&self.field, &self.coeffs, &rhs.coeffs),
        )
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::new(&self.field, dense::neg(&self.field, &self.coeffs))
    }
}

/// Monic greatest common divisor; `gcd(f, 0) = monic(f)`.
pub fn poly_gcd(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.field.ensure_same(&g.field)?;
    Ok(Polynomial::new(
        &f.field,
        dense::gcd(&f.field, &f.coeffs, &g.coeffs),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rational()
    }

    #[test]
    fn gcd_examples() {
        let f = Polynomial::parse(&q(), "z^2-1").unwrap();
        let g = Polynomial::parse(&q(), "z-1").unwrap();
        assert_eq!(poly_gcd(&f, &g).unwrap(), g);
        let h = Polynomial::parse(&q(), "3z^2+6").unwrap();
        assert_eq!(poly_gcd(&h, &Polynomial::zero(&q())).unwrap(), h.monic());

        let f2 = Field::parse("F2").unwrap();
        let a = Polynomial::parse(&f2, "z^2+1").unwrap();
        let b = Polynomial::parse(&f2, "z+1").unwrap();
        assert_eq!(poly_gcd(&a, &b).unwrap(), b);
    }

    #[test]
    fn gcd_field_mismatch() {
        let a = Polynomial::identity(&q());
        let b = Polynomial::identity(&Field::prime(5).unwrap());
        assert!(matches!(poly_gcd(&a, &b), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        // degree >= 64 over a non-prime field exercises the Karatsuba path
        let f4 = Field::parse("F2[w]/(w^2+w+1)").unwrap();
        let a: Vec<Value> = (0..150).map(|i| f4.element_at(i % 4)).collect();
        let b: Vec<Value> = (0..97).map(|i| f4.element_at((i * 3 + 1) % 4)).collect();
        let fast = dense::mul(&f4, &a, &b);
        let mut slow = vec![f4.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                slow[i + j] = f4.add(&slow[i + j], &f4.mul(x, y));
            }
        }
        assert_eq!(fast, dense::trimmed(slow));
    }

    #[test]
    fn hasse_derivative_in_char_two() {
        // D^2 z^2 = 1 even though the ordinary second derivative vanishes
        let f2 = Field::prime(2).unwrap();
        let z2 = Polynomial::parse(&f2, "z^2").unwrap();
        assert_eq!(dense::hasse_derivative(&f2, z2.coeffs(), 2), vec![f2.one()]);
        assert!(z2.derivative().is_zero());
    }

    #[test]
    fn parse_and_render() {
        let f = Polynomial::parse(&q(), "(z-1)^2*(z+1)").unwrap();
        assert_eq!(f.render(), "z^3-z^2-z+1");
        assert_eq!(f.to_strings(), vec!["1", "-1", "-1", "1"]);
        let back = Polynomial::from_strings(&q(), &f.to_strings()).unwrap();
        assert_eq!(back, f);
    }
}
