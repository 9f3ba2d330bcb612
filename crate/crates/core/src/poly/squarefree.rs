//! Squarefree decomposition, valid in every characteristic.
//!
//! In characteristic `p` the derivative loses factors whose multiplicity is
//! divisible by `p`. Those are collected separately, their `p`-th root is
//! decomposed recursively, and the decomposition records that a `p`-th power
//! part was present.

use super::{dense, Polynomial};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Value};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    /// Leading coefficient of the input.
    pub unit: FieldElement,
    /// Monic, squarefree, pairwise coprime factors with strictly increasing
    /// multiplicities.
    pub factors: Vec<(Polynomial, usize)>,
    /// Set when some factor occurs with multiplicity divisible by the
    /// characteristic, i.e. an inseparable `p`-th power part was split off.
    pub p_power: bool,
}

impl SquarefreeDecomposition {
    /// Multiplies the decomposition back together.
    pub fn reassemble(&self) -> Polynomial {
        let field = self.unit.field();
        let mut acc = Polynomial::constant(field, self.unit.value().clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m as u64);
        }
        acc
    }

    /// Product of the distinct factors.
    pub fn radical(&self) -> Polynomial {
        let field = self.unit.field();
        self.factors
            .iter()
            .fold(Polynomial::one(field), |acc, (f, _)| &acc * f)
    }
}

pub fn squarefree_decomposition(f: &Polynomial) -> Result<SquarefreeDecomposition> {
    let field = f.field();
    let lc = f.leading().ok_or(Error::ZeroPolynomial)?.clone();
    let monic = dense::monic(field, f.coeffs());
    let raw = squarefree_raw(field, &monic)?;
    let p = field.characteristic() as usize;
    let p_power = p > 0 && raw.iter().any(|(_, m)| m % p == 0);
    Ok(SquarefreeDecomposition {
        unit: field.element(lc),
        factors: raw
            .into_iter()
            .map(|(g, m)| (Polynomial::new(field, g), m))
            .collect(),
        p_power,
    })
}

/// Decomposition of a monic polynomial.
pub(crate) fn squarefree_raw(field: &Field, f: &[Value]) -> Result<Vec<(Vec<Value>, usize)>> {
    let mut out = Vec::new();
    if f.len() <= 1 {
        return Ok(out);
    }
    let p = field.characteristic() as usize;
    let df = dense::derivative(field, f);
    let mut rest = if df.is_empty() {
        f.to_vec()
    } else {
        let mut c = dense::gcd(field, f, &df);
        let mut w = dense::exact_div(field, f, &c);
        let mut i = 1;
        while w.len() > 1 {
            let y = dense::gcd(field, &w, &c);
            let z = dense::exact_div(field, &w, &y);
            if z.len() > 1 {
                out.push((z, i));
            }
            c = dense::exact_div(field, &c, &y);
            w = y;
            i += 1;
        }
        c
    };
    if rest.len() > 1 {
        // only reachable in characteristic p: `rest` lies in K[z^p]
        rest = pth_root_poly(field, &rest)?;
        for (g, m) in squarefree_raw(field, &rest)? {
            out.push((g, m * p));
        }
    }
    out.sort_by_key(|(_, m)| *m);
    Ok(out)
}

fn pth_root_poly(field: &Field, f: &[Value]) -> Result<Vec<Value>> {
    let p = field.characteristic() as usize;
    let mut out = Vec::with_capacity(f.len() / p + 1);
    for (i, c) in f.iter().enumerate() {
        if i % p != 0 {
            debug_assert!(c.is_zero());
            continue;
        }
        out.push(field.pth_root(c).ok_or_else(|| {
            Error::Unsupported(format!(
                "p-th root of {} does not exist in the imperfect field {field}",
                field.render(c)
            ))
        })?);
    }
    Ok(dense::trimmed(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_times_three() {
        let q = Field::rational();
        let f = Polynomial::parse(&q, "3z^2").unwrap();
        let d = squarefree_decomposition(&f).unwrap();
        assert_eq!(d.factors, vec![(Polynomial::parse(&q, "z").unwrap(), 2)]);
        assert_eq!(d.unit, FieldElement::from_i64(&q, 3));
        assert!(!d.p_power);
    }

    #[test]
    fn square_of_difference_of_squares() {
        let q = Field::rational();
        let f = Polynomial::parse(&q, "(z^2-1)^2").unwrap();
        let d = squarefree_decomposition(&f).unwrap();
        assert_eq!(
            d.factors,
            vec![(Polynomial::parse(&q, "z^2-1").unwrap(), 2)]
        );
        assert_eq!(d.reassemble(), f);
    }

    #[test]
    fn frobenius_square_in_char_two() {
        let f2 = Field::prime(2).unwrap();
        let f = Polynomial::parse(&f2, "z^2").unwrap();
        let d = squarefree_decomposition(&f).unwrap();
        assert!(d.p_power);
        assert_eq!(d.factors, vec![(Polynomial::identity(&f2), 2)]);
    }

    #[test]
    fn mixed_multiplicities_mod_three() {
        let f3 = Field::prime(3).unwrap();
        // (z+1)^1 (z+2)^3 z^4 : multiplicity 3 is divisible by p
        let f = Polynomial::parse(&f3, "(z+1)*(z+2)^3*z^4").unwrap();
        let d = squarefree_decomposition(&f).unwrap();
        let mults: Vec<usize> = d.factors.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![1, 3, 4]);
        assert!(d.p_power);
        assert_eq!(d.reassemble(), f);
    }

    #[test]
    fn zero_rejected() {
        let q = Field::rational();
        assert_eq!(
            squarefree_decomposition(&Polynomial::zero(&q)).unwrap_err(),
            Error::ZeroPolynomial
        );
    }

    #[test]
    fn inseparable_over_function_field_is_reported() {
        // z^2 - u over F2(u) is inseparable and u has no square root
        let f = Field::parse("F2(u)").unwrap();
        let g = Polynomial::parse(&f, "z^2+u").unwrap();
        assert!(matches!(
            squarefree_decomposition(&g),
            Err(Error::Unsupported(_))
        ));
    }
}
