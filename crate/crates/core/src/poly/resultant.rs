use super::{dense, Polynomial};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Value};

/// `res(f, g) = lc(g)^deg(f) · ∏ f(β)` over the roots `β` of `g`.
///
/// This is the Sylvester determinant with the rows of `g` on top, so
/// `res(z - a, z - b) = b - a`. It vanishes iff `f` and `g` share a root.
pub fn resultant(f: &Polynomial, g: &Polynomial) -> Result<FieldElement> {
    f.field().ensure_same(g.field())?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field();
    Ok(field.element(resultant_raw(field, g.coeffs(), f.coeffs())))
}

/// Classical `Res(a, b) = lc(a)^deg(b) · ∏ b(α)` over the roots `α` of `a`,
/// by the Euclidean recursion. Both inputs nonzero.
pub(crate) fn resultant_raw(field: &Field, a: &[Value], b: &[Value]) -> Value {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    let mut acc = field.one();
    loop {
        let n = a.len() - 1;
        let m = b.len() - 1;
        if n == 0 {
            return field.mul(&acc, &field.pow_u64(&a[0], m as u64));
        }
        if m == 0 {
            return field.mul(&acc, &field.pow_u64(&b[0], n as u64));
        }
        let r = dense::rem(field, &b, &a);
        if r.is_empty() {
            return field.zero();
        }
        let k = r.len() - 1;
        // Res(a, b) = lc(a)^(m-k) Res(a, r) = (-1)^(nk) lc(a)^(m-k) Res(r, a)
        acc = field.mul(&acc, &field.pow_u64(&a[n], (m - k) as u64));
        if n * k % 2 == 1 {
            acc = field.neg(&acc);
        }
        b = a;
        a = r;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    fn q() -> Field {
        Field::rational()
    }

    fn p(expr: &str) -> Polynomial {
        Polynomial::parse(&q(), expr).unwrap()
    }

    /// Sylvester determinant with `g`'s rows first, by exact Gaussian
    /// elimination over Q.
    fn sylvester(f: &Polynomial, g: &Polynomial) -> BigRational {
        let rat = |v: &Value| match v {
            Value::Rational(r) => r.clone(),
            _ => unreachable!(),
        };
        let n = f.degree().unwrap();
        let m = g.degree().unwrap();
        let size = n + m;
        let mut rows = Vec::new();
        for (poly, count, deg) in [(g, n, m), (f, m, n)] {
            for i in 0..count {
                let mut row = vec![BigRational::zero(); size];
                for j in 0..=deg {
                    // descending coefficients
                    row[i + j] = rat(&poly.coeff(deg - j));
                }
                rows.push(row);
            }
        }
        let mut det = BigRational::one();
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !rows[r][col].is_zero()) else {
                return BigRational::zero();
            };
            if piv != col {
                rows.swap(piv, col);
                det = -det;
            }
            det *= rows[col][col].clone();
            let (top, rest) = rows.split_at_mut(col + 1);
            let pivot = &top[col];
            for row in rest {
                let factor = &row[col] / &pivot[col];
                for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x -= &factor * p;
                }
            }
        }
        det
    }

    #[test]
    fn examples() {
        let r = resultant(&p("z-2"), &p("z-7")).unwrap();
        assert_eq!(r.to_string(), "5");
        assert!(resultant(&p("z^2-1"), &p("z-1")).unwrap().is_zero());
        assert_eq!(
            resultant(&p("z^3-2"), &p("3z^2")).unwrap().to_string(),
            "108"
        );
    }

    #[test]
    fn matches_sylvester_determinant() {
        let cases = [
            ("z^3-2", "3z^2"),
            ("2z^4-z+5", "z^2+3z-1"),
            ("z^2+1", "7"),
            ("5", "z^3+z"),
            ("z^5-3z^2+z-4", "2z^3+z^2-6"),
            ("z-1/2", "3z^2-z/3+2"),
        ];
        for (a, b) in cases {
            let (f, g) = (p(a), p(b));
            let got = resultant(&f, &g).unwrap();
            assert_eq!(
                got.value(),
                &Value::Rational(sylvester(&f, &g)),
                "res({a}, {b})"
            );
        }
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(
            resultant(&p("z"), &Polynomial::zero(&q())).unwrap_err(),
            Error::ZeroPolynomial
        );
    }
}
