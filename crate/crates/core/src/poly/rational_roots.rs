//! Rational roots of polynomials over `Q`.
//!
//! A rational root `r` of an integer polynomial with leading coefficient `a`
//! has `a·r ∈ Z` and `|a·r| ≤ |a| + max|c_i|` (Cauchy). The roots modulo a
//! large prime are lifted by Newton iteration until the modulus exceeds twice
//! that bound, and each symmetric lift is tested exactly. No integer
//! factoring is needed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{dense, factor, Polynomial};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Value};

/// Distinct rational roots of `f` (ascending). `f` must be over `Q`.
pub(crate) fn rational_roots(f: &[Value]) -> Vec<BigRational> {
    let q = Field::rational();
    let f = dense::trimmed(f.to_vec());
    if f.len() <= 1 {
        return Vec::new();
    }
    let f = dense::monic(&q, &f);
    let g = dense::gcd(&q, &f, &dense::derivative(&q, &f));
    let sqf = dense::exact_div(&q, &f, &g);
    let mut roots = Vec::new();
    let mut ints = integer_coeffs(&sqf);
    if ints[0].is_zero() {
        roots.push(BigRational::zero());
        ints.remove(0);
    }
    if ints.len() > 1 {
        roots.extend(nonzero_roots(&ints));
    }
    roots.sort();
    roots
}

/// Rational roots of a polynomial over `Q`, as field elements.
pub fn rational_roots_of(f: &Polynomial) -> Result<Vec<FieldElement>> {
    let field = f.field();
    if !field.is_rational() {
        return Err(Error::Unsupported(format!(
            "rational root extraction needs Q, got {field}"
        )));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(rational_roots(f.coeffs())
        .into_iter()
        .map(|r| field.element(Value::Rational(r)))
        .collect())
}

fn integer_coeffs(f: &[Value]) -> Vec<BigInt> {
    let rats: Vec<&BigRational> = f
        .iter()
        .map(|v| match v {
            Value::Rational(r) => r,
            _ => unreachable!("coefficient outside Q"),
        })
        .collect();
    let l = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| r.numer() * (&l / r.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

/// Roots of a squarefree integer polynomial with nonzero constant term.
fn nonzero_roots(c: &[BigInt]) -> Vec<BigRational> {
    let lead = c.last().unwrap().clone();
    let bound: BigInt = lead.abs() + c.iter().map(|x| x.abs()).max().unwrap();
    let disc_ok = |p: u64| -> bool {
        let pb = BigInt::from(p);
        if (&lead % &pb).is_zero() {
            return false;
        }
        let fp = Field::prime(p).unwrap();
        let red: Vec<Value> = c.iter().map(|x| fp.from_bigint(x)).collect();
        let g = dense::gcd(&fp, &red, &dense::derivative(&fp, &red));
        g.len() == 1
    };
    let mut p: u64 = (1 << 61) - 1;
    while !(is_prime_u64(p) && disc_ok(p)) {
        p -= 2;
    }
    let fp = Field::prime(p).unwrap();
    let red = Polynomial::new(&fp, c.iter().map(|x| fp.from_bigint(x)).collect());
    let modular_roots = factor::roots_in_field(&red).expect("prime field");
    let pb = BigInt::from(p);
    let target = &bound * 2 + 1;
    let df: Vec<BigInt> = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, x)| x * BigInt::from(i))
        .collect();
    let mut out = Vec::new();
    for r in modular_roots {
        let Value::Residue(r0) = r else {
            unreachable!()
        };
        let mut x = BigInt::from(r0);
        let mut m = pb.clone();
        while m < target {
            // Newton step modulo m^2; f'(x) is a unit since f is squarefree mod p
            m = &m * &m;
            let fx = eval_int(c, &x).mod_floor(&m);
            let dfx = eval_int(&df, &x).mod_floor(&m);
            let inv = mod_inverse(&dfx, &m);
            x = (&x - fx * inv).mod_floor(&m);
        }
        let mut k = (&lead * &x).mod_floor(&m);
        if &k * 2 > m {
            k -= &m;
        }
        let cand = BigRational::new(k, lead.clone());
        if eval_rat(c, &cand).is_zero() {
            out.push(cand);
        }
    }
    out
}

fn is_prime_u64(p: u64) -> bool {
    Field::prime(p).is_ok()
}

fn eval_int(c: &[BigInt], x: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, a| acc * x + a)
}

fn eval_rat(c: &[BigInt], x: &BigRational) -> BigRational {
    c.iter().rev().fold(BigRational::zero(), |acc, a| {
        acc * x + BigRational::from_integer(a.clone())
    })
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots(expr: &str) -> Vec<String> {
        let q = Field::rational();
        let f = Polynomial::parse(&q, expr).unwrap();
        rational_roots_of(&f)
            .unwrap()
            .iter()
            .map(|r| r.to_string())
            .collect()
    }

    #[test]
    fn simple_roots() {
        assert_eq!(roots("z^2-1"), vec!["-1", "1"]);
        assert_eq!(roots("(2z-3)*(3z+1)*(z^2+1)"), vec!["-1/3", "3/2"]);
        assert!(roots("z^3-2").is_empty());
        assert_eq!(roots("z^3*(z-5)^2"), vec!["0", "5"]);
    }

    #[test]
    fn large_coefficients() {
        // roots far beyond one modular prime
        let e = "(z-123456789012345678901234567)*(1000000007z+99999999977)*(z^2+3)";
        assert_eq!(
            roots(e),
            vec!["-99999999977/1000000007", "123456789012345678901234567"]
        );
    }

    #[test]
    fn oracle_against_divisor_search() {
        // brute force p/q with small p, q
        let q = Field::rational();
        let f = Polynomial::parse(&q, "6z^4-5z^3-12z^2+5z+6").unwrap();
        let mut want = Vec::new();
        for a in -12i64..=12 {
            for b in 1i64..=6 {
                let r = BigRational::new(a.into(), b.into());
                if f.eval(&Value::Rational(r.clone())).is_zero() && !want.contains(&r) {
                    want.push(r);
                }
            }
        }
        want.sort();
        assert_eq!(rational_roots(f.coeffs()), want);
    }
}
