//! The cubic family `x³ = y² − ty` and its degree-3 projection to the
//! `y`-line, fiber by fiber in `t`.
//!
//! The projective closure is `x³ = y²z − tyz²`. The projection is the
//! quotient by `x ↦ ζx`, so it ramifies exactly where `x = 0`: over
//! `y = 0`, `y = t` and `y = ∞`. These collide at `t = 0`, where the curve
//! acquires a cusp at `[0,0,1]`.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Value};
use crate::poly::rational_roots::rational_roots;
use crate::poly::{factor_finite, Polynomial};
use crate::projline::ProjPoint;
use crate::ramification::ClosedPoint;

fn check(t: &FieldElement) -> Result<&Field> {
    let field = t.field();
    if field.characteristic() == 3 {
        return Err(Error::CharacteristicThree);
    }
    Ok(field)
}

/// Branch divisor of the `y`-projection: the zeros of `y(y − t)` with
/// multiplicity, then `∞`.
pub fn branch_divisor(t: &FieldElement) -> Result<Vec<(ProjPoint, usize)>> {
    let field = check(t)?;
    // y² − ty
    let fixed = Polynomial::new(field, vec![field.zero(), field.neg(t.value()), field.one()]);
    let mut out = Vec::new();
    for root in [field.zero(), t.value().clone()] {
        if out
            .iter()
            .any(|(p, _): &(ProjPoint, usize)| p.affine_value() == Some(&root))
        {
            continue;
        }
        let mut mult = 0;
        let mut rest = fixed.clone();
        let linear = Polynomial::linear_root(field, &root);
        while let Ok((q, r)) = rest.div_rem(&linear) {
            if !r.is_zero() {
                break;
            }
            mult += 1;
            rest = q;
        }
        out.push((ProjPoint::from_value(field, root), mult));
    }
    out.push((ProjPoint::infinity(field), 1));
    Ok(out)
}

/// A point of the curve over `y = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPoint {
    /// The `x`-coordinate as a closed point; `∞` stands for `[0,1,0]`.
    pub x: ClosedPoint,
    pub residue_degree: usize,
    pub e: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberAnalysis {
    pub c: ProjPoint,
    /// `x³ − (c² − tc)` for finite `c`.
    pub fiber_polynomial: Option<Polynomial>,
    pub points: Vec<FiberPoint>,
}

impl FiberAnalysis {
    /// `Σ e · residue degree`; always 3.
    pub fn total_degree(&self) -> usize {
        self.points.iter().map(|p| p.e * p.residue_degree).sum()
    }

    pub fn is_ramified(&self) -> bool {
        self.points.iter().any(|p| p.e > 1)
    }
}

/// The fiber of the `y`-projection over `c`, split into closed points.
///
/// Splitting an unramified fiber needs a finite field or `Q`.
pub fn fiber_analysis(t: &FieldElement, c: &ProjPoint) -> Result<FiberAnalysis> {
    let field = check(t)?;
    field.ensure_same(c.field())?;
    let Some(cv) = c.affine_value() else {
        return Ok(FiberAnalysis {
            c: c.clone(),
            fiber_polynomial: None,
            points: vec![FiberPoint {
                x: ClosedPoint::Infinity,
                residue_degree: 1,
                e: 3,
            }],
        });
    };
    let k = field.mul(cv, &field.sub(cv, t.value()));
    let poly = Polynomial::new(
        field,
        vec![field.neg(&k), field.zero(), field.zero(), field.one()],
    );
    let points = if k.is_zero() {
        vec![FiberPoint {
            x: ClosedPoint::Finite(Polynomial::identity(field)),
            residue_degree: 1,
            e: 3,
        }]
    } else {
        let factors = if field.is_finite() {
            factor_finite(&poly)?.into_iter().map(|(m, _)| m).collect()
        } else if field.is_rational() {
            split_over_q(&poly)?
        } else {
            return Err(Error::Unsupported(format!(
                "splitting fibers over {field} needs a finite field or Q"
            )));
        };
        factors
            .into_iter()
            .map(|m| FiberPoint {
                residue_degree: m.degree().unwrap_or(0),
                x: ClosedPoint::Finite(m),
                e: 1,
            })
            .collect()
    };
    Ok(FiberAnalysis {
        c: c.clone(),
        fiber_polynomial: Some(poly),
        points,
    })
}

// a squarefree cubic over Q is determined by its rational roots
fn split_over_q(poly: &Polynomial) -> Result<Vec<Polynomial>> {
    let field = poly.field();
    let mut rest = poly.clone();
    let mut out = Vec::new();
    for r in rational_roots(poly.coeffs()) {
        let lin = Polynomial::linear_root(field, &Value::Rational(r));
        rest = rest.div_rem(&lin)?.0;
        out.push(lin);
    }
    if rest.degree() > Some(0) {
        out.push(rest.monic());
    }
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.to_strings().cmp(&b.to_strings()))
    });
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularityKind {
    /// Tangent cone a double line.
    Cusp,
    /// Tangent cone two distinct lines.
    Node,
    /// Vanishing quadratic part.
    Higher,
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingularLocus {
    Smooth,
    Singular {
        /// Homogeneous coordinates `[x, y, z]`.
        point: [FieldElement; 3],
        kind: SingularityKind,
    },
}

impl SingularLocus {
    pub fn is_smooth(&self) -> bool {
        matches!(self, SingularLocus::Smooth)
    }
}

/// Jacobian criterion on `F = x³ − y²z + tyz²`.
///
/// `∂F/∂x = 3x²` forces `x = 0` away from characteristic 3, and `F = 0`
/// then leaves `[0,1,0]`, `[0,0,1]` and `[0,t,1]`, so those are the only
/// candidates.
pub fn singular_locus(t: &FieldElement) -> Result<SingularLocus> {
    let field = check(t)?;
    let tv = t.value();
    let gradient = |x: &Value, y: &Value, z: &Value| {
        let f = |a: &Value, b: &Value| field.mul(a, b);
        let two = field.from_i64(2);
        let three = field.from_i64(3);
        let fx = f(&three, &f(x, x));
        // −2yz + tz²
        let fy = field.add(&field.neg(&f(&two, &f(y, z))), &f(tv, &f(z, z)));
        // −y² + 2tyz
        let fz = field.add(&field.neg(&f(y, y)), &f(&two, &f(tv, &f(y, z))));
        [fx, fy, fz]
    };
    let (zero, one) = (field.zero(), field.one());
    let candidates = [
        [zero.clone(), one.clone(), zero.clone()],
        [zero.clone(), zero.clone(), one.clone()],
        [zero.clone(), tv.clone(), one.clone()],
    ];
    for [x, y, z] in candidates {
        if !gradient(&x, &y, &z).iter().all(Value::is_zero) {
            continue;
        }
        // z ≠ 0 at every singular candidate; in the chart z = 1,
        // f = x³ − y² + ty has quadratic part 3x₀X² − Y² at (x₀, y₀)
        let a = field.mul(&field.from_i64(3), &x);
        let b = field.zero();
        let c = field.neg(&one);
        let kind = if a.is_zero() && b.is_zero() && c.is_zero() {
            SingularityKind::Higher
        } else {
            let disc = field.sub(
                &field.mul(&b, &b),
                &field.mul(&field.from_i64(4), &field.mul(&a, &c)),
            );
            if disc.is_zero() {
                SingularityKind::Cusp
            } else {
                SingularityKind::Node
            }
        };
        let point = [x, y, z].map(|v| FieldElement::new(field.clone(), v));
        return Ok(SingularLocus::Singular { point, kind });
    }
    Ok(SingularLocus::Smooth)
}

/// `(Δ, c₄)` from the long Weierstrass quantities of
/// `y² + a₃y = x³` with `a₃ = −t`.
pub fn discriminant(t: &FieldElement) -> Result<(FieldElement, FieldElement)> {
    let field = check(t)?;
    let n = |k: i64| field.from_i64(k);
    let mul = |a: &Value, b: &Value| field.mul(a, b);
    let (a1, a2, a4, a6) = (n(0), n(0), n(0), n(0));
    let a3 = field.neg(t.value());
    let b2 = field.add(&mul(&a1, &a1), &mul(&n(4), &a2));
    let b4 = field.add(&mul(&n(2), &a4), &mul(&a1, &a3));
    let b6 = field.add(&mul(&a3, &a3), &mul(&n(4), &a6));
    let b8 = [
        mul(&mul(&a1, &a1), &a6),
        mul(&n(4), &mul(&a2, &a6)),
        field.neg(&mul(&a1, &mul(&a3, &a4))),
        mul(&a2, &mul(&a3, &a3)),
        field.neg(&mul(&a4, &a4)),
    ]
    .iter()
    .fold(field.zero(), |acc, x| field.add(&acc, x));
    let c4 = field.sub(&mul(&b2, &b2), &mul(&n(24), &b4));
    let delta = [
        field.neg(&mul(&mul(&b2, &b2), &b8)),
        mul(&n(-8), &mul(&b4, &mul(&b4, &b4))),
        mul(&n(-27), &mul(&b6, &b6)),
        mul(&n(9), &mul(&b2, &mul(&b4, &b6))),
    ]
    .iter()
    .fold(field.zero(), |acc, x| field.add(&acc, x));
    Ok((
        FieldElement::new(field.clone(), delta),
        FieldElement::new(field.clone(), c4),
    ))
}

/// `j = c₄³/Δ`; zero for every smooth member.
pub fn j_invariant(t: &FieldElement) -> Result<FieldElement> {
    let (delta, c4) = discriminant(t)?;
    if delta.is_zero() {
        return Err(Error::Cuspidal);
    }
    c4.pow(3).div(&delta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenusReport {
    pub smooth: bool,
    pub geometric_genus: usize,
    pub arithmetic_genus: usize,
    /// Delta invariant of the singular point; 0 when smooth.
    pub delta: usize,
}

/// Genus by Riemann–Hurwitz for the tame degree-3 projection:
/// `2g − 2 = 3·(−2) + Σ (e − 1)·deg`. At `t = 0` the normalization has
/// genus 0 and the cusp contributes `δ = 1`.
pub fn rh_genus(t: &FieldElement) -> Result<GenusReport> {
    let field = check(t)?;
    if t.is_zero() {
        return Ok(GenusReport {
            smooth: false,
            geometric_genus: 0,
            arithmetic_genus: 1,
            delta: 1,
        });
    }
    let mut ramification: i64 = 0;
    for (c, _) in branch_divisor(t)? {
        let fiber = fiber_analysis(t, &c)?;
        ramification += fiber
            .points
            .iter()
            .map(|p| (p.e as i64 - 1) * p.residue_degree as i64)
            .sum::<i64>();
    }
    let two_g_minus_two = 3 * -2 + ramification;
    if two_g_minus_two < -2 || two_g_minus_two % 2 != 0 {
        return Err(Error::InvariantViolated(format!(
            "Riemann-Hurwitz gives 2g - 2 = {two_g_minus_two} over {field}"
        )));
    }
    let g = ((two_g_minus_two + 2) / 2) as usize;
    Ok(GenusReport {
        smooth: true,
        geometric_genus: g,
        arithmetic_genus: g,
        delta: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(field: &Field, s: &str) -> FieldElement {
        FieldElement::parse(field, s).unwrap()
    }

    fn divisor_strings(t: &FieldElement) -> Vec<(String, usize)> {
        branch_divisor(t)
            .unwrap()
            .into_iter()
            .map(|(p, m)| (p.to_string(), m))
            .collect()
    }

    #[test]
    fn divisors() {
        let q = Field::rational();
        let f5 = Field::prime(5).unwrap();
        let s = |a: &str, m| (a.to_string(), m);
        assert_eq!(
            divisor_strings(&el(&q, "1")),
            [s("0", 1), s("1", 1), s("inf", 1)]
        );
        assert_eq!(divisor_strings(&el(&q, "0")), [s("0", 2), s("inf", 1)]);
        assert_eq!(
            divisor_strings(&el(&f5, "2")),
            [s("0", 1), s("2", 1), s("inf", 1)]
        );
        assert_eq!(
            branch_divisor(&el(&Field::prime(3).unwrap(), "1")).unwrap_err(),
            Error::CharacteristicThree
        );
    }

    #[test]
    fn fibers() {
        let q = Field::rational();
        let t = el(&q, "1");
        let f = fiber_analysis(&t, &ProjPoint::parse(&q, "3").unwrap()).unwrap();
        assert_eq!(f.fiber_polynomial.as_ref().unwrap().render(), "z^3-6");
        assert_eq!(f.points.len(), 1);
        assert_eq!((f.points[0].residue_degree, f.points[0].e), (3, 1));
        let f = fiber_analysis(&t, &ProjPoint::parse(&q, "1").unwrap()).unwrap();
        assert_eq!(
            f.points,
            vec![FiberPoint {
                x: ClosedPoint::Finite(Polynomial::identity(&q)),
                residue_degree: 1,
                e: 3
            }]
        );
        let f = fiber_analysis(&t, &ProjPoint::infinity(&q)).unwrap();
        assert_eq!(
            (f.points[0].x.clone(), f.points[0].e),
            (ClosedPoint::Infinity, 3)
        );
        // x³ = 8 has the rational root 2
        let f = fiber_analysis(&el(&q, "-2"), &ProjPoint::parse(&q, "2").unwrap()).unwrap();
        assert_eq!(
            f.points
                .iter()
                .map(|p| p.residue_degree)
                .collect::<Vec<_>>(),
            [1, 2]
        );
        assert_eq!(f.total_degree(), 3);
    }

    #[test]
    fn fibers_split_over_f7() {
        // x³ = 1 splits since F7 contains the cube roots of unity
        let f7 = Field::prime(7).unwrap();
        let t = el(&f7, "0");
        let f = fiber_analysis(&t, &ProjPoint::parse(&f7, "1").unwrap()).unwrap();
        assert_eq!(f.points.len(), 3);
        assert!(!f.is_ramified());
    }

    #[test]
    fn singularities() {
        let q = Field::rational();
        assert!(singular_locus(&el(&q, "1")).unwrap().is_smooth());
        match singular_locus(&el(&q, "0")).unwrap() {
            SingularLocus::Singular { point, kind } => {
                assert_eq!(
                    point.map(|x| x.to_string()),
                    ["0", "0", "1"].map(String::from)
                );
                assert_eq!(kind, SingularityKind::Cusp);
            }
            SingularLocus::Smooth => panic!("t = 0 is cuspidal"),
        }
        let f2 = Field::prime(2).unwrap();
        assert!(singular_locus(&el(&f2, "1")).unwrap().is_smooth());
        assert!(!singular_locus(&el(&f2, "0")).unwrap().is_smooth());
    }

    #[test]
    fn j_and_discriminant() {
        let q = Field::rational();
        assert!(j_invariant(&el(&q, "1")).unwrap().is_zero());
        assert_eq!(discriminant(&el(&q, "2")).unwrap().0.to_string(), "-432");
        let f7 = Field::prime(7).unwrap();
        assert!(j_invariant(&el(&f7, "5")).unwrap().is_zero());
        let f2 = Field::prime(2).unwrap();
        assert!(discriminant(&el(&f2, "1")).unwrap().0.is_one());
        assert_eq!(j_invariant(&el(&q, "0")).unwrap_err(), Error::Cuspidal);
    }

    #[test]
    fn genus() {
        let q = Field::rational();
        let g = rh_genus(&el(&q, "1")).unwrap();
        assert_eq!((g.smooth, g.geometric_genus), (true, 1));
        let g = rh_genus(&el(&Field::prime(5).unwrap(), "2")).unwrap();
        assert_eq!(g.geometric_genus, 1);
        let g = rh_genus(&el(&q, "0")).unwrap();
        assert_eq!((g.geometric_genus, g.arithmetic_genus, g.delta), (0, 1, 1));
    }
}
