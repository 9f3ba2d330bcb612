//! The projective line: points, Möbius transformations, three-point
//! normalization and `M_{0,n}` coordinates.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, Value};

/// Point of `P^1` over a field. Canonical homogeneous coordinates are
/// `[u, 1]` for affine points and `[1, 0]` for `∞`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    field: Field,
    affine: Option<Value>,
}

impl ProjPoint {
    pub fn affine(x: &FieldElement) -> Self {
        ProjPoint {
            field: x.field().clone(),
            affine: Some(x.value().clone()),
        }
    }

    pub fn from_value(field: &Field, v: Value) -> Self {
        ProjPoint {
            field: field.clone(),
            affine: Some(v),
        }
    }

    pub fn infinity(field: &Field) -> Self {
        ProjPoint {
            field: field.clone(),
            affine: None,
        }
    }

    /// `[u, v]`, not both zero.
    pub fn from_pair(u: &FieldElement, v: &FieldElement) -> Result<Self> {
        u.field().ensure_same(v.field())?;
        if u.is_zero() && v.is_zero() {
            return Err(Error::parse("[0, 0] is not a point of the projective line"));
        }
        Ok(Self::from_raw_pair(u.field(), u.value(), v.value()))
    }

    pub(crate) fn from_raw_pair(field: &Field, u: &Value, v: &Value) -> Self {
        if v.is_zero() {
            debug_assert!(!u.is_zero());
            ProjPoint::infinity(field)
        } else {
            ProjPoint::from_value(field, field.div(u, v).unwrap())
        }
    }

    /// `inf` or an element string.
    pub fn parse(field: &Field, s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" {
            Ok(ProjPoint::infinity(field))
        } else {
            Ok(ProjPoint::from_value(field, field.parse_value(s)?))
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_infinity(&self) -> bool {
        self.affine.is_none()
    }

    pub fn affine_value(&self) -> Option<&Value> {
        self.affine.as_ref()
    }

    pub fn value(&self) -> Option<FieldElement> {
        self.affine.as_ref().map(|v| self.field.element(v.clone()))
    }

    /// Canonical homogeneous coordinates.
    pub fn coords(&self) -> (Value, Value) {
        match &self.affine {
            Some(u) => (u.clone(), self.field.one()),
            None => (self.field.one(), self.field.zero()),
        }
    }

    pub fn is_value(&self, n: i64) -> bool {
        self.affine.as_ref() == Some(&self.field.from_i64(n))
    }

    /// The same point over an extension `top` of its field.
    pub fn lift(&self, top: &Field) -> Result<Self> {
        Ok(ProjPoint {
            field: top.clone(),
            affine: match &self.affine {
                Some(v) => Some(top.embed(&self.field, v)?),
                None => None,
            },
        })
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.affine {
            Some(v) => f.write_str(&self.field.format(v)),
            None => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.field)
    }
}

/// `w ↦ (a w + b) / (c w + d)`, scaled so that the first nonzero entry of
/// `(a, b, c, d)` is one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mobius {
    field: Field,
    m: [Value; 4],
}

impl Mobius {
    pub fn new(
        a: &FieldElement,
        b: &FieldElement,
        c: &FieldElement,
        d: &FieldElement,
    ) -> Result<Self> {
        let field = a.field();
        for x in [b, c, d] {
            field.ensure_same(x.field())?;
        }
        Mobius::from_values(
            field,
            [
                a.value().clone(),
                b.value().clone(),
                c.value().clone(),
                d.value().clone(),
            ],
        )
    }

    pub fn from_values(field: &Field, m: [Value; 4]) -> Result<Self> {
        let det = field.sub(&field.mul(&m[0], &m[3]), &field.mul(&m[1], &m[2]));
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let lead = m.iter().find(|x| !x.is_zero()).unwrap();
        let inv = field.inv(lead)?;
        let m = m.map(|x| field.mul(&x, &inv));
        Ok(Mobius {
            field: field.clone(),
            m,
        })
    }

    /// Parses four element strings `a b c d`.
    pub fn from_strings<S: AsRef<str>>(field: &Field, entries: &[S]) -> Result<Self> {
        if entries.len() != 4 {
            return Err(Error::parse(format!(
                "a Mobius transformation needs 4 entries, got {}",
                entries.len()
            )));
        }
        let v = entries
            .iter()
            .map(|s| field.parse_value(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let [a, b, c, d]: [Value; 4] = v.try_into().unwrap();
        Mobius::from_values(field, [a, b, c, d])
    }

    pub fn identity(field: &Field) -> Self {
        Mobius {
            field: field.clone(),
            m: [field.one(), field.zero(), field.zero(), field.one()],
        }
    }

    /// `w ↦ w + c`.
    pub fn translation(c: &FieldElement) -> Self {
        let f = c.field();
        Mobius::from_values(f, [f.one(), c.value().clone(), f.zero(), f.one()]).unwrap()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn values(&self) -> &[Value; 4] {
        &self.m
    }

    pub fn entries(&self) -> [FieldElement; 4] {
        self.m.clone().map(|v| self.field.element(v))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.m.iter().map(|v| self.field.format(v)).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Mobius::identity(&self.field)
    }

    pub fn apply(&self, p: &ProjPoint) -> Result<ProjPoint> {
        self.field.ensure_same(p.field())?;
        let f = &self.field;
        let (u, v) = p.coords();
        let [a, b, c, d] = &self.m;
        let nu = f.add(&f.mul(a, &u), &f.mul(b, &v));
        let nv = f.add(&f.mul(c, &u), &f.mul(d, &v));
        Ok(ProjPoint::from_raw_pair(f, &nu, &nv))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Mobius) -> Result<Mobius> {
        self.field.ensure_same(&other.field)?;
        let f = &self.field;
        let [a, b, c, d] = &self.m;
        let [e, g, h, k] = &other.m;
        let dot = |x: &Value, y: &Value, z: &Value, w: &Value| f.add(&f.mul(x, y), &f.mul(z, w));
        Mobius::from_values(
            f,
            [
                dot(a, e, b, h),
                dot(a, g, b, k),
                dot(c, e, d, h),
                dot(c, g, d, k),
            ],
        )
    }

    pub fn inverse(&self) -> Mobius {
        let f = &self.field;
        let [a, b, c, d] = &self.m;
        Mobius::from_values(f, [d.clone(), f.neg(b), f.neg(c), a.clone()]).unwrap()
    }

    pub fn lift(&self, top: &Field) -> Result<Mobius> {
        let m = self
            .m
            .iter()
            .map(|v| top.embed(&self.field, v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mobius {
            field: top.clone(),
            m: m.try_into().unwrap(),
        })
    }
}

impl fmt::Debug for Mobius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.to_strings().try_into().unwrap();
        write!(f, "[[{a}, {b}], [{c}, {d}]] over {}", self.field)
    }
}

pub fn mobius_apply(phi: &Mobius, p: &ProjPoint) -> Result<ProjPoint> {
    phi.apply(p)
}

/// The unique `φ` with `φ(a) = 0`, `φ(b) = 1`, `φ(c) = ∞`.
///
/// In homogeneous coordinates `φ(x) = [(x∧a)(b∧c) : (x∧c)(b∧a)]` where
/// `x∧y = x₀y₁ − x₁y₀`.
pub fn mobius_from_three(a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> Result<Mobius> {
    let field = a.field();
    field.ensure_same(b.field())?;
    field.ensure_same(c.field())?;
    if a == b || b == c || a == c {
        return Err(Error::CoincidentPoints(format!("{a}, {b}, {c}")));
    }
    let f = field;
    let (a0, a1) = a.coords();
    let (b0, b1) = b.coords();
    let (c0, c1) = c.coords();
    let wedge =
        |x0: &Value, x1: &Value, y0: &Value, y1: &Value| f.sub(&f.mul(x0, y1), &f.mul(x1, y0));
    let bc = wedge(&b0, &b1, &c0, &c1);
    let ba = wedge(&b0, &b1, &a0, &a1);
    Mobius::from_values(
        f,
        [
            f.mul(&bc, &a1),
            f.neg(&f.mul(&bc, &a0)),
            f.mul(&ba, &c1),
            f.neg(&f.mul(&ba, &c0)),
        ],
    )
}

/// An ordered list of at least three pairwise distinct points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedCurve {
    points: Vec<ProjPoint>,
}

impl PointedCurve {
    pub fn new(points: Vec<ProjPoint>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::TooFewPoints(points.len()));
        }
        let field = points[0].field().clone();
        for (i, p) in points.iter().enumerate() {
            field.ensure_same(p.field())?;
            if points[..i].contains(p) {
                return Err(Error::CoincidentPoints(format!("{p} occurs twice")));
            }
        }
        Ok(PointedCurve { points })
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn field(&self) -> &Field {
        self.points[0].field()
    }

    /// `φ · C`.
    pub fn transform(&self, phi: &Mobius) -> Result<Self> {
        let pts = self
            .points
            .iter()
            .map(|p| phi.apply(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(PointedCurve { points: pts })
    }

    pub fn moduli_coordinates(&self) -> Result<Vec<FieldElement>> {
        moduli_coordinates(&self.points)
    }
}

/// Coordinates `t₄, …, tₙ` of an `n`-pointed line in `M_{0,n}`: the affine
/// values of the remaining points after moving the first three to `0, 1, ∞`.
///
/// Fails with [`Error::BoundaryPoint`] when a point collides with another,
/// i.e. the configuration lies on the boundary divisor.
pub fn moduli_coordinates(points: &[ProjPoint]) -> Result<Vec<FieldElement>> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints(points.len()));
    }
    let field = points[0].field();
    for p in points {
        field.ensure_same(p.field())?;
    }
    let phi = mobius_from_three(&points[0], &points[1], &points[2])?;
    let mut out: Vec<FieldElement> = Vec::with_capacity(points.len() - 3);
    for (i, p) in points.iter().enumerate().skip(3) {
        let image = phi.apply(p)?;
        let t = match image.value() {
            Some(t) if !t.is_zero() && !t.is_one() => t,
            _ => {
                return Err(Error::BoundaryPoint(format!(
                    "point {} = {p} is sent to {image}",
                    i + 1
                )))
            }
        };
        if out.contains(&t) {
            return Err(Error::BoundaryPoint(format!(
                "point {} = {p} coincides with an earlier point",
                i + 1
            )));
        }
        out.push(t);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rational()
    }

    fn pt(s: &str) -> ProjPoint {
        ProjPoint::parse(&q(), s).unwrap()
    }

    fn pts(list: &[&str]) -> Vec<ProjPoint> {
        list.iter().map(|s| pt(s)).collect()
    }

    #[test]
    fn apply_examples() {
        let id = Mobius::identity(&q());
        assert_eq!(id.apply(&pt("7/2")).unwrap(), pt("7/2"));
        let recip = Mobius::from_strings(&q(), &["0", "1", "1", "0"]).unwrap();
        assert_eq!(recip.apply(&pt("inf")).unwrap(), pt("0"));
        let phi = Mobius::from_strings(&q(), &["4", "-8", "3", "-3"]).unwrap();
        assert_eq!(phi.apply(&pt("3")).unwrap(), pt("2/3"));
    }

    #[test]
    fn canonical_scaling() {
        let phi = Mobius::from_strings(&q(), &["4", "-8", "3", "-3"]).unwrap();
        assert_eq!(phi.to_strings(), vec!["1", "-2", "3/4", "-3/4"]);
        let psi = Mobius::from_strings(&q(), &["0", "2", "2", "0"]).unwrap();
        assert_eq!(psi.to_strings(), vec!["0", "1", "1", "0"]);
        assert_eq!(
            Mobius::from_strings(&q(), &["1", "2", "2", "4"]).unwrap_err(),
            Error::SingularMatrix
        );
    }

    #[test]
    fn from_three_examples() {
        let phi = mobius_from_three(&pt("0"), &pt("1"), &pt("inf")).unwrap();
        assert!(phi.is_identity());

        let phi = mobius_from_three(&pt("2"), &pt("5"), &pt("1")).unwrap();
        assert_eq!(phi.apply(&pt("3")).unwrap(), pt("2/3"));

        let phi = mobius_from_three(&pt("inf"), &pt("1"), &pt("0")).unwrap();
        assert_eq!(
            phi,
            Mobius::from_strings(&q(), &["0", "1", "1", "0"]).unwrap()
        );

        assert!(matches!(
            mobius_from_three(&pt("1"), &pt("1"), &pt("0")),
            Err(Error::CoincidentPoints(_))
        ));
    }

    #[test]
    fn coordinates_examples() {
        let c = moduli_coordinates(&pts(&["0", "1", "inf", "7/5"])).unwrap();
        assert_eq!(c[0].to_string(), "7/5");
        let c = moduli_coordinates(&pts(&["2", "5", "1", "3"])).unwrap();
        assert_eq!(c[0].to_string(), "2/3");
        assert!(moduli_coordinates(&pts(&["0", "1", "inf"]))
            .unwrap()
            .is_empty());
        assert!(matches!(
            moduli_coordinates(&pts(&["0", "1", "inf", "1"])),
            Err(Error::BoundaryPoint(_))
        ));
        assert!(matches!(
            moduli_coordinates(&pts(&["0", "1", "inf", "3", "3"])),
            Err(Error::BoundaryPoint(_))
        ));
        assert!(matches!(
            PointedCurve::new(pts(&["0", "1", "inf", "1"])),
            Err(Error::CoincidentPoints(_))
        ));
        assert_eq!(
            PointedCurve::new(pts(&["0", "1"])),
            Err(Error::TooFewPoints(2))
        );
    }

    #[test]
    fn bijective_on_small_lines() {
        for desc in ["F7", "F2[w]/(w^2+w+1)", "F7[w]/(w^2+1)"] {
            let f = Field::parse(desc).unwrap();
            let q = f.size_u64().unwrap();
            let mut all: Vec<ProjPoint> = (0..q)
                .map(|i| ProjPoint::from_value(&f, f.element_at(i)))
                .collect();
            all.push(ProjPoint::infinity(&f));
            let g = f.generator().unwrap_or_else(|| f.from_i64(3));
            let phi = Mobius::from_values(&f, [g.clone(), f.one(), f.one(), f.zero()]).unwrap();
            let mut img: Vec<String> = all
                .iter()
                .map(|p| phi.apply(p).unwrap().to_string())
                .collect();
            let mut src: Vec<String> = all.iter().map(|p| p.to_string()).collect();
            img.sort();
            src.sort();
            assert_eq!(img, src, "{desc}");
        }
    }
}
