use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Value};
use crate::poly::rational_roots::rational_roots;
use crate::poly::resultant::resultant_raw;
use crate::poly::{dense, factor_finite, squarefree_decomposition, Polynomial};
use crate::projline::ProjPoint;

use super::map::{critical_form, CriticalForm, RationalMap};

/// A closed point of `P^1`: `∞`, or the roots of a monic polynomial
/// (irreducible over finite fields, squarefree in characteristic zero).
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ClosedPoint {
    Infinity,
    Finite(Polynomial),
}

impl ClosedPoint {
    /// The closed point of a rational point.
    pub fn rational(p: &ProjPoint) -> Self {
        match p.affine_value() {
            Some(a) => ClosedPoint::Finite(Polynomial::linear_root(p.field(), a)),
            None => ClosedPoint::Infinity,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ClosedPoint::Infinity)
    }

    /// Number of geometric points (degree of the defining polynomial).
    pub fn degree(&self) -> usize {
        match self {
            ClosedPoint::Infinity => 1,
            ClosedPoint::Finite(m) => m.degree().unwrap(),
        }
    }

    /// Whether the rational point `p` is one of the geometric points.
    pub fn contains(&self, p: &ProjPoint) -> bool {
        match (self, p.affine_value()) {
            (ClosedPoint::Infinity, None) => true,
            (ClosedPoint::Finite(m), Some(a)) => m.field() == p.field() && m.eval(a).is_zero(),
            _ => false,
        }
    }

    /// The rational point, when the degree is one.
    pub fn as_rational(&self, field: &Field) -> Option<ProjPoint> {
        match self {
            ClosedPoint::Infinity => Some(ProjPoint::infinity(field)),
            ClosedPoint::Finite(m) if m.degree() == Some(1) => {
                Some(ProjPoint::from_value(field, field.neg(&m.coeff(0))))
            }
            _ => None,
        }
    }

    /// `inf` or ascending coefficient strings.
    pub fn to_strings(&self) -> Option<Vec<String>> {
        match self {
            ClosedPoint::Infinity => None,
            ClosedPoint::Finite(m) => Some(m.to_strings()),
        }
    }

    /// Sort key: `∞` last, then lexicographic on the coefficient strings.
    pub fn sort_key(&self) -> (bool, Vec<String>) {
        (self.is_infinity(), self.to_strings().unwrap_or_default())
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedPoint::Infinity => f.write_str("inf"),
            ClosedPoint::Finite(m) => match m.degree() {
                Some(1) => {
                    let field = m.field();
                    f.write_str(&field.render(&field.neg(&m.coeff(0))))
                }
                _ => write!(f, "{{{m} = 0}}"),
            },
        }
    }
}

impl fmt::Debug for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationEntry {
    pub point: ClosedPoint,
    /// Number of geometric points in `point`.
    pub residue_degree: usize,
    pub e: usize,
    /// Order of the critical form at each geometric point.
    pub different_exponent: usize,
    pub tame: bool,
    pub branch_value: ClosedPoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationProfile {
    pub field: Field,
    pub degree: usize,
    pub entries: Vec<RamificationEntry>,
    pub separable: bool,
    pub all_tame: bool,
    pub triple_only: bool,
    pub rh_consistent: bool,
}

impl RamificationProfile {
    /// Assembles a profile and its flags from unsorted entries.
    pub fn from_entries(field: &Field, degree: usize, mut entries: Vec<RamificationEntry>) -> Self {
        entries.sort_by_key(|a| a.point.sort_key());
        let p = field.characteristic() as usize;
        let all_tame = entries.iter().all(|x| x.tame);
        let triple_only = p != 3 && all_tame && entries.iter().all(|x| x.e == 3);
        let target = 2 * degree - 2;
        let rh_consistent = if all_tame {
            tame_sum(&entries) == target
        } else {
            different_sum(&entries) == target
        };
        RamificationProfile {
            field: field.clone(),
            degree,
            entries,
            separable: true,
            all_tame,
            triple_only,
            rh_consistent,
        }
    }

    /// `Σ residue_degree · (e − 1)`.
    pub fn tame_rh_sum(&self) -> usize {
        tame_sum(&self.entries)
    }

    /// `Σ residue_degree · different_exponent`; equals `2d − 2` for every
    /// separable map.
    pub fn different_degree(&self) -> usize {
        different_sum(&self.entries)
    }

    /// Number of geometric ramification points.
    pub fn geometric_ramification_count(&self) -> usize {
        self.entries.iter().map(|x| x.residue_degree).sum()
    }

    /// Distinct branch values, sorted like the entries.
    pub fn branch_points(&self) -> Vec<ClosedPoint> {
        let mut out: Vec<ClosedPoint> = Vec::new();
        for x in &self.entries {
            if !out.contains(&x.branch_value) {
                out.push(x.branch_value.clone());
            }
        }
        out.sort_by_key(ClosedPoint::sort_key);
        out
    }

    pub fn ramification_indices(&self) -> Vec<usize> {
        self.entries.iter().map(|x| x.e).collect()
    }

    /// Whether the rational point `y` is a branch point.
    pub fn is_branch_point(&self, y: &ProjPoint) -> bool {
        self.entries.iter().any(|x| x.branch_value.contains(y))
    }
}

fn tame_sum(entries: &[RamificationEntry]) -> usize {
    entries.iter().map(|x| x.residue_degree * (x.e - 1)).sum()
}

fn different_sum(entries: &[RamificationEntry]) -> usize {
    entries
        .iter()
        .map(|x| x.residue_degree * x.different_exponent)
        .sum()
}

/// Triple-only verdict with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleOnlyVerdict {
    pub verdict: bool,
    /// `Σ residue_degree`, which must equal `d − 1`.
    pub geometric_points: usize,
    pub profile: RamificationProfile,
}

/// Ramification profile: every closed point with `e ≥ 2`, its different
/// exponent, tameness and branch value.
///
/// Over finite fields `e` is the multiplicity of the point in its fiber,
/// computed in the residue field; in characteristic zero it is the
/// multiplicity in the critical form plus one.
pub fn ramification_profile(f: &RationalMap) -> Result<RamificationProfile> {
    let crit = critical_form(f)?;
    let field = f.field();
    let mut entries = if field.is_finite() {
        finite_entries(f, &crit)?
    } else if field.characteristic() == 0 {
        char_zero_entries(f, &crit)?
    } else {
        return Err(Error::Unsupported(format!(
            "ramification over the infinite field {field} of positive characteristic"
        )));
    };
    if crit.infinity_order > 0 {
        entries.push(infinity_entry(f, crit.infinity_order)?);
    }
    Ok(RamificationProfile::from_entries(
        field,
        f.degree(),
        entries,
    ))
}

pub fn is_triple_only(f: &RationalMap) -> Result<TripleOnlyVerdict> {
    if f.field().characteristic() == 3 {
        return Err(Error::CharacteristicThree);
    }
    let profile = ramification_profile(f)?;
    let geometric_points = profile.geometric_ramification_count();
    Ok(TripleOnlyVerdict {
        verdict: profile.triple_only && geometric_points + 1 == f.degree(),
        geometric_points,
        profile,
    })
}

pub fn branch_points(f: &RationalMap) -> Result<Vec<ClosedPoint>> {
    Ok(ramification_profile(f)?.branch_points())
}

fn entry(
    field: &Field,
    point: ClosedPoint,
    e: usize,
    different_exponent: usize,
    branch_value: ClosedPoint,
) -> Result<RamificationEntry> {
    let p = field.characteristic() as usize;
    let tame = p == 0 || !e.is_multiple_of(p);
    if e < 2 || (tame && different_exponent != e - 1) || (!tame && different_exponent < e) {
        return Err(Error::InvariantViolated(format!(
            "point {point}: index {e} with different exponent {different_exponent}"
        )));
    }
    Ok(RamificationEntry {
        residue_degree: point.degree(),
        point,
        e,
        different_exponent,
        tame,
        branch_value,
    })
}

fn infinity_entry(f: &RationalMap, order: usize) -> Result<RamificationEntry> {
    let field = f.field();
    let d = f.degree();
    let (pd, qd) = (f.numerator().coeff(d), f.denominator().coeff(d));
    // in the coordinate w = 1/z the fiber polynomial is the reversal of
    // P - yQ (or of Q), so e is d minus its degree
    let (e, branch) = if qd.is_zero() {
        (d - f.denominator().degree().unwrap(), ClosedPoint::Infinity)
    } else {
        let y = field.div(&pd, &qd)?;
        let fiber = f.numerator() - &f.denominator().scale(&y);
        (
            d - fiber.degree().unwrap_or(0),
            ClosedPoint::Finite(Polynomial::linear_root(field, &y)),
        )
    };
    entry(field, ClosedPoint::Infinity, e, order, branch)
}

fn finite_entries(f: &RationalMap, crit: &CriticalForm) -> Result<Vec<RamificationEntry>> {
    let k = f.field();
    let p = f.numerator().coeffs();
    let q = f.denominator().coeffs();
    let mut out = Vec::new();
    for (m, mult) in factor_finite(&crit.wronskian)? {
        if m.degree() == Some(0) {
            continue;
        }
        let (l, x) = if m.degree() == Some(1) {
            (k.clone(), k.neg(&m.coeff(0)))
        } else {
            let var = k.fresh_var("r");
            let l = Field::extension_unchecked(k, &var, m.coeffs().to_vec());
            let x = l.generator().unwrap();
            (l, x)
        };
        let q_at = dense::eval_embedded(&l, k, q, &x);
        let hasse_at = |poly: &[Value], j: usize| {
            dense::eval_embedded(&l, k, &dense::hasse_derivative(k, poly, j), &x)
        };
        let (e, branch) = if q_at.is_zero() {
            let e = (1..).find(|&j| !hasse_at(q, j).is_zero()).unwrap();
            (e, ClosedPoint::Infinity)
        } else {
            let y = l.div(&dense::eval_embedded(&l, k, p, &x), &q_at)?;
            let e = (1..=mult + 1)
                .find(|&j| {
                    !l.sub(&hasse_at(p, j), &l.mul(&y, &hasse_at(q, j)))
                        .is_zero()
                })
                .unwrap_or(mult + 2);
            (e, ClosedPoint::Finite(minimal_polynomial(k, &l, &y)?))
        };
        out.push(entry(k, ClosedPoint::Finite(m), e, mult, branch)?);
    }
    Ok(out)
}

/// Minimal polynomial over the finite field `k` of `y` in the finite
/// extension `l`, as the product over the Frobenius orbit of `y`.
pub(crate) fn minimal_polynomial(k: &Field, l: &Field, y: &Value) -> Result<Polynomial> {
    if l == k {
        return Ok(Polynomial::linear_root(k, y));
    }
    let q = k.size().unwrap().clone();
    let mut orbit = vec![y.clone()];
    loop {
        let next = l.pow(orbit.last().unwrap(), &q);
        if &next == y {
            break;
        }
        orbit.push(next);
    }
    let mut prod = vec![l.one()];
    for c in &orbit {
        prod = dense::mul(l, &prod, &[l.neg(c), l.one()]);
    }
    let coeffs = prod
        .iter()
        .map(|c| {
            l.restrict(k, c).ok_or_else(|| {
                Error::InvariantViolated(format!("conjugate product not defined over {k}"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::new(k, coeffs))
}

fn char_zero_entries(f: &RationalMap, crit: &CriticalForm) -> Result<Vec<RamificationEntry>> {
    let k = f.field();
    let mut out = Vec::new();
    let sqf = squarefree_decomposition(&crit.wronskian)?;
    for (s, mult) in sqf.factors {
        let mut pieces: Vec<Polynomial> = Vec::new();
        let mut rest = s.clone();
        if k.is_rational() {
            for r in rational_roots(s.coeffs()) {
                let lin = Polynomial::linear_root(k, &Value::Rational(r));
                rest = rest.div_rem(&lin)?.0;
                pieces.push(lin);
            }
        }
        if !rest.is_constant() {
            pieces.push(rest);
        }
        for piece in pieces {
            let poles = Polynomial::new(k, dense::gcd(k, piece.coeffs(), f.denominator().coeffs()));
            let regular = piece.div_rem(&poles)?.0;
            if !poles.is_constant() {
                out.push(entry(
                    k,
                    ClosedPoint::Finite(poles),
                    mult + 1,
                    mult,
                    ClosedPoint::Infinity,
                )?);
            }
            if !regular.is_constant() {
                let branch = branch_polynomial(f, &regular)?;
                out.push(entry(
                    k,
                    ClosedPoint::Finite(regular),
                    mult + 1,
                    mult,
                    ClosedPoint::Finite(branch),
                )?);
            }
        }
    }
    Ok(out)
}

/// Monic squarefree polynomial whose roots are the values `f(β)` at the
/// roots `β` of `s` (none of them poles): the squarefree part of
/// `Res_z(s, P − Y·Q)` as a polynomial in `Y`.
fn branch_polynomial(f: &RationalMap, s: &Polynomial) -> Result<Polynomial> {
    let k = f.field();
    if s.degree() == Some(1) {
        let x = k.neg(&s.coeff(0));
        let y = k.div(&f.numerator().eval(&x), &f.denominator().eval(&x))?;
        return Ok(Polynomial::linear_root(k, &y));
    }
    // Res_z(s, P - yQ) has degree at most deg s in y; sample it at values
    // where the fiber keeps its full degree and interpolate
    let n = s.degree().unwrap();
    let (p, q) = (f.numerator().coeffs(), f.denominator().coeffs());
    let top = p.len().max(q.len());
    let (mut xs, mut rs) = (Vec::new(), Vec::new());
    for i in 0.. {
        if xs.len() == n + 1 {
            break;
        }
        let y = k.from_u64(i);
        let fiber = dense::sub(k, p, &dense::scale(k, q, &y));
        if fiber.len() == top {
            rs.push(resultant_raw(k, s.coeffs(), &fiber));
            xs.push(y);
        }
    }
    // Newton divided differences
    for j in 1..=n {
        for i in (j..=n).rev() {
            let num = k.sub(&rs[i], &rs[i - 1]);
            rs[i] = k.div(&num, &k.sub(&xs[i], &xs[i - j]))?;
        }
    }
    let mut res = vec![rs[n].clone()];
    for i in (0..n).rev() {
        res = dense::add(
            k,
            &dense::mul(k, &res, &[k.neg(&xs[i]), k.one()]),
            &[rs[i].clone()],
        );
    }
    let d = squarefree_decomposition(&Polynomial::new(k, res))?;
    Ok(d.radical())
}
