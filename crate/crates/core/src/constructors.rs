//! Constructions of covers: the cube map, inductive realization of
//! prescribed branch points by maps with only triple ramification, the
//! forward composition mode, and the characteristic-`p` power-map reduction
//! of the branch locus to `{0, 1, ∞}`.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::field::{Field, Value};
use crate::poly::rational_roots::rational_roots;
use crate::poly::{dense, factor_finite, Polynomial};
use crate::projline::{Mobius, ProjPoint};
use crate::ramification::{
    is_triple_only, ramification_profile, ClosedPoint, RamificationProfile, RationalMap,
};

/// Candidates tried for `φ(∞)` over an infinite field.
pub const MAX_CANDIDATES: u64 = 10_000;

/// Largest map degree [`belyi_reduce`] will build.
pub const MAX_REDUCTION_DEGREE: u64 = 100_000;

/// `z ↦ z³`.
pub fn cube_map(field: &Field) -> Result<RationalMap> {
    if field.characteristic() == 3 {
        return Err(Error::CharacteristicThree);
    }
    Ok(RationalMap::power(field, 3))
}

/// One induction step `h_{i+1} = h_i ∘ φ ∘ r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// The branch point realized in this step.
    pub target: ProjPoint,
    /// Monic modulus adjoined to the previous field, if any, and the name
    /// of the new variable.
    pub extension: Option<(String, Polynomial)>,
    /// The chosen unramified preimage `x′ = φ(0)`.
    pub preimage: ProjPoint,
    /// `φ(∞)`.
    pub pole: ProjPoint,
    pub phi: Mobius,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionTrace {
    pub base_field: Field,
    pub branch: Vec<ProjPoint>,
    pub seed: u64,
    pub steps: Vec<TraceStep>,
    pub map: RationalMap,
    pub profile: RamificationProfile,
}

impl ConstructionTrace {
    pub fn field(&self) -> &Field {
        self.map.field()
    }
}

/// Rebuilds the map from the recorded steps alone.
pub fn replay(trace: &ConstructionTrace) -> Result<RationalMap> {
    let mut field = trace.base_field.clone();
    let mut h = RationalMap::identity(&field);
    for step in &trace.steps {
        if let Some((var, m)) = &step.extension {
            field.ensure_same(m.field())?;
            field = Field::extension(&field, var, m.coeffs().to_vec())?;
            h = h.lift(&field)?;
        }
        field.ensure_same(step.phi.field())?;
        h = step_map(&h, &step.phi)?;
    }
    Ok(h)
}

fn step_map(h: &RationalMap, phi: &Mobius) -> Result<RationalMap> {
    let field = h.field();
    h.compose(&RationalMap::from_mobius(phi))?
        .compose(&RationalMap::power(field, 3))
}

/// Builds `h` with only triple ramification such that every `y` in `ys`
/// is a branch point, by induction on `ys`.
///
/// Step `i` picks an unramified `x′` over `y_{i+1}` (adjoining a root when
/// no rational one exists), then `φ(∞) = α` from a seeded candidate stream
/// with `α` not a ramification point of `h_i`, `h_i(α) ∉ {y_j : j ≠ i+1}`
/// and `α ≠ x′`. Then `φ = [[α₀, x′₀], [α₁, x′₁]]` in homogeneous
/// coordinates and `h_{i+1} = h_i ∘ φ ∘ r`. Every step is re-verified by the
/// ramification profile.
pub fn realize_branch_points(
    ys: &[ProjPoint],
    base: &Field,
    seed: u64,
) -> Result<ConstructionTrace> {
    if base.characteristic() == 3 {
        return Err(Error::CharacteristicThree);
    }
    if !base.is_finite() && !base.is_rational() {
        return Err(Error::Unsupported(format!(
            "branch realization needs a finite field or Q, got {base}"
        )));
    }
    for (i, y) in ys.iter().enumerate() {
        base.ensure_same(y.field())?;
        if ys[..i].contains(y) {
            return Err(Error::DuplicateBranchPoint(y.to_string()));
        }
    }
    let mut field = base.clone();
    let mut h = RationalMap::identity(&field);
    let mut profile = ramification_profile(&h)?;
    let mut steps = Vec::with_capacity(ys.len());
    for i in 0..ys.len() {
        let lifted = ys
            .iter()
            .map(|y| y.lift(&field))
            .collect::<Result<Vec<_>>>()?;
        let y = &lifted[i];
        let (extension, preimage) = choose_preimage(&h, y)?;
        let prev_field = field.clone();
        let prev_profile = profile.clone();
        if let Some((_, m)) = &extension {
            let (ext, _) = crate::field::adjoin_root(m)?;
            field = ext;
            h = h.lift(&field)?;
        }
        let preimage = match preimage {
            Some(p) => p.lift(&field)?,
            None => ProjPoint::from_value(&field, field.generator().unwrap()),
        };
        let others: Vec<ProjPoint> = lifted
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, y)| y.lift(&field))
            .collect::<Result<_>>()?;
        let pole = choose_pole(&h, &prev_field, &prev_profile, &others, &preimage, seed)?;
        let (a0, a1) = pole.coords();
        let (b0, b1) = preimage.coords();
        let phi = Mobius::from_values(&field, [a0, b0, a1, b1])?;
        h = step_map(&h, &phi)?;

        let verdict = is_triple_only(&h)?;
        let ys_here = ys
            .iter()
            .map(|y| y.lift(&field))
            .collect::<Result<Vec<_>>>()?;
        let realized = ys_here[..=i]
            .iter()
            .all(|y| verdict.profile.is_branch_point(y));
        let etale_ahead = ys_here[i + 1..]
            .iter()
            .all(|y| !verdict.profile.is_branch_point(y));
        if !verdict.verdict || !realized || !etale_ahead {
            return Err(Error::InvariantViolated(format!(
                "step {}: triple-only {}, realized {realized}, etale over later points {etale_ahead}",
                i + 1,
                verdict.verdict
            )));
        }
        profile = verdict.profile;
        steps.push(TraceStep {
            target: ys_here[i].clone(),
            extension: extension.map(|(_, m)| (field.variables().pop().unwrap(), m)),
            preimage,
            pole,
            phi,
        });
    }
    Ok(ConstructionTrace {
        base_field: base.clone(),
        branch: ys.to_vec(),
        seed,
        steps,
        map: h,
        profile,
    })
}

type Preimage = (Option<(String, Polynomial)>, Option<ProjPoint>);

/// A point of `h⁻¹(y)`: a rational one if possible (finite points by
/// coefficient order, then `∞`), else the root of the smallest-degree
/// irreducible factor of the fiber polynomial, to be adjoined.
fn choose_preimage(h: &RationalMap, y: &ProjPoint) -> Result<Preimage> {
    let field = h.field();
    let fiber = match y.affine_value() {
        Some(v) => h.numerator() - &h.denominator().scale(v),
        None => h.denominator().clone(),
    };
    let infinity_in_fiber = h.eval(&ProjPoint::infinity(field))? == *y;
    let mut factors: Vec<Polynomial> = if field.is_finite() {
        factor_finite(&fiber)?.into_iter().map(|(m, _)| m).collect()
    } else {
        rational_roots(fiber.coeffs())
            .into_iter()
            .map(|r| Polynomial::linear_root(field, &Value::Rational(r)))
            .collect()
    };
    factors.retain(|m| m.degree() > Some(0));
    factors.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.to_strings().cmp(&b.to_strings()))
    });
    if let Some(m) = factors.iter().find(|m| m.degree() == Some(1)) {
        let x = field.neg(&m.coeff(0));
        return Ok((None, Some(ProjPoint::from_value(field, x))));
    }
    if infinity_in_fiber {
        return Ok((None, Some(ProjPoint::infinity(field))));
    }
    if field.is_finite() {
        let m = factors
            .into_iter()
            .next()
            .ok_or_else(|| Error::InvariantViolated(format!("empty fiber over {y}")))?;
        return Ok((Some((String::new(), m)), None));
    }
    // over Q only cubic or smaller fibers can be certified irreducible
    let m = fiber.monic();
    let deg = m.degree().unwrap_or(0);
    if deg <= 3 {
        return Ok((Some((String::new(), m)), None));
    }
    Err(Error::AdjunctionBlocked(format!(
        "the fiber over {y} has degree {deg} and no rational point"
    )))
}

fn in_closed_point(point: &ClosedPoint, below: &Field, x: &ProjPoint) -> bool {
    match (point, x.affine_value()) {
        (ClosedPoint::Infinity, None) => true,
        (ClosedPoint::Finite(m), Some(a)) => {
            dense::eval_embedded(x.field(), below, m.coeffs(), a).is_zero()
        }
        _ => false,
    }
}

/// The first admissible `φ(∞)` in the seeded candidate stream
/// `∞, e₀, e₁, …` (rotated by the seed on finite fields).
fn choose_pole(
    h: &RationalMap,
    profile_field: &Field,
    profile: &RamificationProfile,
    others: &[ProjPoint],
    preimage: &ProjPoint,
    seed: u64,
) -> Result<ProjPoint> {
    let field = h.field();
    let candidate = |k: u64| {
        if k == 0 {
            ProjPoint::infinity(field)
        } else {
            ProjPoint::from_value(field, field.nth_element(k - 1))
        }
    };
    let (total, start) = match field.size_u64() {
        Some(q) => (q + 1, seed % (q + 1)),
        None => (MAX_CANDIDATES, seed),
    };
    let modulus = field.size_u64().map(|q| q + 1);
    for j in 0..total {
        let k = match modulus {
            Some(n) => (start + j) % n,
            None => start + j,
        };
        let alpha = candidate(k);
        if &alpha == preimage
            || profile
                .entries
                .iter()
                .any(|e| in_closed_point(&e.point, profile_field, &alpha))
        {
            continue;
        }
        let image = h.eval(&alpha)?;
        if others.contains(&image) {
            continue;
        }
        return Ok(alpha);
    }
    Err(Error::CandidatesExhausted(field.to_string()))
}

/// `h = (φ_k ∘ r) ∘ … ∘ (φ_1 ∘ r)` with its verified profile.
pub fn forward_compose(steps: &[Mobius]) -> Result<(RationalMap, RamificationProfile)> {
    let Some(first) = steps.first() else {
        return Err(Error::parse("forward mode needs at least one step"));
    };
    let field = first.field();
    let cube = cube_map(field)?;
    let mut h = RationalMap::identity(field);
    for phi in steps {
        field.ensure_same(phi.field())?;
        h = RationalMap::from_mobius(phi).compose(&cube)?.compose(&h)?;
    }
    let profile = ramification_profile(&h)?;
    Ok((h, profile))
}

/// Outcome of [`minimal_power_exponent`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerExponent {
    /// The branch locus already lies in `{0, 1, ∞}`.
    Identity,
    /// Least `n ≥ 1` with `x^(pⁿ−1) = 1` for every finite nonzero branch
    /// value `x`.
    Exponent(u32),
}

impl PowerExponent {
    pub fn exponent(self) -> Option<u32> {
        match self {
            PowerExponent::Identity => None,
            PowerExponent::Exponent(n) => Some(n),
        }
    }
}

/// The least `n` such that `z ↦ z^(pⁿ−1)` sends every branch value into
/// `{0, 1, ∞}`: the lcm of the degrees over `F_p` of the branch values.
pub fn minimal_power_exponent(branch: &[ClosedPoint], field: &Field) -> Result<PowerExponent> {
    field.require_finite()?;
    let p = field.characteristic();
    let mut n: u32 = 1;
    let mut trivial = true;
    for b in branch {
        let ClosedPoint::Finite(m) = b else { continue };
        field.ensure_same(m.field())?;
        let (l, x) = if m.degree() == Some(1) {
            let x = field.neg(&m.coeff(0));
            if x.is_zero() || field.is_one(&x) {
                continue;
            }
            (field.clone(), x)
        } else {
            let ext = Field::extension(field, &field.fresh_var("b"), m.coeffs().to_vec())?;
            let g = ext.generator().unwrap();
            (ext, g)
        };
        trivial = false;
        let mut k: u32 = 1;
        let mut y = l.pow_u64(&x, p);
        while y != x {
            y = l.pow_u64(&y, p);
            k += 1;
        }
        n = n.lcm(&k);
    }
    Ok(if trivial {
        PowerExponent::Identity
    } else {
        PowerExponent::Exponent(n)
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BelyiReduction {
    pub exponent: PowerExponent,
    pub map: RationalMap,
    pub profile: RamificationProfile,
}

/// `h = z^(pⁿ−1) ∘ g` with minimal `n`, verified to be tame with branch
/// locus in `{0, 1, ∞}`.
pub fn belyi_reduce(g: &RationalMap) -> Result<BelyiReduction> {
    let field = g.field();
    if field.characteristic() == 0 {
        return Err(Error::CharacteristicZero);
    }
    field.require_finite()?;
    let profile = ramification_profile(g)?;
    if let Some(x) = profile.entries.iter().find(|x| !x.tame) {
        return Err(Error::WildRamification(format!(
            "index {} at {} is divisible by {}",
            x.e,
            x.point,
            field.characteristic()
        )));
    }
    let exponent = minimal_power_exponent(&profile.branch_points(), field)?;
    let (map, profile) = match exponent {
        PowerExponent::Identity => (g.clone(), profile),
        PowerExponent::Exponent(n) => {
            let k = (field.characteristic() as u128).pow(n) - 1;
            if k * g.degree() as u128 > MAX_REDUCTION_DEGREE as u128 {
                return Err(Error::Unsupported(format!(
                    "the reduced map would have degree {k}·{}",
                    g.degree()
                )));
            }
            let h = RationalMap::power(field, k as usize).compose(g)?;
            let profile = ramification_profile(&h)?;
            (h, profile)
        }
    };
    let zero = ProjPoint::from_value(field, field.zero());
    let one = ProjPoint::from_value(field, field.one());
    let infinity = ProjPoint::infinity(field);
    let allowed = [&zero, &one, &infinity].map(ClosedPoint::rational);
    let bad = profile
        .branch_points()
        .into_iter()
        .find(|b| !allowed.contains(b));
    if let Some(b) = bad {
        return Err(Error::InvariantViolated(format!(
            "branch point {b} survived the reduction"
        )));
    }
    if !profile.all_tame {
        return Err(Error::InvariantViolated("reduced map is wild".into()));
    }
    Ok(BelyiReduction {
        exponent,
        map,
        profile,
    })
}
