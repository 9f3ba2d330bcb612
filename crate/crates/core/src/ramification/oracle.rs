//! Brute-force ramification profile.
//!
//! Every point of `P^1(F_{q^m})` is visited. The ramification index is read
//! off from Hasse derivatives of the fiber polynomial at the point, and the
//! points found are grouped into Frobenius orbits. Arithmetic in `F_{q^m}`
//! uses discrete-log (Zech) tables, so the oracle shares nothing with the
//! factorization-based profile beyond plain polynomial arithmetic over the
//! base field.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{prime_divisors, Field, Value};
use crate::poly::{dense, factor, Polynomial};

use super::map::RationalMap;
use super::profile::{ClosedPoint, RamificationEntry, RamificationProfile};

/// Largest field the oracle enumerates.
pub const ORACLE_LIMIT: u64 = 1_000_000;

const ZERO: u32 = u32::MAX;
const INF: u64 = u64::MAX;

/// `F_N` as log/antilog/Zech tables over a primitive element.
struct Tables {
    /// The enumerated field `F_{q^m}`, built on top of the map's field.
    field: Field,
    size: u64,
    p: u64,
    log: Vec<u32>,
    exp: Vec<u32>,
    zech: Vec<u32>,
}

impl Tables {
    fn build(field: &Field) -> Tables {
        let size = field.size_u64().unwrap();
        let p = field.characteristic();
        let order = size - 1;
        let divisors = prime_divisors(order);
        let one = field.one();
        let g = (1..size)
            .map(|i| field.element_at(i))
            .find(|g| divisors.iter().all(|r| field.pow_u64(g, order / r) != one))
            .expect("multiplicative group is cyclic");
        let mut log = vec![ZERO; size as usize];
        let mut exp = vec![0u32; order as usize];
        let mut cur = one;
        for i in 0..order {
            let idx = field.index_of(&cur);
            exp[i as usize] = idx as u32;
            log[idx as usize] = i as u32;
            cur = field.mul(&cur, &g);
        }
        // the lowest base-p digit of an index is the prime-field part of the
        // constant term, so adding one only touches that digit
        let zech = exp
            .iter()
            .map(|&idx| {
                let idx = idx as u64;
                let d0 = idx % p;
                log[(idx - d0 + (d0 + 1) % p) as usize]
            })
            .collect();
        Tables {
            field: field.clone(),
            size,
            p,
            log,
            exp,
            zech,
        }
    }

    fn cached(field: &Field) -> Arc<Tables> {
        static CACHE: OnceLock<Mutex<HashMap<String, Arc<Tables>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.lock().unwrap().get(field.descriptor()) {
            return t.clone();
        }
        let t = Arc::new(Tables::build(field));
        let mut guard = cache.lock().unwrap();
        if guard.len() >= 8 {
            guard.clear();
        }
        guard.insert(field.descriptor().to_string(), t.clone());
        t
    }

    fn order(&self) -> u64 {
        self.size - 1
    }

    fn index_of(&self, v: &Value) -> u32 {
        self.log[self.field.index_of(v) as usize]
    }

    fn to_index(&self, a: u32) -> u64 {
        if a == ZERO {
            0
        } else {
            self.exp[a as usize] as u64
        }
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == ZERO || b == ZERO {
            return ZERO;
        }
        ((a as u64 + b as u64) % self.order()) as u32
    }

    fn div(&self, a: u32, b: u32) -> u32 {
        debug_assert!(b != ZERO);
        if a == ZERO {
            return ZERO;
        }
        ((a as u64 + self.order() - b as u64) % self.order()) as u32
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if a == ZERO {
            return b;
        }
        if b == ZERO {
            return a;
        }
        // a + b = a (1 + g^(b - a))
        let d = (b as u64 + self.order() - a as u64) % self.order();
        let z = self.zech[d as usize];
        if z == ZERO {
            ZERO
        } else {
            ((a as u64 + z as u64) % self.order()) as u32
        }
    }

    fn neg(&self, a: u32) -> u32 {
        if a == ZERO || self.p == 2 {
            a
        } else {
            ((a as u64 + self.order() / 2) % self.order()) as u32
        }
    }

    fn eval(&self, c: &[u32], x: u32) -> u32 {
        c.iter()
            .rev()
            .fold(ZERO, |acc, &a| self.add(self.mul(acc, x), a))
    }

    /// Frobenius `x ↦ x^q`.
    fn frobenius(&self, a: u32, q: u64) -> u32 {
        if a == ZERO {
            ZERO
        } else {
            ((a as u128 * q as u128) % self.order() as u128) as u32
        }
    }
}

/// Hasse derivatives `D^0 … D^n` of a polynomial, as table logs.
struct Derivatives(Vec<Vec<u32>>);

impl Derivatives {
    fn new(k: &Field, t: &Tables, poly: &[Value]) -> Self {
        let n = poly.len().max(1);
        Derivatives(
            (0..n)
                .map(|j| {
                    dense::hasse_derivative(k, poly, j)
                        .iter()
                        .map(|c| t.index_of(&t.field.embed(k, c).unwrap()))
                        .collect()
                })
                .collect(),
        )
    }

    /// `D^j(poly)(x)`, zero beyond the degree.
    fn at(&self, t: &Tables, j: usize, x: u32) -> u32 {
        self.0.get(j).map_or(ZERO, |c| t.eval(c, x))
    }
}

struct Chart {
    p: Derivatives,
    q: Derivatives,
    w: Derivatives,
}

struct Found {
    /// Log of the point, or `INF` for `∞`.
    x: u64,
    e: usize,
    different: usize,
    /// Log of the branch value, `ZERO` for zero, `INF` for `∞`.
    y: u64,
}

impl Chart {
    /// Index and different exponent at `x`, when `x` is ramified.
    fn examine(&self, t: &Tables, x: u32) -> Option<(usize, usize, u64)> {
        if self.w.at(t, 0, x) != ZERO {
            return None;
        }
        let different = (1..).find(|&j| self.w.at(t, j, x) != ZERO).unwrap();
        let qx = self.q.at(t, 0, x);
        let (e, y) = if qx == ZERO {
            let e = (1..).find(|&j| self.q.at(t, j, x) != ZERO).unwrap();
            (e, INF)
        } else {
            let y = t.div(self.p.at(t, 0, x), qx);
            let fiber = |j| t.add(self.p.at(t, j, x), t.neg(t.mul(y, self.q.at(t, j, x))));
            let e = (1..).find(|&j| fiber(j) != ZERO).unwrap();
            (e, y as u64)
        };
        Some((e, different, y))
    }
}

/// Ramification profile by enumerating `P^1(F_{q^m})`, where `F_q` is the
/// field of `f`.
///
/// Only ramification points whose residue degree divides `m` are visible,
/// so the result is complete exactly when `m` is a multiple of every
/// residue degree.
pub fn brute_force_profile(
    f: &RationalMap,
    extension_degree: usize,
) -> Result<RamificationProfile> {
    let k = f.field();
    let q = k.require_finite()?;
    if extension_degree == 0 {
        return Err(Error::parse("extension degree must be at least 1"));
    }
    let q = q.clone();
    let size = q.pow(extension_degree as u32);
    if size > BigUint::from(ORACLE_LIMIT) {
        return Err(Error::FieldTooLarge(
            format!("{q}^{extension_degree} = {size}"),
            ORACLE_LIMIT,
        ));
    }
    let q = k.size_u64().unwrap();
    let l = if extension_degree == 1 {
        k.clone()
    } else {
        let var = k.fresh_var("v");
        let g = factor::find_irreducible(k, extension_degree);
        Field::extension_unchecked(k, &var, g)
    };
    let t = Tables::cached(&l);

    let d = f.degree();
    let p = f.numerator().coeffs();
    let qq = f.denominator().coeffs();
    let wronskian = |a: &[Value], b: &[Value]| {
        dense::sub(
            k,
            &dense::mul(k, &dense::derivative(k, a), b),
            &dense::mul(k, a, &dense::derivative(k, b)),
        )
    };
    let w = wronskian(p, qq);
    if w.is_empty() {
        return Err(Error::Inseparable);
    }
    let affine = Chart {
        p: Derivatives::new(k, &t, p),
        q: Derivatives::new(k, &t, qq),
        w: Derivatives::new(k, &t, &w),
    };
    // w = 1/z: the fiber polynomials are the degree-d reversals
    let rp = dense::reverse(p, d, k);
    let rq = dense::reverse(qq, d, k);
    let at_infinity = Chart {
        w: Derivatives::new(k, &t, &wronskian(&rp, &rq)),
        p: Derivatives::new(k, &t, &rp),
        q: Derivatives::new(k, &t, &rq),
    };

    let mut found: Vec<Found> = (0..t.size as usize)
        .into_par_iter()
        .with_min_len(4096)
        .filter_map(|idx| {
            let x = t.log[idx];
            affine.examine(&t, x).map(|(e, different, y)| Found {
                x: x as u64,
                e,
                different,
                y,
            })
        })
        .collect();
    if let Some((e, different, y)) = at_infinity.examine(&t, ZERO) {
        // in the chart at ∞ the value is unchanged: y is still P/Q
        found.push(Found {
            x: INF,
            e,
            different,
            y,
        });
    }

    let mut entries = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for pt in &found {
        if !seen.insert(pt.x) {
            continue;
        }
        let point = if pt.x == INF {
            ClosedPoint::Infinity
        } else {
            let orbit = orbit(&t, pt.x as u32, q);
            for &o in &orbit {
                seen.insert(o as u64);
            }
            ClosedPoint::Finite(orbit_polynomial(k, &t, &orbit)?)
        };
        let branch_value = if pt.y == INF {
            ClosedPoint::Infinity
        } else {
            ClosedPoint::Finite(orbit_polynomial(k, &t, &orbit(&t, pt.y as u32, q))?)
        };
        let tame = !(pt.e as u64).is_multiple_of(t.p);
        entries.push(RamificationEntry {
            residue_degree: point.degree(),
            point,
            e: pt.e,
            different_exponent: pt.different,
            tame,
            branch_value,
        });
    }
    Ok(RamificationProfile::from_entries(k, d, entries))
}

/// Outcome of checking an analytic profile against the oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleComparison {
    pub extension_degree: usize,
    /// The oracle saw exactly the entries of residue degree dividing `m`.
    pub agree: bool,
    /// Every residue degree divides `m`, so nothing was invisible.
    pub complete: bool,
    pub invisible_entries: usize,
}

/// Compares `analytic` with `oracle` on the points visible over
/// `F_{q^m}`.
pub fn compare_with_oracle(
    analytic: &RamificationProfile,
    oracle: &RamificationProfile,
    extension_degree: usize,
) -> OracleComparison {
    let (visible, invisible): (Vec<_>, Vec<_>) = analytic
        .entries
        .iter()
        .cloned()
        .partition(|x| extension_degree.is_multiple_of(x.residue_degree));
    OracleComparison {
        extension_degree,
        agree: oracle.entries == visible && oracle.degree == analytic.degree,
        complete: invisible.is_empty(),
        invisible_entries: invisible.len(),
    }
}

/// Least `m` making the oracle complete for `analytic`: the lcm of its
/// residue degrees.
pub fn complete_extension_degree(analytic: &RamificationProfile) -> usize {
    use num_integer::Integer;
    analytic
        .entries
        .iter()
        .fold(1, |m, x| m.lcm(&x.residue_degree))
}

/// The `m` with `q^m` within [`ORACLE_LIMIT`] that makes the most
/// ramification points of `analytic` visible, counted with residue
/// degree; the smallest such `m` on ties.
pub fn oracle_extension_degree(analytic: &RamificationProfile) -> Result<usize> {
    let q = analytic.field.require_finite()?;
    let mut best = (0, 1);
    let mut size = q.clone();
    let mut m = 1;
    while size <= BigUint::from(ORACLE_LIMIT) {
        let seen: usize = analytic
            .entries
            .iter()
            .filter(|x| m % x.residue_degree == 0)
            .map(|x| x.residue_degree)
            .sum();
        if seen > best.0 {
            best = (seen, m);
        }
        m += 1;
        size *= q;
    }
    Ok(best.1)
}

fn orbit(t: &Tables, x: u32, q: u64) -> Vec<u32> {
    let mut out = vec![x];
    loop {
        let next = t.frobenius(*out.last().unwrap(), q);
        if next == x {
            return out;
        }
        out.push(next);
    }
}

/// `∏ (z − x)` over an orbit, converted back to the base field.
fn orbit_polynomial(k: &Field, t: &Tables, orbit: &[u32]) -> Result<Polynomial> {
    let mut c = vec![0u32; 1]; // log 0 = 1
    for &x in orbit {
        let mut next = vec![ZERO; c.len() + 1];
        let nx = t.neg(x);
        for (i, &a) in c.iter().enumerate() {
            next[i + 1] = t.add(next[i + 1], a);
            next[i] = t.add(next[i], t.mul(a, nx));
        }
        c = next;
    }
    let q = k.size_u64().unwrap();
    let coeffs = c
        .iter()
        .map(|&a| {
            let idx = t.to_index(a);
            if idx >= q {
                Err(Error::InvariantViolated(
                    "orbit polynomial has coefficients outside the base field".into(),
                ))
            } else {
                Ok(k.element_at(idx))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::new(k, coeffs))
}

#[cfg(test)]
mod tests {
    use super::super::profile::ramification_profile;
    use super::*;

    #[test]
    fn cube_map_over_f7() {
        let f7 = Field::prime(7).unwrap();
        let cube = RationalMap::power(&f7, 3);
        let oracle = brute_force_profile(&cube, 1).unwrap();
        assert_eq!(oracle, ramification_profile(&cube).unwrap());
        assert_eq!(oracle.entries.len(), 2);
    }

    #[test]
    fn chebyshev_like_over_f11() {
        let f11 = Field::prime(11).unwrap();
        let f = RationalMap::parse(&f11, "z^3-3z", "1").unwrap();
        assert_eq!(
            brute_force_profile(&f, 1).unwrap(),
            ramification_profile(&f).unwrap()
        );
    }

    #[test]
    fn degree_three_point_over_f343() {
        // the roots of z^3 - 2 are triple points, visible only over F_343
        let f7 = Field::prime(7).unwrap();
        let f = RationalMap::parse(&f7, "(z^3-2)^3", "z^3-3").unwrap();
        let analytic = ramification_profile(&f).unwrap();
        let cubic = Polynomial::parse(&f7, "z^3-2").unwrap();
        assert!(analytic
            .entries
            .iter()
            .any(|x| x.point == ClosedPoint::Finite(cubic.clone())));
        let oracle = brute_force_profile(&f, 3).unwrap();
        let visible: Vec<_> = analytic
            .entries
            .iter()
            .filter(|x| 3 % x.residue_degree == 0)
            .cloned()
            .collect();
        assert_eq!(oracle.entries, visible);
    }

    #[test]
    fn wild_map_agrees() {
        let f2 = Field::prime(2).unwrap();
        let f = RationalMap::parse(&f2, "z^2+z", "1").unwrap();
        assert_eq!(
            brute_force_profile(&f, 1).unwrap(),
            ramification_profile(&f).unwrap()
        );
    }

    #[test]
    fn too_large_rejected() {
        let f7 = Field::prime(7).unwrap();
        assert!(matches!(
            brute_force_profile(&RationalMap::power(&f7, 2), 8),
            Err(Error::FieldTooLarge(_, ORACLE_LIMIT))
        ));
        let q = Field::rational();
        assert!(matches!(
            brute_force_profile(&RationalMap::power(&q, 2), 1),
            Err(Error::NotFinite(_))
        ));
    }
}
