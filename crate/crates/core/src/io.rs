//! JSON documents: map files, profile reports, construction traces and the
//! per-command reports.
//!
//! Elements are written in their canonical string form, points as `"inf"`
//! or an element string, and closed points of higher degree as the
//! ascending coefficient list of their monic minimal polynomial. Key order
//! follows field order, so output is byte-stable.

use serde::{Deserialize, Serialize};

use crate::constructors::{BelyiReduction, ConstructionTrace, PowerExponent, TraceStep};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::Polynomial;
use crate::projline::{Mobius, ProjPoint};
use crate::ramification::{
    ClosedPoint, OracleComparison, RamificationEntry, RamificationProfile, RationalMap,
};
use crate::weierstrass::{self, SingularLocus, SingularityKind};

fn json_err(e: serde_json::Error) -> Error {
    Error::Parse(format!("json: {e}"))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn from_json<T: for<'de> Deserialize<'de>>(src: &str) -> Result<T> {
    serde_json::from_str(src).map_err(json_err)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub field: String,
    pub numerator: Vec<String>,
    pub denominator: Vec<String>,
}

impl MapFile {
    pub fn from_map(f: &RationalMap) -> Self {
        MapFile {
            field: f.field().descriptor().to_string(),
            numerator: f.numerator().to_strings(),
            denominator: f.denominator().to_strings(),
        }
    }

    pub fn to_map(&self) -> Result<RationalMap> {
        let field = Field::parse(&self.field)?;
        RationalMap::from_strings(&field, &self.numerator, &self.denominator)
    }

    pub fn parse(src: &str) -> Result<Self> {
        from_json(src)
    }
}

/// `"inf"`, an element string, or a minimal polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointJson {
    Rational(String),
    Closed(Vec<String>),
}

impl PointJson {
    pub fn from_closed(p: &ClosedPoint) -> Self {
        match p {
            ClosedPoint::Infinity => PointJson::Rational("inf".into()),
            ClosedPoint::Finite(m) if m.degree() == Some(1) => {
                let field = m.field();
                PointJson::Rational(field.format(&field.neg(&m.coeff(0))))
            }
            ClosedPoint::Finite(m) => PointJson::Closed(m.to_strings()),
        }
    }

    pub fn to_closed(&self, field: &Field) -> Result<ClosedPoint> {
        match self {
            PointJson::Rational(s) => Ok(ClosedPoint::rational(&ProjPoint::parse(field, s)?)),
            PointJson::Closed(c) => {
                let m = Polynomial::from_strings(field, c)?;
                if !m.is_monic() || m.degree() < Some(2) {
                    return Err(Error::parse("closed points are monic of degree at least 2"));
                }
                Ok(ClosedPoint::Finite(m))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub point: PointJson,
    pub residue_degree: usize,
    pub e: usize,
    pub different_exponent: usize,
    pub tame: bool,
    pub branch_value: PointJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileReport {
    pub field: String,
    pub degree: usize,
    pub separable: bool,
    pub all_tame: bool,
    pub triple_only: bool,
    pub rh_consistent: bool,
    pub geometric_ramification_count: usize,
    pub different_degree: usize,
    pub branch_points: Vec<PointJson>,
    pub entries: Vec<EntryJson>,
}

impl ProfileReport {
    pub fn from_profile(p: &RamificationProfile) -> Self {
        ProfileReport {
            field: p.field.descriptor().to_string(),
            degree: p.degree,
            separable: p.separable,
            all_tame: p.all_tame,
            triple_only: p.triple_only,
            rh_consistent: p.rh_consistent,
            geometric_ramification_count: p.geometric_ramification_count(),
            different_degree: p.different_degree(),
            branch_points: p
                .branch_points()
                .iter()
                .map(PointJson::from_closed)
                .collect(),
            entries: p
                .entries
                .iter()
                .map(|x| EntryJson {
                    point: PointJson::from_closed(&x.point),
                    residue_degree: x.residue_degree,
                    e: x.e,
                    different_exponent: x.different_exponent,
                    tame: x.tame,
                    branch_value: PointJson::from_closed(&x.branch_value),
                })
                .collect(),
        }
    }

    /// Rebuilds the profile; flags are recomputed from the entries and
    /// must match the recorded ones.
    pub fn to_profile(&self) -> Result<RamificationProfile> {
        let field = Field::parse(&self.field)?;
        let entries = self
            .entries
            .iter()
            .map(|x| {
                Ok(RamificationEntry {
                    point: x.point.to_closed(&field)?,
                    residue_degree: x.residue_degree,
                    e: x.e,
                    different_exponent: x.different_exponent,
                    tame: x.tame,
                    branch_value: x.branch_value.to_closed(&field)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let p = RamificationProfile::from_entries(&field, self.degree, entries);
        if ProfileReport::from_profile(&p) != *self {
            return Err(Error::parse("profile flags disagree with its entries"));
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionJson {
    pub variable: String,
    /// Monic modulus over the previous field, ascending.
    pub modulus: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub target: String,
    pub extension: Option<ExtensionJson>,
    /// The field after this step's extension.
    pub field: String,
    pub preimage: String,
    pub pole: String,
    pub phi: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceFile {
    pub base_field: String,
    pub branch: Vec<String>,
    pub seed: u64,
    pub steps: Vec<StepJson>,
    pub map: MapFile,
    pub profile: ProfileReport,
}

impl TraceFile {
    pub fn from_trace(t: &ConstructionTrace) -> Self {
        TraceFile {
            base_field: t.base_field.descriptor().to_string(),
            branch: t.branch.iter().map(ToString::to_string).collect(),
            seed: t.seed,
            steps: t
                .steps
                .iter()
                .map(|s| StepJson {
                    target: s.target.to_string(),
                    extension: s.extension.as_ref().map(|(v, m)| ExtensionJson {
                        variable: v.clone(),
                        modulus: m.to_strings(),
                    }),
                    field: s.phi.field().descriptor().to_string(),
                    preimage: s.preimage.to_string(),
                    pole: s.pole.to_string(),
                    phi: s.phi.to_strings(),
                })
                .collect(),
            map: MapFile::from_map(&t.map),
            profile: ProfileReport::from_profile(&t.profile),
        }
    }

    /// Parses every recorded step, rebuilding the tower as it goes.
    pub fn to_trace(&self) -> Result<ConstructionTrace> {
        let base = Field::parse(&self.base_field)?;
        let branch = self
            .branch
            .iter()
            .map(|s| ProjPoint::parse(&base, s))
            .collect::<Result<Vec<_>>>()?;
        let mut field = base.clone();
        let mut steps = Vec::with_capacity(self.steps.len());
        for s in &self.steps {
            let extension = match &s.extension {
                Some(x) => {
                    let m = Polynomial::from_strings(&field, &x.modulus)?;
                    field = Field::extension(&field, &x.variable, m.coeffs().to_vec())?;
                    Some((x.variable.clone(), m))
                }
                None => None,
            };
            if field.descriptor() != s.field {
                return Err(Error::parse(format!(
                    "trace step field {} does not match the rebuilt {}",
                    s.field, field
                )));
            }
            steps.push(TraceStep {
                target: ProjPoint::parse(&field, &s.target)?,
                extension,
                preimage: ProjPoint::parse(&field, &s.preimage)?,
                pole: ProjPoint::parse(&field, &s.pole)?,
                phi: Mobius::from_strings(&field, &s.phi)?,
            });
        }
        Ok(ConstructionTrace {
            base_field: base,
            branch,
            seed: self.seed,
            steps,
            map: self.map.to_map()?,
            profile: self.profile.to_profile()?,
        })
    }
}

/// `"identity"` or the exponent `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExponentJson {
    Identity(String),
    Exponent(u32),
}

impl From<PowerExponent> for ExponentJson {
    fn from(e: PowerExponent) -> Self {
        match e {
            PowerExponent::Identity => ExponentJson::Identity("identity".into()),
            PowerExponent::Exponent(n) => ExponentJson::Exponent(n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BelyiReport {
    pub n: ExponentJson,
    pub map: MapFile,
    pub profile: ProfileReport,
}

impl BelyiReport {
    pub fn from_reduction(r: &BelyiReduction) -> Self {
        BelyiReport {
            n: r.exponent.into(),
            map: MapFile::from_map(&r.map),
            profile: ProfileReport::from_profile(&r.profile),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizeReport {
    pub field: String,
    pub points: Vec<String>,
    pub coordinates: Vec<String>,
    /// Why the configuration lies on the boundary, when it does.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub boundary: Option<String>,
}

impl NormalizeReport {
    /// Coordinates of the configuration, or the boundary stratum it lies on.
    pub fn compute(points: &[ProjPoint]) -> Result<Self> {
        let field = points
            .first()
            .map(|p| p.field().clone())
            .ok_or(Error::TooFewPoints(0))?;
        let (coordinates, boundary) = match crate::projline::moduli_coordinates(points) {
            Ok(c) => (c.iter().map(ToString::to_string).collect(), None),
            Err(e @ (Error::BoundaryPoint(_) | Error::CoincidentPoints(_))) => {
                (Vec::new(), Some(e.to_string()))
            }
            Err(e) => return Err(e),
        };
        Ok(NormalizeReport {
            field: field.descriptor().to_string(),
            points: points.iter().map(ToString::to_string).collect(),
            coordinates,
            boundary,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorTerm {
    pub point: String,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberJson {
    pub c: String,
    /// `x`-coordinates of the fiber points with their indices.
    pub points: Vec<FiberPointJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberPointJson {
    pub x: PointJson,
    pub residue_degree: usize,
    pub e: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPointJson {
    pub point: [String; 3],
    pub kind: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeierstrassReport {
    pub field: String,
    pub t: String,
    pub smooth: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub singular_point: Option<SingularPointJson>,
    pub branch_divisor: Vec<DivisorTerm>,
    pub fibers: Vec<FiberJson>,
    /// Geometric genus.
    pub genus: usize,
    pub arithmetic_genus: usize,
    /// `null` on the cuspidal fiber.
    pub j: Option<String>,
}

impl WeierstrassReport {
    pub fn compute(t: &FieldElement) -> Result<Self> {
        let divisor = weierstrass::branch_divisor(t)?;
        let fibers = divisor
            .iter()
            .map(|(c, _)| {
                let f = weierstrass::fiber_analysis(t, c)?;
                Ok(FiberJson {
                    c: c.to_string(),
                    points: f
                        .points
                        .iter()
                        .map(|p| FiberPointJson {
                            x: PointJson::from_closed(&p.x),
                            residue_degree: p.residue_degree,
                            e: p.e,
                        })
                        .collect(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let singular_point = match weierstrass::singular_locus(t)? {
            SingularLocus::Smooth => None,
            SingularLocus::Singular { point, kind } => Some(SingularPointJson {
                point: point.map(|x| x.to_string()),
                kind: match kind {
                    SingularityKind::Cusp => "cusp",
                    SingularityKind::Node => "node",
                    SingularityKind::Higher => "higher",
                }
                .into(),
            }),
        };
        let genus = weierstrass::rh_genus(t)?;
        let j = match weierstrass::j_invariant(t) {
            Ok(j) => Some(j.to_string()),
            Err(Error::Cuspidal) => None,
            Err(e) => return Err(e),
        };
        Ok(WeierstrassReport {
            field: t.field().descriptor().to_string(),
            t: t.to_string(),
            smooth: singular_point.is_none(),
            singular_point,
            branch_divisor: divisor
                .iter()
                .map(|(p, m)| DivisorTerm {
                    point: p.to_string(),
                    multiplicity: *m,
                })
                .collect(),
            fibers,
            genus: genus.geometric_genus,
            arithmetic_genus: genus.arithmetic_genus,
            j,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub extension_degree: usize,
    pub agree: bool,
    pub complete: bool,
    pub invisible_entries: usize,
    pub analytic: ProfileReport,
    pub brute_force: ProfileReport,
}

impl OracleReport {
    pub fn new(
        c: &OracleComparison,
        analytic: &RamificationProfile,
        brute: &RamificationProfile,
    ) -> Self {
        OracleReport {
            extension_degree: c.extension_degree,
            agree: c.agree,
            complete: c.complete,
            invisible_entries: c.invisible_entries,
            analytic: ProfileReport::from_profile(analytic),
            brute_force: ProfileReport::from_profile(brute),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{realize_branch_points, replay};
    use crate::ramification::ramification_profile;

    #[test]
    fn map_file_round_trip() {
        let f4 = Field::parse("F2[w]/(w^2+w+1)").unwrap();
        let g = RationalMap::parse(&f4, "z^3+w", "z+1").unwrap();
        let file = MapFile::from_map(&g);
        assert_eq!(file.numerator, ["[0,1]", "[0,0]", "[0,0]", "[1,0]"]);
        let text = to_json(&file);
        assert_eq!(MapFile::parse(&text).unwrap().to_map().unwrap(), g);
        assert!(MapFile::parse("{\"field\":\"Q\"}").is_err());
    }

    #[test]
    fn profile_json_shape() {
        let q = Field::rational();
        let f = RationalMap::parse(&q, "z^3-6*z", "1").unwrap();
        let report = ProfileReport::from_profile(&ramification_profile(&f).unwrap());
        let text = to_json(&report);
        let entry = &text[text.find("\"entries\"").unwrap()..];
        let at = |k: &str| entry.find(&format!("\"{k}\":")).unwrap();
        let keys = [
            "point",
            "residue_degree",
            "e",
            "different_exponent",
            "tame",
            "branch_value",
        ];
        assert!(keys.windows(2).all(|w| at(w[0]) < at(w[1])));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let entry = &v["entries"][0];
        assert_eq!(entry["point"], serde_json::json!(["-2", "0", "1"]));
        assert_eq!(v["entries"][1]["point"], "inf");
        assert_eq!(
            report.to_profile().unwrap(),
            ramification_profile(&f).unwrap()
        );
    }

    #[test]
    fn trace_round_trip_replays() {
        let f7 = Field::prime(7).unwrap();
        let ys: Vec<_> = ["0", "1", "inf", "3"]
            .iter()
            .map(|s| ProjPoint::parse(&f7, s).unwrap())
            .collect();
        let t = realize_branch_points(&ys, &f7, 0).unwrap();
        let text = to_json(&TraceFile::from_trace(&t));
        let back = from_json::<TraceFile>(&text).unwrap().to_trace().unwrap();
        assert_eq!(back, t);
        assert_eq!(replay(&back).unwrap(), t.map);
        assert_eq!(to_json(&TraceFile::from_trace(&back)), text);
    }

    #[test]
    fn weierstrass_report() {
        let q = Field::rational();
        let r = WeierstrassReport::compute(&FieldElement::parse(&q, "0").unwrap()).unwrap();
        assert!(!r.smooth);
        assert_eq!(
            r.singular_point.as_ref().unwrap().point,
            ["0", "0", "1"].map(String::from)
        );
        assert_eq!(r.j, None);
        let v = serde_json::to_value(
            WeierstrassReport::compute(&FieldElement::parse(&q, "1").unwrap()).unwrap(),
        )
        .unwrap();
        assert!(v.get("singular_point").is_none());
        assert_eq!(v["j"], "0");
        assert_eq!(v["genus"], 1);
    }
}
