//! JSON wire formats: field descriptors, point/map/curve literals, model
//! and divisor data, and the serialized shapes of every report the CLI
//! emits. All rationals cross the wire as "a/b" strings; nothing is ever
//! converted to floating point.

use crate::config::Caps;
use crate::dynamics::{HeightEstimate, RationalMap};
use crate::elliptic::{EPoint, EllipticCurve};
use crate::error::{FfhError, Result};
use crate::ffield::parse::parse_ratfunc;
use crate::ffield::{GroundField, Place};
use crate::lattice::{
    FHReport, FiberConfig, HodgeReport, HorizRef, KodairaType, Model, ModelDivisor, ModelFiber,
    SectionData,
};
use crate::projheights::{LocalHeightProfile, ProjPoint};
use crate::rat::{rat_from_str, rat_to_string, Rat};
use crate::rigidity::{ComparisonReport, DifferenceProfile, PolarizationReport};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// Field descriptor: {"p":2,"m":2} or the compact string "F4".
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Compact(String),
    Explicit { p: u64, m: usize },
}

impl FieldSpec {
    pub fn to_field(&self) -> Result<GroundField> {
        match self {
            FieldSpec::Explicit { p, m } => GroundField::new(*p, *m),
            FieldSpec::Compact(s) => {
                let s = s.trim();
                let digits = s
                    .strip_prefix('F')
                    .or_else(|| s.strip_prefix('f'))
                    .unwrap_or(s);
                let q: u64 = digits
                    .parse()
                    .map_err(|_| FfhError::parse(format!("bad field descriptor {s:?}")))?;
                GroundField::from_order(q)
            }
        }
    }

    pub fn of_field(k: &GroundField) -> FieldSpec {
        FieldSpec::Explicit {
            p: k.p(),
            m: k.degree(),
        }
    }
}

/// Point literal as the JSON array form ["a", "b", "m"].
pub fn point_to_json(x: &ProjPoint, k: &GroundField) -> Value {
    json!([
        x.a().to_string_t(k),
        x.b().to_string_t(k),
        x.ext_index().to_string()
    ])
}

pub fn point_from_json(v: &Value, k: &GroundField) -> Result<ProjPoint> {
    if let Some(s) = v.as_str() {
        // point literal "[a : b]" with m = 1
        return ProjPoint::parse(s, 1, k);
    }
    let arr = v
        .as_array()
        .ok_or_else(|| FfhError::parse("point JSON must be a string or [a, b, m] array"))?;
    if arr.len() != 3 {
        return Err(FfhError::parse("point array must have three entries"));
    }
    let get = |i: usize| -> Result<&str> {
        arr[i]
            .as_str()
            .ok_or_else(|| FfhError::parse("point array entries must be strings"))
    };
    let a = parse_ratfunc(get(0)?, k)?;
    let b = parse_ratfunc(get(1)?, k)?;
    let m: u32 = get(2)?
        .parse()
        .map_err(|_| FfhError::parse("bad extension index in point array"))?;
    ProjPoint::from_coords(&a, &b, m, k)
}

/// Rational map JSON: {"num": "...", "den": "..."} (or a plain literal).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapWire {
    Literal(String),
    Pair { num: String, den: String },
}

impl MapWire {
    pub fn to_map(&self, k: &GroundField) -> Result<RationalMap> {
        match self {
            MapWire::Literal(s) => RationalMap::parse(s, k),
            MapWire::Pair { num, den } => RationalMap::parse(&format!("({num})/({den})"), k),
        }
    }
}

/// Curve JSON: Weierstrass coefficients as strings; absent means 0.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CurveWire {
    #[serde(default)]
    pub a1: Option<String>,
    #[serde(default)]
    pub a2: Option<String>,
    #[serde(default)]
    pub a3: Option<String>,
    #[serde(default)]
    pub a4: Option<String>,
    #[serde(default)]
    pub a6: Option<String>,
    #[serde(default)]
    pub field: Option<FieldSpec>,
}

impl CurveWire {
    pub fn to_curve(&self, k: &GroundField) -> Result<EllipticCurve> {
        let coeff = |c: &Option<String>| -> Result<crate::ffield::RatFunc> {
            match c {
                None => Ok(crate::ffield::RatFunc::zero(k)),
                Some(s) => parse_ratfunc(s, k),
            }
        };
        EllipticCurve::new(
            coeff(&self.a1)?,
            coeff(&self.a2)?,
            coeff(&self.a3)?,
            coeff(&self.a4)?,
            coeff(&self.a6)?,
            k,
        )
    }
}

/// Elliptic point JSON: "O" or {"x": "...", "y": "..."} (+ optional "m").
pub fn epoint_from_json(v: &Value, k: &GroundField) -> Result<EPoint> {
    if let Some(s) = v.as_str() {
        if s.trim() == "O" {
            return Ok(EPoint::Zero);
        }
        return Err(FfhError::parse(format!("bad elliptic point literal {s:?}")));
    }
    let obj = v
        .as_object()
        .ok_or_else(|| FfhError::parse("elliptic point must be \"O\" or {x, y}"))?;
    let get = |key: &str| -> Result<&str> {
        obj.get(key)
            .and_then(|x| x.as_str())
            .ok_or_else(|| FfhError::parse(format!("elliptic point is missing {key:?}")))
    };
    let x = parse_ratfunc(get("x")?, k)?;
    let y = parse_ratfunc(get("y")?, k)?;
    let m = obj
        .get("m")
        .map(|v| {
            v.as_u64()
                .or_else(|| v.as_str().and_then(|s| s.parse().ok()))
                .ok_or_else(|| FfhError::parse("bad extension index on elliptic point"))
        })
        .transpose()?
        .unwrap_or(1) as u32;
    Ok(EPoint::affine(x, y, m))
}

pub fn epoint_to_json(p: &EPoint, k: &GroundField) -> Value {
    match p {
        EPoint::Zero => json!("O"),
        EPoint::Affine { x, y, m } => json!({
            "x": x.to_string_t(k),
            "y": y.to_string_t(k),
            "m": m,
        }),
    }
}

/// One declared fiber: a Kodaira type name or an explicit configuration.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FiberWire {
    Named {
        place: String,
        #[serde(rename = "type")]
        kodaira: String,
    },
    Explicit {
        place: String,
        matrix: Vec<Vec<i64>>,
        mult: Vec<i64>,
        #[serde(default)]
        identity: usize,
    },
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SectionWire {
    /// Section name; "point" is accepted as an alternative key.
    #[serde(alias = "point")]
    pub id: String,
    #[serde(default)]
    pub self_int: Option<i64>,
    #[serde(default)]
    pub incidence: BTreeMap<String, usize>,
    /// Pairwise local intersection data; "local_cross" also accepted.
    #[serde(default, alias = "local_cross")]
    pub cross: BTreeMap<String, BTreeMap<String, i64>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct ModelWire {
    #[serde(default)]
    pub field: Option<FieldSpec>,
    #[serde(default)]
    pub kind: Option<String>,
    #[serde(default)]
    pub fibers: Vec<FiberWire>,
    #[serde(default)]
    pub sections: Vec<SectionWire>,
}

impl ModelWire {
    pub fn to_model(&self, k: &GroundField) -> Result<Model> {
        let trivial = self
            .kind
            .as_deref()
            .map(|s| s.eq_ignore_ascii_case("trivial"))
            .unwrap_or(self.fibers.is_empty() && self.sections.is_empty());
        if trivial {
            return Ok(Model::trivial(k));
        }
        let mut fibers = Vec::new();
        for f in &self.fibers {
            let (place, config) = match f {
                FiberWire::Named { place, kodaira } => {
                    (place.clone(), KodairaType::parse(kodaira)?.template())
                }
                FiberWire::Explicit {
                    place,
                    matrix,
                    mult,
                    identity,
                } => (
                    place.clone(),
                    FiberConfig::new(matrix.clone(), mult.clone(), *identity)?,
                ),
            };
            let degree = if place == "inf" {
                1
            } else {
                let pi = crate::ffield::parse::parse_poly(&place, k)?;
                if !pi.is_monic(k) || !pi.is_irreducible(k)? {
                    return Err(FfhError::validation(format!(
                        "fiber place {place:?} is not a monic irreducible polynomial"
                    )));
                }
                pi.degree() as u32
            };
            fibers.push(ModelFiber {
                place,
                degree,
                config,
            });
        }
        let sections = self
            .sections
            .iter()
            .map(|s| SectionData {
                id: s.id.clone(),
                self_int: s.self_int,
                incidence: s.incidence.clone(),
                cross: s.cross.clone(),
            })
            .collect();
        Model::abstract_model(k, fibers, sections)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HorizWire {
    Point { point: Value, mult: i64 },
    Section { section: String, mult: i64 },
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct VertWire {
    pub place: String,
    #[serde(default)]
    pub component: usize,
    pub coeff: String,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct DivisorWire {
    #[serde(default)]
    pub horizontal: Vec<HorizWire>,
    #[serde(default)]
    pub vertical: Vec<VertWire>,
}

impl DivisorWire {
    pub fn to_divisor(&self, k: &GroundField) -> Result<ModelDivisor> {
        let mut horizontal = Vec::new();
        for h in &self.horizontal {
            match h {
                HorizWire::Point { point, mult } => {
                    horizontal.push((HorizRef::Point(point_from_json(point, k)?), *mult));
                }
                HorizWire::Section { section, mult } => {
                    horizontal.push((HorizRef::Section(section.clone()), *mult));
                }
            }
        }
        let mut vertical = Vec::new();
        for v in &self.vertical {
            vertical.push((v.place.clone(), v.component, rat_from_str(&v.coeff)?));
        }
        Ok(ModelDivisor {
            horizontal,
            vertical,
        })
    }
}

// ---------------------------------------------------------------------------
// Report serialization
// ---------------------------------------------------------------------------

pub fn estimate_to_json(e: &HeightEstimate) -> Value {
    json!({
        "value": rat_to_string(&e.value),
        "error_bound": rat_to_string(&e.error_bound),
        "exact": e.exact,
    })
}

pub fn rat_json(r: &Rat) -> Value {
    json!(rat_to_string(r))
}

pub fn place_json(p: &Place, k: &GroundField) -> Value {
    json!({
        "place": p.to_string_t(k),
        "degree": p.degree(),
    })
}

pub fn profile_to_json(prof: &LocalHeightProfile, k: &GroundField) -> Value {
    json!({
        "entries": prof.entries.iter().map(|(p, c)| json!({
            "place": p.to_string_t(k),
            "degree": p.degree(),
            "contribution": rat_to_string(c),
        })).collect::<Vec<_>>(),
        "total": rat_to_string(&prof.total),
    })
}

pub fn hodge_report_to_json(rep: &HodgeReport) -> Value {
    json!({
        "semidefinite": rep.semidefinite,
        "kernel_dim": rep.kernel_dim,
        "kernel_is_mult_span": rep.kernel_is_mult_span,
        "pivots": rep.pivots.iter().map(rat_to_string).collect::<Vec<_>>(),
        "witness": rep.witness,
        "pass": rep.pass,
    })
}

pub fn fh_report_to_json(rep: &FHReport) -> Value {
    json!({
        "pairing": rat_to_string(&rep.pairing),
        "minus_two_nt_height": rat_to_string(&rep.nt_value),
        "nt_error_bound": rat_to_string(&rep.nt_error),
        "pass": rep.pass,
    })
}

pub fn comparison_report_to_json(rep: &ComparisonReport, k: &GroundField) -> Value {
    let pts = |v: &Vec<ProjPoint>| -> Vec<String> { v.iter().map(|p| p.to_string_t(k)).collect() };
    json!({
        "ext_index": rep.ext_index,
        "deg_bound": rep.deg_bound,
        "points_scanned": rep.points_scanned,
        "in_both": pts(&rep.in_both),
        "only_f": pts(&rep.only_f),
        "only_g": pts(&rep.only_g),
        "agree_on_scan": rep.agree_on_scan,
        "nonconstant_overlap": rep.nonconstant_overlap,
        "overlap_threshold": rep.overlap_threshold,
    })
}

pub fn difference_profile_to_json(prof: &DifferenceProfile, k: &GroundField) -> Value {
    json!({
        "per_point": prof.per_point.iter().map(|(p, d, b)| json!({
            "point": p.to_string_t(k),
            "difference": rat_to_string(d),
            "error_bound": rat_to_string(b),
        })).collect::<Vec<_>>(),
        "min": rat_to_string(&prof.min),
        "max": rat_to_string(&prof.max),
        "spread": rat_to_string(&prof.spread),
    })
}

pub fn polarization_report_to_json(rep: &PolarizationReport, k: &GroundField) -> Value {
    json!({
        "degree": rep.degree,
        "rows": rep.rows.iter().map(|r| json!({
            "point": r.point.to_string_t(k),
            "scaled": rat_to_string(&r.scaled),
            "reference": rat_to_string(&r.reference),
            "within_bound": r.within_bound,
            "zero_class_agrees": r.zero_class_agrees,
        })).collect::<Vec<_>>(),
        "pass": rep.pass,
    })
}

pub fn caps_to_json(caps: &Caps, eps: &Rat, threads: usize) -> Value {
    json!({
        "eps": rat_to_string(eps),
        "enum_cap": caps.enum_cap,
        "iter_cap": caps.iter_cap,
        "seed": caps.seed,
        "threads": threads,
    })
}

/// Combined input for the Faltings-Hriljac check: a model, a degree-0
/// divisor on it, and (for elliptic generic fiber) the curve and the class
/// of the divisor as a point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FhInput {
    pub field: FieldSpec,
    #[serde(default)]
    pub curve: Option<CurveWire>,
    #[serde(default)]
    pub class: Option<Value>,
    pub model: ModelWire,
    pub divisor: DivisorWire,
}

impl FhInput {
    #[allow(clippy::type_complexity)]
    pub fn load(
        &self,
    ) -> Result<(
        GroundField,
        Model,
        ModelDivisor,
        Option<(EllipticCurve, EPoint)>,
    )> {
        let k = self.field.to_field()?;
        let model = self.model.to_model(&k)?;
        let divisor = self.divisor.to_divisor(&k)?;
        let class = match (&self.curve, &self.class) {
            (Some(cw), Some(pv)) => {
                let curve = cw.to_curve(&k)?;
                let point = epoint_from_json(pv, &k)?;
                Some((curve, point))
            }
            (None, None) => None,
            _ => {
                return Err(FfhError::parse(
                    "fh input needs both curve and class, or neither",
                ))
            }
        };
        Ok((k, model, divisor, class))
    }
}

/// The shipped input schemas, printable via `--emit-schema`.
pub fn schemas() -> Value {
    json!({
        "field": {
            "oneOf": [
                {"type": "string", "pattern": "^F[0-9]+$", "description": "prime power order"},
                {"type": "object", "required": ["p", "m"],
                 "properties": {"p": {"type": "integer"}, "m": {"type": "integer"}}}
            ]
        },
        "point": {
            "oneOf": [
                {"type": "string", "description": "literal [a : b] over the active field"},
                {"type": "array", "items": {"type": "string"}, "minItems": 3, "maxItems": 3,
                 "description": "[\"a\", \"b\", \"m\"]"}
            ]
        },
        "map": {
            "oneOf": [
                {"type": "string", "description": "literal in z, e.g. (z^2+t)/z"},
                {"type": "object", "required": ["num", "den"],
                 "properties": {"num": {"type": "string"}, "den": {"type": "string"}}}
            ]
        },
        "curve": {
            "type": "object",
            "properties": {
                "a1": {"type": "string"}, "a2": {"type": "string"}, "a3": {"type": "string"},
                "a4": {"type": "string"}, "a6": {"type": "string"},
                "field": {"$ref": "#/field"}
            }
        },
        "epoint": {
            "oneOf": [
                {"const": "O"},
                {"type": "object", "required": ["x", "y"],
                 "properties": {"x": {"type": "string"}, "y": {"type": "string"},
                                 "m": {"type": "integer"}}}
            ]
        },
        "model": {
            "type": "object",
            "properties": {
                "field": {"$ref": "#/field"},
                "kind": {"enum": ["trivial", "abstract"]},
                "fibers": {"type": "array", "items": {"oneOf": [
                    {"type": "object", "required": ["place", "type"],
                     "properties": {"place": {"type": "string"}, "type": {"type": "string"}}},
                    {"type": "object", "required": ["place", "matrix", "mult"],
                     "properties": {"place": {"type": "string"},
                                     "matrix": {"type": "array"},
                                     "mult": {"type": "array"},
                                     "identity": {"type": "integer"}}}
                ]}},
                "sections": {"type": "array", "items": {
                    "type": "object", "required": ["id"],
                    "properties": {"id": {"type": "string"},
                                    "self_int": {"type": "integer"},
                                    "incidence": {"type": "object"},
                                    "cross": {"type": "object"}}
                }}
            }
        },
        "divisor": {
            "type": "object",
            "properties": {
                "horizontal": {"type": "array", "items": {"oneOf": [
                    {"type": "object", "required": ["point", "mult"]},
                    {"type": "object", "required": ["section", "mult"]}
                ]}},
                "vertical": {"type": "array", "items": {
                    "type": "object", "required": ["place", "coeff"],
                    "properties": {"place": {"type": "string"},
                                    "component": {"type": "integer"},
                                    "coeff": {"type": "string", "description": "rational a/b"}}
                }}
            }
        },
        "estimate": {
            "type": "object", "required": ["value", "error_bound", "exact"],
            "properties": {"value": {"type": "string"},
                            "error_bound": {"type": "string"},
                            "exact": {"type": "boolean"}}
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_spec_round_trip() {
        let k = FieldSpec::Compact("F4".into()).to_field().unwrap();
        assert_eq!(k.p(), 2);
        assert_eq!(k.degree(), 2);
        let k2 = FieldSpec::Explicit { p: 5, m: 1 }.to_field().unwrap();
        assert_eq!(k2.p(), 5);
        assert!(FieldSpec::Compact("F6".into()).to_field().is_err());
    }

    #[test]
    fn point_json_round_trip() {
        let k = GroundField::new(3, 1).unwrap();
        let x = ProjPoint::parse("[t^2+1 : t]", 1, &k).unwrap();
        let j = point_to_json(&x, &k);
        let y = point_from_json(&j, &k).unwrap();
        assert_eq!(x, y);
        // string form also accepted
        let z = point_from_json(&json!("[t^2+1 : t]"), &k).unwrap();
        assert_eq!(x, z);
    }

    #[test]
    fn model_json_parses() {
        let k = GroundField::new(5, 1).unwrap();
        let wire: ModelWire = serde_json::from_value(json!({
            "fibers": [
                {"place": "t", "type": "IV"},
                {"place": "inf", "type": "I0*"}
            ],
            "sections": [
                {"id": "O", "self_int": -1, "incidence": {"t": 0, "inf": 0}, "cross": {}},
                {"id": "P", "self_int": -1, "incidence": {"t": 0, "inf": 3},
                 "cross": {"O": {}}}
            ]
        }))
        .unwrap();
        let model = wire.to_model(&k).unwrap();
        assert_eq!(model.fibers.len(), 2);
        assert_eq!(model.fibers[1].config.components(), 5);
        let div: DivisorWire = serde_json::from_value(json!({
            "horizontal": [
                {"section": "P", "mult": 1},
                {"section": "O", "mult": -1}
            ]
        }))
        .unwrap();
        let d = div.to_divisor(&k).unwrap();
        assert_eq!(d.generic_degree(&model).unwrap(), 0);
    }

    #[test]
    fn model_json_accepts_alternate_keys() {
        let k = GroundField::new(5, 1).unwrap();
        let wire: ModelWire = serde_json::from_value(json!({
            "fibers": [{"place": "t", "type": "I2"}],
            "sections": [
                {"point": "O", "self_int": -1, "incidence": {"t": 0}, "local_cross": {}},
                {"point": "P", "self_int": -1, "incidence": {"t": 1},
                 "local_cross": {"O": {"t": 0}}}
            ]
        }))
        .unwrap();
        let model = wire.to_model(&k).unwrap();
        assert_eq!(model.sections.len(), 2);
        assert_eq!(model.sections[1].id, "P");
        assert!(model.sections[1].cross.contains_key("O"));
    }

    #[test]
    fn curve_json_parses() {
        let k = GroundField::new(5, 1).unwrap();
        let wire: CurveWire = serde_json::from_value(json!({
            "a4": "t^2", "a6": "t^2"
        }))
        .unwrap();
        let e = wire.to_curve(&k).unwrap();
        assert!(!e.is_isotrivial());
        let p = epoint_from_json(&json!({"x": "4", "y": "2"}), &k).unwrap();
        assert!(e.contains(&p));
        assert_eq!(epoint_from_json(&json!("O"), &k).unwrap(), EPoint::Zero);
    }

    #[test]
    fn schemas_are_valid_json() {
        let s = schemas();
        assert!(s.get("point").is_some());
        assert!(s.get("divisor").is_some());
    }
}
