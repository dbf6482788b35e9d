//! JSON encodings of library values, and decoding of recipe documents.

use serde_json::{json, Map, Value};
use solenoid_core::cohomology::{DirectLimitElement, SequenceDescriptor, SupernaturalNumber};
use solenoid_core::long_line::{DistinctReason, OrbitClassLabel};
use solenoid_core::parse::{parse_long_point, parse_ordinal, parse_tower_point};
use solenoid_core::stage::arcs::{CyclicArc, WitnessReport};
use solenoid_core::stage::recipe::{
    CommuteReport, DistinctionWitness, HomeoRecipe, RecipeLevel,
};
use solenoid_core::stage::thread::Thread;
use solenoid_core::stage::token::{IntervalAutToken, TokenDomain};
use solenoid_core::stage::InnerPoint;
use solenoid_core::tower::TowerAutomorphism;
use solenoid_core::{cohomology, Error, Result};

pub fn strings<T: ToString>(items: &[T]) -> Value {
    Value::from(items.iter().map(ToString::to_string).collect::<Vec<_>>())
}

pub fn thread(t: &Thread) -> Value {
    json!({ "p": t.p(), "points": strings(t.points()) })
}

pub fn class(label: &OrbitClassLabel) -> Value {
    match label {
        OrbitClassLabel::Ng(g) => json!({ "kind": "ng", "gamma": g.to_string() }),
        OrbitClassLabel::Interval(g) => json!({ "kind": "interval", "gamma": g.to_string() }),
    }
}

pub fn long_reason(r: &DistinctReason) -> Value {
    match r {
        DistinctReason::OmegaPowerBlocks { left, right } => json!({
            "reason": "omega_power_blocks",
            "left": left.to_string(),
            "right": right.to_string(),
        }),
        DistinctReason::NgVersusInterval => json!({ "reason": "ng_versus_interval" }),
    }
}

pub fn witness(w: &DistinctionWitness) -> Value {
    match w {
        DistinctionWitness::TowerTypes { left, right } => {
            json!({ "reason": "tower_types", "left": left, "right": right })
        }
        DistinctionWitness::LongLine(r) => long_reason(r),
    }
}

fn domain(d: &TokenDomain) -> Value {
    match d {
        TokenDomain::LongInterval { block } => {
            json!({ "kind": "long_interval", "block": block.to_string() })
        }
        TokenDomain::MetricArc { bound } => json!({ "kind": "metric_arc", "bound": bound.to_string() }),
        TokenDomain::TowerTail { kappa } => json!({ "kind": "tower_tail", "kappa": kappa }),
    }
}

pub fn hat(t: &IntervalAutToken) -> Value {
    match t {
        IntervalAutToken::Identity => Value::from("identity"),
        IntervalAutToken::Mapping {
            domain: d,
            source,
            target,
        } => json!({
            "domain": domain(d),
            "source": source.to_string(),
            "target": target.to_string(),
        }),
    }
}

pub fn tower_token(a: &TowerAutomorphism) -> Value {
    json!({ "kappa": a.kappa, "translation": a.translation, "hat": hat(&a.hat) })
}

pub fn recipe(r: &HomeoRecipe) -> Value {
    Value::from(
        r.levels()
            .iter()
            .map(|l| {
                json!({
                    "level": l.level,
                    "stage": l.stage,
                    "rot": l.rot,
                    "trans": l.trans,
                    "hat": hat(&l.hat),
                })
            })
            .collect::<Vec<_>>(),
    )
}

pub fn commute_report(r: &CommuteReport) -> Value {
    let cx = r.counterexample.as_ref().map(|c| {
        json!({
            "level": c.level,
            "point": c.point.to_string(),
            "upper_then_bond": c.upper_then_bond,
            "bond_then_lower": c.bond_then_lower,
        })
    });
    json!({ "commutes": r.holds(), "checked": r.checked, "counterexample": cx })
}

pub fn arc(a: &CyclicArc) -> Value {
    if a.is_proper() {
        json!({ "start": a.start().to_string(), "end": a.end().to_string() })
    } else {
        json!({ "full": true })
    }
}

pub fn witness_report(w: &WitnessReport) -> Value {
    let misses: Vec<Value> = w
        .misses
        .iter()
        .map(|m| json!({ "c": m.c_component, "g": m.g_component, "point": m.point.to_string() }))
        .collect();
    json!({
        "stage": w.stage,
        "degree": w.degree,
        "c_components": w.c_components.iter().map(arc).collect::<Vec<_>>(),
        "g_components": w.g_components.iter().map(arc).collect::<Vec<_>>(),
        "misses": misses,
        "holds": w.holds(),
    })
}

pub fn supernatural(s: &SupernaturalNumber) -> Value {
    let finite: Map<String, Value> = s
        .finite()
        .iter()
        .map(|(q, m)| (q.to_string(), Value::from(*m)))
        .collect();
    json!({
        "finite": finite,
        "infinite": s.infinite().iter().collect::<Vec<_>>(),
        "text": s.to_string(),
    })
}

pub fn element(s: &SequenceDescriptor, u: &DirectLimitElement) -> Value {
    json!({
        "level": u.level,
        "numerator": u.numerator.to_string(),
        "value": cohomology::dl_value(s, u).to_string(),
    })
}

fn recipe_error(message: impl Into<String>) -> Error {
    Error::InvalidRecipe(message.into())
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| recipe_error(format!("missing field \"{key}\"")))
}

fn text_field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a str> {
    field(obj, key)?
        .as_str()
        .ok_or_else(|| recipe_error(format!("field \"{key}\" must be a string")))
}

fn int_field(obj: &Map<String, Value>, key: &str) -> Result<i64> {
    field(obj, key)?
        .as_i64()
        .ok_or_else(|| recipe_error(format!("field \"{key}\" must be an integer")))
}

fn decode_hat(v: &Value) -> Result<IntervalAutToken> {
    if v.is_null() || v.as_str() == Some("identity") {
        return Ok(IntervalAutToken::Identity);
    }
    let obj = v
        .as_object()
        .ok_or_else(|| recipe_error("hat must be \"identity\" or an object"))?;
    let dom = field(obj, "domain")?
        .as_object()
        .ok_or_else(|| recipe_error("hat domain must be an object"))?;
    let (source, target) = (text_field(obj, "source")?, text_field(obj, "target")?);
    let (d, s, t) = match text_field(dom, "kind")? {
        "long_interval" => (
            TokenDomain::LongInterval {
                block: parse_ordinal(text_field(dom, "block")?)?,
            },
            InnerPoint::Long(parse_long_point(source)?),
            InnerPoint::Long(parse_long_point(target)?),
        ),
        "metric_arc" => (
            TokenDomain::MetricArc {
                bound: parse_ordinal(text_field(dom, "bound")?)?,
            },
            InnerPoint::Tower(parse_tower_point(source, 1)?),
            InnerPoint::Tower(parse_tower_point(target, 1)?),
        ),
        "tower_tail" => {
            let kappa = u32::try_from(int_field(dom, "kappa")?)
                .ok()
                .filter(|&k| k >= 2)
                .ok_or_else(|| recipe_error("tower_tail needs kappa ≥ 2"))?;
            (
                TokenDomain::TowerTail { kappa },
                InnerPoint::Tower(parse_tower_point(source, kappa - 1)?),
                InnerPoint::Tower(parse_tower_point(target, kappa - 1)?),
            )
        }
        other => return Err(recipe_error(format!("unknown hat domain \"{other}\""))),
    };
    Ok(IntervalAutToken::mapping(d, s, t))
}

/// Reads a recipe document: an array of `{level, rot, trans, hat}` with an
/// optional `stage`; missing stages are `sizes[level − 1]`.
pub fn decode_recipe(text: &str, sizes: &[u64]) -> Result<HomeoRecipe> {
    let doc: Value = serde_json::from_str(text).map_err(|e| recipe_error(e.to_string()))?;
    let items = doc
        .as_array()
        .ok_or_else(|| recipe_error("a recipe is a JSON array of levels"))?;
    let mut levels = Vec::with_capacity(items.len());
    for item in items {
        let obj = item
            .as_object()
            .ok_or_else(|| recipe_error("each level is a JSON object"))?;
        let level = usize::try_from(int_field(obj, "level")?)
            .map_err(|_| recipe_error("level must be positive"))?;
        let stage = match obj.get("stage") {
            Some(v) => v
                .as_u64()
                .ok_or_else(|| recipe_error("stage must be a positive integer"))?,
            None => *level
                .checked_sub(1)
                .and_then(|i| sizes.get(i))
                .ok_or_else(|| recipe_error(format!("no stage size known for level {level}")))?,
        };
        let rot = int_field(obj, "rot")?;
        levels.push(RecipeLevel {
            level,
            stage,
            rot: rot.rem_euclid(stage.max(1) as i64) as u64,
            trans: int_field(obj, "trans")?,
            hat: decode_hat(obj.get("hat").unwrap_or(&Value::Null))?,
        });
    }
    HomeoRecipe::from_levels(&levels)
}
