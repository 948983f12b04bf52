//! Configuration file format: parsing with key-path errors, and rendering
//! back to the same format.

use cis1_core::localization::{
    AmbientData, Configuration, FixedComponent, Flags, FourComponent, PointComponent, SurfaceComponent, Template,
};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::json::Json;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

fn schema_error(path: impl Into<String>, message: impl Into<String>) -> SchemaError {
    SchemaError {
        path: path.into(),
        message: message.into(),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    ambient: AmbientData,
    template: Template,
    flags: FlagsDoc,
    components: Vec<Value>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FlagsDoc {
    effectiveness: bool,
    convention35: bool,
    lemma64: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PointDoc {
    eps: i64,
    weights: [i64; 3],
    a: i64,
    chi: Option<i64>,
    sign: Option<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SurfaceDoc {
    weights: [i64; 2],
    a: i64,
    ev_x: i64,
    ev_y1: i64,
    ev_y2: i64,
    chi: i64,
    sign: Option<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FourDoc {
    weight: i64,
    a: i64,
    ev_x2: i64,
    ev_xy: i64,
    ev_y2: i64,
    ev_p1: i64,
    b2: i64,
    sign: i64,
    chi: i64,
}

fn join(prefix: &str, inner: &str) -> String {
    if inner == "." || inner.is_empty() {
        prefix.to_string()
    } else if inner.starts_with('[') {
        format!("{prefix}{inner}")
    } else {
        format!("{prefix}.{inner}")
    }
}

fn typed<T: DeserializeOwned>(value: Value, prefix: &str) -> Result<T, SchemaError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = join(prefix, &e.path().to_string());
        schema_error(path, e.into_inner().to_string())
    })
}

fn component(value: Value, i: usize) -> Result<FixedComponent, SchemaError> {
    let prefix = format!("components[{i}]");
    let Value::Object(mut map) = value else {
        return Err(schema_error(prefix, "expected an object"));
    };
    let kind = match map.remove("kind") {
        Some(Value::String(k)) => k,
        Some(_) => return Err(schema_error(format!("{prefix}.kind"), "expected a string")),
        None => return Err(schema_error(prefix, "missing field `kind`")),
    };
    let body = Value::Object(map);
    match kind.as_str() {
        "point" => {
            let p: PointDoc = typed(body, &prefix)?;
            if p.chi.is_some_and(|c| c != 1) {
                return Err(schema_error(format!("{prefix}.chi"), "an isolated point has chi = 1"));
            }
            if p.sign.is_some_and(|s| s != p.eps) {
                return Err(schema_error(format!("{prefix}.sign"), "the signature of a point is its orientation eps"));
            }
            Ok(FixedComponent::Point(PointComponent {
                eps: p.eps,
                weights: p.weights,
                a: p.a,
            }))
        }
        "surface" => {
            let s: SurfaceDoc = typed(body, &prefix)?;
            if s.sign.is_some_and(|v| v != 0) {
                return Err(schema_error(format!("{prefix}.sign"), "the signature of a surface is 0"));
            }
            Ok(FixedComponent::Surface(SurfaceComponent {
                weights: s.weights,
                a: s.a,
                ev_x: s.ev_x,
                ev_y1: s.ev_y1,
                ev_y2: s.ev_y2,
                chi: s.chi,
            }))
        }
        "four" => {
            let f: FourDoc = typed(body, &prefix)?;
            Ok(FixedComponent::Four(FourComponent {
                weight: f.weight,
                a: f.a,
                ev_x2: f.ev_x2,
                ev_xy: f.ev_xy,
                ev_y2: f.ev_y2,
                ev_p1: f.ev_p1,
                b2: f.b2,
                sign: f.sign,
                chi: f.chi,
            }))
        }
        other => Err(schema_error(
            format!("{prefix}.kind"),
            format!("unknown kind `{other}`, expected point, surface or four"),
        )),
    }
}

pub fn parse_configuration(text: &str) -> Result<Configuration, SchemaError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: Document = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." || path == "?" { "$".to_string() } else { path };
        schema_error(path, e.into_inner().to_string())
    })?;
    let components = doc
        .components
        .into_iter()
        .enumerate()
        .map(|(i, v)| component(v, i))
        .collect::<Result<Vec<_>, _>>()?;
    let flags = Flags {
        effectiveness: doc.flags.effectiveness,
        positive_base_point: doc.flags.convention35,
        matched_point_weights: doc.flags.lemma64,
    };
    Configuration::new(doc.ambient, doc.template, flags, components).map_err(|e| schema_error(e.path, e.message))
}

pub fn flags_json(f: Flags) -> Json {
    Json::obj([
        ("effectiveness", Json::Bool(f.effectiveness)),
        ("convention35", Json::Bool(f.positive_base_point)),
        ("lemma64", Json::Bool(f.matched_point_weights)),
    ])
}

pub fn component_json(c: &FixedComponent) -> Json {
    match c {
        FixedComponent::Point(p) => Json::obj([
            ("kind", Json::str("point")),
            ("eps", Json::int(p.eps)),
            ("weights", Json::ints(p.weights)),
            ("a", Json::int(p.a)),
        ]),
        FixedComponent::Surface(s) => Json::obj([
            ("kind", Json::str("surface")),
            ("weights", Json::ints(s.weights)),
            ("a", Json::int(s.a)),
            ("ev_x", Json::int(s.ev_x)),
            ("ev_y1", Json::int(s.ev_y1)),
            ("ev_y2", Json::int(s.ev_y2)),
            ("chi", Json::int(s.chi)),
        ]),
        FixedComponent::Four(f) => Json::obj([
            ("kind", Json::str("four")),
            ("weight", Json::int(f.weight)),
            ("a", Json::int(f.a)),
            ("ev_x2", Json::int(f.ev_x2)),
            ("ev_xy", Json::int(f.ev_xy)),
            ("ev_y2", Json::int(f.ev_y2)),
            ("ev_p1", Json::int(f.ev_p1)),
            ("b2", Json::int(f.b2)),
            ("sign", Json::int(f.sign)),
            ("chi", Json::int(f.chi)),
        ]),
    }
}

/// The configuration in the input file format.
pub fn configuration_json(cfg: &Configuration) -> Json {
    let a = cfg.ambient();
    Json::obj([
        (
            "ambient",
            Json::obj([
                ("t", Json::int(a.t)),
                ("rho", Json::int(a.rho)),
                ("euler", Json::int(a.euler)),
                ("sign", Json::int(a.sign)),
            ]),
        ),
        ("template", Json::str(cfg.template().as_str())),
        ("flags", flags_json(cfg.flags())),
        ("components", Json::Arr(cfg.components().iter().map(component_json).collect())),
    ])
}
