use std::collections::BTreeMap;

use cis1_core::algebra::Rational;
use serde::Serialize;
use serde_json::value::RawValue;

/// Output document. Objects keep keys sorted and integers are written
/// verbatim, so arbitrarily large values stay exact.
#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum Json {
    Null,
    Bool(bool),
    Int(Box<RawValue>),
    Str(String),
    Arr(Vec<Json>),
    Obj(BTreeMap<String, Json>),
}

impl Json {
    pub fn int(v: impl ToString) -> Json {
        Json::Int(RawValue::from_string(v.to_string()).expect("integers are valid JSON"))
    }

    pub fn str(s: impl Into<String>) -> Json {
        Json::Str(s.into())
    }

    pub fn rational(r: &Rational) -> Json {
        Json::Str(r.to_string())
    }

    pub fn ints<T: ToString>(xs: impl IntoIterator<Item = T>) -> Json {
        Json::Arr(xs.into_iter().map(Json::int).collect())
    }

    pub fn opt(v: Option<Json>) -> Json {
        v.unwrap_or(Json::Null)
    }

    pub fn obj<'a>(entries: impl IntoIterator<Item = (&'a str, Json)>) -> Json {
        Json::Obj(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("output documents serialize");
        s.push('\n');
        s
    }
}
