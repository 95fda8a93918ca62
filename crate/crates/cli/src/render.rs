//! JSON and text renderings of exact values. Rationals are written as
//! `"p/q"` strings with a parallel 12-digit decimal field.

use num_traits::ToPrimitive;
use serde_json::{json, Value};
use simplex_billiards::exactla::Rat;
use simplex_billiards::hull::format_decimal;
use simplex_billiards::simplex::{BaryPoint, CartVector};

pub fn decimal(x: &Rat) -> String {
    format_decimal(x.to_f64().unwrap_or(f64::NAN))
}

pub fn rat(x: &Rat) -> Value {
    json!({ "exact": x.to_string(), "decimal": decimal(x) })
}

pub fn rats(xs: &[Rat]) -> Value {
    json!({
        "exact": xs.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "decimal": xs.iter().map(decimal).collect::<Vec<_>>(),
    })
}

/// Canonical integer barycentrics plus normalized coordinates.
pub fn point(p: &BaryPoint) -> Value {
    let normalized = p.to_cart();
    json!({
        "barycentric": p.coords().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "normalized": normalized.coords().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "decimal": normalized.coords().iter().map(decimal).collect::<Vec<_>>(),
    })
}

pub fn vector(u: &CartVector) -> Value {
    rats(u.comps())
}

pub fn tuple(xs: &[Rat]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn decimal_tuple(xs: &[Rat]) -> String {
    let parts: Vec<String> = xs.iter().map(decimal).collect();
    format!("({})", parts.join(","))
}

pub fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
