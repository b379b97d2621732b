//! JSON encodings. Rationals are strings `"p/q"`, `"p"` when integral.

use serde_json::{json, Value};
use wallcross_core::arith::format_rational;
use wallcross_core::freelie::{bracket_tree, BracketTree, LiePoly};
use wallcross_core::stability::{ClassVec, ParabolicWeight};
use wallcross_core::wallcross::{GeneratorLabel, LieExpr};
use wallcross_core::{EpsPoly, Rational};

pub const SCHEMA: &str = "1";

pub fn rational(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn rationals(qs: &[Rational]) -> Value {
    Value::Array(qs.iter().map(rational).collect())
}

/// `[[exponent, "p/q"], ...]`.
pub fn eps(p: &EpsPoly) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(e, c)| json!([e, format_rational(c)]))
            .collect(),
    )
}

pub fn weight(c: &ParabolicWeight) -> Value {
    Value::Array(c.values().iter().map(eps).collect())
}

pub fn class(c: &ClassVec) -> Value {
    let mut v = json!({ "r": c.r, "d": c.d });
    if let Some(f) = &c.f {
        v["f"] = json!(f);
    }
    if let Some(x) = c.v {
        v["v"] = json!(x);
    }
    v
}

pub fn label(l: &GeneratorLabel) -> Value {
    let mut v = json!({ "kind": l.kind_name(), "r": l.r, "d": l.d });
    if let Some(w) = &l.weight {
        v["weight_tag"] = Value::Array(w.iter().map(eps).collect());
    }
    v
}

fn tree(t: &BracketTree<GeneratorLabel>) -> Value {
    match t {
        BracketTree::Leaf(l) => label(l),
        BracketTree::Node(a, b) => json!([tree(a), tree(b)]),
    }
}

pub fn lie_expr(e: &LieExpr) -> Value {
    Value::Array(
        e.terms()
            .iter()
            .map(|(w, c)| json!({ "coefficient": format_rational(c), "bracket": tree(&bracket_tree(w)) }))
            .collect(),
    )
}

/// Letters are 1-based.
pub fn lie_poly(p: &LiePoly<usize>) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(w, c)| {
                let word: Vec<usize> = w.iter().map(|i| i + 1).collect();
                json!({ "lyndon_word": word, "coefficient": format_rational(c) })
            })
            .collect(),
    )
}

/// Wraps a command payload with the schema tag and command name.
pub fn envelope(command: &str, payload: Value) -> Value {
    let mut v = json!({ "schema": SCHEMA, "command": command });
    if let (Value::Object(out), Value::Object(extra)) = (&mut v, payload) {
        out.extend(extra);
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use wallcross_core::arith::{int, rat};

    #[test]
    fn encodings() {
        assert_eq!(rational(&rat(-3, 4)), json!("-3/4"));
        assert_eq!(rational(&int(2)), json!("2"));
        let p: EpsPoly = "1-e^2".parse().unwrap();
        assert_eq!(eps(&p), json!([[0, "1"], [2, "-1"]]));
        assert_eq!(
            class(&ClassVec::with_flag(2, 1, vec![0, 1, 1])),
            json!({ "r": 2, "d": 1, "f": [0, 1, 1] })
        );
        let v = envelope("x", json!({ "value": "1" }));
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["command"], "x");
        assert_eq!(v["value"], "1");
    }
}
