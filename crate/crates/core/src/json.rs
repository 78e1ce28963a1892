//! JSON views of terms, types and reports.
//!
//! AST nodes are objects with a `tag` field matching the constructor name.
//! Naturals serialize as decimal integers (arbitrary precision), terms in
//! reports as their surface syntax, points as their literal syntax.

use std::str::FromStr;

use num_traits::ToPrimitive;
use serde_json::{json, Map, Number, Value};

use crate::continuity::{EquivalenceReport, ModulusReport, UcReport};
use crate::pretty::pretty_term;
use crate::syntax::{FiniteType, Term};
use crate::Nat;

pub fn nat_json(n: &Nat) -> Value {
    match n.to_u64() {
        Some(small) => json!(small),
        None => Value::Number(
            Number::from_str(&n.to_string()).expect("decimal digits form a JSON number"),
        ),
    }
}

pub fn type_json(ty: &FiniteType) -> Value {
    match ty {
        FiniteType::Nat => json!({ "tag": "Nat" }),
        FiniteType::Arrow(domain, codomain) => json!({
            "tag": "Arrow",
            "domain": type_json(domain),
            "codomain": type_json(codomain),
        }),
        FiniteType::Prod(left, right) => json!({
            "tag": "Prod",
            "left": type_json(left),
            "right": type_json(right),
        }),
    }
}

pub fn term_json(t: &Term) -> Value {
    match t {
        Term::Var(index) => json!({ "tag": "Var", "index": index }),
        Term::Lam(domain, body) => json!({
            "tag": "Lam",
            "domain": type_json(domain),
            "body": term_json(body),
        }),
        Term::App(fun, arg) => json!({
            "tag": "App",
            "fun": term_json(fun),
            "arg": term_json(arg),
        }),
        Term::Zero => json!({ "tag": "Zero" }),
        Term::Succ => json!({ "tag": "Succ" }),
        Term::Rec(result) => json!({ "tag": "Rec", "result": type_json(result) }),
        Term::Pair(fst, snd) => json!({
            "tag": "Pair",
            "fst": term_json(fst),
            "snd": term_json(snd),
        }),
        Term::Fst => json!({ "tag": "Fst" }),
        Term::Snd => json!({ "tag": "Snd" }),
    }
}

impl ModulusReport {
    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        map.insert("f".into(), json!(pretty_term(&self.f)));
        map.insert("alpha".into(), json!(self.alpha.to_string()));
        map.insert("modulus_bb".into(), nat_json(&self.modulus_bb));
        map.insert("modulus_oracle".into(), nat_json(&self.modulus_oracle));
        map.insert("verified".into(), json!(self.verified));
        map.insert(
            "counterexample".into(),
            match &self.counterexample {
                Some(point) => json!(point.to_string()),
                None => Value::Null,
            },
        );
        map.insert(
            "perturbations_tested".into(),
            json!(self.perturbations_tested),
        );
        map.insert("exhaustive".into(), json!(self.exhaustive));
        Value::Object(map)
    }
}

impl UcReport {
    pub fn to_json(&self) -> Value {
        json!({
            "f": pretty_term(&self.f),
            "uc_modulus": self.uc_modulus,
            "prefixes_checked": self.prefixes_checked,
            "max_depth_hit": self.max_depth_hit,
        })
    }
}

impl EquivalenceReport {
    pub fn to_json(&self) -> Value {
        json!({
            "f": pretty_term(&self.f),
            "points_checked": self.points_checked,
            "all_equal": self.all_equal(),
            "mismatches": self
                .mismatches
                .iter()
                .map(|m| json!({
                    "alpha": m.alpha.to_string(),
                    "direct": nat_json(&m.direct),
                    "translated": nat_json(&m.translated),
                }))
                .collect::<Vec<_>>(),
        })
    }
}
