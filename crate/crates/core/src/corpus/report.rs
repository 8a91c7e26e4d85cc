//! Reports: stable machine-readable fields plus a text rendering, and the
//! comparison against an instance's expected block.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

use super::instance::Expected;
use crate::values::GroupElement;

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct LevelSummary {
    pub level: u32,
    /// `None` when the module is not finitely generated
    pub count: Option<usize>,
    pub generators: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub name: String,
    pub kind: String,
    pub verdict: String,
    /// coordinate vectors, rationals written `a/b`
    pub witnesses: Vec<Vec<String>>,
    pub e: Option<Value>,
    pub invariant_factors: Option<Vec<Value>>,
    pub coset_values: Option<Vec<Vec<String>>>,
    pub levels: Option<Vec<LevelSummary>>,
    pub details: BTreeMap<String, Value>,
    pub notes: Vec<String>,
    /// differences from the expected block; empty when none was given
    pub mismatches: Vec<String>,
}

pub fn int_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(n.to_string()),
    }
}

pub fn coords(e: &GroupElement) -> Vec<String> {
    e.coords().iter().map(BigRational::to_string).collect()
}

impl Report {
    pub fn new(name: &str, kind: &str) -> Self {
        Report {
            name: name.to_string(),
            kind: kind.to_string(),
            ..Default::default()
        }
    }

    pub fn detail(&mut self, key: &str, v: impl Into<Value>) {
        self.details.insert(key.to_string(), v.into());
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Record every field of `exp` that disagrees with the report.
    pub fn compare(&mut self, exp: &Expected) {
        let mut diffs = Vec::new();
        if let Some(v) = &exp.verdict {
            if v != &self.verdict {
                diffs.push(format!("verdict: expected {v:?}, computed {:?}", self.verdict));
            }
        }
        if let Some(w) = &exp.witness {
            match w.iter().map(|x| x.to_rational()).collect::<Result<Vec<_>, _>>() {
                Ok(w) => {
                    let want: Vec<String> = w.iter().map(BigRational::to_string).collect();
                    if self.witnesses.first() != Some(&want) {
                        diffs.push(format!(
                            "witness: expected {want:?}, computed {:?}",
                            self.witnesses.first()
                        ));
                    }
                }
                Err(e) => diffs.push(format!("witness: {e}")),
            }
        }
        if let Some(e) = exp.e {
            if self.e != Some(Value::from(e)) {
                diffs.push(format!("e: expected {e}, computed {:?}", self.e));
            }
        }
        if let Some(f) = &exp.invariant_factors {
            let want: Vec<Value> = f.iter().map(|&x| Value::from(x)).collect();
            if self.invariant_factors.as_ref() != Some(&want) {
                diffs.push(format!(
                    "invariant_factors: expected {f:?}, computed {:?}",
                    self.invariant_factors
                ));
            }
        }
        if let Some(c) = &exp.counts {
            let got: Option<Vec<Option<usize>>> = self.levels.as_ref().map(|l| l.iter().map(|x| x.count).collect());
            let want: Vec<Option<usize>> = c.iter().map(|&x| Some(x)).collect();
            if got.as_ref() != Some(&want) {
                diffs.push(format!("counts: expected {c:?}, computed {got:?}"));
            }
        }
        for (k, v) in &exp.details {
            let want = serde_json::to_value(v).unwrap_or(Value::Null);
            match self.details.get(k) {
                Some(got) if got == &want => {}
                got => diffs.push(format!(
                    "details.{k}: expected {want}, computed {}",
                    got.unwrap_or(&Value::Null)
                )),
            }
        }
        self.mismatches = diffs;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} [{}]: {}", self.name, self.kind, self.verdict);
        for w in &self.witnesses {
            let _ = writeln!(s, "  witness ({})", w.join(", "));
        }
        if let Some(e) = &self.e {
            let _ = writeln!(s, "  e = {e}");
        }
        if let Some(f) = &self.invariant_factors {
            let f: Vec<String> = f.iter().map(Value::to_string).collect();
            let _ = writeln!(s, "  invariant factors [{}]", f.join(", "));
        }
        if let Some(c) = &self.coset_values {
            let c: Vec<String> = c.iter().map(|v| format!("({})", v.join(", "))).collect();
            let _ = writeln!(s, "  coset values {}", c.join(" "));
        }
        if let Some(levels) = &self.levels {
            for l in levels {
                match l.count {
                    Some(n) => {
                        let _ = writeln!(s, "  level {}: {n} module generators", l.level);
                    }
                    None => {
                        let _ = writeln!(s, "  level {}: not finitely generated", l.level);
                    }
                }
            }
        }
        for (k, v) in &self.details {
            let _ = writeln!(s, "  {k}: {v}");
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        if self.mismatches.is_empty() {
            let _ = writeln!(s, "  status: ok");
        } else {
            let _ = writeln!(s, "  status: MISMATCH");
            for m in &self.mismatches {
                let _ = writeln!(s, "    - {m}");
            }
        }
        s
    }
}
