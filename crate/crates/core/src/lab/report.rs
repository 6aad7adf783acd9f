use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Terms must agree exactly.
    Strict,
    /// Terms may differ by the unit the identity predicts.
    UnitTolerant,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(Mode::Strict),
            "unit-tolerant" | "unit_tolerant" => Ok(Mode::UnitTolerant),
            _ => Err(Error::InvalidParameter(format!("unknown mode `{s}`"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Strict => "strict",
            Mode::UnitTolerant => "unit_tolerant",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// Sides differ by a monomial unit (recorded as the residual).
    Residual,
    Mismatch,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Residual => "residual",
            Verdict::Mismatch => "mismatch",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TermOutcome {
    pub label: String,
    pub verdict: Verdict,
    /// `lhs / rhs` when it is a monomial unit.
    pub residual: Option<String>,
    /// Whether this outcome counts as passing in the report's mode.
    pub passes: bool,
}

impl TermOutcome {
    fn to_json(&self) -> Value {
        json!({
            "composition": self.label,
            "verdict": self.verdict.name(),
            "residual": self.residual,
            "passes": self.passes,
        })
    }
}

/// Outcome of one identity check.
#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub identity: String,
    pub params: Map<String, Value>,
    pub mode: Mode,
    pub terms: Vec<TermOutcome>,
    /// Comparison of the summed sides.
    pub aggregate: Option<TermOutcome>,
    pub millis: Option<u128>,
}

impl IdentityReport {
    pub fn new(identity: &str, params: Value, mode: Mode) -> Self {
        let params = match params {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        IdentityReport { identity: identity.into(), params, mode, terms: Vec::new(), aggregate: None, millis: None }
    }

    pub fn pass(&self) -> bool {
        self.terms.iter().all(|t| t.passes) && self.aggregate.as_ref().is_none_or(|a| a.passes)
    }

    pub fn residuals(&self) -> impl Iterator<Item = (&str, Option<&str>)> {
        self.terms.iter().map(|t| (t.label.as_str(), t.residual.as_deref()))
    }

    /// Concatenates several reports of the same identity.
    pub fn merge(identity: &str, params: Value, mode: Mode, parts: Vec<IdentityReport>) -> Self {
        let mut out = IdentityReport::new(identity, params, mode);
        for p in parts {
            let prefix = p
                .params
                .iter()
                .filter(|(k, v)| out.params.get(*k) != Some(v))
                .map(|(k, v)| format!("{k}={}", v))
                .collect::<Vec<_>>()
                .join(" ");
            for mut t in p.terms {
                t.label = format!("{prefix} {}", t.label);
                out.terms.push(t);
            }
            if let Some(mut a) = p.aggregate {
                a.label = format!("{prefix} {}", a.label);
                out.terms.push(a);
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "identity": self.identity,
            "params": self.params,
            "mode": self.mode.name(),
            "terms": self.terms.iter().map(TermOutcome::to_json).collect::<Vec<_>>(),
            "aggregate": self.aggregate.as_ref().map(TermOutcome::to_json),
            "verdict": if self.pass() { "pass" } else { "fail" },
            "millis": self.millis,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(s, "{} [{}] mode={}", self.identity, params.join(" "), self.mode.name());
        let line = |s: &mut String, t: &TermOutcome| {
            let _ = write!(s, "  {:<28} {}", t.label, t.verdict.name());
            if let Some(r) = &t.residual {
                let _ = write!(s, "  ratio {r}");
            }
            if !t.passes {
                s.push_str("  FAIL");
            }
            s.push('\n');
        };
        for t in &self.terms {
            line(&mut s, t);
        }
        if let Some(a) = &self.aggregate {
            line(&mut s, a);
        }
        let _ = writeln!(s, "verdict: {}", if self.pass() { "pass" } else { "fail" });
        if let Some(ms) = self.millis {
            let _ = writeln!(s, "millis: {ms}");
        }
        s
    }
}
