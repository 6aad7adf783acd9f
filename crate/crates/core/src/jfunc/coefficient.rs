use std::fmt;

use serde_json::{json, Value};

use crate::algebra::{q_valuation, rx_to_json, Factored, FactoredSum, RationalExpression};
use crate::kclass::{MultiDegree, SpaceDescriptor};

/// Which displayed formula produced a coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum JForm {
    /// Closed form read literally, one term per composition.
    Display,
    /// Sum over jumping profiles of Weyl pushforwards.
    Structured,
    /// Flag form with pairwise single-ratio factors.
    Canonical,
    /// Flag form with `k ≠ j` ratio factors.
    TheoremRatio,
    Product,
    Conjecture,
}

impl JForm {
    pub fn name(self) -> &'static str {
        match self {
            JForm::Display => "display",
            JForm::Structured => "structured",
            JForm::Canonical => "canonical",
            JForm::TheoremRatio => "theorem_ratio",
            JForm::Product => "product",
            JForm::Conjecture => "conjecture",
        }
    }
}

impl fmt::Display for JForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One summand, labelled by its per-level composition.
#[derive(Clone, Debug)]
pub struct JTerm {
    pub composition: Vec<Vec<u32>>,
    pub value: Factored,
}

/// `J_d` for one space and multidegree.
#[derive(Clone, Debug)]
pub struct JCoefficient {
    pub space: SpaceDescriptor,
    pub degree: MultiDegree,
    pub form: JForm,
    pub conjectural: bool,
    pub terms: Vec<JTerm>,
    value: FactoredSum,
}

impl JCoefficient {
    pub fn new(space: SpaceDescriptor, degree: MultiDegree, form: JForm, terms: Vec<JTerm>) -> Self {
        let value = FactoredSum::from_terms(space.table(), terms.iter().map(|t| t.value.clone()));
        JCoefficient { space, degree, form, conjectural: false, terms, value }
    }

    pub fn conjectural(mut self) -> Self {
        self.conjectural = true;
        self
    }

    pub fn value(&self) -> &FactoredSum {
        &self.value
    }

    pub fn to_rx(&self) -> RationalExpression {
        self.value.to_rx()
    }

    pub fn term(&self, composition: &[Vec<u32>]) -> Option<&Factored> {
        self.terms.iter().find(|t| t.composition == composition).map(|t| &t.value)
    }

    /// q-valuation of the summed value; `None` for zero.
    pub fn q_valuation(&self) -> Option<i64> {
        q_valuation(&self.to_rx())
    }

    pub fn is_q_regular(&self) -> bool {
        self.q_valuation().is_none_or(|v| v >= 0)
    }

    /// Factored text: one factored product per surviving term.
    pub fn to_text(&self) -> String {
        self.value.to_text()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "space": self.space.label(),
            "descriptor": self.space.to_json(),
            "degree": self.degree.0,
            "form": self.form.name(),
            "conjectural": self.conjectural,
            "value": rx_to_json(&self.to_rx()),
        })
    }
}

/// All coefficients up to a componentwise cap.
#[derive(Clone, Debug)]
pub struct JSeries {
    pub space: SpaceDescriptor,
    pub cap: MultiDegree,
    pub coefficients: Vec<JCoefficient>,
}

impl JSeries {
    pub fn to_json(&self) -> Value {
        json!({
            "space": self.space.label(),
            "cap": self.cap.0,
            "coefficients": self
                .coefficients
                .iter()
                .map(|c| json!({ "degree": c.degree.0, "value": rx_to_json(&c.to_rx()) }))
                .collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.coefficients {
            out.push_str(&format!("J{} = {}\n", c.degree, c.to_text()));
        }
        out
    }
}
