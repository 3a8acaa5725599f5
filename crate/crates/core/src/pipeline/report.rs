//! Structured outcomes of checks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::combinat::partition::Partition;
use crate::exactalg::{Field, TruncatedSeries};
use crate::fock::{FockElement, ScalarText};

/// A concrete place where two sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub location: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    ExactMatch,
    Mismatch { witness: Witness },
    LimitNonexistent { point: String, valuation: String },
}

impl Outcome {
    pub fn passed(&self) -> bool {
        matches!(self, Outcome::ExactMatch)
    }

    pub fn from_witness(w: Option<Witness>) -> Outcome {
        match w {
            None => Outcome::ExactMatch,
            Some(witness) => Outcome::Mismatch { witness },
        }
    }
}

/// One convention tried by a search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Candidate {
    pub label: String,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orders {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub orders: Orders,
    pub domain: String,
    pub outcome: Outcome,
    /// Conventions in force, keyed by name.
    pub conventions: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub candidates: Vec<Candidate>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(check: &str, orders: Orders, domain: String, outcome: Outcome) -> Self {
        VerificationReport {
            check: check.to_string(),
            orders,
            domain,
            outcome,
            conventions: BTreeMap::new(),
            candidates: Vec::new(),
            notes: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome.passed()
    }

    pub fn with_convention(mut self, key: &str, value: String) -> Self {
        self.conventions.insert(key.to_string(), value);
        self
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}: {}", self.check, if self.passed() { "PASS" } else { "FAIL" });
        match &self.outcome {
            Outcome::ExactMatch => {}
            Outcome::Mismatch { witness } => {
                s += &format!("\n  at {}\n  left  = {}\n  right = {}", witness.location, witness.left, witness.right)
            }
            Outcome::LimitNonexistent { point, valuation } => s += &format!("\n  no limit at {point} (valuation {valuation})"),
        }
        for (k, v) in &self.conventions {
            s += &format!("\n  {k}: {v}");
        }
        for c in &self.candidates {
            s += &format!("\n  candidate {}: {}", c.label, if c.outcome.passed() { "pass" } else { "fail" });
        }
        for n in &self.notes {
            s += &format!("\n  note: {n}");
        }
        s
    }
}

pub fn render<S: ScalarText>(x: &S) -> String {
    let (n, d) = x.text_parts();
    if d == "1" {
        n
    } else {
        format!("({n})/({d})")
    }
}

pub fn render_opt<S: ScalarText>(x: Option<&S>) -> String {
    x.map(render).unwrap_or_else(|| "0".to_string())
}

/// First differing p_μ coefficient of two scalar Fock elements.
pub fn scalar_witness<S: Field + ScalarText>(a: &FockElement<S>, b: &FockElement<S>) -> Option<Witness> {
    a.first_difference(b).map(|(mu, x, w)| Witness {
        location: format!("y^{} p[{}]", mu.size(), mu),
        left: render_opt(x.as_ref()),
        right: render_opt(w.as_ref()),
    })
}

fn series_point<S: Field>(a: &TruncatedSeries<S>, b: &TruncatedSeries<S>) -> Option<(u32, u32, S, S)> {
    let keys: std::collections::BTreeSet<(u32, u32)> = a.iter().chain(b.iter()).map(|(k, _)| *k).collect();
    keys.into_iter().find_map(|(i, j)| {
        let (x, w) = (a.coeff(i, j), b.coeff(i, j));
        if x == w {
            None
        } else {
            Some((i, j, x, w))
        }
    })
}

/// First differing y^i z^j p_μ coefficient of two series-valued Fock elements.
pub fn series_witness<S: Field + ScalarText>(
    a: &FockElement<TruncatedSeries<S>>,
    b: &FockElement<TruncatedSeries<S>>,
) -> Option<Witness> {
    let (mu, x, w) = a.first_difference(b)?;
    let zero = |o: &Option<TruncatedSeries<S>>, other: &Option<TruncatedSeries<S>>| {
        o.clone().unwrap_or_else(|| {
            let (ny, nz) = other.as_ref().map(|s| s.orders()).unwrap_or((0, 0));
            TruncatedSeries::zero(ny, nz)
        })
    };
    let (x, w) = (zero(&x, &w), zero(&w, &x));
    let (i, j, l, r) = series_point(&x, &w)?;
    Some(Witness { location: location(&mu, i, j), left: render(&l), right: render(&r) })
}

pub fn location(mu: &Partition, i: u32, j: u32) -> String {
    format!("y^{i} z^{j} p[{mu}]")
}
