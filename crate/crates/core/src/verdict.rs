//! Three-valued membership verdicts with re-checkable certificates.

use crate::error::Result;
use crate::newton::HullWitness;
use crate::parse::parse_polynomial;
use crate::poly::{Poly, PolyRing};
use crate::ring::RingPresentation;
use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Status {
    #[serde(rename = "IN")]
    In,
    #[serde(rename = "OUT")]
    Out,
    #[serde(rename = "UNKNOWN")]
    Unknown,
    /// Every probe passed but nothing certifies membership.
    #[serde(rename = "EVIDENCE-IN")]
    EvidenceIn,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::In => "IN",
            Status::Out => "OUT",
            Status::Unknown => "UNKNOWN",
            Status::EvidenceIn => "EVIDENCE-IN",
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, Status::In | Status::Out)
    }
}

/// `target = sum cofactor_k * generator_k`, exactly, in the ambient
/// polynomial ring. Relations appear among the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Combination {
    pub target: String,
    pub terms: Vec<CombinationTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombinationTerm {
    pub cofactor: String,
    pub generator: String,
}

impl Combination {
    /// Builds the identity from cofactors over `gens` (as expressions).
    pub fn new(base: &PolyRing, target: String, gens: &[String], cofactors: &[Poly]) -> Self {
        let terms = gens
            .iter()
            .zip(cofactors)
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, c)| CombinationTerm {
                cofactor: base.format(c),
                generator: g.clone(),
            })
            .collect();
        Combination { target, terms }
    }

    /// Re-parses every expression and checks the identity exactly.
    pub fn reverify(&self, base: &PolyRing) -> Result<bool> {
        let target = parse_polynomial(base, &self.target)?;
        let mut acc = base.zero();
        for t in &self.terms {
            let c = parse_polynomial(base, &t.cofactor)?;
            let g = parse_polynomial(base, &t.generator)?;
            acc = base.add(&acc, &base.mul(&c, &g));
        }
        Ok(acc == target)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Plain ideal membership.
    Membership { identity: Combination },
    /// `x^q ∈ I^[q]` (times `c` when a test element is used).
    Frobenius {
        e: u32,
        q: u64,
        identity: Combination,
    },
    /// `x^n ∈ I (I + (x))^(n-1)`, i.e. an equation of integral dependence.
    /// `generators` is `products` when every generator is written as a
    /// product of generators of `I` and powers of `x`.
    IntegralEquation {
        n: u32,
        generators: String,
        identity: Combination,
    },
    /// Every term of `x` lies in the Newton polyhedron of a monomial ideal.
    NewtonHull { witnesses: Vec<HullWitness> },
    /// `x` fails the exact integral closure of a monomial ideal.
    NewtonBound {
        bound: Vec<String>,
        failing_exponent: Vec<u32>,
        note: String,
    },
    /// An arc `t -> (c_i t^(w_i))` on which the relations vanish, with
    /// `ord(x) < ord(I)`; no element of the integral closure can do that.
    ArcValuation {
        field: String,
        coordinates: Vec<String>,
        weights: Vec<u32>,
        order_of_element: u32,
        order_of_ideal: Option<u32>,
    },
    /// An exact structural rule (regular ring, principal ideal in a UFD, ...).
    Rule { rule: String, detail: String },
    /// Membership probes that were run, none conclusive.
    Probes { probes: Vec<Probe> },
    /// Verdict derived from an upper bound's own verdict.
    UpperBound { bound: String, inner: Box<Verdict> },
    /// Element of a computed closure ideal.
    ComputedClosure { closure: String, generators: Vec<String>, identity: Option<Combination> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Probe {
    pub label: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Certificate,
    pub params: BTreeMap<String, Value>,
}

impl Verdict {
    pub fn new(status: Status, certificate: Certificate) -> Self {
        Verdict {
            status,
            certificate,
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, k: &str, v: impl Into<Value>) -> Self {
        self.params.insert(k.to_string(), v.into());
        self
    }

    pub fn unknown(probes: Vec<Probe>) -> Self {
        Verdict::new(Status::Unknown, Certificate::Probes { probes })
    }

    pub fn rule(status: Status, rule: &str, detail: impl Into<String>) -> Self {
        Verdict::new(
            status,
            Certificate::Rule {
                rule: rule.to_string(),
                detail: detail.into(),
            },
        )
    }

    /// Re-checks the algebraic identity inside an IN certificate. Returns
    /// `None` for certificates that carry no identity.
    pub fn reverify(&self, ring: &RingPresentation) -> Result<Option<bool>> {
        let base = ring.base();
        match &self.certificate {
            Certificate::Membership { identity }
            | Certificate::Frobenius { identity, .. }
            | Certificate::IntegralEquation { identity, .. } => identity.reverify(base).map(Some),
            Certificate::ComputedClosure {
                identity: Some(identity),
                ..
            } => identity.reverify(base).map(Some),
            Certificate::NewtonHull { witnesses } => Ok(Some(witnesses.iter().all(|w| w.verify()))),
            Certificate::UpperBound { inner, .. } => inner.reverify(ring),
            _ => Ok(None),
        }
    }
}

/// Combines per-generator verdicts for `I ⊆ cl(J)`: all IN gives IN, any
/// OUT gives OUT, otherwise UNKNOWN.
pub fn conjunction(verdicts: &[Verdict]) -> Status {
    if verdicts.iter().any(|v| v.status == Status::Out) {
        Status::Out
    } else if verdicts.iter().all(|v| v.status == Status::In) {
        Status::In
    } else {
        Status::Unknown
    }
}

/// `(f)` rendered so it can be raised to a power or multiplied safely.
pub fn paren(base: &PolyRing, f: &Poly) -> String {
    format!("({})", base.format(f))
}

/// `(f)^q`, or `(f)` when `q = 1`.
pub fn power_expr(base: &PolyRing, f: &Poly, q: u64) -> String {
    if q == 1 {
        paren(base, f)
    } else {
        format!("{}^{q}", paren(base, f))
    }
}

/// Membership certificate of `target` in the ideal generated by `gens`
/// (expressions `gen_strings`); `None` if not a member.
pub fn membership_identity(
    ring: &RingPresentation,
    target: &Poly,
    target_str: String,
    gens: &[Poly],
    gen_strings: &[String],
) -> Result<Option<Combination>> {
    let base = ring.base();
    let mut all = gens.to_vec();
    let mut names = gen_strings.to_vec();
    for r in ring.relations() {
        all.push(r.clone());
        names.push(paren(base, r));
    }
    let cof = crate::groebner::lift(base, &all, target, ring.step_limit())?;
    Ok(cof.map(|c| Combination::new(base, target_str, &names, &c)))
}
