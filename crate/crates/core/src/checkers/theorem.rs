//! Deducing the third of homogeneity, superadditivity and concavity from
//! measurements of the other two and the apex liminf.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::liminf::LiminfEstimate;
use super::verdict::Verdict;
use crate::error::{Error, Result};
use crate::property::PropertyId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TheoremRule {
    #[serde(rename = "HSp_implies_Cc")]
    HSpImpliesCc,
    #[serde(rename = "HCc_implies_Sp")]
    HCcImpliesSp,
    #[serde(rename = "SpCc_liminf_implies_H")]
    SpCcLiminfImpliesH,
    #[serde(rename = "Sp_notH_liminf_implies_notCc")]
    SpNotHLiminfImpliesNotCc,
    Inapplicable,
}

impl fmt::Display for TheoremRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremRule::HSpImpliesCc => "H ∧ Sp ⇒ Cc",
            TheoremRule::HCcImpliesSp => "H ∧ Cc ⇒ Sp",
            TheoremRule::SpCcLiminfImpliesH => "Sp ∧ Cc ∧ liminf ⇒ H",
            TheoremRule::SpNotHLiminfImpliesNotCc => "Sp ∧ ¬H ∧ liminf ⇒ ¬Cc",
            TheoremRule::Inapplicable => "no rule applies",
        })
    }
}

/// One input of the deduction: a core property and its measured truth value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Given {
    pub property: PropertyId,
    pub holds: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deduction {
    pub property: PropertyId,
    pub expected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub given: Vec<Given>,
    pub liminf: LiminfEstimate,
    pub rule: TheoremRule,
    pub deduced: Option<Deduction>,
    #[serde(rename = "chain")]
    pub chain_evidence: Vec<Verdict>,
    pub note: String,
}

impl TheoremReport {
    /// Attach chain verdicts; only kept when the deduction went through
    /// superadditivity, concavity and the liminf condition.
    pub fn with_chain_evidence(mut self, chain: Vec<Verdict>) -> Self {
        if self.rule == TheoremRule::SpCcLiminfImpliesH {
            self.chain_evidence = chain;
        }
        self
    }

    /// One-line summary such as `Sp ∧ ¬H ∧ liminf ⇒ ¬Cc`.
    pub fn narrative(&self) -> String {
        match self.deduced {
            Some(d) => format!("{}: expect {}{}", self.rule, if d.expected { "" } else { "¬" }, d.property),
            None => format!("{}: {}", self.rule, self.note),
        }
    }
}

/// Map a verdict to the core property it speaks for.
///
/// A satisfied strict check implies the plain property; a failed strict
/// check says nothing about it.
fn core_given(v: &Verdict) -> Result<Given> {
    let holds = v.status.holds();
    let (property, holds) = match v.property {
        PropertyId::H | PropertyId::Sp | PropertyId::Cc => (v.property, holds),
        PropertyId::SpStrict => (PropertyId::Sp, holds.filter(|h| *h)),
        PropertyId::CcStrict => (PropertyId::Cc, holds.filter(|h| *h)),
        other => {
            return Err(Error::contract(format!(
                "deduction takes verdicts on H, Sp or Cc, got {other}"
            )))
        }
    };
    Ok(Given { property, holds })
}

const COUNTEREXAMPLE: &str = "superadditivity and concavity do not imply homogeneity without the apex \
liminf condition: f(x) = log(cx) up to 2/c, continued linearly beyond, has both and is not homogeneous";

/// Apply the rule table to two verdicts on distinct core properties.
pub fn deduce_third_property(a: &Verdict, b: &Verdict, liminf: &LiminfEstimate) -> Result<TheoremReport> {
    let ga = core_given(a)?;
    let gb = core_given(b)?;
    if ga.property == gb.property {
        return Err(Error::contract(format!(
            "deduction needs two distinct properties, got {} twice",
            ga.property
        )));
    }
    let truth = |p: PropertyId| [ga, gb].iter().find(|g| g.property == p).and_then(|g| g.holds);
    let (h, sp, cc) = (truth(PropertyId::H), truth(PropertyId::Sp), truth(PropertyId::Cc));
    let liminf_ok = liminf.holds() == Some(true);

    let deduce = |rule, property, expected| (rule, Some(Deduction { property, expected }), String::new());
    let (rule, deduced, note) = match (h, sp, cc) {
        (Some(true), Some(true), _) => deduce(TheoremRule::HSpImpliesCc, PropertyId::Cc, true),
        (Some(true), _, Some(true)) => deduce(TheoremRule::HCcImpliesSp, PropertyId::Sp, true),
        (_, Some(true), Some(true)) if liminf_ok => deduce(TheoremRule::SpCcLiminfImpliesH, PropertyId::H, true),
        (_, Some(true), Some(true)) => (
            TheoremRule::Inapplicable,
            None,
            format!("liminf condition is {:?}; {COUNTEREXAMPLE}", liminf.classification),
        ),
        (Some(false), Some(true), _) if liminf_ok => {
            deduce(TheoremRule::SpNotHLiminfImpliesNotCc, PropertyId::Cc, false)
        }
        (Some(false), Some(true), _) => (
            TheoremRule::Inapplicable,
            None,
            format!(
                "the contrapositive needs the liminf condition, which is {:?}",
                liminf.classification
            ),
        ),
        _ => (
            TheoremRule::Inapplicable,
            None,
            "no deduction follows from the given truth values".to_string(),
        ),
    };
    Ok(TheoremReport {
        given: vec![ga, gb],
        liminf: liminf.clone(),
        rule,
        deduced,
        chain_evidence: Vec::new(),
        note,
    })
}
