use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Identifies a property inequality or diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PropertyId {
    /// `f(λx) = λ f(x)` for every `λ > 0`.
    H,
    /// `f(x1 + x2) >= f(x1) + f(x2)`.
    Sp,
    /// `f(λx + (1-λ)y) >= λ f(x) + (1-λ) f(y)`.
    Cc,
    SpStrict,
    CcStrict,
    /// Subadditivity, the sign-flipped dual of `Sp`.
    S,
    /// Convexity, the sign-flipped dual of `Cc`.
    Cv,
    LiminfOK,
    /// `f(λx) >= λ f(x)` for `λ` in `(0, 1]`.
    Chain23,
    /// `f(w) = n f(w/n)` for integer `n`.
    Chain27,
    /// `f((m/n) u) = (m/n) f(u)` for coprime `m, n`.
    Chain28,
    /// `f(x)/x` constant on a one-dimensional grid.
    RatioConstant,
}

impl PropertyId {
    pub const ALL: [PropertyId; 12] = [
        PropertyId::H,
        PropertyId::Sp,
        PropertyId::Cc,
        PropertyId::SpStrict,
        PropertyId::CcStrict,
        PropertyId::S,
        PropertyId::Cv,
        PropertyId::LiminfOK,
        PropertyId::Chain23,
        PropertyId::Chain27,
        PropertyId::Chain28,
        PropertyId::RatioConstant,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PropertyId::H => "H",
            PropertyId::Sp => "Sp",
            PropertyId::Cc => "Cc",
            PropertyId::SpStrict => "SpStrict",
            PropertyId::CcStrict => "CcStrict",
            PropertyId::S => "S",
            PropertyId::Cv => "Cv",
            PropertyId::LiminfOK => "LiminfOK",
            PropertyId::Chain23 => "Chain23",
            PropertyId::Chain27 => "Chain27",
            PropertyId::Chain28 => "Chain28",
            PropertyId::RatioConstant => "RatioConstant",
        }
    }

    /// Whether this is one of the three properties related by the theorem.
    pub fn is_core(self) -> bool {
        matches!(self, PropertyId::H | PropertyId::Sp | PropertyId::Cc)
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PropertyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        PropertyId::ALL
            .into_iter()
            .find(|p| p.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<_> = PropertyId::ALL.iter().map(|p| p.as_str()).collect();
                Error::Usage(format!("unknown property `{s}`; valid: {}", names.join(", ")))
            })
    }
}
