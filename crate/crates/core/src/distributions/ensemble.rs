use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error};
use crate::scalar::Real;

/// The three Gaussian ensembles, tagged by their repulsion exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum EnsembleKind {
    /// Real symmetric, β = 1.
    Goe,
    /// Complex Hermitian, β = 2.
    Gue,
    /// Quaternion self-dual, β = 4.
    Gse,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 3] = [EnsembleKind::Goe, EnsembleKind::Gue, EnsembleKind::Gse];

    pub fn beta(self) -> u32 {
        match self {
            EnsembleKind::Goe => 1,
            EnsembleKind::Gue => 2,
            EnsembleKind::Gse => 4,
        }
    }

    pub fn beta_as<T: Real>(self) -> T {
        T::lit(f64::from(self.beta()))
    }

    pub fn name(self) -> &'static str {
        match self {
            EnsembleKind::Goe => "GOE",
            EnsembleKind::Gue => "GUE",
            EnsembleKind::Gse => "GSE",
        }
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "goe" => Ok(EnsembleKind::Goe),
            "gue" => Ok(EnsembleKind::Gue),
            "gse" => Ok(EnsembleKind::Gse),
            _ => Err(domain(format!(
                "unknown ensemble '{s}' (expected goe, gue or gse)"
            ))),
        }
    }
}
