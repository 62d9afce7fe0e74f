//! Choice of the volume algorithm.

use std::fmt;
use std::str::FromStr;

use crate::input::InputMode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Primal,
    Descent,
    Lawrence,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Primal, Algorithm::Descent, Algorithm::Lawrence];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Primal => "primal",
            Algorithm::Descent => "descent",
            Algorithm::Lawrence => "lawrence",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

/// Largest ratio between the numbers of support forms and extreme rays at
/// which descent is still preferred for vertex input.
pub const DESCENT_RATIO: usize = 8;

/// Few support forms favour the signed decomposition; constraint input or
/// balanced face numbers favour descent; otherwise the primal triangulation.
pub fn auto_select(mode: InputMode, dim: usize, support_forms: usize, extreme_rays: usize) -> Algorithm {
    if support_forms <= (2 * dim).max(dim + 30) {
        return Algorithm::Lawrence;
    }
    let (lo, hi) = if support_forms < extreme_rays {
        (support_forms, extreme_rays)
    } else {
        (extreme_rays, support_forms)
    };
    if mode == InputMode::Constraints || hi <= DESCENT_RATIO * lo {
        Algorithm::Descent
    } else {
        Algorithm::Primal
    }
}
