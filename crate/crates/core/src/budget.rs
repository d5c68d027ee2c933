use serde::{Deserialize, Serialize};

use crate::finspace::DEFAULT_COVER_BUDGET;

/// Enumeration bounds. Exceeding one is always an error, never a silent
/// truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Budget {
    /// Largest domain for map enumeration.
    pub max_domain: usize,
    /// Largest codomain for map enumeration.
    pub max_codomain: usize,
    /// Largest lattice of open sets a hyperspace filtration may run over.
    pub max_hyper_ground: usize,
    /// Largest open family whose covers are enumerated literally.
    pub cover_opens: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_domain: 4,
            max_codomain: 4,
            max_hyper_ground: 16,
            cover_opens: DEFAULT_COVER_BUDGET,
        }
    }
}
