use serde::{Deserialize, Serialize};

/// Resource caps. Exceeding one yields [`crate::Error::Resource`]; nothing
/// is ever truncated silently.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Maximum number of faces expanded for a homology computation.
    pub face_budget: usize,
    /// Maximum ground size for the `Δ_η` subset enumeration.
    pub delta_eta_max_ground: usize,
    /// Maximum ground size for list-chromatic enumeration.
    pub chi_list_max_ground: usize,
    /// Maximum list size for list-chromatic enumeration.
    pub chi_list_max_k: usize,
    /// Maximum vertex count for the deletion/contraction game.
    pub game_max_vertices: usize,
    /// Maximum number of base multisets enumerated per side for `ν_{p,q}`.
    pub nu_max_multisets: u64,
    /// Maximum size of a multiplicity-vector table for `ν_{p,q}`.
    pub nu_max_table: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            face_budget: 1 << 20,
            delta_eta_max_ground: 16,
            chi_list_max_ground: 6,
            chi_list_max_k: 3,
            game_max_vertices: 12,
            nu_max_multisets: 10_000_000,
            nu_max_table: 1 << 24,
        }
    }
}
