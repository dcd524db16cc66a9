//! Finite permutation groups and the subgroup machinery built on them.

mod cosets;
mod group;
mod perm;
mod sylow;

pub use cosets::{
    double_coset_decomposition, normalizer_and_weyl, DoubleCoset, DoubleCosetDecomposition, Weyl,
};
pub use group::{PermGroup, Subgroup, DEFAULT_MAX_ORDER};
pub use perm::Perm;
pub use sylow::{
    np_closure, p_part, p_rank, rank_one_classification, sylow_subgroup, RankOneClassification,
    SylowType,
};
