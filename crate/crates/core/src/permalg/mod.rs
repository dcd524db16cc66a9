//! Permutation algebras `k[X]` and their stable module theory.

mod algebra;
mod batch;
mod rank_one;
mod stmod;

pub use algebra::{
    permutation_algebra, permutation_matrices, tate_h0, tate_h0_ring, PermutationAlgebra, TateH0,
};
pub use batch::{run_batch, BatchCover, BatchEntry};
pub use rank_one::{
    classify_rank_one, modg_degree, modg_galois_data, verify_rank_one_galois, Cover,
    GaloisVerificationReport, ModGData, RankOneCovers,
};
pub use stmod::{
    coset_subset_oracle, order_p_subgroups, stmod_degree, strip_projective_summands, OrbitSummary,
    StmodReport,
};
