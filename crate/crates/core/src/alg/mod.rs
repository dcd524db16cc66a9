//! Finite-dimensional commutative algebras: separability, idempotents and
//! the splitting tower.

pub mod degree;
pub mod galois;
pub mod idempotents;
pub mod module;
pub mod random;
pub mod retract;
pub mod separable;
pub mod structure;
pub mod tower;

pub use degree::{
    degree, degree_function, splitting_tower, DegreeFunction, SplittingTowerRecord, TowerStage,
};
pub use galois::{fixed_subalgebra, galois_check, GaloisReport};
pub use idempotents::{primitive_idempotents, IdempotentDecomposition};
pub use module::{counit_section_check, AlgebraModule, CounitSectionReport};
pub use retract::{split_retraction, Retraction};
pub use separable::{
    etale_via_trace_form, graded_separability_idempotent, separability_idempotent,
    SeparabilityWitness,
};
pub use structure::{
    is_algebra_map, GroupAction, StructureAlgebra, ValidationReport, Vector, Violation,
};
pub use tower::{
    relative_tensor_square, splitting_step, splitting_tower_direct, RelativeAlgebra,
    RelativeTensorSquare, SplittingStep,
};
