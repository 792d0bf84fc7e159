//! Finite chain complexes over principal rings with a fixed, ordered basis.
//!
//! The crate models a chain complex as graded free modules over `Z`, `Q` or a
//! prime field together with sparse boundary matrices, and decides the
//! structural properties that only make sense relative to the fixed basis:
//! purity, maximal elements, critical/precritical classification, shellings
//! (with machine-checkable certificates), regular and totally regular orders,
//! and cone assignments. Homology is computed exactly via Smith normal form.
//!
//! Everything is immutable after construction and safe to share across
//! threads; searches are deterministic given the basis order and a node
//! budget.

pub mod classify;
pub mod complex;
pub mod homology;
pub mod linalg;
pub mod oracle;
pub mod regularity;
pub mod ring;
pub mod shelling;

#[cfg(test)]
pub(crate) mod testutil;

pub use classify::{ClassTag, ClassifyError, DegreeOrdering, ElementClass, RelationWitness, TopClassification};
pub use complex::{BoundaryEntry, Chain, ChainComplex, ComplexError, ElementId, SubcomplexBasis};
pub use homology::{Augmentation, AugmentationError, FgModule, MinBoundarySupport};
pub use linalg::{SnfDecomposition, SolveTargetError, SparseMatrix};
pub use regularity::{
    ConeAssignment, ConeCondition, ConeViolation, RegularOrderCertificate, RegularityCondition,
    RegularityViolation,
};
pub use ring::{Integers, PrimeField, Rationals, Ring, RingError, RingSpec};
pub use shelling::{
    BudgetExhausted, MonotonizeError, ShellingCertificate, ShellingViolation, ShellingViolationKind,
    SkeletonShellingError,
};

/// Default backtracking node budget for all searches.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;
