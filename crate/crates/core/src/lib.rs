//! Exact computations on cyclic p-covers of the projective line with level
//! structure.
//!
//! The crate covers arithmetic in `F_p` and `Q`, symplectic groups over small
//! prime fields, branch data and divisor lattices of superelliptic curves,
//! the level-2 hyperelliptic embedding `S_{2g+2} -> Sp(2g, F_2)`, and the
//! trigonal homomorphism `Psi: A_m -> Sp(2g, F_3)` with its component census.
//!
//! ```
//! use superlevel::{census_sum, component_count_formula, BigCount};
//!
//! assert_eq!(census_sum(2).unwrap(), BigCount::from(6480u32));
//! assert_eq!(component_count_formula(2).unwrap(), census_sum(2).unwrap());
//! ```

pub mod branch;
pub mod divisor;
pub mod error;
pub mod exact;
pub mod hyperelliptic;
pub mod perm;
pub mod report;
pub mod symplectic;
pub mod trigonal;
pub mod verify;

/// Exact rationals; the default scalar for Weil-pairing evaluation.
pub type ExactRational = num_rational::BigRational;
/// Exact non-negative integers for group orders and component counts.
pub type BigCount = num_bigint::BigUint;

pub use branch::{
    affine_model, genus_of, monodromy_cycles, normalize_multiplicity_vector, ramification_count, BranchConfiguration,
    MonodromyDatum, MultiplicityVector,
};
pub use divisor::{
    normal_form, pairing_exponent, weil_evaluation, weil_ratio_ramified, DivisorClass, DivisorLattice, PairingExponent,
    WeilEvaluation,
};
pub use error::{Error, Result};
pub use exact::{fp_inverse, rational_eval_poly, FieldElement, FieldScalar, Prime};
pub use hyperelliptic::{build_basis, embed_symmetric_group, hyp_component_count, HyperellipticBasis};
pub use perm::Permutation;
pub use report::CensusReport;
pub use symplectic::{enumerate_sp, is_symplectic, left_coset_count, sp_group_order, FpMatrix, SymplecticForm};
pub use trigonal::{
    aut_group, census_sum, component_count_formula, psi_generator_image, psi_subgroup, trigonal_indexing_set, AutGroup,
    PsiImage, TrigonalIndex,
};
