//! Exact classification of left actions by rotation vectors on `T^n` and
//! `SU(2) x T^n` up to smooth conjugacy.

pub mod conjugacy;
pub mod error;
pub mod exactreal;
pub mod intlinalg;
pub mod liegroup;
pub mod rotation;

pub use error::{Error, Result};
pub use exactreal::{ExactReal, SymbolTable};
pub use conjugacy::{
    brute_force_oracle, membership_zmod, su2_conjugate, torus_conjugate, verify_certificate,
    Certificate, OracleMode, Su2Certificate, TorusCertificate,
};
pub use intlinalg::{hnf, snf, solve_integer, unimodular_complete, IntMatrix, RatMatrix};
pub use liegroup::{
    build_conjugacy_map, estimate_rotation_vector, to_torus_representative, torus_embed,
    verify_conjugacy_numeric, ConjugacyMap, GroupPoint, MapKind, SU2Element,
};
pub use rotation::{CaseTag, InvariantProfile, NormalForm, RotationVector};
