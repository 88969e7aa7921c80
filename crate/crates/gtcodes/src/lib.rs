//! Sparse combinatorial group-testing codes.
//!
//! Constructs, verifies, decodes, and simulates binary measurement matrices
//! for identifying up to d defective items out of n under per-item test
//! budgets (column-weight caps) and per-test pool-size limits (row-weight
//! caps), in both noiseless and noisy settings.
//!
//! - [`gf`]: finite-field arithmetic backing the Reed-Solomon outer code
//! - [`matrix`]: packed t x n measurement matrices and the GTM1 text format
//! - [`construct`]: Kautz-Singleton, identity-stack, and random builders
//! - [`bounds`]: lower-bound formulas and constraint-to-plan resolution
//! - [`verify`]: (d, nu)-disjunctness checks, fast sufficient and exact
//! - [`decode`]: noisy cover decoder and list-recovery decoder
//! - [`sim`]: OR-channel device-discovery trials

pub mod bounds;
pub mod construct;
pub mod decode;
pub mod gf;
pub mod matrix;
pub mod sim;
pub mod verify;

pub use bounds::{
    lb_sparse_codewords, lb_sparse_tests, lb_unrestricted, plan_sparse_codewords,
    plan_sparse_tests, BoundResult,
};
pub use construct::{identity_stack, ks_build, random_constant_weight, CodePlan, Construction};
pub use decode::{cover_decode, ks_list_decode, DecodeResult, KsListDecoder};
pub use gf::{Field, FieldElement, FieldSpec};
pub use matrix::{CodeMatrix, CodeMatrixBuilder, Outcome};
pub use sim::{run_sim, SimConfig, SimReport};
pub use verify::{correlation_stats, disjunct_exact, disjunct_sufficient, VerifyReport};
