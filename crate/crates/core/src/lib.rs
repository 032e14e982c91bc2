//! Quiver mutation, Y-seed dynamics and maximal green sequences.
//!
//! The crate works with skew-symmetrizable integer exchange matrices
//! ([`ExchangeMatrix`]), the Y-seeds `(c, B)` built on them ([`YSeed`]), and
//! two ways of asking whether a maximal green sequence exists: a bounded
//! search ([`search_mgs`]) and a certificate of non-existence from a positive
//! radical vector ([`certify_no_mgs`]).
//!
//! ```
//! use qmgs::{catalog, certify_no_mgs, Outcome};
//!
//! let x7 = catalog::get_quiver("x7").unwrap();
//! let cert = certify_no_mgs(&x7, &[2, 1, 1, 1, 1, 1, 1], 100).unwrap();
//! assert_eq!(cert.outcome, Outcome::Certified);
//! assert_eq!(cert.class_size, 2);
//! ```
//!
//! All vertex indices in the Rust API are 0-based. The text formats and the
//! command-line tool use 1-based indices.

pub mod canon;
pub mod catalog;
pub mod class;
pub mod cli;
pub mod error;
pub mod format;
pub mod green;
pub mod linalg;
pub mod matrix;
pub mod obstruction;
pub mod seed;

pub use canon::{are_isomorphic, canonical_form, canonical_pair, VertexPermutation};
pub use class::{enumerate_mutation_class, MutationClass};
pub use error::{Error, Result};
pub use format::{parse_matrix, serialize_matrix};
pub use green::{
    acyclic_source_sequence, apply_sequence, is_maximal_green, search_mgs, MutationSequence,
    SearchMode, SearchOutcome,
};
pub use matrix::{find_symmetrizer, ExchangeMatrix, Sign, Symmetrizer};
pub use obstruction::{
    certify_no_mgs, find_positive_radical, radical_basis, update_coordinates, x7_form_check,
    Certificate, CoordState, Outcome, PositiveRadical, RadicalVector,
};
pub use seed::{VertexColor, YSeed};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/exchange-matrices.md")]
    mod exchange_matrices {}
    #[doc = include_str!("../../../book/src/y-seeds.md")]
    mod y_seeds {}
    #[doc = include_str!("../../../book/src/green-sequences.md")]
    mod green_sequences {}
    #[doc = include_str!("../../../book/src/radical-obstruction.md")]
    mod radical_obstruction {}
    #[doc = include_str!("../../../book/src/x7.md")]
    mod x7 {}
}
