//! Exact symbol calculus for cyclic algebras over rational function fields
//! of characteristic p.
//!
//! The crate computes single cyclic-symbol representatives for tensor
//! products of Artin-Schreier-Witt symbols, with machine-checkable
//! derivation traces. The layers, bottom up:
//!
//! - [`field`]: arithmetic in F_p(t1, ..., tn) with canonical normal forms;
//! - [`witt`]: truncated Witt vectors driven by ghost-verified universal
//!   polynomials;
//! - [`forms`]: the de Rham-Witt style reduction used to solve for the
//!   correction vector of the beta-shift identity;
//! - [`symbol`]: cyclic symbols, the identity rule set, merges and folds,
//!   and trace validation;
//! - [`realize`]: structure-constant models of the presented algebras.

pub mod checks;
pub mod error;
pub mod field;
pub mod forms;
pub mod realize;
pub mod symbol;
pub mod witt;

pub use error::{EngineError, ParseError};
pub use field::{FieldCtx, FieldElem, Prime};
pub use witt::WittVector;
