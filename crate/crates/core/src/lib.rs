//! Finite-model verification of quantale-valued powerset constructions.
//!
//! Every construction is evaluated on finite quantales and finite carriers,
//! and every law is checked exhaustively or by seeded sampling. Results are
//! collected in [`VerificationReport`]s with concrete counterexamples.

pub mod algebras;
pub mod fuzzy;
pub mod monads;
pub mod quantale;
pub mod report;
pub mod submonads;
pub mod suites;
pub mod towers;

pub use quantale::{builtin_quantale, parse_quantale_ref, Elem, Quantale, QuantaleError};
pub use report::{Check, Params, Status, VerificationReport};
