//! # kbonacci-core
//!
//! k-generalized Fibonacci numbers and related constant-coefficient linear
//! recurrences, computed three independent ways and checked against each
//! other:
//!
//! - [`exact`]: big-integer iteration, forwards and backwards, basis sequences;
//! - [`spectral`]: roots of `x^k - x^{k-1} - … - 1` from Fuss-Catalan series,
//!   Binet-style sums and asymptotics;
//! - [`combinatorics`] and [`companion`]: multinomial (Dickson) sums and
//!   companion-matrix powers.
//!
//! [`methods`] and [`verify`] expose the evaluators and the cross-checks
//! through name-keyed registries.

pub mod combinatorics;
pub mod companion;
pub mod decimal;
pub mod error;
pub mod exact;
pub mod hp;
pub mod methods;
pub mod registry;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{NamedSequence, RecurrenceSpec, SequenceWindow};
pub use hp::{HpComplex, HpReal, Precision};
