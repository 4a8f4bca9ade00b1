//! Exact big-integer engine for constant-coefficient recurrences.
//!
//! Everything here is plain integer (or rational) arithmetic; the other
//! modules are checked against it.

mod named;
mod recurrence;

pub use named::{
    named_spec, narayana_via_basis, padovan_via_basis, perrin_via_basis, perrin_via_padovan,
    NamedSequence,
};
pub use recurrence::{
    basis_from_last, basis_sequence, combine_initials, halving_identity_holds, halving_scaled,
    initial_deltas, iterate_backward, iterate_forward, window, RecurrenceSpec, SequenceWindow,
};
