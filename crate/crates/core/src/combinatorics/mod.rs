//! Exact Fuss-Catalan numbers, compositions and multinomial (Dickson) sums.

mod compositions;
mod fuss_catalan;
mod multinomial;

pub use compositions::{compositions, Composition, Compositions};
pub use fuss_catalan::{b_n, b_n_via_fuss_catalan, binomial, fuss_catalan};
pub use multinomial::{dickson_second_kind, kfib_multinomial, multinomial_sum, narayana_sum, BetaPolynomial};
