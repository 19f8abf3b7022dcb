//! Exact arithmetic for the real quadratic fields `K = Q(sqrt(D))` with
//! `D = 9m^2 + 4m`, `m` odd: special values `zeta_K(-1)` and their
//! class-by-class parts, weight-four Dedekind sums, fundamental units,
//! class numbers from reduced forms, and the norm equation `x^2 - Dy^2 = 4q`.
//!
//! All values are exact; nothing passes through floating point.

pub mod arith;
pub mod dedekind;
pub mod error;
pub mod field;

pub mod forms;
pub mod pell;
pub mod units;
pub mod zeta;

pub use arith::{Integer, Rational};
pub use error::{Error, Result};
