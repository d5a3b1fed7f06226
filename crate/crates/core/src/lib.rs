//! Multiple zeta values: word algebras, exact combinatorics, ball-arithmetic
//! evaluation and an executable catalog of identities.

pub mod combinatorics;
pub mod error;
pub mod identities;
pub mod numerics;
pub mod symbolic;
pub mod word_algebra;

pub use error::{Error, Result};
