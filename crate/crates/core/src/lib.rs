//! Graded commutative algebra engine with checkers for depth, Tor/Ext
//! vanishing and related module-theoretic statements.

pub mod dsl;
pub mod engine;
pub(crate) mod flags;
pub mod error;
pub mod groebner;
pub mod hilbert;
pub mod homological;
pub mod matrix;
pub mod mf;
pub mod module;
pub mod monomial;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod scalar;
pub mod selftest;
pub mod vector;
pub mod veronese;

pub use error::{Error, Result};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{PolyRing, Polynomial};
pub use ring::{Ring, RingFlags, RingPresentation};
pub use scalar::{Field, Scalar};
