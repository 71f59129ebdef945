//! Exact commutative algebra over prime fields.
//!
//! The crate is layered bottom-up: [`poly`] supplies arithmetic,
//! [`groebner`] decides ideal membership, [`ideal_ops`] builds the ideal
//! algebra on top of it, and [`frobenius`], [`symbolic`] and
//! [`constructions`] implement the positive-characteristic machinery and the
//! determinantal ring families.

pub mod constructions;
pub mod error;
pub mod frobenius;
pub mod groebner;
pub mod ideal_ops;
pub mod poly;
pub mod rational;
pub mod symbolic;

pub use error::{AlgebraError, Result};
pub use groebner::{GbLimits, Ideal};
pub use poly::{parse_poly, Monomial, OrderKind, PolyRing, Polynomial, PrimeField, TermOrder};
