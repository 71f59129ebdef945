//! Prime fields, monomials, term orders, polynomials and their text form.

mod field;
mod monomial;
mod order;
mod polynomial;
mod ring;
mod text;

pub use field::{is_prime, PrimeField};
pub use monomial::{Monomial, MAX_DEGREE, MAX_EXPONENT};
pub use order::{OrderKind, TermOrder};
pub use polynomial::{Polynomial, Term};
pub use ring::PolyRing;
pub use text::parse_poly;

pub(crate) use polynomial::sub_scaled;
pub(crate) use ring::same_ring;
