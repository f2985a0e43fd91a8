//! Exact computer algebra for c-algebraic functions on affine algebraic sets:
//! universal denominators, rational representations, canonical
//! a-normalisations, Nullstellensatz certificates and growth exponents.

pub mod anormalizer;
pub mod denominator;
pub mod error;
pub mod expr_io;
pub mod function;
pub mod groebner;
pub mod growth;
pub mod nullsatz;
pub mod poly;
pub mod variety;

pub use error::{Error, Result};
