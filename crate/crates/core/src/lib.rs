//! Exact computational commutative algebra: Gröbner bases over quotients of
//! polynomial rings, chain complexes, homology, derived functors, and the
//! depth/width/amplitude invariants of complexes.

pub mod complex;
pub mod derived;
pub mod extint;
pub mod groebner;
pub mod homology;
pub mod invariants;
pub mod linalg;
pub mod monomial;
pub mod oracle;
pub mod parse;
pub mod pmodule;
pub mod poly;
pub mod prescomplex;
pub mod ring;
pub mod rule;
pub mod scalar;

pub use extint::ExtInt;
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Polynomial;
pub use ring::RingSpec;
pub use scalar::{Field, Scalar};
