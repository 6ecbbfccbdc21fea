//! Exact bigraded Hilbert polynomials, mixed multiplicities and
//! Stückrad–Vogel degrees.

pub mod bigraded;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod generic;
pub mod groebner;
pub mod hilbert;
pub mod ideal_mixed;
pub mod monomial;
pub mod poly;
pub mod problem;
pub mod ring;
pub mod selftest;
pub mod sv;

pub use error::{Error, Result};
pub use field::{Field, Scalar, DEFAULT_PRIME};
pub use generic::Genericity;
pub use groebner::Ideal;
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Homogeneity, Polynomial};
pub use ring::{Bidegree, Ring, RingRef, Variable};
