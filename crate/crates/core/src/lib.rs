//! Hilbert–Kunz-type invariants of Frobenius powers of ideals in
//! two-dimensional quotient rings `F_p[x_1..x_n]/Q`.
//!
//! The crate is layered bottom-up:
//!
//! * [`field`], [`monomial`], [`poly`], [`parse`]: exact arithmetic and the
//!   polynomial text format.
//! * [`groebner`]: reduced Gröbner bases, normal forms, standard monomials.
//! * [`ring`], [`ideal`]: ideal algebra in the quotient ring and colengths.
//! * [`filtration`]: Hilbert–Samuel tables, coefficient fits, v-values.
//! * [`hk`]: Ratliff–Rush closures, reductions, Frobenius coefficient
//!   tables and the exact finite-q checks built on them.

pub mod error;
pub mod field;
pub mod filtration;
pub mod groebner;
pub mod hk;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ring;

pub use error::{Error, Result};
pub use field::{field_inverse, Fp, PrimeField};
pub use groebner::GroebnerBasis;
pub use ideal::Ideal;
pub use monomial::{monomial_compare, Monomial, MonomialOrder};
pub use parse::{format_polynomial, parse_polynomial};
pub use poly::{PolyRing, Polynomial};
pub use ring::QuotientRing;
