//! Exact commutative-algebra engine: Groebner bases over the rationals and the
//! scheme-level constructions built on them (schematic images, blow-ups,
//! Weil restrictions along finite free algebras, Iso/constfy loci, flattening
//! strata and blow-up section families).

#![allow(clippy::needless_range_loop)]

pub mod blowup;
pub mod bsf;
pub mod error;
pub mod family;
pub mod fixtures;
pub mod groebner;
pub mod ideal;
pub mod poly;
pub mod scheme;
pub mod syntax;
pub mod weil;

pub use error::{Error, Result};
pub use ideal::{Ideal, QuotientRing, RingMap};
pub use poly::{Monomial, Poly, Rational, Ring, TermOrder};
