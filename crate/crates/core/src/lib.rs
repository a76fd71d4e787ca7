//! Computational machinery for closure operations on ideals in prime
//! characteristic: Frobenius powers and roots, Frobenius, integral and
//! tight-closure membership evidence, Nakayama closures with minimal
//! reductions and spread, and the special part of tight closure.

pub mod arcs;
pub mod cli;
pub mod closures;
pub mod error;
pub mod field;
pub mod frobenius;
pub mod groebner;
pub mod ideals;
pub mod linalg;
pub mod nakayama;
pub mod newton;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod special_part;
pub mod verdict;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use groebner::GroebnerBasis;
pub use parse::{parse_ring_file, RingFile};
pub use poly::{Monomial, MonomialOrder, Poly, PolyRing};
pub use ring::{Ideal, Ring, RingPresentation};
