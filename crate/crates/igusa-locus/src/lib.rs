//! Exact-arithmetic engine for the quaternionic locus in the moduli space of
//! principally polarized abelian surfaces.
//!
//! For a squarefree discriminant D with an even number of prime factors,
//! the crate computes the structure of the locus of surfaces whose
//! endomorphisms contain a maximal order of discriminant D: the number of
//! principal polarization classes, the twisting classification, the number
//! of irreducible components with the irreducibility verdict, together with
//! concrete witnesses (maximal orders, polarization quaternions, integral
//! Riemann forms) and the Hashimoto-Murabayashi genus-2 curve families for
//! D = 6 and D = 10.
//!
//! See the `examples/` directory for one runnable example per capability.

pub mod arith;
pub mod catalog;
pub mod error;
pub mod hm;
pub mod locus;
pub mod polarization;
pub mod quadforms;
pub mod quaternion;
pub mod verify;

pub use error::{Error, Result};
