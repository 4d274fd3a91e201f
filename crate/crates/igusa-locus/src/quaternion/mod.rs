//! Quaternion algebras over Q and their maximal orders: Hilbert symbols,
//! ramification, discriminants, order saturation and element searches.

mod algebra;
pub mod linalg;
mod order;
mod quat;
mod search;

pub use algebra::{
    disc_of, hilbert_symbol, is_totally_indefinite_division, ramified_set, Place, QAlgebra,
};
pub use order::{lattice_basis, saturate_to_maximal, QOrder};
pub use quat::Quat;
pub use search::{algebra_for_disc, find_mu, find_twists};
