//! Exact lattice machinery for symplectic automorphisms of supersingular K3
//! surfaces: discriminant forms and their genus symbols, primitive embeddings
//! into the lattices `N_{p,sigma}`, and p-root pairs on root lattices.

pub mod arith;
pub mod error;
pub mod fp;
pub mod fqf;
pub mod hmdata;
pub mod intlat;
pub mod k3class;
pub mod prootpair;
pub mod rootsys;

pub use error::{Error, Result};
pub use fqf::{nikulin_exists, symbol_of, Fqf, JordanComponent};
pub use hmdata::parse_symbol;
pub use intlat::IntegralLattice;
pub use rootsys::{Isometry, IsometryGroup, RootDatum, RootType};
#[cfg(feature = "oracles")]
pub mod oracle;
#[cfg(feature = "oracles")]
pub mod verify;
