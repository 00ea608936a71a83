//! Verification toolkit for (2,m,n)-groups: finite groups generated by
//! elements `g`, `h` of orders `m`, `n` whose product is an involution.
//!
//! The crate builds the relevant groups as permutation groups, computes the
//! Euler characteristic `|G|(1/m - 1/2 + 1/n)` exactly, applies prime-divisor
//! filters, counts generating pairs with class structure constants and decides
//! individual `(G, m, n)` queries with checkable witnesses or refutations.

pub mod arith;
pub mod catalog;
pub mod chartab;
pub mod classify;
pub mod error;
pub mod field;
pub mod perm;
pub mod spectrum;

pub use error::{Error, Result};
pub use perm::{CycleProfile, PermGroup, Permutation};
