//! Parenthesizations of a k-associative m-ary operation.
//!
//! Trees, expressions and Dyck tuples are three views of the same objects;
//! [`dyck::DyckTuple::canonicalize`] picks the unique minimal tuple of a
//! k-equivalence class, and [`counting::modular_fuss_catalan`] counts the
//! classes exactly.

pub mod algebra;
pub mod cli;
pub mod counting;
pub mod dyck;
pub mod error;
pub mod expr;
pub mod params;
pub mod tree;

pub use algebra::ExponentVector;
pub use counting::{BigCount, ClassReport};
pub use dyck::{DyckTuple, Signature};
pub use error::{Error, Result};
pub use expr::Style;
pub use params::Params;
pub use tree::{Direction, Move, NodeAddress, Site, Tree};
