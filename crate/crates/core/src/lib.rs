//! Exact-arithmetic engine for universal Gelfand-Tsetlin tableaux modules
//! of gl(n): seed combinatorics, oriented position graphs, polyhedral
//! support cones, the module action on derivative tableaux, and an
//! independent Verma-module oracle.

pub mod combin;
pub mod cone;
pub mod engine;
pub mod error;
pub mod graph;
pub mod json;
pub mod perm;
pub mod poly;
pub mod psop;
pub mod ratfun;
pub mod scalar;
pub mod shuffles;
pub mod verma;

pub use error::{GtError, Result};
