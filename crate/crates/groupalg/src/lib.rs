//! Finite étale groupoids, their twisted convolution algebras and the
//! combinatorial models (partial actions, inverse semigroups, graphs,
//! self-similar actions, coarse spaces) that produce them.

#![allow(
    clippy::needless_range_loop,
    clippy::type_complexity,
    clippy::neg_cmp_op_on_partial_ord
)]

pub mod algebra;
pub mod cli;
pub mod coarse;
pub mod crosscheck;
pub mod error;
pub mod graph;
pub mod group;
pub mod groupoid;
pub mod io;
pub mod linalg;
pub mod paction;
pub mod random;
pub mod report;
pub mod scalar;
pub mod selfsim;
pub mod semigroup;
pub mod twisted;
pub mod verdict;

pub use error::{Error, Result};
