//! Twisted convolution algebras of finite groupoids.

mod cocycle;
mod element;
mod rep;

pub use cocycle::*;
pub use element::*;
pub use rep::*;
