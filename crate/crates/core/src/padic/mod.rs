//! Root approximations of `f` in an unramified extension of the `p`-adics.

pub mod context;
pub mod ring;

pub use context::{default_precision, SplittingContext};
pub use ring::{Elem, UnramifiedRing};
