//! Exact polynomial arithmetic over the integers, the rationals, finite
//! fields and residue rings `Z/p^a`.

pub mod bounds;
pub mod field;
pub mod fpoly;
pub mod int;
pub mod modp;
pub mod parse;
pub mod rat;
pub mod resultant;
pub mod zfactor;

pub use int::IntPoly;
pub use rat::QPoly;
