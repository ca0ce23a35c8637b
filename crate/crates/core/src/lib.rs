pub mod config;
pub mod cyclescan;
pub mod error;
pub mod fieldsearch;
pub mod lll;
pub mod padic;
pub mod perm;
pub mod poly;
pub mod primes;
pub mod registry;
pub mod subfield;
pub mod wreath;

pub use error::{Error, Result};
