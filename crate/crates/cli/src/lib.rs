//! Command-line front end for the `subfields` library.

pub mod args;
pub mod report;
pub mod run;

pub use args::{Args, Format, Mode};
pub use report::{read_report, Report};
pub use run::{execute, render_text, run};
