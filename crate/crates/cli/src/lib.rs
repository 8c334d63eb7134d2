//! Command-line front end: state parsing, CSV and SVG output, and the
//! `wigner`, `ep`, `spectrum` and `validate` commands.

pub mod commands;
pub mod output;
pub mod ranges;
pub mod spec_parse;
pub mod svg;
pub mod validate;
