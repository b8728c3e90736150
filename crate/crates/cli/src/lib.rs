//! Library side of the command line front end: the polynomial expression
//! parser, the report document, and the corpus driver. The binary in
//! `main.rs` is a thin layer over these.

pub mod corpus;
pub mod parser;
pub mod report;
