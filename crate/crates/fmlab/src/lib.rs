//! A workbench for finite model theory over relational structures:
//! Gaifman graphs and locality, homomorphisms, scattered sets, shallow
//! minors and quasi-wideness, and the classical constructions around
//! homomorphism preservation.

pub mod cli;
pub mod counterexample;
pub mod dichotomy;
pub mod error;
pub mod eval;
pub mod formula;
pub mod graph;
pub mod hom;
pub mod locality;
pub mod minimal;
pub mod minor;
pub mod scattered;
pub mod parser;
pub mod plebeian;
pub mod structure;

pub use error::{Error, Result};
