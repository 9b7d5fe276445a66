//! Enumeration, verification suites, witness searches and conjecture experiments.

pub mod conjectures;
pub mod enumerate;
pub mod oracle;
pub mod search;
pub mod suites;

pub use conjectures::{run_conjecture, ConjectureReport, ConjectureResult, CONJECTURES};
pub use enumerate::{enumerate_forms, EnumerationSpec};
pub use oracle::AlternatingOracle;
pub use search::{
    inverse_search, witness_search, Counterexample, InverseReport, WitnessReport, WitnessResult,
};
pub use suites::{run_suite, Record, SuiteConfig, SuiteReport, Summary, Verdict, SUITES};
