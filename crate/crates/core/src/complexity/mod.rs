//! Multitape and nondeterministic machines, time and space metering, and
//! space-bounded acceptance.
//!
//! Multitape machines take their input on tape 0. A single-tape machine
//! answers on tape 0, any other on tape 1; the answer is read as in
//! [`crate::funclib::read_output`], and a machine accepts when it is 1.

pub mod fixtures;
mod multi;
mod nondet;
mod savitch;

use thiserror::Error;

use crate::format::FormatError;

pub use multi::{
    accepts, meter, mt_run, mt_run_observed, MTConfiguration, MeterRow, Metrics, MtOutcome,
    MultiMachine, MultiRule, Verdict,
};
pub use nondet::{nd_accepts, nd_accepts_with_budget, NDMachine, DEFAULT_FRONTIER_BUDGET};
pub use savitch::{
    config_bound, savitch, savitch_accepts, within_space, SavitchReport, DEFAULT_CONFIG_BUDGET,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexityError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("no rules")]
    Empty,
    #[error("a machine needs at least one tape")]
    NoTapes,
    #[error("rule {rule} has {found} symbols or actions for a {expected}-tape machine")]
    TapeArity {
        rule: usize,
        expected: usize,
        found: usize,
    },
    #[error("rule {rule} refers to undeclared state id {id}")]
    UnknownState { rule: usize, id: u32 },
    #[error("rule {rule} writes on the read-only input tape")]
    ReadonlyWrite { rule: usize },
    #[error("search frontier exceeded {budget} configurations at depth {depth}")]
    FrontierBudget { budget: usize, depth: u64 },
    #[error("configuration space exceeds the budget of {budget}")]
    ConfigBudget { budget: u128 },
    #[error("space bound must be at least 1")]
    ZeroSpace,
}
