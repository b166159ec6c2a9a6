//! The universal evaluator: `U(E(T) p) = T(p)`.
//!
//! `U` reads a self-delimiting machine code off the front of its single input,
//! then runs the decoded machine on whatever follows. It is a host-level
//! interpreter; step counts are those of the simulated machine, so a run of `U`
//! and a direct run agree field for field.

use thiserror::Error;

use crate::bits::BitString;
use crate::codec::{decode_machine, CodecError};
use crate::machine::{Configuration, Machine, Outcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniversalError {
    /// The input does not start with a valid machine code.
    #[error("undefined: input is not of the form E(T)p ({0})")]
    Undefined(CodecError),
}

/// A raw universal-machine input, checked only when evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalInput(pub BitString);

impl UniversalInput {
    pub fn split(&self) -> Result<(Machine, BitString), UniversalError> {
        decode_machine(&self.0).map_err(UniversalError::Undefined)
    }
}

pub fn universal_run(raw: &BitString, fuel: u64) -> Result<Outcome, UniversalError> {
    universal_run_observed(raw, fuel, |_, _, _| {})
}

/// Like [`universal_run`], calling `observe(step, machine, config)` before each
/// simulated step.
pub fn universal_run_observed(
    raw: &BitString,
    fuel: u64,
    mut observe: impl FnMut(u64, &Machine, &Configuration),
) -> Result<Outcome, UniversalError> {
    let (machine, program_input) = UniversalInput(raw.clone()).split()?;
    let start = machine.initial(&program_input);
    Ok(machine.run_from(start, fuel, |n, c| observe(n, &machine, c)))
}
