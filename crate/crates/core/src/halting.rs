//! Bounded halting and a dovetailing semi-decider for the halting set
//! `K₀ = {⟨x, y⟩ : T_x halts on y}`.
//!
//! Only bounded questions are answerable. [`halts_within`] answers "does it
//! halt within k steps", and [`dovetail`] lists halting pairs as it finds
//! them, which eventually covers every member of `K₀` but can never certify
//! that a pair is absent.

use thiserror::Error;

use crate::codec::{pair_nat, Nat};
use crate::enumeration::{enumerate_machines, EnumError, GodelIndex};
use crate::funclib::{encode_args, FnArgs};
use crate::machine::Machine;

/// A member of `K₀` found by the dovetailer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HaltPair {
    pub x: GodelIndex,
    pub y: u64,
    /// `⟨x, y⟩` read as a number.
    pub code: Nat,
    /// Stage in which the halt was first observed.
    pub stage: u64,
}

impl HaltPair {
    fn new(x: u64, y: u64, stage: u64) -> HaltPair {
        HaltPair {
            x: GodelIndex::new(x).expect("indices start at 1"),
            y,
            code: pair_nat(&Nat::from(x), &Nat::from(y)),
            stage,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HaltingError {
    #[error(transparent)]
    Enumeration(#[from] EnumError),
    #[error("stage {stages} needs machine T_{stages}, but only {available} machines have codes of at most {max_len} bits")]
    NotEnoughMachines {
        stages: u64,
        available: u64,
        max_len: u64,
    },
}

/// Whether `m` halts on the single argument `y` within `k` steps.
pub fn halts_within(m: &Machine, y: &Nat, k: u64) -> bool {
    let args = FnArgs::new(vec![y.clone()]).expect("one argument");
    m.run(&encode_args(&args), k).is_halted()
}

/// Runs `stages` stages of the schedule. Stage `t` runs `T_1..T_t` on inputs
/// `0..=t` for `t` steps each, and reports each pair the first time it halts,
/// ordered by stage, then `x`, then `y`.
pub fn dovetail(stages: u64, max_len: u64) -> Result<Vec<HaltPair>, HaltingError> {
    let machines: Vec<Machine> = enumerate_machines(max_len)?
        .take(stages as usize)
        .map(|e| e.machine)
        .collect();
    if (machines.len() as u64) < stages {
        return Err(HaltingError::NotEnoughMachines {
            stages,
            available: machines.len() as u64,
            max_len,
        });
    }
    let mut found = std::collections::HashSet::new();
    let mut out = Vec::new();
    for t in 1..=stages {
        for (x, m) in (1..=t).zip(&machines) {
            for y in 0..=t {
                if !found.contains(&(x, y)) && halts_within(m, &Nat::from(y), t) {
                    found.insert((x, y));
                    out.push(HaltPair::new(x, y, t));
                }
            }
        }
    }
    Ok(out)
}
