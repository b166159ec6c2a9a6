//! Small machines used by the examples, tests and CLI documentation.

use super::multi::MultiMachine;
use super::nondet::NDMachine;

pub const WRITE_ONE: &str = include_str!("../../fixtures/write1.tm");
pub const PALINDROME: &str = include_str!("../../fixtures/palindrome.tm");
pub const GUESS_BIT: &str = include_str!("../../fixtures/guess_bit.tm");
pub const LOOPER: &str = include_str!("../../fixtures/looper.tm");
pub const THREE_CELLS: &str = include_str!("../../fixtures/three_cells.tm");

/// Writes 1 on the scanned cell and halts.
pub fn write_one() -> MultiMachine {
    MultiMachine::parse(WRITE_ONE).expect("fixture parses")
}

/// Two-tape palindrome decider running in linear time.
pub fn palindrome() -> MultiMachine {
    MultiMachine::parse(PALINDROME).expect("fixture parses")
}

/// Guesses a bit and accepts iff it matches the first input bit.
pub fn guess_bit() -> NDMachine {
    NDMachine::parse(GUESS_BIT).expect("fixture parses")
}

/// Never halts.
pub fn looper() -> MultiMachine {
    MultiMachine::parse(LOOPER).expect("fixture parses")
}

/// Accepts the empty input using exactly three cells.
pub fn three_cells() -> MultiMachine {
    MultiMachine::parse(THREE_CELLS).expect("fixture parses")
}
