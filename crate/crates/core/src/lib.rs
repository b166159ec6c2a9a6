//! Quadruple-format Turing machines and the machinery around them.
//!
//! * [`machine`] and [`tape`]: single-tape deterministic machines, fuel-bounded runs.
//! * [`format`]: the `.tm` text format.
//! * [`bits`] and [`codec`]: bit strings, the string/number identification,
//!   self-delimiting codes, pairing, and the machine code `E(T)`.
//! * [`enumeration`]: the length-lexicographic enumeration of machine codes
//!   and Gödel numbers.
//! * [`universal`]: the universal evaluator `U(E(T)p) = T(p)`.
//! * [`funclib`]: machines as partial functions over the naturals, and a library
//!   of hand-built machines for basic functions.
//! * [`complexity`]: multitape and nondeterministic machines, time/space
//!   metering, and space-bounded middle-first reachability.
//! * [`halting`]: bounded halting queries and a dovetailing enumerator of the
//!   halting set.
//! * [`cli`]: the `tm` command line.

pub mod bits;
pub mod cli;
pub mod codec;
pub mod complexity;
pub mod enumeration;
pub mod format;
pub mod funclib;
pub mod halting;
pub mod machine;
pub mod tape;
pub mod universal;

pub use bits::BitString;
pub use codec::Nat;
pub use machine::{Action, Configuration, Machine, Outcome, Rule, StateId};
pub use tape::{Symbol, Tape};
