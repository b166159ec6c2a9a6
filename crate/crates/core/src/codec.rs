//! Strings as numbers, self-delimiting codes, pairing, and the machine code `E(T)`.
//!
//! Naturals and bit strings are identified by length-then-lexicographic rank:
//! `ε ↔ 0, 0 ↔ 1, 1 ↔ 2, 00 ↔ 3, 01 ↔ 4, …`. The self-delimiting code of `x`
//! is `x̄ = 1^|x| 0 x`.
//!
//! A machine with `r` rules over `|Q|` states is written as
//!
//! ```text
//! E(T) = s̄ r̄ e(p₁) e(t₁) e(a₁) e(q₁) … e(p_r) e(t_r) e(a_r) e(q_r)
//! ```
//!
//! where `s = ⌈log₂(|Q| + 5)⌉` is the field width, the integers `s` and `r` are
//! written as strings under the rank identification before barring, and `e`
//! gives `0, 1, B, L, R` the codes `0..=4` and the states codes `5, 6, …` in order
//! of first appearance. Only the canonical form is accepted by the decoder, so
//! every machine has exactly one code.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::bits::BitString;
use crate::machine::{Action, Machine, Rule, StateId};
use crate::tape::Symbol;

pub type Nat = BigUint;

/// Codes `0..=4` are taken by `0, 1, B, L, R`.
pub const FIRST_STATE_CODE: u64 = 5;

/// Field widths above this cannot belong to a machine that fits in memory.
pub const MAX_FIELD_WIDTH: u64 = 32;

pub fn str_of_nat(n: &Nat) -> BitString {
    let m = n + 1u32;
    let width = m.bits() as usize;
    (0..width - 1).rev().map(|i| m.bit(i as u64)).collect()
}

pub fn nat_of_str(x: &BitString) -> Nat {
    let mut acc = Nat::one();
    for b in x.iter() {
        acc <<= 1;
        if b {
            acc += 1u32;
        }
    }
    acc - 1u32
}

pub fn str_of_u64(n: u64) -> BitString {
    str_of_nat(&Nat::from(n))
}

/// `nat_of_str` for strings short enough to fit a `u64`.
pub fn u64_of_str(x: &BitString) -> Option<u64> {
    nat_of_str(x).to_u64()
}

/// `1^|x| 0 x`.
pub fn bar(x: &BitString) -> BitString {
    let mut out = BitString::repeat(true, x.len());
    out.push(false);
    out.extend_from(x);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MalformedCode {
    #[error("self-delimiting code has no terminating 0")]
    Unterminated,
    #[error("code needs {needed} more bits than the {available} available")]
    Truncated { needed: usize, available: usize },
    #[error("field width {0} exceeds the supported maximum")]
    WidthTooLarge(u64),
    #[error("rule count too large")]
    RuleCountTooLarge,
}

/// Locates the self-delimited string starting at `offset`: returns the range
/// `start..end` of its payload. Reads exactly up to `end`.
fn unbar_at(stream: &BitString, offset: usize) -> Result<(usize, usize), MalformedCode> {
    let bits = &stream.bits()[offset.min(stream.len())..];
    let n = bits
        .iter()
        .position(|&b| !b)
        .ok_or(MalformedCode::Unterminated)?;
    let available = bits.len() - n - 1;
    if available < n {
        return Err(MalformedCode::Truncated {
            needed: n - available,
            available,
        });
    }
    let start = offset + n + 1;
    Ok((start, start + n))
}

/// Splits `x̄ · rest` into `(x, rest)`.
pub fn unbar(stream: &BitString) -> Result<(BitString, BitString), MalformedCode> {
    let (start, end) = unbar_at(stream, 0)?;
    Ok((stream.slice(start, end), stream.slice(end, stream.len())))
}

/// Decodes a concatenation of self-delimiting codes. The whole stream must be
/// consumed.
pub fn unbar_all(stream: &BitString) -> Result<Vec<BitString>, MalformedCode> {
    let mut out = Vec::new();
    let mut offset = 0;
    while offset < stream.len() {
        let (start, end) = unbar_at(stream, offset)?;
        out.push(stream.slice(start, end));
        offset = end;
    }
    Ok(out)
}

/// `⟨x, y⟩ = x̄ y`.
pub fn pair(x: &BitString, y: &BitString) -> BitString {
    bar(x).concat(y)
}

/// Inverse of [`pair`]; fails exactly where the stream has no self-delimiting prefix.
pub fn unpair(z: &BitString) -> Result<(BitString, BitString), MalformedCode> {
    unbar(z)
}

/// `⟨x, y⟩` on naturals, through the rank identification.
pub fn pair_nat(x: &Nat, y: &Nat) -> Nat {
    nat_of_str(&pair(&str_of_nat(x), &str_of_nat(y)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TupleScheme {
    /// `⟨n₁, ⟨n₂, …, n_k⟩⟩`
    Nested,
    /// `n̄₁ n̄₂ … n̄_k`
    Flat,
}

/// Encodes a nonempty tuple. Returns `None` for an empty slice.
pub fn tuple_encode(xs: &[BitString], scheme: TupleScheme) -> Option<BitString> {
    let (last, init) = xs.split_last()?;
    Some(match scheme {
        TupleScheme::Nested => init.iter().rev().fold(last.clone(), |acc, x| pair(x, &acc)),
        TupleScheme::Flat => xs.iter().fold(BitString::new(), |mut acc, x| {
            acc.extend_from(&bar(x));
            acc
        }),
    })
}

/// Decodes a `k`-tuple, `k ≥ 1`.
pub fn tuple_decode(
    z: &BitString,
    k: usize,
    scheme: TupleScheme,
) -> Result<Vec<BitString>, MalformedCode> {
    assert!(k >= 1, "tuples have at least one component");
    match scheme {
        TupleScheme::Flat => {
            let parts = unbar_all(z)?;
            if parts.len() != k {
                return Err(MalformedCode::Truncated {
                    needed: k.saturating_sub(parts.len()),
                    available: z.len(),
                });
            }
            Ok(parts)
        }
        TupleScheme::Nested => {
            let mut out = Vec::with_capacity(k);
            let mut rest = z.clone();
            for _ in 1..k {
                let (x, r) = unpair(&rest)?;
                out.push(x);
                rest = r;
            }
            out.push(rest);
            Ok(out)
        }
    }
}

/// Field width and rule count of a machine code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeLayout {
    /// Bits per code, `⌈log₂(|Q| + 5)⌉`.
    pub width: u64,
    pub rules: u64,
}

impl CodeLayout {
    pub fn of(m: &Machine) -> CodeLayout {
        CodeLayout {
            width: min_width(m.state_count() as u64),
            rules: m.rules().len() as u64,
        }
    }

    /// Exact length of the code: `|s̄| + |r̄| + 4rs`.
    pub fn code_len(&self) -> u64 {
        let barred = |n: u64| 2 * str_of_u64(n).len() as u64 + 1;
        barred(self.width) + barred(self.rules) + 4 * self.rules * self.width
    }

    /// `s̄ r̄`.
    pub fn header(&self) -> BitString {
        bar(&str_of_u64(self.width)).concat(&bar(&str_of_u64(self.rules)))
    }
}

/// `⌈log₂(states + 5)⌉`.
pub fn min_width(states: u64) -> u64 {
    let n = states + FIRST_STATE_CODE;
    64 - (n - 1).leading_zeros() as u64
}

/// Smallest state count whose minimal width is `width`.
pub fn min_states_for_width(width: u64) -> u64 {
    if width == 0 {
        return 0;
    }
    ((1u64 << (width - 1)) + 1).saturating_sub(FIRST_STATE_CODE)
}

/// Largest state count whose minimal width is `width`.
pub fn max_states_for_width(width: u64) -> u64 {
    (1u64 << width).saturating_sub(FIRST_STATE_CODE)
}

pub fn state_code(id: StateId) -> u64 {
    FIRST_STATE_CODE + id.0 as u64
}

/// `E(T)`.
pub fn encode_machine(m: &Machine) -> BitString {
    let layout = CodeLayout::of(m);
    let s = layout.width as usize;
    let mut out = layout.header();
    for r in m.rules() {
        out.extend_from(&BitString::from_uint(state_code(r.state), s));
        out.extend_from(&BitString::from_uint(r.scan.index() as u64, s));
        out.extend_from(&BitString::from_uint(r.action.index() as u64, s));
        out.extend_from(&BitString::from_uint(state_code(r.next), s));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum InvalidMachine {
    #[error("rule count is zero")]
    NoRules,
    #[error("rule {rule}: symbol field code {code} is not one of 0, 1, B")]
    SymbolCode { rule: usize, code: u64 },
    #[error("rule {rule}: action field code {code} is not one of 0, 1, B, L, R")]
    ActionCode { rule: usize, code: u64 },
    #[error("rule {rule}: state field code {code} is below {FIRST_STATE_CODE}")]
    StateCode { rule: usize, code: u64 },
    #[error("first rule's state has code {code}, expected {FIRST_STATE_CODE}")]
    StartNotFirst { code: u64 },
    #[error("rule {rule}: state code {code} skips unused code {expected}")]
    NonContiguousState { rule: usize, code: u64, expected: u64 },
    #[error("field width {width} is not minimal for {states} states")]
    NonMinimalWidth { width: u64, states: u64 },
    #[error("rules {first} and {second} start with the same state and symbol")]
    Duplicate { first: usize, second: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("malformed code: {0}")]
    Malformed(#[from] MalformedCode),
    #[error("invalid machine: {0}")]
    Invalid(#[from] InvalidMachine),
}

fn read_header_int(stream: &BitString, offset: usize) -> Result<(Option<u64>, usize), MalformedCode> {
    let (start, end) = unbar_at(stream, offset)?;
    Ok((u64_of_str(&stream.slice(start, end)), end))
}

/// Decodes the machine whose code is a prefix of `stream`; returns it with the
/// unread remainder.
pub fn decode_machine(stream: &BitString) -> Result<(Machine, BitString), CodecError> {
    let (width, after_s) = read_header_int(stream, 0)?;
    let width = width.unwrap_or(u64::MAX);
    if width > MAX_FIELD_WIDTH {
        return Err(MalformedCode::WidthTooLarge(width).into());
    }
    let (rules, body) = read_header_int(stream, after_s)?;
    let available = stream.len() - body;
    let rules = rules.ok_or(MalformedCode::RuleCountTooLarge)?;
    let needed = rules
        .checked_mul(4 * width)
        .and_then(|n| usize::try_from(n).ok())
        .ok_or(MalformedCode::RuleCountTooLarge)?;
    if needed > available {
        return Err(MalformedCode::Truncated {
            needed: needed - available,
            available,
        }
        .into());
    }
    if rules == 0 {
        return Err(InvalidMachine::NoRules.into());
    }

    let s = width as usize;
    let field = |i: usize| stream.read_uint(body + i * s, s).expect("length checked");
    let mut states = 0u64;
    let mut state_of = |rule: usize, code: u64| -> Result<StateId, InvalidMachine> {
        if code < FIRST_STATE_CODE {
            return Err(InvalidMachine::StateCode { rule, code });
        }
        if states == 0 && code != FIRST_STATE_CODE {
            return Err(InvalidMachine::StartNotFirst { code });
        }
        let expected = FIRST_STATE_CODE + states;
        if code > expected {
            return Err(InvalidMachine::NonContiguousState { rule, code, expected });
        }
        if code == expected {
            states += 1;
        }
        Ok(StateId((code - FIRST_STATE_CODE) as u32))
    };

    let mut decoded = Vec::with_capacity(rules as usize);
    for i in 0..rules as usize {
        let state = state_of(i, field(4 * i))?;
        let scan = Symbol::from_index(field(4 * i + 1)).ok_or(InvalidMachine::SymbolCode {
            rule: i,
            code: field(4 * i + 1),
        })?;
        let action = Action::from_index(field(4 * i + 2)).ok_or(InvalidMachine::ActionCode {
            rule: i,
            code: field(4 * i + 2),
        })?;
        let next = state_of(i, field(4 * i + 3))?;
        decoded.push(Rule {
            state,
            scan,
            action,
            next,
        });
    }
    if min_width(states) != width {
        return Err(InvalidMachine::NonMinimalWidth { width, states }.into());
    }
    for (second, r) in decoded.iter().enumerate() {
        if let Some(first) = decoded[..second]
            .iter()
            .position(|o| o.state == r.state && o.scan == r.scan)
        {
            return Err(InvalidMachine::Duplicate { first, second }.into());
        }
    }

    let machine = Machine::new(decoded).expect("validated above");
    Ok((machine, stream.slice(body + needed, stream.len())))
}

/// `true` iff `bits` is exactly one valid machine code.
pub fn is_machine_code(bits: &BitString) -> bool {
    matches!(decode_machine(bits), Ok((_, rest)) if rest.is_empty())
}

pub fn natural(n: u64) -> Nat {
    Nat::from(n)
}
