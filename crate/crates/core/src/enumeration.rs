//! Effective enumeration `T₁, T₂, …` of machines.
//!
//! Valid machine codes are listed by increasing length, then lexicographically;
//! the Gödel number of a machine is the 1-based position of its code in that
//! list. The stream is generated structurally (field by field, with pruning) and
//! never materializes a table, so it can run well past the lengths where a
//! brute-force scan of all bit strings is practical. Exact indices are only
//! computed within a code-length budget.

use std::fmt;

use thiserror::Error;

use crate::bits::BitString;
use crate::codec::{
    self, bar, encode_machine, max_states_for_width, min_states_for_width, min_width, str_of_u64,
    CodeLayout, FIRST_STATE_CODE,
};
use crate::machine::{Action, Machine, Rule, StateId};
use crate::tape::Symbol;

pub const DEFAULT_MAX_CODE_LEN: u64 = 24;

/// Hard ceiling on any budget.
pub const MAX_SUPPORTED_CODE_LEN: u64 = 256;

/// Length of the shortest valid code: `s = 3`, `r = 1`.
pub const MIN_CODE_LEN: u64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GodelIndex(u64);

impl GodelIndex {
    pub fn new(i: u64) -> Option<GodelIndex> {
        (i >= 1).then_some(GodelIndex(i))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for GodelIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("code length limit {requested} exceeds the supported maximum {MAX_SUPPORTED_CODE_LEN}")]
    LimitTooLarge { requested: u64 },
    #[error("code has {len} bits, beyond the {budget}-bit budget")]
    CodeOutOfBudget { len: u64, budget: u64 },
    #[error("index {index} is beyond the {budget}-bit budget, which holds {available} machines")]
    IndexOutOfBudget {
        index: u64,
        budget: u64,
        available: u64,
    },
}

pub fn is_valid_code(bits: &BitString) -> bool {
    codec::is_machine_code(bits)
}

/// One element of the enumeration.
#[derive(Debug, Clone)]
pub struct Enumerated {
    pub index: GodelIndex,
    pub code: BitString,
    pub machine: Machine,
}

/// `(s, r)` pairs whose code length is exactly `len`, in lexicographic order of
/// their `s̄ r̄` headers. Headers are prefix-free, so this order decides the
/// order of the full codes.
fn layouts_of_length(len: u64) -> Vec<(BitString, CodeLayout)> {
    let barred = |n: u64| 2 * str_of_u64(n).len() as u64 + 1;
    let mut out = Vec::new();
    let mut width = 3;
    while barred(width) + 3 + 4 * width <= len {
        let mut rules = 1;
        while barred(width) + barred(rules) + 4 * rules * width <= len {
            let layout = CodeLayout { width, rules };
            // At most 2r states can appear and at most 3|Q| rules can be deterministic.
            let feasible = min_states_for_width(width) <= 2 * rules
                && rules <= 3 * max_states_for_width(width);
            if feasible && layout.code_len() == len {
                out.push((layout.header(), layout));
            }
            rules += 1;
        }
        width += 1;
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Depth-first search over rule bodies in lexicographic order.
struct BodySearch {
    layout: CodeLayout,
    fields: Vec<u64>,
    /// State count before each field was assigned.
    states_before: Vec<u64>,
    states: u64,
    /// `(state, symbol)` pairs already covered by a rule.
    used: Vec<[bool; 3]>,
    started: bool,
    done: bool,
}

impl BodySearch {
    fn new(layout: CodeLayout) -> Self {
        let n = 4 * layout.rules as usize;
        BodySearch {
            layout,
            fields: vec![0; n],
            states_before: vec![0; n],
            states: 0,
            used: Vec::new(),
            started: false,
            done: false,
        }
    }

    fn len(&self) -> usize {
        self.fields.len()
    }

    fn is_state_field(i: usize) -> bool {
        i % 4 == 0 || i % 4 == 3
    }

    /// State fields at positions after `i`.
    fn state_fields_after(&self, i: usize) -> u64 {
        (i + 1..self.len()).filter(|&j| Self::is_state_field(j)).count() as u64
    }

    fn max_value(&self, i: usize) -> u64 {
        match i % 4 {
            0 | 3 => {
                let newest = FIRST_STATE_CODE + self.states;
                if self.states < max_states_for_width(self.layout.width) {
                    newest
                } else {
                    newest - 1
                }
            }
            1 => 2,
            _ => 4,
        }
    }

    fn min_value(i: usize) -> u64 {
        if Self::is_state_field(i) {
            FIRST_STATE_CODE
        } else {
            0
        }
    }

    fn acceptable(&self, i: usize, v: u64) -> bool {
        match i % 4 {
            1 => {
                let p = (self.fields[i - 1] - FIRST_STATE_CODE) as usize;
                !self.used[p][v as usize]
            }
            0 | 3 => {
                let states = self.states + (v == FIRST_STATE_CODE + self.states) as u64;
                states + self.state_fields_after(i) >= min_states_for_width(self.layout.width)
            }
            _ => true,
        }
    }

    fn assign(&mut self, i: usize, v: u64) {
        self.fields[i] = v;
        self.states_before[i] = self.states;
        match i % 4 {
            0 | 3 => {
                if v == FIRST_STATE_CODE + self.states {
                    self.states += 1;
                    self.used.push([false; 3]);
                }
            }
            1 => {
                let p = (self.fields[i - 1] - FIRST_STATE_CODE) as usize;
                self.used[p][v as usize] = true;
            }
            _ => {}
        }
    }

    fn unassign(&mut self, i: usize) {
        match i % 4 {
            0 | 3 => {
                self.states = self.states_before[i];
                self.used.truncate(self.states as usize);
            }
            1 => {
                let p = (self.fields[i - 1] - FIRST_STATE_CODE) as usize;
                self.used[p][self.fields[i] as usize] = false;
            }
            _ => {}
        }
    }

    fn leaf_ok(&self) -> bool {
        min_width(self.states) == self.layout.width
    }

    /// Advances to the next valid body, or returns `false` when exhausted.
    fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        let n = self.len();
        let (mut i, mut start) = if self.started {
            let last = n - 1;
            self.unassign(last);
            (last, self.fields[last] + 1)
        } else {
            self.started = true;
            (0, Self::min_value(0))
        };
        loop {
            let hi = self.max_value(i);
            let found = (start.max(Self::min_value(i))..=hi).find(|&v| self.acceptable(i, v));
            match found {
                Some(v) => {
                    self.assign(i, v);
                    if i + 1 == n {
                        if self.leaf_ok() {
                            return true;
                        }
                        self.unassign(i);
                        start = v + 1;
                    } else {
                        i += 1;
                        start = Self::min_value(i);
                    }
                }
                None => {
                    if i == 0 {
                        self.done = true;
                        return false;
                    }
                    i -= 1;
                    self.unassign(i);
                    start = self.fields[i] + 1;
                }
            }
        }
    }

    fn code(&self, header: &BitString) -> BitString {
        let s = self.layout.width as usize;
        let mut out = header.clone();
        for &f in &self.fields {
            out.extend_from(&BitString::from_uint(f, s));
        }
        out
    }

    fn machine(&self) -> Machine {
        let rules = self
            .fields
            .chunks(4)
            .map(|f| Rule {
                state: StateId((f[0] - FIRST_STATE_CODE) as u32),
                scan: Symbol::from_index(f[1]).expect("searched range"),
                action: Action::from_index(f[2]).expect("searched range"),
                next: StateId((f[3] - FIRST_STATE_CODE) as u32),
            })
            .collect();
        Machine::new(rules).expect("search only yields valid machines")
    }
}

/// Lazy stream of all valid codes of length `≤ max_len`, indexed from 1.
pub struct Enumeration {
    max_len: u64,
    len: u64,
    layouts: Vec<(BitString, CodeLayout)>,
    layout_pos: usize,
    search: Option<BodySearch>,
    next_index: u64,
}

impl Iterator for Enumeration {
    type Item = Enumerated;

    fn next(&mut self) -> Option<Enumerated> {
        loop {
            if let Some(search) = self.search.as_mut() {
                if search.advance() {
                    let header = &self.layouts[self.layout_pos].0;
                    let item = Enumerated {
                        index: GodelIndex(self.next_index),
                        code: search.code(header),
                        machine: search.machine(),
                    };
                    self.next_index += 1;
                    return Some(item);
                }
                self.search = None;
                self.layout_pos += 1;
            }
            if self.layout_pos < self.layouts.len() {
                self.search = Some(BodySearch::new(self.layouts[self.layout_pos].1));
                continue;
            }
            if self.len >= self.max_len {
                return None;
            }
            self.len += 1;
            self.layouts = layouts_of_length(self.len);
            self.layout_pos = 0;
        }
    }
}

/// Enumerates every valid machine whose code has at most `max_len` bits.
pub fn enumerate_machines(max_len: u64) -> Result<Enumeration, EnumError> {
    if max_len > MAX_SUPPORTED_CODE_LEN {
        return Err(EnumError::LimitTooLarge { requested: max_len });
    }
    Ok(Enumeration {
        max_len,
        len: MIN_CODE_LEN - 1,
        layouts: Vec::new(),
        layout_pos: 0,
        search: None,
        next_index: 1,
    })
}

/// `n(T)`, provided `|E(T)| ≤ max_len`.
pub fn godel_number(m: &Machine, max_len: u64) -> Result<GodelIndex, EnumError> {
    let code = encode_machine(m);
    let len = code.len() as u64;
    if len > max_len {
        return Err(EnumError::CodeOutOfBudget { len, budget: max_len });
    }
    enumerate_machines(len)?
        .find(|e| e.code == code)
        .map(|e| e.index)
        .ok_or(EnumError::CodeOutOfBudget { len, budget: max_len })
}

/// `T_i`, provided its code has at most `max_len` bits.
pub fn machine_of_index(i: GodelIndex, max_len: u64) -> Result<Machine, EnumError> {
    let mut available = 0;
    for e in enumerate_machines(max_len)? {
        if e.index == i {
            return Ok(e.machine);
        }
        available = e.index.get();
    }
    Err(EnumError::IndexOutOfBudget {
        index: i.get(),
        budget: max_len,
        available,
    })
}

/// Bar-code of a natural's string form; used to describe headers in docs and tests.
pub fn header_of(width: u64, rules: u64) -> BitString {
    bar(&str_of_u64(width)).concat(&bar(&str_of_u64(rules)))
}
