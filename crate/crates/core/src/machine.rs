//! Single-tape deterministic machines in quadruple format and their step semantics.
//!
//! A rule `(p, s, a, q)` says: in state `p` scanning `s`, perform the single action
//! `a` (write a symbol or move the head one cell) and enter state `q`. A machine
//! halts when no rule matches its current state and scanned symbol; there is no
//! distinguished halting state.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::bits::BitString;
use crate::tape::{Symbol, Tape};

/// The five elementary operations `{0, 1, B, L, R}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    Write(Symbol),
    Left,
    Right,
}

impl Action {
    pub const ALL: [Action; 5] = [
        Action::Write(Symbol::Zero),
        Action::Write(Symbol::One),
        Action::Write(Symbol::Blank),
        Action::Left,
        Action::Right,
    ];

    /// Code of the action in machine encodings: `0, 1, B, L, R` map to `0..=4`.
    pub fn index(self) -> usize {
        match self {
            Action::Write(s) => s.index(),
            Action::Left => 3,
            Action::Right => 4,
        }
    }

    pub fn from_index(i: u64) -> Option<Action> {
        Action::ALL.get(i as usize).copied()
    }

    pub fn as_char(self) -> char {
        match self {
            Action::Write(s) => s.as_char(),
            Action::Left => 'L',
            Action::Right => 'R',
        }
    }

    pub fn from_char(c: char) -> Option<Action> {
        match c {
            'L' => Some(Action::Left),
            'R' => Some(Action::Right),
            c => Symbol::from_char(c).map(Action::Write),
        }
    }

    pub fn is_move(self) -> bool {
        matches!(self, Action::Left | Action::Right)
    }

    /// Applies the action to `tape` with the head at `head`; returns the new head.
    pub fn apply(self, tape: &mut Tape, head: i64) -> i64 {
        match self {
            Action::Write(s) => {
                tape.set(head, s);
                head
            }
            Action::Left => head - 1,
            Action::Right => head + 1,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Internal state number. Machines number their states `0, 1, …` in order of
/// first appearance in the rule list (`p₁, q₁, p₂, q₂, …`), so the start state is
/// always `StateId(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub u32);

impl StateId {
    pub const START: StateId = StateId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rule {
    pub state: StateId,
    pub scan: Symbol,
    pub action: Action,
    pub next: StateId,
}

impl Rule {
    pub fn new(state: u32, scan: Symbol, action: Action, next: u32) -> Rule {
        Rule {
            state: StateId(state),
            scan,
            action,
            next: StateId(next),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("machine has no rules")]
    Empty,
    #[error("rules {first} and {second} both start with ({state}, {symbol}): machine is not deterministic")]
    Nondeterministic {
        first: usize,
        second: usize,
        state: String,
        symbol: Symbol,
    },
    #[error("rule {rule} refers to undeclared state id {id}")]
    UnknownState { rule: usize, id: u32 },
}

/// A deterministic single-tape machine.
///
/// Equality compares the rule list only; state names are kept for display.
#[derive(Clone)]
pub struct Machine {
    rules: Vec<Rule>,
    names: Vec<String>,
    table: Vec<[Option<(Action, StateId)>; 3]>,
}

impl Machine {
    /// Builds a machine from rules over arbitrary state ids, naming states
    /// `q1, q2, …` in order of first appearance.
    pub fn new(rules: Vec<Rule>) -> Result<Machine, MachineError> {
        let max = rules
            .iter()
            .flat_map(|r| [r.state.0, r.next.0])
            .max()
            .unwrap_or(0);
        let names = (0..=max).map(|i| format!("q{}", i + 1)).collect();
        let mut m = Machine::with_names(rules, names)?;
        m.names = (1..=m.names.len()).map(|i| format!("q{i}")).collect();
        Ok(m)
    }

    /// Builds a machine whose rule state ids index into `names`. States are
    /// renumbered by first appearance; names follow their states.
    pub fn with_names(rules: Vec<Rule>, names: Vec<String>) -> Result<Machine, MachineError> {
        if rules.is_empty() {
            return Err(MachineError::Empty);
        }
        let mut renumber: HashMap<u32, u32> = HashMap::new();
        let mut new_names = Vec::new();
        let mut canonical = Vec::with_capacity(rules.len());
        for (i, r) in rules.iter().enumerate() {
            let mut map = |id: StateId| -> Result<StateId, MachineError> {
                if id.index() >= names.len() {
                    return Err(MachineError::UnknownState { rule: i, id: id.0 });
                }
                let next = renumber.len() as u32;
                let n = *renumber.entry(id.0).or_insert_with(|| {
                    new_names.push(names[id.index()].clone());
                    next
                });
                Ok(StateId(n))
            };
            let state = map(r.state)?;
            let next = map(r.next)?;
            canonical.push(Rule {
                state,
                scan: r.scan,
                action: r.action,
                next,
            });
        }

        let mut table = vec![[None; 3]; new_names.len()];
        let mut origin: HashMap<(StateId, Symbol), usize> = HashMap::new();
        for (i, r) in canonical.iter().enumerate() {
            if let Some(&first) = origin.get(&(r.state, r.scan)) {
                return Err(MachineError::Nondeterministic {
                    first,
                    second: i,
                    state: new_names[r.state.index()].clone(),
                    symbol: r.scan,
                });
            }
            origin.insert((r.state, r.scan), i);
            table[r.state.index()][r.scan.index()] = Some((r.action, r.next));
        }

        Ok(Machine {
            rules: canonical,
            names: new_names,
            table,
        })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn start(&self) -> StateId {
        StateId::START
    }

    pub fn state_count(&self) -> usize {
        self.names.len()
    }

    pub fn state_name(&self, id: StateId) -> &str {
        &self.names[id.index()]
    }

    pub fn state_names(&self) -> &[String] {
        &self.names
    }

    /// Same rules with states renamed `q1, q2, …`.
    pub fn canonical(&self) -> Machine {
        let mut m = self.clone();
        m.names = (1..=m.names.len()).map(|i| format!("q{i}")).collect();
        m
    }

    pub fn lookup(&self, state: StateId, scan: Symbol) -> Option<(Action, StateId)> {
        self.table.get(state.index())?[scan.index()]
    }

    /// Executes one step. Returns `Step::Halt` when no rule matches.
    pub fn step(&self, c: &Configuration) -> Step {
        let mut next = c.clone();
        if self.step_in_place(&mut next) {
            Step::Next(next)
        } else {
            Step::Halt
        }
    }

    /// In-place variant of [`Machine::step`]; returns `false` on halt, leaving
    /// `c` untouched.
    pub fn step_in_place(&self, c: &mut Configuration) -> bool {
        match self.lookup(c.state, c.scanned()) {
            Some((action, next)) => {
                c.head = action.apply(&mut c.tape, c.head);
                c.state = next;
                true
            }
            None => false,
        }
    }

    pub fn initial(&self, input: &BitString) -> Configuration {
        Configuration {
            state: self.start(),
            head: 0,
            tape: Tape::with_input(input),
        }
    }

    /// Runs on `input` for at most `fuel` steps.
    pub fn run(&self, input: &BitString, fuel: u64) -> Outcome {
        self.run_from(self.initial(input), fuel, |_, _| {})
    }

    /// Runs from an arbitrary configuration. `observe` is called before every
    /// executed step with the 1-based step number and the configuration the step
    /// starts from.
    pub fn run_from(
        &self,
        mut config: Configuration,
        fuel: u64,
        mut observe: impl FnMut(u64, &Configuration),
    ) -> Outcome {
        let mut steps = 0;
        loop {
            if self.lookup(config.state, config.scanned()).is_none() {
                return Outcome::Halted { config, steps };
            }
            if steps == fuel {
                return Outcome::FuelExhausted { config, steps };
            }
            observe(steps + 1, &config);
            self.step_in_place(&mut config);
            steps += 1;
        }
    }
}

impl PartialEq for Machine {
    fn eq(&self, other: &Self) -> bool {
        self.rules == other.rules
    }
}

impl Eq for Machine {}

impl fmt::Debug for Machine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.rules.iter().map(|r| RuleDisplay(self, r)))
            .finish()
    }
}

struct RuleDisplay<'a>(&'a Machine, &'a Rule);

impl fmt::Debug for RuleDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let RuleDisplay(m, r) = self;
        write!(
            f,
            "({}, {}, {}, {})",
            m.state_name(r.state),
            r.scan,
            r.action,
            m.state_name(r.next)
        )
    }
}

impl Machine {
    /// One-line rendering of the rule table: `q1 0 R q1; q1 B 1 q2`.
    pub fn summary(&self) -> String {
        self.rules
            .iter()
            .map(|r| {
                format!(
                    "{} {} {} {}",
                    self.state_name(r.state),
                    r.scan,
                    r.action,
                    self.state_name(r.next)
                )
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Instantaneous description: control state, head cell, tape contents.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: StateId,
    pub head: i64,
    pub tape: Tape,
}

impl Configuration {
    pub fn scanned(&self) -> Symbol {
        self.tape.get(self.head)
    }

    pub fn translated(&self, offset: i64) -> Configuration {
        Configuration {
            state: self.state,
            head: self.head + offset,
            tape: self.tape.translated(offset),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Next(Configuration),
    Halt,
}

/// Result of a fuel-bounded run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Halted { config: Configuration, steps: u64 },
    FuelExhausted { config: Configuration, steps: u64 },
}

impl Outcome {
    pub fn config(&self) -> &Configuration {
        match self {
            Outcome::Halted { config, .. } | Outcome::FuelExhausted { config, .. } => config,
        }
    }

    pub fn steps(&self) -> u64 {
        match self {
            Outcome::Halted { steps, .. } | Outcome::FuelExhausted { steps, .. } => *steps,
        }
    }

    pub fn is_halted(&self) -> bool {
        matches!(self, Outcome::Halted { .. })
    }
}
