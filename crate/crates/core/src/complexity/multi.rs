use std::collections::HashMap;
use std::fmt;

use crate::bits::BitString;
use crate::format::{parse_document, Document, FormatError};
use crate::machine::{Action, Machine, StateId};
use crate::tape::{Symbol, Tape};

use super::ComplexityError;

/// A rule `(p, s̄, ā, q)` acting on all tapes at once.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiRule {
    pub state: StateId,
    pub scans: Vec<Symbol>,
    pub actions: Vec<Action>,
    pub next: StateId,
}

/// Rules of a k-tape machine, possibly nondeterministic.
#[derive(Debug, Clone)]
pub(crate) struct RuleSet {
    pub(crate) tapes: usize,
    pub(crate) readonly_input: bool,
    pub(crate) rules: Vec<MultiRule>,
    pub(crate) names: Vec<String>,
    index: HashMap<(StateId, Vec<Symbol>), Vec<usize>>,
}

impl RuleSet {
    pub(crate) fn new(
        tapes: usize,
        readonly_input: bool,
        rules: Vec<MultiRule>,
        names: Vec<String>,
    ) -> Result<RuleSet, ComplexityError> {
        if tapes == 0 {
            return Err(ComplexityError::NoTapes);
        }
        if rules.is_empty() {
            return Err(ComplexityError::Empty);
        }
        if readonly_input && tapes == 1 {
            return Err(ComplexityError::Format(FormatError::ReadonlyInput));
        }
        let mut index: HashMap<_, Vec<usize>> = HashMap::new();
        for (i, r) in rules.iter().enumerate() {
            if r.scans.len() != tapes || r.actions.len() != tapes {
                return Err(ComplexityError::TapeArity {
                    rule: i,
                    expected: tapes,
                    found: r.scans.len().max(r.actions.len()),
                });
            }
            for id in [r.state, r.next] {
                if id.index() >= names.len() {
                    return Err(ComplexityError::UnknownState { rule: i, id: id.0 });
                }
            }
            if readonly_input && !r.actions[0].is_move() {
                return Err(ComplexityError::ReadonlyWrite { rule: i });
            }
            index.entry((r.state, r.scans.clone())).or_default().push(i);
        }
        Ok(RuleSet {
            tapes,
            readonly_input,
            rules,
            names,
            index,
        })
    }

    pub(crate) fn from_document(doc: &Document) -> Result<RuleSet, ComplexityError> {
        let (names, ids) = doc.state_table();
        let rules = doc
            .rules
            .iter()
            .map(|r| MultiRule {
                state: StateId(ids[&r.state]),
                scans: r.scans.clone(),
                actions: r.actions.clone(),
                next: StateId(ids[&r.next]),
            })
            .collect();
        RuleSet::new(doc.tapes, doc.readonly_input, rules, names)
    }

    pub(crate) fn start(&self) -> StateId {
        self.rules[0].state
    }

    pub(crate) fn matching(&self, c: &MTConfiguration) -> &[usize] {
        self.index
            .get(&(c.state, c.scanned()))
            .map_or(&[], Vec::as_slice)
    }

    pub(crate) fn apply(&self, rule: usize, c: &MTConfiguration) -> MTConfiguration {
        let r = &self.rules[rule];
        let mut next = c.clone();
        for (i, a) in r.actions.iter().enumerate() {
            next.heads[i] = a.apply(&mut next.tapes[i], next.heads[i]);
        }
        next.state = r.next;
        next
    }

    pub(crate) fn initial(&self, input: &BitString) -> MTConfiguration {
        let mut tapes = vec![Tape::new(); self.tapes];
        tapes[0] = Tape::with_input(input);
        MTConfiguration {
            state: self.start(),
            heads: vec![0; self.tapes],
            tapes,
        }
    }

    /// Tapes whose visited cells count as space.
    pub(crate) fn counted_tapes(&self) -> std::ops::Range<usize> {
        if self.readonly_input {
            1..self.tapes
        } else {
            0..self.tapes
        }
    }

    pub(crate) fn output_tape(&self) -> usize {
        if self.tapes == 1 {
            0
        } else {
            1
        }
    }

    /// A halted configuration accepts when its output block reads 1, i.e. is "0".
    pub(crate) fn accepting(&self, c: &MTConfiguration) -> bool {
        let t = self.output_tape();
        c.tapes[t]
            .block_at(c.heads[t])
            .is_some_and(|b| b.len() == 1 && b.get(0) == Some(false))
    }

    fn write(&self, out: &mut String) {
        use fmt::Write as _;
        if self.tapes > 1 {
            let _ = writeln!(out, "tapes: {}", self.tapes);
        }
        if self.readonly_input {
            let _ = writeln!(out, "readonly-input: yes");
        }
        for r in &self.rules {
            let scans: Vec<String> = r.scans.iter().map(|s| s.to_string()).collect();
            let acts: Vec<String> = r.actions.iter().map(|a| a.to_string()).collect();
            let _ = writeln!(
                out,
                "{} {} {} {}",
                self.names[r.state.index()],
                scans.join(" "),
                acts.join(" "),
                self.names[r.next.index()]
            );
        }
    }
}

/// Instantaneous description of a k-tape machine.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MTConfiguration {
    pub state: StateId,
    pub heads: Vec<i64>,
    pub tapes: Vec<Tape>,
}

impl MTConfiguration {
    pub fn scanned(&self) -> Vec<Symbol> {
        self.tapes
            .iter()
            .zip(&self.heads)
            .map(|(t, &h)| t.get(h))
            .collect()
    }
}

/// A deterministic k-tape machine.
#[derive(Debug, Clone)]
pub struct MultiMachine {
    pub(crate) rules: RuleSet,
}

impl MultiMachine {
    pub fn new(
        tapes: usize,
        readonly_input: bool,
        rules: Vec<MultiRule>,
        names: Vec<String>,
    ) -> Result<MultiMachine, ComplexityError> {
        MultiMachine::checked(RuleSet::new(tapes, readonly_input, rules, names)?, None)
    }

    fn checked(rules: RuleSet, doc: Option<&Document>) -> Result<MultiMachine, ComplexityError> {
        let mut seen: HashMap<(StateId, &[Symbol]), usize> = HashMap::new();
        for (i, r) in rules.rules.iter().enumerate() {
            if let Some(&first) = seen.get(&(r.state, r.scans.as_slice())) {
                let line = |j: usize| doc.map_or(j + 1, |d| d.rules[j].line);
                return Err(ComplexityError::Format(FormatError::Nondeterministic {
                    line: line(i),
                    first_line: line(first),
                    state: rules.names[r.state.index()].clone(),
                    symbol: r.scans.iter().map(|s| s.as_char()).collect(),
                }));
            }
            seen.insert((r.state, &r.scans), i);
        }
        Ok(MultiMachine { rules })
    }

    pub fn from_document(doc: &Document) -> Result<MultiMachine, ComplexityError> {
        MultiMachine::checked(RuleSet::from_document(doc)?, Some(doc))
    }

    pub fn parse(text: &str) -> Result<MultiMachine, ComplexityError> {
        MultiMachine::from_document(&parse_document(text)?)
    }

    /// The single-tape machine `m` viewed as a 1-tape multitape machine.
    pub fn from_machine(m: &Machine) -> MultiMachine {
        let rules = m
            .rules()
            .iter()
            .map(|r| MultiRule {
                state: r.state,
                scans: vec![r.scan],
                actions: vec![r.action],
                next: r.next,
            })
            .collect();
        MultiMachine::new(1, false, rules, m.state_names().to_vec())
            .expect("a valid machine is a valid 1-tape machine")
    }

    pub fn tapes(&self) -> usize {
        self.rules.tapes
    }

    pub fn readonly_input(&self) -> bool {
        self.rules.readonly_input
    }

    pub fn rules(&self) -> &[MultiRule] {
        &self.rules.rules
    }

    pub fn state_name(&self, id: StateId) -> &str {
        &self.rules.names[id.index()]
    }

    pub fn initial(&self, input: &BitString) -> MTConfiguration {
        self.rules.initial(input)
    }

    /// The successor of `c`, or `None` if `c` is halted.
    pub fn step(&self, c: &MTConfiguration) -> Option<MTConfiguration> {
        self.rules.matching(c).first().map(|&i| self.rules.apply(i, c))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.rules.write(&mut out);
        out
    }
}

/// Time and space used by one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Metrics {
    pub steps: u64,
    /// Distinct cells visited by the heads of the counted tapes, summed.
    pub work_cells: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MtOutcome {
    Halted { config: MTConfiguration, steps: u64 },
    FuelExhausted { config: MTConfiguration, steps: u64 },
}

impl MtOutcome {
    pub fn config(&self) -> &MTConfiguration {
        match self {
            MtOutcome::Halted { config, .. } | MtOutcome::FuelExhausted { config, .. } => config,
        }
    }

    pub fn steps(&self) -> u64 {
        match self {
            MtOutcome::Halted { steps, .. } | MtOutcome::FuelExhausted { steps, .. } => *steps,
        }
    }

    pub fn is_halted(&self) -> bool {
        matches!(self, MtOutcome::Halted { .. })
    }
}

/// Tracks the visited interval of each counted head. Heads move one cell at
/// a time, so the visited cells of a tape are exactly that interval.
struct Visited {
    spans: Vec<Option<(i64, i64)>>,
}

impl Visited {
    fn new(m: &RuleSet, c: &MTConfiguration) -> Visited {
        let mut v = Visited {
            spans: vec![None; m.tapes],
        };
        for t in m.counted_tapes() {
            v.spans[t] = Some((c.heads[t], c.heads[t]));
        }
        v
    }

    fn record(&mut self, c: &MTConfiguration) {
        for (span, &h) in self.spans.iter_mut().zip(&c.heads) {
            if let Some((lo, hi)) = span {
                *lo = (*lo).min(h);
                *hi = (*hi).max(h);
            }
        }
    }

    fn total(&self) -> u64 {
        self.spans
            .iter()
            .flatten()
            .map(|(lo, hi)| (hi - lo + 1) as u64)
            .sum()
    }
}

pub fn mt_run(m: &MultiMachine, input: &BitString, fuel: u64) -> (MtOutcome, Metrics) {
    mt_run_observed(m, input, fuel, |_, _| {})
}

/// Like [`mt_run`], calling `observe(step, config)` before each executed step,
/// with steps numbered from 1.
pub fn mt_run_observed(
    m: &MultiMachine,
    input: &BitString,
    fuel: u64,
    mut observe: impl FnMut(u64, &MTConfiguration),
) -> (MtOutcome, Metrics) {
    let mut config = m.initial(input);
    let mut visited = Visited::new(&m.rules, &config);
    let mut steps = 0;
    loop {
        let Some(&rule) = m.rules.matching(&config).first() else {
            let metrics = Metrics {
                steps,
                work_cells: visited.total(),
            };
            return (MtOutcome::Halted { config, steps }, metrics);
        };
        if steps == fuel {
            let metrics = Metrics {
                steps,
                work_cells: visited.total(),
            };
            return (MtOutcome::FuelExhausted { config, steps }, metrics);
        }
        observe(steps + 1, &config);
        config = m.rules.apply(rule, &config);
        visited.record(&config);
        steps += 1;
    }
}

/// Result of an acceptance query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accept,
    Reject,
    FuelExhausted,
}

impl Verdict {
    pub fn of(accepted: bool) -> Verdict {
        if accepted {
            Verdict::Accept
        } else {
            Verdict::Reject
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Accept => "accept",
            Verdict::Reject => "reject",
            Verdict::FuelExhausted => "fuel-exhausted",
        })
    }
}

/// Accepts iff the run halts with output 1 on the output tape (tape 0 for a
/// single tape, tape 1 otherwise).
pub fn accepts(m: &MultiMachine, w: &BitString, fuel: u64) -> Verdict {
    match mt_run(m, w, fuel).0 {
        MtOutcome::Halted { config, .. } => Verdict::of(m.rules.accepting(&config)),
        MtOutcome::FuelExhausted { .. } => Verdict::FuelExhausted,
    }
}

/// Per-length maxima over a batch of runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeterRow {
    pub n: usize,
    pub inputs: usize,
    pub max_steps: u64,
    pub max_work_cells: u64,
    /// Inputs of this length that did not halt within fuel.
    pub exhausted: usize,
}

impl MeterRow {
    pub fn flagged(&self) -> bool {
        self.exhausted > 0
    }
}

/// Tab-separated `n max_steps max_work_cells`, with a trailing
/// `exhausted=<count>` column on flagged rows.
impl fmt::Display for MeterRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}", self.n, self.max_steps, self.max_work_cells)?;
        if self.flagged() {
            write!(f, "\texhausted={}", self.exhausted)?;
        }
        Ok(())
    }
}

/// Runs every input and groups the metrics by input length, ascending.
pub fn meter(m: &MultiMachine, inputs: &[BitString], fuel: u64) -> Vec<MeterRow> {
    let mut rows: std::collections::BTreeMap<usize, MeterRow> = Default::default();
    for w in inputs {
        let (outcome, metrics) = mt_run(m, w, fuel);
        let row = rows.entry(w.len()).or_insert(MeterRow {
            n: w.len(),
            inputs: 0,
            max_steps: 0,
            max_work_cells: 0,
            exhausted: 0,
        });
        row.inputs += 1;
        row.max_steps = row.max_steps.max(metrics.steps);
        row.max_work_cells = row.max_work_cells.max(metrics.work_cells);
        if !outcome.is_halted() {
            row.exhausted += 1;
        }
    }
    rows.into_values().collect()
}
