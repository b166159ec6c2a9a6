//! Host-side oracles shared by the integration tests. Nothing here calls the
//! library's own stepping, coding or search code.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet, VecDeque};

use rand::rngs::StdRng;
use rand::Rng;

/// All bit strings of length `0..=max`, shortest first, then lexicographic.
pub fn strings_up_to(max: usize) -> Vec<String> {
    (0..=max)
        .flat_map(|n| (0..1u64 << n).map(move |v| if n == 0 { String::new() } else { format!("{v:0n$b}") }))
        .collect()
}

/// The rank of `s` in length-then-lexicographic order.
pub fn rank(s: &str) -> u64 {
    u64::from_str_radix(&format!("1{s}"), 2).unwrap() - 1
}

/// The string of rank `n`.
pub fn unrank(n: u64) -> String {
    format!("{:b}", n + 1)[1..].to_string()
}

pub fn bar(s: &str) -> String {
    format!("{}0{s}", "1".repeat(s.len()))
}

/// Splits `x̄ y` into `(x, y)`.
pub fn unbar(z: &str) -> Option<(String, String)> {
    let k = z.find('0')?;
    let body = &z[k + 1..];
    (body.len() >= k).then(|| (body[..k].to_string(), body[k..].to_string()))
}

/// One rule of a single-tape machine, with actions as characters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RawRule {
    pub state: u32,
    pub scan: char,
    pub action: char,
    pub next: u32,
}

/// A host-side configuration: state, head, non-blank cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RawConfig {
    pub state: u32,
    pub head: i64,
    pub cells: BTreeMap<i64, char>,
}

impl RawConfig {
    pub fn start(state: u32, input: &str) -> RawConfig {
        RawConfig {
            state,
            head: 0,
            cells: input.chars().enumerate().map(|(i, c)| (i as i64, c)).collect(),
        }
    }

    pub fn scanned(&self) -> char {
        *self.cells.get(&self.head).unwrap_or(&'B')
    }

    /// The maximal blank-bordered block under the head, if any.
    pub fn block(&self) -> Option<String> {
        if self.scanned() == 'B' {
            return None;
        }
        let mut lo = self.head;
        while self.cells.contains_key(&(lo - 1)) {
            lo -= 1;
        }
        let mut hi = self.head;
        while self.cells.contains_key(&(hi + 1)) {
            hi += 1;
        }
        Some((lo..=hi).map(|i| self.cells[&i]).collect())
    }

    pub fn accepting(&self) -> bool {
        self.block().as_deref() == Some("0")
    }

    /// Cells in the smallest interval holding cell 0, the head and the input.
    pub fn footprint(&self) -> i64 {
        let lo = self.cells.keys().next().copied().unwrap_or(0).min(self.head).min(0);
        let hi = self.cells.keys().last().copied().unwrap_or(0).max(self.head).max(0);
        hi - lo + 1
    }
}

/// Nondeterministic single-tape interpreter.
pub struct RawMachine {
    pub rules: Vec<RawRule>,
}

impl RawMachine {
    pub fn start_state(&self) -> u32 {
        self.rules[0].state
    }

    pub fn successors(&self, c: &RawConfig) -> Vec<RawConfig> {
        let scan = c.scanned();
        self.rules
            .iter()
            .filter(|r| r.state == c.state && r.scan == scan)
            .map(|r| {
                let mut d = c.clone();
                match r.action {
                    'L' => d.head -= 1,
                    'R' => d.head += 1,
                    'B' => {
                        d.cells.remove(&d.head);
                    }
                    w => {
                        d.cells.insert(d.head, w);
                    }
                }
                d.state = r.next;
                d
            })
            .collect()
    }

    /// Fuel-bounded run of a deterministic machine: `Some((steps, config))` if it halts.
    pub fn run(&self, input: &str, fuel: u64) -> Option<(u64, RawConfig)> {
        let mut c = RawConfig::start(self.start_state(), input);
        for steps in 0..=fuel {
            let mut next = self.successors(&c);
            if next.is_empty() {
                return Some((steps, c));
            }
            c = next.remove(0);
        }
        None
    }

    pub fn to_tm(&self) -> String {
        self.rules
            .iter()
            .map(|r| format!("q{} {} {} q{}\n", r.state, r.scan, r.action, r.next))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathVerdict {
    Accept,
    Reject,
    Undecided,
}

/// Explores every computation path of at most `fuel` steps.
pub fn all_paths(m: &RawMachine, c: &RawConfig, fuel: u64) -> PathVerdict {
    let next = m.successors(c);
    if next.is_empty() {
        return if c.accepting() {
            PathVerdict::Accept
        } else {
            PathVerdict::Reject
        };
    }
    if fuel == 0 {
        return PathVerdict::Undecided;
    }
    let mut all_reject = true;
    for d in &next {
        match all_paths(m, d, fuel - 1) {
            PathVerdict::Accept => return PathVerdict::Accept,
            PathVerdict::Undecided => all_reject = false,
            PathVerdict::Reject => {}
        }
    }
    if all_reject {
        PathVerdict::Reject
    } else {
        PathVerdict::Undecided
    }
}

/// Plain BFS over configurations of footprint at most `space`.
pub fn space_bounded_reach(m: &RawMachine, input: &str, space: i64) -> bool {
    let start = RawConfig::start(m.start_state(), input);
    if start.footprint() > space {
        return false;
    }
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        let next = m.successors(&c);
        if next.is_empty() && c.accepting() {
            return true;
        }
        for d in next {
            if d.footprint() <= space && seen.insert(d.clone()) {
                queue.push_back(d);
            }
        }
    }
    false
}

const SYMBOLS: [char; 3] = ['0', '1', 'B'];
const ACTIONS: [char; 5] = ['0', '1', 'B', 'L', 'R'];

/// A random nondeterministic machine over states `0..states`, with up to
/// `max_choices` rules per (state, symbol) pair.
pub fn random_nd_machine(rng: &mut StdRng, states: u32, max_choices: usize) -> RawMachine {
    loop {
        let mut rules = Vec::new();
        for state in 0..states {
            for &scan in &SYMBOLS {
                for _ in 0..rng.gen_range(0..=max_choices) {
                    let rule = RawRule {
                        state,
                        scan,
                        action: ACTIONS[rng.gen_range(0..5)],
                        next: rng.gen_range(0..states),
                    };
                    if !rules.contains(&rule) {
                        rules.push(rule);
                    }
                }
            }
        }
        if !rules.is_empty() {
            return RawMachine { rules };
        }
    }
}

/// A random deterministic machine with exactly `rules` rules over at most `states` states.
pub fn random_machine(rng: &mut StdRng, states: u32, rules: usize) -> RawMachine {
    let mut slots: Vec<(u32, char)> = (0..states).flat_map(|q| SYMBOLS.map(|s| (q, s))).collect();
    for i in (1..slots.len()).rev() {
        slots.swap(i, rng.gen_range(0..=i));
    }
    RawMachine {
        rules: slots[..rules]
            .iter()
            .map(|&(state, scan)| RawRule {
                state,
                scan,
                action: ACTIONS[rng.gen_range(0..5)],
                next: rng.gen_range(0..states),
            })
            .collect(),
    }
}

/// Number of distinct states a rule list mentions.
pub fn states_used(m: &RawMachine) -> usize {
    m.rules
        .iter()
        .flat_map(|r| [r.state, r.next])
        .collect::<HashSet<_>>()
        .len()
}
