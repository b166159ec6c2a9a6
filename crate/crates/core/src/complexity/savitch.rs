//! Space-bounded acceptance by middle-first reachability.
//!
//! A configuration is *within space b* when, on every counted tape, the
//! smallest interval holding cell 0, the head and all non-blank cells has at
//! most `b` cells. On a read-only input tape the head must stay within one
//! cell of the input, i.e. in `-1..=n`. Configurations outside these bounds
//! are treated as absent from the configuration graph.
//!
//! `REACH(c₁, c₂, 2ʲ)` holds iff `c₂` is reachable from `c₁` in at most `2ʲ`
//! steps, and it is decided through a midpoint: `REACH(c₁, c, 2ʲ⁻¹)` and
//! `REACH(c, c₂, 2ʲ⁻¹)`. Here the recursion is lifted from single
//! configurations to sets: the configurations within `2ʲ` steps of a set `S`
//! are those within `2ʲ⁻¹` steps of the set within `2ʲ⁻¹` steps of `S`. Each
//! call splits its step budget at the midpoint, so the recursion depth is
//! `j + 1`, while the sets make the running time polynomial in the number of
//! reachable configurations instead of exponential.

use std::collections::{HashMap, HashSet};

use crate::bits::BitString;

use super::multi::MTConfiguration;
use super::nondet::NDMachine;
use super::ComplexityError;

/// Default cap on the configuration-count bound `C`.
pub const DEFAULT_CONFIG_BUDGET: u128 = 1 << 64;

/// Whether `c` fits in `space_bound` cells (see the module docs).
pub fn within_space(m: &NDMachine, c: &MTConfiguration, input_len: usize, space_bound: usize) -> bool {
    let counted = m.rules.counted_tapes();
    if m.readonly_input() && !(-1..=input_len as i64).contains(&c.heads[0]) {
        return false;
    }
    counted.into_iter().all(|t| {
        let head = c.heads[t];
        let (lo, hi) = match c.tapes[t].bounds() {
            Some((lo, hi)) => (lo.min(head).min(0), hi.max(head).max(0)),
            None => (head.min(0), head.max(0)),
        };
        hi - lo + 1 <= space_bound as i64
    })
}

/// An upper bound `C` on the number of configurations within space `b`:
/// `|Q|` times, per tape, head positions times tape contents.
pub fn config_bound(m: &NDMachine, input_len: usize, space_bound: usize) -> Option<u128> {
    let reach = 2 * space_bound as u128 - 1;
    let mut total = m.state_count() as u128;
    for t in 0..m.tapes() {
        let factor = if t == 0 && m.readonly_input() {
            input_len as u128 + 2
        } else {
            reach.checked_mul(3u128.checked_pow(u32::try_from(reach).ok()?)?)?
        };
        total = total.checked_mul(factor)?;
    }
    Some(total)
}

fn ceil_log2(c: u128) -> u32 {
    if c <= 1 {
        0
    } else {
        128 - (c - 1).leading_zeros()
    }
}

/// Outcome of a [`savitch`] call with its instrumentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SavitchReport {
    pub accepted: bool,
    /// The bound `C` on configurations within space.
    pub config_bound: u128,
    /// Allowed recursion depth, `⌈log₂ C⌉ + 1`.
    pub depth_bound: u32,
    /// Deepest recursion actually reached.
    pub max_depth: u32,
    /// Distinct configurations touched.
    pub configs_seen: usize,
}

/// Configurations reached so far. Every successor of a member outside
/// `frontier` is itself a member.
struct Reached {
    members: HashSet<u32>,
    frontier: Vec<u32>,
}

struct Search<'a> {
    m: &'a NDMachine,
    input_len: usize,
    space_bound: usize,
    ids: HashMap<MTConfiguration, u32>,
    configs: Vec<MTConfiguration>,
    depth: u32,
    max_depth: u32,
}

impl Search<'_> {
    fn intern(&mut self, c: MTConfiguration) -> u32 {
        if let Some(&id) = self.ids.get(&c) {
            return id;
        }
        let id = self.configs.len() as u32;
        self.ids.insert(c.clone(), id);
        self.configs.push(c);
        id
    }

    /// One step from every member.
    fn advance(&mut self, mut r: Reached) -> Reached {
        let mut frontier = Vec::new();
        for id in std::mem::take(&mut r.frontier) {
            let c = self.configs[id as usize].clone();
            for d in self.m.successors(&c) {
                if within_space(self.m, &d, self.input_len, self.space_bound) {
                    let d = self.intern(d);
                    if r.members.insert(d) {
                        frontier.push(d);
                    }
                }
            }
        }
        r.frontier = frontier;
        r
    }

    /// Everything within `2ʲ` steps of `r`.
    fn reach(&mut self, r: Reached, j: u32) -> Reached {
        self.depth += 1;
        self.max_depth = self.max_depth.max(self.depth);
        let out = if j == 0 {
            self.advance(r)
        } else {
            let mid = self.reach(r, j - 1);
            if mid.frontier.is_empty() {
                mid
            } else {
                self.reach(mid, j - 1)
            }
        };
        self.depth -= 1;
        out
    }
}

pub fn savitch_accepts(m: &NDMachine, w: &BitString, space_bound: usize) -> Result<bool, ComplexityError> {
    savitch(m, w, space_bound, DEFAULT_CONFIG_BUDGET).map(|r| r.accepted)
}

/// Decides whether an accepting halted configuration within space
/// `space_bound` is reachable from the start configuration.
pub fn savitch(
    m: &NDMachine,
    w: &BitString,
    space_bound: usize,
    config_budget: u128,
) -> Result<SavitchReport, ComplexityError> {
    if space_bound == 0 {
        return Err(ComplexityError::ZeroSpace);
    }
    let bound = config_bound(m, w.len(), space_bound)
        .filter(|&c| c <= config_budget)
        .ok_or(ComplexityError::ConfigBudget {
            budget: config_budget,
        })?;
    let levels = ceil_log2(bound);
    let mut report = SavitchReport {
        accepted: false,
        config_bound: bound,
        depth_bound: levels + 1,
        max_depth: 0,
        configs_seen: 0,
    };
    let start = m.initial(w);
    if !within_space(m, &start, w.len(), space_bound) {
        return Ok(report);
    }
    let mut search = Search {
        m,
        input_len: w.len(),
        space_bound,
        ids: HashMap::new(),
        configs: Vec::new(),
        depth: 0,
        max_depth: 0,
    };
    let origin = search.intern(start);
    let reached = search.reach(
        Reached {
            members: HashSet::from([origin]),
            frontier: vec![origin],
        },
        levels,
    );
    report.accepted = reached.members.iter().any(|&id| {
        let c = &search.configs[id as usize];
        m.successors(c).is_empty() && m.accepting(c)
    });
    report.max_depth = search.max_depth;
    report.configs_seen = search.configs.len();
    Ok(report)
}
