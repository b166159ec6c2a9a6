use std::collections::HashSet;

use crate::bits::BitString;
use crate::format::{parse_document, Document};
use crate::machine::StateId;

use super::multi::{MTConfiguration, MultiMachine, MultiRule, RuleSet, Verdict};
use super::ComplexityError;

/// Largest BFS layer [`nd_accepts`] will hold before giving up.
pub const DEFAULT_FRONTIER_BUDGET: usize = 1 << 20;

/// A k-tape machine that may have several rules per `(state, scanned)` pair.
#[derive(Debug, Clone)]
pub struct NDMachine {
    pub(crate) rules: RuleSet,
}

impl NDMachine {
    pub fn new(
        tapes: usize,
        readonly_input: bool,
        rules: Vec<MultiRule>,
        names: Vec<String>,
    ) -> Result<NDMachine, ComplexityError> {
        Ok(NDMachine {
            rules: RuleSet::new(tapes, readonly_input, rules, names)?,
        })
    }

    pub fn from_document(doc: &Document) -> Result<NDMachine, ComplexityError> {
        Ok(NDMachine {
            rules: RuleSet::from_document(doc)?,
        })
    }

    pub fn parse(text: &str) -> Result<NDMachine, ComplexityError> {
        NDMachine::from_document(&parse_document(text)?)
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

    pub fn state_count(&self) -> usize {
        self.rules.names.len()
    }

    pub fn state_name(&self, id: StateId) -> &str {
        &self.rules.names[id.index()]
    }

    pub fn initial(&self, input: &BitString) -> MTConfiguration {
        self.rules.initial(input)
    }

    /// All successors of `c` in rule order; empty iff `c` is halted.
    pub fn successors(&self, c: &MTConfiguration) -> Vec<MTConfiguration> {
        self.rules
            .matching(c)
            .iter()
            .map(|&i| self.rules.apply(i, c))
            .collect()
    }

    /// Whether a halted configuration carries output 1.
    pub fn accepting(&self, c: &MTConfiguration) -> bool {
        self.rules.accepting(c)
    }
}

impl From<MultiMachine> for NDMachine {
    fn from(m: MultiMachine) -> NDMachine {
        NDMachine { rules: m.rules }
    }
}

pub fn nd_accepts(m: &NDMachine, w: &BitString, fuel: u64) -> Result<Verdict, ComplexityError> {
    nd_accepts_with_budget(m, w, fuel, DEFAULT_FRONTIER_BUDGET)
}

/// Breadth-first search of the computation tree, one layer per step.
///
/// Accepts if some path halts accepting within `fuel` steps, rejects if every
/// path halts within `fuel` steps and none accepts, and otherwise reports
/// [`Verdict::FuelExhausted`]. Duplicate configurations within a layer are
/// merged; a configuration seen on an earlier layer is kept, because its
/// subtree has less fuel left and may be cut short where the earlier one was not.
pub fn nd_accepts_with_budget(
    m: &NDMachine,
    w: &BitString,
    fuel: u64,
    frontier_budget: usize,
) -> Result<Verdict, ComplexityError> {
    let mut layer = vec![m.initial(w)];
    let mut depth = 0;
    loop {
        let halted = |c: &MTConfiguration| m.rules.matching(c).is_empty();
        if layer.iter().any(|c| halted(c) && m.accepting(c)) {
            return Ok(Verdict::Accept);
        }
        let mut running = layer.iter().filter(|c| !halted(c)).peekable();
        if running.peek().is_none() {
            return Ok(Verdict::Reject);
        }
        if depth == fuel {
            return Ok(Verdict::FuelExhausted);
        }
        let mut next = HashSet::new();
        for c in running {
            next.extend(m.successors(c));
            if next.len() > frontier_budget {
                return Err(ComplexityError::FrontierBudget {
                    budget: frontier_budget,
                    depth: depth + 1,
                });
            }
        }
        layer = next.into_iter().collect();
        depth += 1;
    }
}
