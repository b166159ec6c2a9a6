//! The `.tm` machine-description text format.
//!
//! ```text
//! # comment to end of line
//! tapes: 2              # optional, default 1
//! readonly-input: yes   # optional, default no
//! q1 0 B R 1 q2         # p, k scanned symbols, k actions, q
//! ```
//!
//! Symbols are `0 1 B`, actions `0 1 B L R`, and state names match
//! `[A-Za-z_][A-Za-z0-9_]*`. The first rule's state is the start state.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::machine::{Action, Machine, MachineError, Rule, StateId};
use crate::tape::Symbol;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("no rules")]
    Empty,
    #[error("line {line}: determinism violation, state {state} scanning {symbol} already has a rule on line {first_line}")]
    Nondeterministic {
        line: usize,
        first_line: usize,
        state: String,
        symbol: String,
    },
    #[error("expected a {expected}-tape machine, found tapes: {found}")]
    TapeCount { expected: usize, found: usize },
    #[error("read-only input tape is only meaningful for multitape machines")]
    ReadonlyInput,
}

/// One parsed rule line, before state names are resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleLine {
    pub line: usize,
    pub state: String,
    pub scans: Vec<Symbol>,
    pub actions: Vec<Action>,
    pub next: String,
}

/// A syntactically valid `.tm` document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub tapes: usize,
    pub readonly_input: bool,
    pub rules: Vec<RuleLine>,
}

impl Document {
    /// State names in order of first appearance, and an index for each.
    pub fn state_table(&self) -> (Vec<String>, HashMap<String, u32>) {
        let mut names = Vec::new();
        let mut index = HashMap::new();
        for r in &self.rules {
            for n in [&r.state, &r.next] {
                if !index.contains_key(n) {
                    index.insert(n.clone(), names.len() as u32);
                    names.push(n.clone());
                }
            }
        }
        (names, index)
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn valid_state_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits a line into whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub fn parse_document(text: &str) -> Result<Document, FormatError> {
    let mut doc = Document {
        tapes: 1,
        readonly_input: false,
        rules: Vec::new(),
    };
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col0, first)) = toks.first() else {
            continue;
        };

        if let Some(key) = first.strip_suffix(':') {
            if !doc.rules.is_empty() {
                return Err(syntax(line_no, col0, "header after the first rule"));
            }
            let Some(&(vcol, value)) = toks.get(1) else {
                return Err(syntax(line_no, col0, format!("missing value for {key}")));
            };
            if toks.len() > 2 {
                return Err(syntax(line_no, toks[2].0, "unexpected token after header value"));
            }
            match key {
                "tapes" => {
                    doc.tapes = value
                        .parse()
                        .ok()
                        .filter(|&k: &usize| k >= 1)
                        .ok_or_else(|| syntax(line_no, vcol, "tape count must be a positive integer"))?;
                }
                "readonly-input" => {
                    doc.readonly_input = match value {
                        "yes" => true,
                        "no" => false,
                        _ => return Err(syntax(line_no, vcol, "expected yes or no")),
                    };
                }
                _ => return Err(syntax(line_no, col0, format!("unknown header {key:?}"))),
            }
            continue;
        }

        let k = doc.tapes;
        if toks.len() != 2 * k + 2 {
            let col = toks.get(2 * k + 2).map_or(col0, |t| t.0);
            return Err(syntax(
                line_no,
                col,
                format!("expected {} fields (state, {k} symbol(s), {k} action(s), state), found {}", 2 * k + 2, toks.len()),
            ));
        }
        let state_at = |j: usize| -> Result<String, FormatError> {
            let (col, t) = toks[j];
            if valid_state_name(t) {
                Ok(t.to_string())
            } else {
                Err(syntax(line_no, col, format!("invalid state name {t:?}")))
            }
        };
        let char_of = |j: usize| -> Option<char> {
            let t = toks[j].1;
            let mut cs = t.chars();
            let c = cs.next()?;
            cs.next().is_none().then_some(c)
        };
        let state = state_at(0)?;
        let next = state_at(2 * k + 1)?;
        let scans = (1..=k)
            .map(|j| {
                char_of(j)
                    .and_then(Symbol::from_char)
                    .ok_or_else(|| syntax(line_no, toks[j].0, format!("invalid symbol {:?}", toks[j].1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let actions = (k + 1..=2 * k)
            .map(|j| {
                char_of(j)
                    .and_then(Action::from_char)
                    .ok_or_else(|| syntax(line_no, toks[j].0, format!("invalid action {:?}", toks[j].1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        doc.rules.push(RuleLine {
            line: line_no,
            state,
            scans,
            actions,
            next,
        });
    }
    if doc.rules.is_empty() {
        return Err(FormatError::Empty);
    }
    Ok(doc)
}

/// Parses a single-tape deterministic machine.
pub fn parse_machine(text: &str) -> Result<Machine, FormatError> {
    let doc = parse_document(text)?;
    if doc.tapes != 1 {
        return Err(FormatError::TapeCount {
            expected: 1,
            found: doc.tapes,
        });
    }
    if doc.readonly_input {
        return Err(FormatError::ReadonlyInput);
    }
    let (names, index) = doc.state_table();
    let rules = doc
        .rules
        .iter()
        .map(|r| Rule {
            state: StateId(index[&r.state]),
            scan: r.scans[0],
            action: r.actions[0],
            next: StateId(index[&r.next]),
        })
        .collect();
    Machine::with_names(rules, names).map_err(|e| match e {
        MachineError::Empty => FormatError::Empty,
        MachineError::Nondeterministic {
            first,
            second,
            state,
            symbol,
        } => FormatError::Nondeterministic {
            line: doc.rules[second].line,
            first_line: doc.rules[first].line,
            state,
            symbol: symbol.to_string(),
        },
        MachineError::UnknownState { .. } => unreachable!("names are built from the rules"),
    })
}

/// Renders a single-tape machine, one rule per line in stored order.
pub fn write_machine(m: &Machine) -> String {
    let mut out = String::new();
    for r in m.rules() {
        let _ = writeln!(
            out,
            "{} {} {} {}",
            m.state_name(r.state),
            r.scan,
            r.action,
            m.state_name(r.next)
        );
    }
    out
}

/// Normalizes a `.tm` text for comparison: comments and blank lines dropped,
/// tokens separated by single spaces.
pub fn normalize(text: &str) -> String {
    let mut out = String::new();
    for raw in text.lines() {
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        if !toks.is_empty() {
            out.push_str(&toks.join(" "));
            out.push('\n');
        }
    }
    out
}
