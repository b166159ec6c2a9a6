use std::collections::HashMap;

use crate::machine::{Action, Machine, Rule, StateId};
use crate::tape::Symbol;

use Symbol::{Blank, One, Zero};

pub(crate) const BITS: [Symbol; 2] = [Zero, One];

/// Assembles single-tape rule tables from named states.
pub(crate) struct Builder {
    names: Vec<String>,
    taken: HashMap<String, usize>,
    rules: Vec<Rule>,
    start: u32,
}

impl Builder {
    /// A builder whose start state is named `start`.
    pub(crate) fn new(start: &str) -> (Builder, u32) {
        let mut b = Builder {
            names: Vec::new(),
            taken: HashMap::new(),
            rules: Vec::new(),
            start: 0,
        };
        let s = b.state(start);
        b.start = s;
        (b, s)
    }

    /// A fresh state; repeated base names get a numeric suffix.
    pub(crate) fn state(&mut self, base: &str) -> u32 {
        let n = self.taken.entry(base.to_string()).or_insert(0);
        let name = if *n == 0 {
            base.to_string()
        } else {
            format!("{base}_{n}")
        };
        *n += 1;
        self.names.push(name);
        (self.names.len() - 1) as u32
    }

    pub(crate) fn rule(&mut self, p: u32, s: Symbol, a: Action, q: u32) {
        self.rules.push(Rule {
            state: StateId(p),
            scan: s,
            action: a,
            next: StateId(q),
        });
    }

    pub(crate) fn write(&mut self, p: u32, s: Symbol, w: Symbol, q: u32) {
        self.rule(p, s, Action::Write(w), q);
    }

    pub(crate) fn left(&mut self, p: u32, s: Symbol, q: u32) {
        self.rule(p, s, Action::Left, q);
    }

    pub(crate) fn right(&mut self, p: u32, s: Symbol, q: u32) {
        self.rule(p, s, Action::Right, q);
    }

    /// Rules that keep moving in `dir` while scanning any of `over`.
    pub(crate) fn walk(&mut self, p: u32, over: &[Symbol], dir: Action) {
        for &s in over {
            self.rule(p, s, dir, p);
        }
    }

    /// Rules are reordered so the start state's rules come first.
    pub(crate) fn build(mut self) -> Machine {
        let start = StateId(self.start);
        self.rules.sort_by_key(|r| r.state != start);
        Machine::with_names(self.rules, self.names).expect("library fixtures are deterministic")
    }
}

/// Erases the leading `1ⁿ0` of a self-delimiting code, leaving the head on the
/// first payload cell (the payload is assumed to run to the end of the tape).
pub(crate) fn strip_prefix(b: &mut Builder, entry: u32) -> u32 {
    let ones = b.state("strip_one");
    let sep = b.state("strip_sep");
    let exit = b.state("payload");
    b.write(entry, One, Blank, ones);
    b.right(ones, Blank, entry);
    b.write(entry, Zero, Blank, sep);
    b.right(sep, Blank, exit);
    exit
}

/// Erases one complete self-delimiting code `1ⁿ0x`, head starting on its first
/// cell and ending on the cell just after it.
///
/// Each round trades one payload bit for one separator shift:
/// `1ⁿ0x₁x₂… → 1ⁿ⁺¹0x₂…`, then erases the two leftmost ones.
pub(crate) fn erase_code(b: &mut Builder, entry: u32) -> u32 {
    let seek = b.state("erase_seek");
    let bit = b.state("erase_bit");
    let marked = b.state("erase_marked");
    let sep = b.state("erase_sep");
    let shifted = b.state("erase_shifted");
    let back = b.state("erase_back");
    let first = b.state("erase_first");
    let gap = b.state("erase_gap");
    let second = b.state("erase_second");
    let next = b.state("erase_next");
    let done = b.state("erase_done");
    let exit = b.state("erased");

    b.write(entry, Zero, Blank, done);
    b.right(done, Blank, exit);
    b.right(entry, One, seek);
    b.right(seek, One, seek);
    b.right(seek, Zero, bit);
    b.left(bit, Zero, sep);
    b.write(bit, One, Zero, marked);
    b.left(marked, Zero, sep);
    b.write(sep, Zero, One, shifted);
    b.left(shifted, One, back);
    b.left(back, One, back);
    b.right(back, Blank, first);
    b.write(first, One, Blank, gap);
    b.right(gap, Blank, second);
    b.write(second, One, Blank, next);
    b.right(next, Blank, entry);
    exit
}

/// Moves the payload of the self-delimiting code under the head out to the
/// left, erasing the code. Returns `(nonempty, empty)` exits: both leave the head
/// on the cell just after the erased code. In the nonempty case the payload
/// sits to the left, separated by at least one blank; `reverse` stores it in
/// reverse order (first payload bit rightmost).
pub(crate) fn extract_payload(b: &mut Builder, entry: u32, reverse: bool) -> (u32, u32) {
    let empty_sep = b.state("extract_empty");
    let empty_exit = b.state("extract_none");
    let placed = b.state("extract_placed");
    let ret = b.state("extract_return");
    let ret_out = b.state("extract_over_out");
    let finish = b.state("extract_finish");
    let exit = b.state("extracted");

    b.write(entry, Zero, Blank, empty_sep);
    b.right(empty_sep, Blank, empty_exit);

    // `seek` of the first round and of later rounds.
    let seeks = [b.state("extract_seek_first"), b.state("extract_seek")];
    b.right(entry, One, seeks[0]);

    for (round, &seek) in seeks.iter().enumerate() {
        let first_round = round == 0;
        let bit = b.state("extract_bit");
        let marked = b.state("extract_marked");
        b.right(seek, One, seek);
        b.right(seek, Zero, bit);
        let seps = [b.state("extract_sep0"), b.state("extract_sep1")];
        b.left(bit, Zero, seps[0]);
        b.write(bit, One, Zero, marked);
        b.left(marked, Zero, seps[1]);

        for (v, &sep) in seps.iter().enumerate() {
            let carried = BITS[v];
            let shifted = b.state("extract_shifted");
            let back = b.state("extract_back");
            let one = b.state("extract_first_one");
            let gap = b.state("extract_gap");
            let two = b.state("extract_second_one");
            let carry = b.state("extract_carry");
            b.write(sep, Zero, One, shifted);
            b.left(shifted, One, back);
            b.left(back, One, back);
            b.right(back, Blank, one);
            b.write(one, One, Blank, gap);
            b.right(gap, Blank, two);
            b.write(two, One, Blank, carry);

            let to_out = b.state("extract_to_out");
            b.left(carry, Blank, to_out);
            if first_round {
                b.write(to_out, Blank, carried, placed);
                continue;
            }
            b.walk(to_out, &[Blank], Action::Left);
            if reverse {
                let over = b.state("extract_over");
                for s in BITS {
                    b.left(to_out, s, over);
                }
                b.walk(over, &BITS, Action::Left);
                b.write(over, Blank, carried, ret_out);
            } else {
                let put = b.state("extract_put");
                for s in BITS {
                    b.right(to_out, s, put);
                }
                b.write(put, Blank, carried, placed);
            }
        }
    }

    for s in BITS {
        b.right(placed, s, ret);
    }
    if reverse {
        b.walk(ret_out, &BITS, Action::Right);
        b.right(ret_out, Blank, ret);
    }
    b.walk(ret, &[Blank], Action::Right);
    b.right(ret, One, seeks[1]);
    b.write(ret, Zero, Blank, finish);
    b.right(finish, Blank, exit);
    (exit, empty_exit)
}
