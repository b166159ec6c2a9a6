use std::collections::BTreeMap;
use std::fmt;

use crate::bits::BitString;

/// A tape cell symbol from `{0, 1, B}`. `Blank` is the default content of every cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Zero,
    One,
    Blank,
}

impl Symbol {
    pub const ALL: [Symbol; 3] = [Symbol::Zero, Symbol::One, Symbol::Blank];

    pub fn from_bit(bit: bool) -> Symbol {
        if bit {
            Symbol::One
        } else {
            Symbol::Zero
        }
    }

    pub fn bit(self) -> Option<bool> {
        match self {
            Symbol::Zero => Some(false),
            Symbol::One => Some(true),
            Symbol::Blank => None,
        }
    }

    /// Position in `{0, 1, B}`; also the symbol's code in machine encodings.
    pub fn index(self) -> usize {
        match self {
            Symbol::Zero => 0,
            Symbol::One => 1,
            Symbol::Blank => 2,
        }
    }

    pub fn from_index(i: u64) -> Option<Symbol> {
        Symbol::ALL.get(i as usize).copied()
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Blank => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Symbol> {
        match c {
            '0' => Some(Symbol::Zero),
            '1' => Some(Symbol::One),
            'B' => Some(Symbol::Blank),
            _ => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Sparse two-way infinite tape indexed by signed cell numbers.
///
/// Only non-blank cells are stored, so two tapes with the same contents compare
/// (and hash) equal regardless of their write history.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Tape {
    cells: BTreeMap<i64, Symbol>,
}

impl Tape {
    pub fn new() -> Self {
        Tape::default()
    }

    /// Writes `input` on cells `0..input.len()`.
    pub fn with_input(input: &BitString) -> Self {
        Tape {
            cells: input
                .iter()
                .enumerate()
                .map(|(i, b)| (i as i64, Symbol::from_bit(b)))
                .collect(),
        }
    }

    pub fn get(&self, cell: i64) -> Symbol {
        self.cells.get(&cell).copied().unwrap_or(Symbol::Blank)
    }

    pub fn set(&mut self, cell: i64, symbol: Symbol) {
        if symbol == Symbol::Blank {
            self.cells.remove(&cell);
        } else {
            self.cells.insert(cell, symbol);
        }
    }

    /// Non-blank cells in increasing cell order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Symbol)> + '_ {
        self.cells.iter().map(|(&c, &s)| (c, s))
    }

    pub fn non_blank_count(&self) -> usize {
        self.cells.len()
    }

    pub fn is_blank(&self) -> bool {
        self.cells.is_empty()
    }

    /// Leftmost and rightmost non-blank cells.
    pub fn bounds(&self) -> Option<(i64, i64)> {
        let lo = *self.cells.keys().next()?;
        let hi = *self.cells.keys().next_back()?;
        Some((lo, hi))
    }

    /// The maximal blank-bordered run of bits containing `cell`, or `None` if the
    /// cell is blank.
    pub fn block_at(&self, cell: i64) -> Option<BitString> {
        self.get(cell).bit()?;
        let mut lo = cell;
        while self.get(lo - 1) != Symbol::Blank {
            lo -= 1;
        }
        let mut hi = cell;
        while self.get(hi + 1) != Symbol::Blank {
            hi += 1;
        }
        Some((lo..=hi).filter_map(|c| self.get(c).bit()).collect())
    }

    /// Shifts every cell by `offset`.
    pub fn translated(&self, offset: i64) -> Tape {
        Tape {
            cells: self.cells.iter().map(|(&c, &s)| (c + offset, s)).collect(),
        }
    }

    /// `offset:contents` over the hull of non-blank cells, e.g. `-2:01B1`.
    /// A blank tape renders as `0:`.
    pub fn render(&self) -> String {
        match self.bounds() {
            None => "0:".to_string(),
            Some((lo, hi)) => {
                let body: String = (lo..=hi).map(|c| self.get(c).as_char()).collect();
                format!("{lo}:{body}")
            }
        }
    }
}

impl FromIterator<(i64, Symbol)> for Tape {
    fn from_iter<I: IntoIterator<Item = (i64, Symbol)>>(iter: I) -> Self {
        let mut t = Tape::new();
        for (c, s) in iter {
            t.set(c, s);
        }
        t
    }
}
