//! Machines as partial functions over the naturals.
//!
//! Arguments `(x₁, …, x_n)` go on the tape as `x̄₁ x̄₂ … x̄_n`, each `x_i` written
//! as a string through the rank identification. When the machine halts, the
//! output is the number named by the maximal blank-bordered bit string under
//! the head, or 0 if the head scans a blank.

mod builder;
pub mod library;

use std::fmt;

use thiserror::Error;

use crate::bits::BitString;
use crate::codec::{bar, nat_of_str, str_of_nat, unpair, Nat};
use crate::machine::{Configuration, Machine, Outcome};

/// A nonempty argument tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FnArgs(Vec<Nat>);

impl FnArgs {
    pub fn new(args: Vec<Nat>) -> Option<FnArgs> {
        (!args.is_empty()).then_some(FnArgs(args))
    }

    pub fn from_u64s(args: &[u64]) -> Option<FnArgs> {
        FnArgs::new(args.iter().map(|&a| Nat::from(a)).collect())
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[Nat] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FnResult {
    Value(Nat),
    /// Fuel ran out before the machine halted.
    Diverged,
    /// The argument is outside the function's domain.
    UndefinedInput,
}

impl fmt::Display for FnResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FnResult::Value(v) => write!(f, "{v}"),
            FnResult::Diverged => f.write_str("DIVERGED"),
            FnResult::UndefinedInput => f.write_str("UNDEFINED"),
        }
    }
}

pub fn encode_args(args: &FnArgs) -> BitString {
    args.0.iter().fold(BitString::new(), |mut acc, x| {
        acc.extend_from(&bar(&str_of_nat(x)));
        acc
    })
}

pub fn read_output(config: &Configuration) -> Nat {
    config
        .tape
        .block_at(config.head)
        .map_or_else(|| Nat::from(0u32), |w| nat_of_str(&w))
}

pub fn eval_fn(m: &Machine, args: &FnArgs, fuel: u64) -> FnResult {
    match m.run(&encode_args(args), fuel) {
        Outcome::Halted { config, .. } => FnResult::Value(read_output(&config)),
        Outcome::FuelExhausted { .. } => FnResult::Diverged,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FunclibError {
    #[error("unknown library function {0:?}")]
    UnknownName(String),
}

/// Which arguments a library function accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Total,
    /// One argument whose string form starts with a self-delimiting code.
    PairShaped,
}

/// A library machine together with its arity and domain.
#[derive(Debug, Clone)]
pub struct LibraryFn {
    pub name: String,
    pub arity: usize,
    pub domain: Domain,
    pub machine: Machine,
}

impl LibraryFn {
    pub fn eval(&self, args: &FnArgs, fuel: u64) -> FnResult {
        if args.arity() != self.arity {
            return FnResult::UndefinedInput;
        }
        if self.domain == Domain::PairShaped && unpair(&str_of_nat(&args.0[0])).is_err() {
            return FnResult::UndefinedInput;
        }
        eval_fn(&self.machine, args, fuel)
    }
}

/// Names accepted by [`library`], in a stable order.
pub fn library_names() -> Vec<String> {
    let mut names = vec!["successor".to_string()];
    names.extend((1..=3).map(|n| format!("zero_{n}")));
    for n in 1..=3 {
        names.extend((1..=n).map(|m| format!("proj_{m}_{n}")));
    }
    names.extend(
        ["length", "bar_fn", "left_g", "right_h", "eq_pred"]
            .iter()
            .map(|s| s.to_string()),
    );
    names
}

pub fn library_fn(name: &str) -> Result<LibraryFn, FunclibError> {
    let unknown = || FunclibError::UnknownName(name.to_string());
    let entry = |arity, domain, machine| LibraryFn {
        name: name.to_string(),
        arity,
        domain,
        machine,
    };
    let parse_index = |s: &str| s.parse::<usize>().ok().filter(|n| (1..=3).contains(n));
    Ok(match name {
        "successor" => entry(1, Domain::Total, library::successor()),
        "length" => entry(1, Domain::Total, library::length()),
        "bar_fn" => entry(1, Domain::Total, library::bar_fn()),
        "left_g" => entry(1, Domain::PairShaped, library::left_g()),
        "right_h" => entry(1, Domain::PairShaped, library::right_h()),
        "eq_pred" => entry(1, Domain::PairShaped, library::eq_pred()),
        _ => {
            if let Some(n) = name.strip_prefix("zero_").and_then(parse_index) {
                entry(n, Domain::Total, library::zero())
            } else if let Some((m, n)) = name.strip_prefix("proj_").and_then(|r| r.split_once('_')) {
                let (m, n) = (parse_index(m).ok_or_else(unknown)?, parse_index(n).ok_or_else(unknown)?);
                if m > n {
                    return Err(unknown());
                }
                entry(n, Domain::Total, library::projection(m, n))
            } else {
                return Err(unknown());
            }
        }
    })
}

pub fn library(name: &str) -> Result<Machine, FunclibError> {
    library_fn(name).map(|f| f.machine)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::bits;
    use crate::machine::StateId;
    use crate::tape::{Symbol, Tape};

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    fn args(v: &[u64]) -> FnArgs {
        FnArgs::from_u64s(v).unwrap()
    }

    #[test]
    fn argument_encoding() {
        assert_eq!(encode_args(&args(&[0])), bits("0"));
        assert_eq!(encode_args(&args(&[1, 2])), bits("100101"));
        assert_eq!(encode_args(&args(&[3])), bits("11000"));
        assert!(FnArgs::new(vec![]).is_none());
    }

    #[test]
    fn output_reading() {
        let at = |cells: &[(i64, Symbol)], head| Configuration {
            state: StateId(0),
            head,
            tape: cells.iter().copied().collect::<Tape>(),
        };
        use Symbol::*;
        assert_eq!(read_output(&at(&[(0, One)], 5)), n(0));
        assert_eq!(read_output(&at(&[(1, Zero), (2, Zero)], 1)), n(3));
        assert_eq!(read_output(&at(&[(1, Zero), (2, Zero)], 2)), n(3));
        assert_eq!(read_output(&at(&[(0, One), (2, Zero)], 0)), n(2));
    }

    #[test]
    fn library_examples() {
        let f = |name: &str| library_fn(name).unwrap();
        assert_eq!(f("zero_1").eval(&args(&[42]), 1000), FnResult::Value(n(0)));
        assert_eq!(f("successor").eval(&args(&[2]), 10_000), FnResult::Value(n(3)));
        let x101 = nat_of_str(&bits("101"));
        assert_eq!(f("length").eval(&FnArgs::new(vec![x101]).unwrap(), 10_000), FnResult::Value(n(3)));
        let z = nat_of_str(&bits("110101"));
        assert_eq!(f("left_g").eval(&FnArgs::new(vec![z]).unwrap(), 10_000), FnResult::Value(n(5)));
        let bad = nat_of_str(&bits("1111"));
        assert_eq!(f("left_g").eval(&FnArgs::new(vec![bad]).unwrap(), 10_000), FnResult::UndefinedInput);
        let eq = |x: &str, y: &str| {
            let z = nat_of_str(&crate::codec::pair(&bits(x), &bits(y)));
            f("eq_pred").eval(&FnArgs::new(vec![z]).unwrap(), 100_000)
        };
        assert_eq!(eq("10", "10"), FnResult::Value(n(1)));
        assert_eq!(eq("10", "11"), FnResult::Value(n(0)));
        assert_eq!(eq("", ""), FnResult::Value(n(1)));
        assert_eq!(eq("1", ""), FnResult::Value(n(0)));
    }

    #[test]
    fn zero_fuel_diverges() {
        let m = library("successor").unwrap();
        assert_eq!(eval_fn(&m, &args(&[0]), 0), FnResult::Diverged);
    }

    #[test]
    fn names_resolve() {
        for name in library_names() {
            assert!(library_fn(&name).is_ok(), "{name}");
        }
        assert_eq!(library_names().len(), 1 + 3 + 6 + 5);
        assert!(library_fn("proj_3_2").is_err());
        assert!(library_fn("proj_1_4").is_err());
        assert!(library_fn("nope").is_err());
    }
}
