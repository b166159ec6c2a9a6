//! The `tm` command-line interface.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid machine or code, 3 fuel
//! exhausted, 4 budget exceeded, 5 undefined (universal input not of the form
//! `E(T)p`, or a function argument outside the domain).

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::bits::BitString;
use crate::codec::{decode_machine, encode_machine, Nat};
use crate::complexity::{
    accepts, meter, nd_accepts, savitch, ComplexityError, MultiMachine, NDMachine, Verdict,
    DEFAULT_CONFIG_BUDGET,
};
use crate::enumeration::{
    enumerate_machines, godel_number, machine_of_index, EnumError, GodelIndex, DEFAULT_MAX_CODE_LEN,
};
use crate::format::{parse_machine, write_machine, FormatError};
use crate::funclib::{eval_fn, library_fn, library_names, FnArgs, FnResult};
use crate::halting::dovetail;
use crate::machine::{Configuration, Machine, Outcome};
use crate::universal::universal_run_observed;

const DEFAULT_FUEL: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Usage = 1,
    Invalid = 2,
    FuelExhausted = 3,
    Budget = 4,
    Undefined = 5,
}

#[derive(Debug)]
struct Failure {
    exit: Exit,
    message: String,
    /// The reader of standard output went away; not worth reporting.
    broken_pipe: bool,
}

impl Failure {
    fn new(exit: Exit, message: impl fmt::Display) -> Failure {
        Failure {
            exit,
            message: message.to_string(),
            broken_pipe: false,
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        let broken_pipe = e.kind() == io::ErrorKind::BrokenPipe;
        Failure {
            broken_pipe,
            ..Failure::new(Exit::Usage, e)
        }
    }
}

impl From<EnumError> for Failure {
    fn from(e: EnumError) -> Failure {
        Failure::new(Exit::Budget, e)
    }
}

impl From<ComplexityError> for Failure {
    fn from(e: ComplexityError) -> Failure {
        let exit = match e {
            ComplexityError::FrontierBudget { .. } | ComplexityError::ConfigBudget { .. } => Exit::Budget,
            ComplexityError::ZeroSpace => Exit::Usage,
            _ => Exit::Invalid,
        };
        Failure::new(exit, e)
    }
}

type CmdResult = Result<Exit, Failure>;

fn parse_bits(s: &str) -> Result<BitString, String> {
    s.parse::<BitString>().map_err(|e| e.to_string())
}

fn parse_args(s: &str) -> Result<Vec<Nat>, String> {
    s.split(',')
        .map(|a| a.trim().parse::<Nat>().map_err(|_| format!("not a natural number: {a:?}")))
        .collect()
}

/// Quadruple Turing machines: run, encode, enumerate, meter.
#[derive(Debug, Parser)]
#[command(name = "tm", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a machine and print its final configuration.
    Run {
        file: PathBuf,
        #[arg(long, default_value = "", value_parser = parse_bits)]
        input: BitString,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
        /// Print one line per executed step.
        #[arg(long)]
        trace: bool,
    },
    /// Run a machine, printing one line per executed step.
    Trace {
        file: PathBuf,
        #[arg(long, default_value = "", value_parser = parse_bits)]
        input: BitString,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// Evaluate a machine as a function of comma-separated naturals.
    Eval {
        /// Machine file; omit when using --lib.
        #[arg(required_unless_present = "lib")]
        file: Option<PathBuf>,
        /// Evaluate a library function instead of a file.
        #[arg(long, conflicts_with = "file")]
        lib: Option<String>,
        /// Comma-separated arguments, e.g. 3,5.
        #[arg(long)]
        args: String,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// Print a library machine in .tm format, or list the library.
    Lib {
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Print the code E(T) of a machine.
    Encode { file: PathBuf },
    /// Read a machine code (argument or standard input) and print the machine.
    Decode { bits: Option<String> },
    /// List valid machine codes in order.
    Enum {
        #[arg(long, default_value_t = DEFAULT_MAX_CODE_LEN)]
        max_len: u64,
        #[arg(long)]
        count: Option<usize>,
    },
    /// Print the machine with the given index.
    Nth {
        index: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_CODE_LEN)]
        max_len: u64,
    },
    /// Print the index of a machine.
    Index {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_CODE_LEN)]
        max_len: u64,
    },
    /// Run the universal evaluator on E(T)p.
    Univ {
        #[arg(long, value_parser = parse_bits)]
        tape: BitString,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
        #[arg(long)]
        trace: bool,
    },
    /// Decide acceptance by a multitape or nondeterministic machine.
    Accept {
        file: PathBuf,
        #[arg(long, default_value = "", value_parser = parse_bits)]
        input: BitString,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
        #[arg(long)]
        nondet: bool,
    },
    /// Tabulate worst-case steps and work cells by input length.
    Meter {
        file: PathBuf,
        /// One input per line; an empty line is the empty input.
        #[arg(long, required_unless_present = "all_up_to")]
        inputs_from: Option<PathBuf>,
        /// Use every input of length at most N instead.
        #[arg(long, conflicts_with = "inputs_from")]
        all_up_to: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// Space-bounded acceptance by middle-first reachability.
    Savitch {
        file: PathBuf,
        #[arg(long, default_value = "", value_parser = parse_bits)]
        input: BitString,
        #[arg(long)]
        space: usize,
        #[arg(long, default_value_t = DEFAULT_CONFIG_BUDGET)]
        budget: u128,
        /// Also print the recursion depth and configuration counts.
        #[arg(long)]
        stats: bool,
    },
    /// List halting pairs found by dovetailing.
    Dovetail {
        #[arg(long)]
        stages: u64,
        #[arg(long, default_value_t = DEFAULT_MAX_CODE_LEN)]
        max_len: u64,
    },
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run(
    args: impl IntoIterator<Item = OsString>,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let exit = if e.use_stderr() { Exit::Usage } else { Exit::Success };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return exit as i32;
        }
    };
    match dispatch(cli.command, stdin, stdout) {
        Ok(exit) => exit as i32,
        Err(f) if f.broken_pipe => Exit::Success as i32,
        Err(f) => {
            let _ = writeln!(stderr, "tm: {}", f.message);
            f.exit as i32
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::new(Exit::Usage, format!("{}: {e}", path.display())))
}

fn invalid(path: &Path, e: impl fmt::Display) -> Failure {
    Failure::new(Exit::Invalid, format!("{}: {e}", path.display()))
}

fn load_machine(path: &Path) -> Result<Machine, Failure> {
    parse_machine(&read_file(path)?).map_err(|e: FormatError| invalid(path, e))
}

fn trace_line(out: &mut dyn Write, n: u64, m: &Machine, c: &Configuration) -> io::Result<()> {
    writeln!(
        out,
        "step={n} state={} head={} scan={}",
        m.state_name(c.state),
        c.head,
        c.scanned()
    )
}

fn report_outcome(out: &mut dyn Write, m: &Machine, outcome: &Outcome) -> CmdResult {
    let c = outcome.config();
    let (word, exit) = if outcome.is_halted() {
        ("halted", Exit::Success)
    } else {
        ("fuel-exhausted", Exit::FuelExhausted)
    };
    writeln!(
        out,
        "{word} steps={} state={} head={}",
        outcome.steps(),
        m.state_name(c.state),
        c.head
    )?;
    writeln!(out, "tape={}", c.tape.render())?;
    Ok(exit)
}

fn run_machine(out: &mut dyn Write, m: &Machine, input: &BitString, fuel: u64, trace: bool) -> CmdResult {
    let mut err = Ok(());
    let outcome = m.run_from(m.initial(input), fuel, |n, c| {
        if trace && err.is_ok() {
            err = trace_line(out, n, m, c);
        }
    });
    err?;
    report_outcome(out, m, &outcome)
}

fn all_strings(max: usize) -> Vec<BitString> {
    (0..=max)
        .flat_map(|n| (0..1u64 << n).map(move |v| BitString::from_uint(v, n)))
        .collect()
}

fn dispatch(command: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Run {
            file,
            input,
            fuel,
            trace,
        } => run_machine(out, &load_machine(&file)?, &input, fuel, trace),
        Command::Trace { file, input, fuel } => run_machine(out, &load_machine(&file)?, &input, fuel, true),
        Command::Eval {
            file,
            lib,
            args,
            fuel,
        } => {
            let args = parse_args(&args).map_err(|e| Failure::new(Exit::Usage, e))?;
            let args = FnArgs::new(args).ok_or_else(|| Failure::new(Exit::Usage, "--args needs at least one value"))?;
            let result = match (file, lib) {
                (Some(file), _) => eval_fn(&load_machine(&file)?, &args, fuel),
                (None, Some(name)) => library_fn(&name)
                    .map_err(|e| Failure::new(Exit::Usage, e))?
                    .eval(&args, fuel),
                (None, None) => unreachable!("clap requires one of them"),
            };
            writeln!(out, "{result}")?;
            Ok(match result {
                FnResult::Value(_) => Exit::Success,
                FnResult::Diverged => Exit::FuelExhausted,
                FnResult::UndefinedInput => Exit::Undefined,
            })
        }
        Command::Lib { name, list } => {
            if list {
                for n in library_names() {
                    writeln!(out, "{n}")?;
                }
                return Ok(Exit::Success);
            }
            let name = name.expect("clap requires a name without --list");
            let f = library_fn(&name).map_err(|e| Failure::new(Exit::Usage, e))?;
            out.write_all(write_machine(&f.machine).as_bytes())?;
            Ok(Exit::Success)
        }
        Command::Encode { file } => {
            writeln!(out, "{}", encode_machine(&load_machine(&file)?))?;
            Ok(Exit::Success)
        }
        Command::Decode { bits } => {
            let text = match bits {
                Some(b) => b,
                None => {
                    let mut s = String::new();
                    stdin.read_to_string(&mut s)?;
                    s
                }
            };
            let code: BitString = text
                .trim()
                .parse()
                .map_err(|e| Failure::new(Exit::Invalid, format!("not a bit string: {e}")))?;
            let (m, rest) = decode_machine(&code).map_err(|e| Failure::new(Exit::Invalid, e))?;
            if !rest.is_empty() {
                return Err(Failure::new(
                    Exit::Invalid,
                    format!("{} bits left over after the machine code", rest.len()),
                ));
            }
            out.write_all(write_machine(&m).as_bytes())?;
            Ok(Exit::Success)
        }
        Command::Enum { max_len, count } => {
            for e in enumerate_machines(max_len)?.take(count.unwrap_or(usize::MAX)) {
                writeln!(out, "{}\t{}\t{}", e.index, e.code, e.machine.summary())?;
            }
            Ok(Exit::Success)
        }
        Command::Nth { index, max_len } => {
            let i = GodelIndex::new(index).ok_or_else(|| Failure::new(Exit::Usage, "indices start at 1"))?;
            out.write_all(write_machine(&machine_of_index(i, max_len)?).as_bytes())?;
            Ok(Exit::Success)
        }
        Command::Index { file, max_len } => match godel_number(&load_machine(&file)?, max_len) {
            Ok(i) => {
                writeln!(out, "{i}")?;
                Ok(Exit::Success)
            }
            Err(EnumError::CodeOutOfBudget { .. }) => {
                writeln!(out, "out-of-budget")?;
                Ok(Exit::Budget)
            }
            Err(e) => Err(e.into()),
        },
        Command::Univ { tape, fuel, trace } => {
            let mut err = Ok(());
            let result = universal_run_observed(&tape, fuel, |n, m, c| {
                if trace && err.is_ok() {
                    err = trace_line(out, n, m, c);
                }
            });
            err?;
            let outcome = result.map_err(|e| Failure::new(Exit::Undefined, e))?;
            let (m, _) = decode_machine(&tape).expect("decoded above");
            report_outcome(out, &m, &outcome)
        }
        Command::Accept {
            file,
            input,
            fuel,
            nondet,
        } => {
            let text = read_file(&file)?;
            let verdict = if nondet {
                nd_accepts(&NDMachine::parse(&text).map_err(|e| invalid(&file, e))?, &input, fuel)?
            } else {
                accepts(&MultiMachine::parse(&text).map_err(|e| invalid(&file, e))?, &input, fuel)
            };
            writeln!(out, "{verdict}")?;
            Ok(if verdict == Verdict::FuelExhausted {
                Exit::FuelExhausted
            } else {
                Exit::Success
            })
        }
        Command::Meter {
            file,
            inputs_from,
            all_up_to,
            fuel,
        } => {
            let m = MultiMachine::parse(&read_file(&file)?).map_err(|e| invalid(&file, e))?;
            let inputs = match (inputs_from, all_up_to) {
                (Some(path), _) => read_file(&path)?
                    .lines()
                    .map(|l| l.trim().parse::<BitString>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| Failure::new(Exit::Usage, format!("{}: {e}", path.display())))?,
                (None, Some(n)) if n < 24 => all_strings(n),
                (None, Some(n)) => return Err(Failure::new(Exit::Budget, format!("--all-up-to {n} is too many inputs"))),
                (None, None) => unreachable!("clap requires one of them"),
            };
            let rows = meter(&m, &inputs, fuel);
            for row in &rows {
                writeln!(out, "{row}")?;
            }
            Ok(if rows.iter().any(|r| r.flagged()) {
                Exit::FuelExhausted
            } else {
                Exit::Success
            })
        }
        Command::Savitch {
            file,
            input,
            space,
            budget,
            stats,
        } => {
            let m = NDMachine::parse(&read_file(&file)?).map_err(|e| invalid(&file, e))?;
            let report = savitch(&m, &input, space, budget)?;
            writeln!(out, "{}", Verdict::of(report.accepted))?;
            if stats {
                writeln!(
                    out,
                    "depth={} depth_bound={} config_bound={} configs_seen={}",
                    report.max_depth, report.depth_bound, report.config_bound, report.configs_seen
                )?;
            }
            Ok(Exit::Success)
        }
        Command::Dovetail { stages, max_len } => {
            let pairs = dovetail(stages, max_len).map_err(|e| Failure::new(Exit::Budget, e))?;
            for p in pairs {
                writeln!(out, "{}\t{}\t{}\t{}", p.x, p.y, p.code, p.stage)?;
            }
            Ok(Exit::Success)
        }
    }
}

/// Entry point for the `tm` binary.
pub fn main() -> ! {
    let code = run(
        std::env::args_os(),
        &mut io::stdin().lock(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    std::process::exit(code)
}
