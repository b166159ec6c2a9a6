//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::collections::HashMap;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, Stdio};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::*;
use tmkit::bits::BitString;
use tmkit::codec::{bar as code_bar, decode_machine, encode_machine, nat_of_str, str_of_nat, unbar, Nat};
use tmkit::complexity::{
    self, accepts, meter, nd_accepts, savitch, MultiMachine, NDMachine, Verdict, DEFAULT_CONFIG_BUDGET,
};
use tmkit::enumeration::{enumerate_machines, godel_number, is_valid_code, machine_of_index, GodelIndex};
use tmkit::format::{parse_machine, write_machine};
use tmkit::funclib::{library_fn, library_names, FnArgs, FnResult};
use tmkit::halting::{dovetail, halts_within};
use tmkit::universal::{universal_run, UniversalError};
use tmkit::Machine;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn b(s: &str) -> BitString {
    s.parse().unwrap()
}

fn n(v: u64) -> Nat {
    Nat::from(v)
}

fn codec_laws() -> Check {
    for v in 0..1u64 << 16 {
        let s = unrank(v);
        ensure!(str_of_nat(&n(v)).to_string() == s, "str_of_nat({v}) != {s:?}");
        ensure!(nat_of_str(&b(&s)) == n(v), "nat_of_str({s:?}) != {v}");
    }
    let words = strings_up_to(10);
    let barred: Vec<String> = words.iter().map(|w| code_bar(&b(w)).to_string()).collect();
    for (w, x) in words.iter().zip(&barred) {
        ensure!(*x == bar(w), "bar({w:?}) = {x}");
        ensure!(x.len() == 2 * w.len() + 1, "|bar({w:?})| = {}", x.len());
        let (head, rest) = unbar(&b(&format!("{x}0110"))).map_err(|e| e.to_string())?;
        ensure!(head.to_string() == *w && rest == b("0110"), "unbar(bar({w:?}) 0110)");
    }
    let mut pairs = 0u64;
    for (i, x) in barred.iter().enumerate() {
        for (j, y) in barred.iter().enumerate() {
            ensure!(i == j || !y.starts_with(x.as_str()), "{x} is a prefix of {y}");
            pairs += 1;
        }
    }
    Ok(format!("2^16 ranks, {} codes, {pairs} prefix pairs", words.len()))
}

fn machine_code_round_trip() -> Check {
    let mut rng = StdRng::seed_from_u64(2);
    for trial in 0..1000 {
        let states = rng.gen_range(1..=8u32);
        let rules = rng.gen_range(1..=(3 * states as usize).min(24));
        let raw = random_machine(&mut rng, states, rules);
        let m = parse_machine(&raw.to_tm()).map_err(|e| e.to_string())?;
        let code = encode_machine(&m);
        let (back, rest) = decode_machine(&code).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure!(rest.is_empty() && back == m.canonical(), "trial {trial}: round trip changed {}", m.summary());
        let used = states_used(&raw) as u64;
        let s = (1..).find(|&s| 1u64 << s >= used + 5).unwrap();
        let r = rules as u64;
        let log2 = |v: u64| 63 - v.leading_zeros() as u64;
        let law = 2 * log2(s + 1) + 2 * log2(r + 1) + 2 + 4 * r * s;
        ensure!(code.len() as u64 == law, "trial {trial}: |E(T)| = {} but law gives {law}", code.len());
    }
    Ok("1000 random machines".into())
}

fn valid_codes_by_brute_force(max_len: usize) -> Vec<String> {
    let mut out = Vec::new();
    for len in 0..=max_len {
        let total = 1u64 << len;
        let chunks = 16u64.min(total);
        let found: Vec<Vec<String>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..chunks)
                .map(|c| {
                    scope.spawn(move || {
                        let (lo, hi) = (total * c / chunks, total * (c + 1) / chunks);
                        (lo..hi)
                            .map(|v| BitString::from_uint(v, len))
                            .filter(is_valid_code)
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        out.extend(found.into_iter().flatten());
    }
    out
}

fn enumeration_cross_check() -> Check {
    let brute = valid_codes_by_brute_force(24);
    let listed: Vec<String> = enumerate_machines(24)
        .map_err(|e| e.to_string())?
        .map(|e| e.code.to_string())
        .collect();
    ensure!(brute == listed, "brute force found {} codes, enumeration {}", brute.len(), listed.len());
    ensure!(brute.iter().all(|c| c.len() >= 20), "a valid code is shorter than 20 bits");
    let twenty = brute.iter().filter(|c| c.len() == 20).count();
    ensure!(twenty == 30, "{twenty} valid 20-bit codes");
    let first = machine_of_index(GodelIndex::new(1).unwrap(), 24).map_err(|e| e.to_string())?;
    ensure!(first == parse_machine("q1 0 0 q1").unwrap(), "T_1 = {}", first.summary());
    for i in 1..=100 {
        let idx = GodelIndex::new(i).unwrap();
        let m = machine_of_index(idx, 32).map_err(|e| e.to_string())?;
        let back = godel_number(&m, 32).map_err(|e| e.to_string())?;
        ensure!(back == idx, "godel_number(T_{i}) = {back}");
    }
    Ok(format!("{} codes up to 24 bits; indices 1..=100 round trip", brute.len()))
}

fn library_machines() -> Vec<(String, Machine)> {
    library_names()
        .into_iter()
        .map(|name| {
            let f = library_fn(&name).unwrap();
            (name, f.machine)
        })
        .collect()
}

fn malformed_prefixes(rng: &mut StdRng) -> Vec<BitString> {
    let random_bits = |rng: &mut StdRng, len: usize| -> String {
        (0..len).map(|_| if rng.gen_bool(0.5) { '1' } else { '0' }).collect()
    };
    let mut out = Vec::new();
    while out.len() < 100 {
        let s = match out.len() % 4 {
            // No terminating 0 in the width code.
            0 => "1".repeat(rng.gen_range(0..40)),
            // A valid code cut short.
            1 => {
                let states = rng.gen_range(1..=6);
                let rules = rng.gen_range(1..=3 * states as usize);
                let raw = random_machine(rng, states, rules);
                let code = encode_machine(&parse_machine(&raw.to_tm()).unwrap()).to_string();
                code[..rng.gen_range(0..code.len())].to_string()
            }
            // Width 1 or 2, too narrow for any machine.
            2 => {
                let width = ["100", "101"][rng.gen_range(0..2)];
                format!("{width}{}{}", bar(&unrank(rng.gen_range(1..5))), random_bits(rng, 48))
            }
            // Zero rules.
            _ => format!("{}0{}", bar(&unrank(3)), random_bits(rng, 12)),
        };
        out.push(b(&s));
    }
    out
}

fn universality() -> Check {
    let inputs = strings_up_to(6);
    let mut runs = 0;
    for (name, m) in library_machines() {
        let code = encode_machine(&m);
        for p in &inputs {
            let p = b(p);
            let via_u = universal_run(&code.concat(&p), 10_000).map_err(|e| format!("{name}: {e}"))?;
            ensure!(via_u == m.run(&p, 10_000), "{name} on {p}: universal run differs");
            runs += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(4);
    for bad in malformed_prefixes(&mut rng) {
        ensure!(
            matches!(universal_run(&bad, 100), Err(UniversalError::Undefined(_))),
            "{bad} was accepted as E(T)p"
        );
    }
    Ok(format!("{runs} runs agree; 100 malformed prefixes undefined"))
}

fn oracle(name: &str, args: &[u64]) -> FnResult {
    let value = |v: u64| FnResult::Value(n(v));
    let pair_parts = || unbar(&b(&unrank(args[0]))).ok().map(|(x, y)| (x.to_string(), y.to_string()));
    match name {
        "successor" => value(args[0] + 1),
        "length" => value(unrank(args[0]).len() as u64),
        "bar_fn" => value(rank(&bar(&unrank(args[0])))),
        "left_g" => pair_parts().map_or(FnResult::UndefinedInput, |(x, _)| value(rank(&x))),
        "right_h" => pair_parts().map_or(FnResult::UndefinedInput, |(_, y)| value(rank(&y))),
        "eq_pred" => pair_parts().map_or(FnResult::UndefinedInput, |(x, y)| value(if x == y { 1 } else { 0 })),
        _ if name.starts_with("zero_") => value(0),
        _ => {
            let m: usize = name.split('_').nth(1).unwrap().parse().unwrap();
            value(args[m - 1])
        }
    }
}

fn function_library() -> Check {
    let unary: Vec<u64> = (0..=126).collect();
    let mut checked = 0;
    let mut failures = Vec::new();
    let names = library_names();
    std::thread::scope(|scope| {
        let handles: Vec<_> = names
            .iter()
            .map(|name| {
                let unary = &unary;
                scope.spawn(move || {
                    let f = library_fn(name).unwrap();
                    let tuples: Vec<Vec<u64>> = match f.arity {
                        1 => unary.iter().map(|&x| vec![x]).collect(),
                        2 => (0..=64).flat_map(|x| (0..=64).map(move |y| vec![x, y])).collect(),
                        _ => (0..=64)
                            .flat_map(|x| (0..=64).flat_map(move |y| (0..=64).map(move |z| vec![x, y, z])))
                            .collect(),
                    };
                    let mut bad = Vec::new();
                    for t in &tuples {
                        let got = f.eval(&FnArgs::from_u64s(t).unwrap(), 100_000);
                        let want = oracle(name, t);
                        if got != want {
                            bad.push(format!("{name}{t:?} = {got}, oracle {want}"));
                        }
                    }
                    (tuples.len(), bad)
                })
            })
            .collect();
        for h in handles {
            let (count, bad) = h.join().unwrap();
            checked += count;
            failures.extend(bad);
        }
    });
    ensure!(failures.is_empty(), "{} mismatches, first: {}", failures.len(), failures[0]);
    let g = library_fn("left_g").unwrap();
    let malformed = FnArgs::new(vec![nat_of_str(&b("1111"))]).unwrap();
    ensure!(g.eval(&malformed, 1000) == FnResult::UndefinedInput, "g(1111) is defined");
    Ok(format!("{} functions, {checked} argument tuples", names.len()))
}

fn fixtures_nd() -> Vec<(&'static str, MultiMachine)> {
    vec![
        ("write1", complexity::fixtures::write_one()),
        ("palindrome", complexity::fixtures::palindrome()),
        ("looper", complexity::fixtures::looper()),
        ("three_cells", complexity::fixtures::three_cells()),
    ]
}

fn nondeterminism() -> Check {
    let mut rng = StdRng::seed_from_u64(6);
    let mut tally: HashMap<&str, usize> = HashMap::new();
    for trial in 0..300 {
        let states = rng.gen_range(1..=4);
        let raw = random_nd_machine(&mut rng, states, 2);
        let m = NDMachine::parse(&raw.to_tm()).map_err(|e| e.to_string())?;
        let fuel = rng.gen_range(0..=12);
        for w in strings_up_to(4) {
            let got = nd_accepts(&m, &b(&w), fuel).map_err(|e| e.to_string())?;
            let want = match all_paths(&raw, &RawConfig::start(raw.start_state(), &w), fuel) {
                PathVerdict::Accept => Verdict::Accept,
                PathVerdict::Reject => Verdict::Reject,
                PathVerdict::Undecided => Verdict::FuelExhausted,
            };
            ensure!(got == want, "trial {trial}, w={w:?}, fuel {fuel}: {got} vs paths {want}\n{}", raw.to_tm());
            *tally.entry(["accept", "reject", "undecided"][want as usize]).or_default() += 1;
        }
    }
    for (name, det) in fixtures_nd() {
        let nd: NDMachine = det.clone().into();
        for w in strings_up_to(8) {
            for fuel in [0, 5, 200] {
                let w = b(&w);
                ensure!(
                    nd_accepts(&nd, &w, fuel).map_err(|e| e.to_string())? == accepts(&det, &w, fuel),
                    "{name} on {w} with fuel {fuel}"
                );
            }
        }
    }
    Ok(format!(
        "300 random machines ({} accept, {} reject, {} undecided cases); fixtures agree",
        tally["accept"], tally["reject"], tally["undecided"]
    ))
}

fn savitch_vs_bfs() -> Check {
    let mut rng = StdRng::seed_from_u64(7);
    let (mut accepted, mut rejected, mut deepest) = (0, 0, 0);
    let mut trial = 0;
    // Random machines rarely accept, so keep drawing until both outcomes are
    // well represented.
    while accepted < 100 || rejected < 150 {
        trial += 1;
        ensure!(trial < 200_000, "only {accepted} accepting instances after {trial} draws");
        let states = rng.gen_range(1..=4);
        let raw = random_nd_machine(&mut rng, states, 2);
        let m = NDMachine::parse(&raw.to_tm()).map_err(|e| e.to_string())?;
        let space = rng.gen_range(1..=6usize);
        let w = unrank(rng.gen_range(0..31));
        let report = savitch(&m, &b(&w), space, DEFAULT_CONFIG_BUDGET).map_err(|e| e.to_string())?;
        let want = space_bounded_reach(&raw, &w, space as i64);
        ensure!(report.accepted == want, "trial {trial}, w={w:?}, space {space}: savitch {} vs bfs {want}\n{}", report.accepted, raw.to_tm());
        let reach = 2 * space as u128 - 1;
        let c = states_used(&raw) as u128 * reach * 3u128.pow(reach as u32);
        let log = (0..).find(|&j| 1u128 << j >= c).unwrap();
        ensure!(report.config_bound == c, "trial {trial}: C = {} but expected {c}", report.config_bound);
        ensure!(report.max_depth <= log + 1, "trial {trial}: depth {} exceeds {}", report.max_depth, log + 1);
        if want {
            accepted += 1;
        } else {
            rejected += 1;
        }
        deepest = deepest.max(report.max_depth);
    }
    Ok(format!("{trial} instances ({accepted} accepting); deepest recursion {deepest}"))
}

fn dovetailer() -> Check {
    let pairs = dovetail(30, 24).map_err(|e| e.to_string())?;
    ensure!(pairs == dovetail(30, 24).unwrap(), "two runs differ");
    let machines: Vec<Machine> = enumerate_machines(24).unwrap().map(|e| e.machine).collect();
    let mut stage_of = HashMap::new();
    for p in &pairs {
        let m = &machines[p.x.get() as usize - 1];
        ensure!(halts_within(m, &n(p.y), p.stage), "({}, {}) emitted but does not halt", p.x, p.y);
        ensure!(stage_of.insert((p.x.get(), p.y), p.stage).is_none(), "({}, {}) emitted twice", p.x, p.y);
    }
    let mut checked = 0;
    for x in 1..=30u64 {
        let raw = RawMachine {
            rules: machines[x as usize - 1]
                .rules()
                .iter()
                .map(|r| RawRule {
                    state: r.state.0,
                    scan: r.scan.as_char(),
                    action: r.action.as_char(),
                    next: r.next.0,
                })
                .collect(),
        };
        for y in 0..=10u64 {
            let Some((k, _)) = raw.run(&bar(&unrank(y)), 20) else {
                continue;
            };
            let due = x.max(y + 1).max(k);
            match stage_of.get(&(x, y)) {
                Some(&stage) if stage <= due => checked += 1,
                other => return Err(format!("({x}, {y}) halts in {k} steps but stage is {other:?}, due {due}")),
            }
        }
    }
    Ok(format!("{} pairs emitted; {checked} halting pairs found on schedule", pairs.len()))
}

fn metering() -> Check {
    let m = complexity::fixtures::palindrome();
    let inputs: Vec<BitString> = strings_up_to(10).iter().map(|w| b(w)).collect();
    for w in &inputs {
        let s = w.to_string();
        let pal = s.chars().rev().collect::<String>() == s;
        ensure!(accepts(&m, w, 10_000) == Verdict::of(pal), "palindrome fixture wrong on {s:?}");
    }
    let rows = meter(&m, &inputs, 10_000);
    ensure!(rows.len() == 11 && rows.iter().all(|r| !r.flagged()), "unexpected rows {rows:?}");
    ensure!(rows.windows(2).all(|p| p[0].max_steps <= p[1].max_steps), "max_steps decreases: {rows:?}");
    let one = complexity::fixtures::write_one();
    let rows = meter(&one, &inputs, 10);
    ensure!(rows.iter().all(|r| r.max_steps == 1), "write-1 steps {rows:?}");
    let steps: Vec<u64> = meter(&m, &inputs, 10_000).iter().map(|r| r.max_steps).collect();
    Ok(format!("palindrome max_steps by n: {steps:?}"))
}

fn tm(args: &[&str], stdin: &str) -> (i32, String, String) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tm"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("tm binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn cli_golden() -> Check {
    let dir = std::env::temp_dir().join(format!("tm-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    for (name, m) in library_machines() {
        let path = dir.join(format!("{name}.tm"));
        std::fs::write(&path, write_machine(&m)).unwrap();
        let (code, encoded, _) = tm(&["encode", path.to_str().unwrap()], "");
        ensure!(code == 0, "encode {name} exited {code}");
        let (code, decoded, _) = tm(&["decode"], &encoded);
        ensure!(code == 0, "decode {name} exited {code}");
        ensure!(
            decoded == write_machine(&m.canonical()),
            "encode|decode changed {name}:\n{decoded}"
        );
    }
    let bad = dir.join("bad.tm");
    std::fs::write(&bad, "q1 0 X q1\n").unwrap();
    let cases: [(&[&str], i32); 6] = [
        (&["nth", "1"], 0),
        (&["frobnicate"], 1),
        (&["run", bad.to_str().unwrap()], 2),
        (&["run", "fixtures/looper.tm", "--input", "", "--fuel", "10"], 3),
        (&["nth", "31", "--max-len", "24"], 4),
        (&["univ", "--tape", "1111"], 5),
    ];
    for (args, want) in cases {
        let (code, _, _) = tm(args, "");
        ensure!(code == want, "tm {} exited {code}, expected {want}", args.join(" "));
    }
    let (_, nth, _) = tm(&["nth", "1"], "");
    ensure!(nth == "q1 0 0 q1\n", "tm nth 1 printed {nth:?}");
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} pipes; exit codes 0-5", library_names().len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("1 codec laws", codec_laws),
        ("2 machine code round trip", machine_code_round_trip),
        ("3 enumeration cross-check", enumeration_cross_check),
        ("4 universality", universality),
        ("5 function library oracles", function_library),
        ("6 nondeterminism", nondeterminism),
        ("7 savitch", savitch_vs_bfs),
        ("8 dovetailer", dovetailer),
        ("9 metering", metering),
        ("10 cli golden", cli_golden),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {name} ({secs:.1}s): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.1}s): {why}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
