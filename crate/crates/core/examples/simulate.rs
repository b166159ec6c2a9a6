//! Parse a machine, run it with a trace, and inspect the final tape.

use tmkit::bits::bits;
use tmkit::format::parse_machine;

fn main() {
    let flip = parse_machine(
        "scan 0 1 next\n\
         scan 1 0 next\n\
         next 0 R scan\n\
         next 1 R scan",
    )
    .expect("valid machine");

    let outcome = flip.run_from(flip.initial(&bits("0110")), 100, |n, c| {
        println!("step {n}: {} at {}, tape {}", flip.state_name(c.state), c.head, c.tape.render());
    });
    println!(
        "halted={} after {} steps, tape {}",
        outcome.is_halted(),
        outcome.steps(),
        outcome.config().tape.render()
    );
}
