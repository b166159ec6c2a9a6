//! One fixed procedure runs any encoded machine on its input.

use tmkit::bits::bits;
use tmkit::codec::encode_machine;
use tmkit::funclib::library;
use tmkit::universal::universal_run;

fn main() {
    let succ = library("successor").unwrap();
    // successor(4): the argument is bar(str(4)) = bar("01") = "11001".
    let tape = encode_machine(&succ).concat(&bits("11001"));
    let outcome = universal_run(&tape, 10_000).unwrap();
    println!("U halted after {} steps, tape {}", outcome.steps(), outcome.config().tape.render());

    match universal_run(&bits("0101"), 100) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("malformed input: {e}"),
    }
}
