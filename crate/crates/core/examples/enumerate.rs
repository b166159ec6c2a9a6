//! The effective listing of machines by code length and Gödel numbers.

use tmkit::enumeration::{enumerate_machines, godel_number, machine_of_index, GodelIndex, DEFAULT_MAX_CODE_LEN};
use tmkit::format::{parse_machine, write_machine};

fn main() {
    for e in enumerate_machines(DEFAULT_MAX_CODE_LEN).unwrap().take(8) {
        println!("T_{} = {}", e.index.get(), e.machine.summary());
    }
    let t30 = machine_of_index(GodelIndex::new(30).unwrap(), DEFAULT_MAX_CODE_LEN).unwrap();
    print!("T_30:\n{}", write_machine(&t30));

    let m = parse_machine("q1 1 R q1\nq1 B 0 q2").unwrap();
    match godel_number(&m, 32) {
        Ok(i) => println!("index within 32-bit codes: {}", i.get()),
        Err(e) => println!("no index: {e}"),
    }
}
