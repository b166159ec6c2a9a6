//! Enumerating halting pairs by dovetailing, and bounded halting checks.

use tmkit::enumeration::{machine_of_index, GodelIndex, DEFAULT_MAX_CODE_LEN};
use tmkit::halting::{dovetail, halts_within};
use tmkit::Nat;

fn main() {
    for p in dovetail(4, DEFAULT_MAX_CODE_LEN).unwrap() {
        println!("stage {}: T_{} halts on {} (pair code {})", p.stage, p.x.get(), p.y, p.code);
    }
    let t1 = machine_of_index(GodelIndex::new(1).unwrap(), DEFAULT_MAX_CODE_LEN).unwrap();
    for k in [1, 10, 1000] {
        println!("T_1 halts on 0 within {k} steps: {}", halts_within(&t1, &Nat::from(0u32), k));
    }
}
