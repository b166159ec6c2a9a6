//! Metering a multitape machine and deciding nondeterministic acceptance,
//! by breadth-first search and by the space-bounded middle-first search.

use tmkit::bits::bits;
use tmkit::complexity::{fixtures, meter, nd_accepts, savitch, DEFAULT_CONFIG_BUDGET};
use tmkit::BitString;

fn main() {
    let pal = fixtures::palindrome();
    let inputs: Vec<BitString> = (0..=6).flat_map(|n| (0..1u64 << n).map(move |v| BitString::from_uint(v, n))).collect();
    println!("n\tmax_steps\tmax_work_cells");
    for row in meter(&pal, &inputs, 10_000) {
        println!("{row}");
    }

    let guess = fixtures::guess_bit();
    for w in ["", "0", "1011"] {
        let bfs = nd_accepts(&guess, &bits(w), 50).unwrap();
        let r = savitch(&guess, &bits(w), 4, DEFAULT_CONFIG_BUDGET).unwrap();
        println!(
            "{w:?}: bfs {bfs}, space-bounded {} (depth {} of {}, {} configs)",
            r.accepted, r.max_depth, r.depth_bound, r.configs_seen
        );
    }
}
