//! The library of machines computing numeric functions.

use tmkit::funclib::{library_fn, library_names, FnArgs};

fn main() {
    for name in library_names() {
        let f = library_fn(&name).unwrap();
        let args: Vec<u64> = (0..f.arity as u64).map(|i| 3 + 2 * i).collect();
        let result = f.eval(&FnArgs::from_u64s(&args).unwrap(), 100_000);
        println!("{name}{args:?} = {result}");
    }
}
