//! Self-delimiting codes, pairing and machine encoding.

use tmkit::bits::bits;
use tmkit::codec::{bar, decode_machine, encode_machine, pair_nat, str_of_nat, tuple_encode, unbar, TupleScheme};
use tmkit::format::{parse_machine, write_machine};
use tmkit::Nat;

fn main() {
    let x = bits("101");
    let stream = bar(&x).concat(&bits("0011"));
    let (head, rest) = unbar(&stream).unwrap();
    println!("bar({x}) = {}, stream {stream} splits into {head} + {rest}", bar(&x));

    for n in 0u32..6 {
        println!("str({n}) = {:?}", str_of_nat(&Nat::from(n)).to_string());
    }
    println!("<3, 4> = {}", pair_nat(&Nat::from(3u32), &Nat::from(4u32)));
    let t = tuple_encode(&[bits("1"), bits(""), bits("01")], TupleScheme::Flat).unwrap();
    println!("flat tuple (1, , 01) = {t}");

    let m = parse_machine("a 0 R a\na 1 R a\na B 1 b").unwrap();
    let code = encode_machine(&m);
    println!("E(T) = {code} ({} bits)", code.len());
    let (back, _) = decode_machine(&code).unwrap();
    print!("decoded:\n{}", write_machine(&back));
}
