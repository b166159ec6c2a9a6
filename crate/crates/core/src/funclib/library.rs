//! Hand-built machines for basic partial computable functions.
//!
//! Every machine reads its arguments in the standard form (a concatenation of
//! self-delimiting codes starting at cell 0) and leaves its result as the
//! blank-bordered block under the head, or scans a blank for 0.

use super::builder::{erase_code, extract_payload, strip_prefix, Builder, BITS};
use crate::machine::{Action, Machine};
use crate::tape::Symbol::{Blank, One, Zero};

/// `x ↦ x + 1`: strip the prefix, then add one to the payload read as `1x`
/// in binary. A carry out of the leading bit turns `1ⁿ` into `0ⁿ⁺¹`.
pub fn successor() -> Machine {
    let (mut b, start) = Builder::new("start");
    let payload = strip_prefix(&mut b, start);
    let carry = b.state("carry");
    let stepped = b.state("carried");
    let done = b.state("done");
    b.walk(payload, &BITS, Action::Right);
    b.left(payload, Blank, carry);
    b.write(carry, One, Zero, stepped);
    b.left(stepped, Zero, carry);
    b.write(carry, Zero, One, done);
    b.write(carry, Blank, Zero, done);
    b.build()
}

/// Constant 0 of any arity: step off the input onto a blank.
pub fn zero() -> Machine {
    let (mut b, start) = Builder::new("start");
    let done = b.state("done");
    for s in BITS {
        b.left(start, s, done);
    }
    b.build()
}

/// `(x₁, …, x_n) ↦ x_m`.
pub fn projection(m: usize, n: usize) -> Machine {
    assert!(1 <= m && m <= n, "projection index out of range");
    let (mut b, start) = Builder::new("start");
    let mut at = start;
    for _ in 1..m {
        at = erase_code(&mut b, at);
    }
    if m == n {
        strip_prefix(&mut b, at);
        return b.build();
    }
    let (mut kept, mut empty) = extract_payload(&mut b, at, false);
    for _ in m..n {
        kept = erase_code(&mut b, kept);
        empty = erase_code(&mut b, empty);
    }
    let back = b.state("back");
    b.left(kept, Blank, back);
    b.walk(back, &[Blank], Action::Left);
    b.build()
}

/// `x ↦ |x|`: erase the separator and payload, then count the leading ones
/// into a numeral that grows leftward from cell -2.
pub fn length() -> Machine {
    let (mut b, start) = Builder::new("start");
    let empty = b.state("empty");
    let ones = b.state("ones");
    let erase = b.state("erase");
    let erased = b.state("erased");
    let last = b.state("last_one");
    let took = b.state("took");
    let back = b.state("over_ones");
    let inc = b.state("increment");
    let carried = b.state("carried");
    let ret = b.state("return");
    let next = b.state("next");
    let seek = b.state("seek_end");
    let out1 = b.state("to_gap");
    let out2 = b.state("to_count");

    b.write(start, Zero, Blank, empty);
    b.right(start, One, ones);
    b.walk(ones, &[One], Action::Right);
    b.write(ones, Zero, Blank, erased);
    b.right(erased, Blank, erase);
    for s in BITS {
        b.write(erase, s, Blank, erased);
    }
    b.left(erase, Blank, last);
    b.walk(last, &[Blank], Action::Left);

    b.write(last, One, Blank, took);
    b.left(took, Blank, back);
    b.walk(back, &[One], Action::Left);
    b.left(back, Blank, inc);
    b.write(inc, One, Zero, carried);
    b.left(carried, Zero, inc);
    b.write(inc, Zero, One, ret);
    b.write(inc, Blank, Zero, ret);
    b.walk(ret, &BITS, Action::Right);
    b.right(ret, Blank, next);
    b.right(next, One, seek);
    b.walk(seek, &[One], Action::Right);
    b.left(seek, Blank, last);
    b.left(next, Blank, out1);
    b.left(out1, Blank, out2);
    b.build()
}

/// `x ↦ x̄`. The input is already `x̄` with the head on its first bit, so the
/// machine halts at once; its single rule never applies to a well-formed input.
pub fn bar_fn() -> Machine {
    let (mut b, start) = Builder::new("start");
    b.right(start, Blank, start);
    b.build()
}

/// `x̄y ↦ x`, defined only on arguments with a self-delimiting prefix.
pub fn left_g() -> Machine {
    let (mut b, start) = Builder::new("start");
    let z = strip_prefix(&mut b, start);
    let (kept, empty) = extract_payload(&mut b, z, false);
    let rest = b.state("erase_rest");
    let back = b.state("back");
    for s in BITS {
        b.write(kept, s, Blank, rest);
    }
    b.right(rest, Blank, kept);
    b.left(kept, Blank, back);
    b.walk(back, &[Blank], Action::Left);
    let none = b.state("none");
    for s in BITS {
        b.left(empty, s, none);
    }
    b.build()
}

/// `x̄y ↦ y`, defined only on arguments with a self-delimiting prefix.
pub fn right_h() -> Machine {
    let (mut b, start) = Builder::new("start");
    let z = strip_prefix(&mut b, start);
    erase_code(&mut b, z);
    b.build()
}

/// `x̄y ↦ 1` if `x = y`, else `0`.
///
/// `x` is moved out to the left in reverse, so its first bit and the first bit
/// of `y` face each other across a blank gap. Each round erases the facing bits
/// after comparing them and notes whether either side just ran out.
pub fn eq_pred() -> Machine {
    let (mut b, start) = Builder::new("start");
    let z = strip_prefix(&mut b, start);
    let (facing, empty) = extract_payload(&mut b, z, true);
    let accept = b.state("accept");
    let reject = b.state("reject");

    // x = ε: equal iff y = ε.
    b.write(empty, Blank, Zero, accept);
    for s in BITS {
        b.left(empty, s, reject);
    }

    let seek_y = b.state("seek_y");
    b.walk(seek_y, &[Blank], Action::Right);
    for (t, &ts) in BITS.iter().enumerate() {
        let took = b.state("took_y");
        b.write(facing, ts, Blank, took);
        b.write(seek_y, ts, Blank, took);
        let peek = b.state("peek_y");
        b.right(took, Blank, peek);
        for y_done in [true, false] {
            let seek_x = b.state("seek_x");
            b.left(peek, if y_done { Blank } else { BITS[0] }, seek_x);
            if !y_done {
                b.left(peek, One, seek_x);
            }
            b.walk(seek_x, &[Blank], Action::Left);
            let matched = b.state("matched");
            let check = b.state("x_left");
            for (v, &vs) in BITS.iter().enumerate() {
                if v == t {
                    b.write(seek_x, vs, Blank, matched);
                } else {
                    b.write(seek_x, vs, Blank, reject);
                }
            }
            b.left(matched, Blank, check);
            if y_done {
                b.write(check, Blank, Zero, accept);
                for s in BITS {
                    b.right(check, s, reject);
                }
            } else {
                for s in BITS {
                    b.right(check, s, seek_y);
                }
            }
        }
    }
    b.build()
}
