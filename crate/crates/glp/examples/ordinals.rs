//! Ordinal notations: parsing, comparison, left multiplication by omega,
//! absorption, and the pairing order.
//!
//! Run with `cargo run -p glp --example ordinals`.

use std::cmp::Ordering;

use glp::ordinal::{compare, parse_ordinal, prec_prime, OrdinalNotation, OrdinalPair};

fn main() {
    // The ASCII grammar: `w` is omega, `^` exponentiates, `*` scales a term,
    // `+` sums. Non-canonical sums normalize.
    for text in ["0", "w^w*2+3", "w+w", "1+w", "w^(w+1)+w^2*4"] {
        let a = parse_ordinal(text).expect("well-formed");
        println!("{text:16} parses to {a}");
    }

    println!();
    let pairs = [("1", "w"), ("w^w", "w^2*5+w"), ("w*2+1", "w*2+1")];
    for (x, y) in pairs {
        let a = parse_ordinal(x).unwrap();
        let b = parse_ordinal(y).unwrap();
        let symbol = match compare(&a, &b) {
            Ordering::Less => "<",
            Ordering::Equal => "=",
            Ordering::Greater => ">",
        };
        println!("{a} {symbol} {b}");
    }

    println!();
    for text in ["1", "w+1", "w^w", "w^5+w^2", "0"] {
        let a = parse_ordinal(text).unwrap();
        println!(
            "w * {a:10} = {:12} absorbing: {}",
            a.omega_left_multiply().to_string(),
            a.is_omega_absorbing()
        );
    }

    // The pairing order compares ordinal components first and breaks ties
    // with the naturals, giving order type omega times the base order.
    println!();
    let p = OrdinalPair::new(parse_ordinal("w").unwrap(), 5);
    let q = OrdinalPair::new(parse_ordinal("w").unwrap(), 7);
    let r = OrdinalPair::new(parse_ordinal("w^w").unwrap(), 0);
    println!("{p} before {q}: {}", prec_prime(&p, &q));
    println!("{q} before {r}: {}", prec_prime(&q, &r));
    println!("{r} before {p}: {}", prec_prime(&r, &p));

    // Successive left multiplications stabilize at omega-power towers.
    let mut a = OrdinalNotation::nat(1);
    for _ in 0..4 {
        print!("{a} -> ");
        a = a.omega_left_multiply();
    }
    println!("{a}");
}
