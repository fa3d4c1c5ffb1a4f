//! Modal formulas: parsing and sugar, subformulas and modalities,
//! condensation to finite indices, lifting back, and the relativization
//! formulas M and M+.
//!
//! Run with `cargo run -p glp --example formulas`.

use glp::syntax::{big_m, condense, lift, m_plus, m_plus_parts, parse_formula};

fn main() {
    // Diamonds, negation, conjunction, and T are sugar over the core
    // connectives bottom, implication, and box.
    for text in ["<1>~p", "p & q", "T", "[0]p -> [w]p"] {
        let f = parse_formula(text).expect("well-formed");
        println!("{text:16} core form {f}");
    }

    println!();
    let f = parse_formula("<w>T -> <1>T").unwrap();
    println!("formula:    {f}");
    println!("subformulas: {}", f.subformulas().len());
    let mods: Vec<String> = f.modalities().iter().map(|m| m.to_string()).collect();
    println!("modalities: {mods:?}");

    // Condensation renames the modalities to 0..N, smallest first; the map
    // remembers the originals so lifting inverts it.
    let (g, map) = condense(&f);
    println!("condensed:  {g}");
    println!("map:        {map}");
    let back = lift(&g, &map).expect("indices in range");
    println!("lifted:     {back}");
    assert_eq!(back, f);

    // M collects the monotonicity instances between occurring boxes; M+
    // additionally pushes M under every box level.
    println!();
    let g = parse_formula("[0]p -> [1]p").unwrap();
    println!("M({g})  = {}", big_m(&g).unwrap());
    println!("M+({g}) = {}", m_plus(&g).unwrap());
    println!("M+ conjuncts:");
    for part in m_plus_parts(&g).unwrap() {
        println!("  {part}");
    }
}
