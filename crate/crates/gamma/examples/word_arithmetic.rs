//! Words and normal forms in Γ(S): parsing, evaluation, the group law,
//! inverses, conjugation, and the height map.
//!
//! Run with `cargo run --example word_arithmetic`.

use gamma::GroupSpec;

fn main() {
    // Γ({2}) is the solvable Baumslag–Solitar group BS(1, 2)
    let bs = GroupSpec::new(vec![2]).unwrap();
    for text in ["t1^-1 a t1", "t1 a t1^-1", "a^5 t1^2"] {
        let word = bs.parse_word(text).unwrap();
        let value = bs.evaluate(&word);
        println!("[{text}]  ->  {value}");
    }

    // a rank-2 example with N = 6
    let spec = GroupSpec::new(vec![2, 3]).unwrap();
    let g = spec.evaluate(&spec.parse_word("a t1 a t2").unwrap());
    println!("\na t1 a t2 in Gamma({{2,3}}) -> {g}");
    println!("height = {:?}", g.height());

    let h = spec.inverse(&g);
    println!("inverse -> {h}");
    println!("g * g^-1 = {}", spec.mul(&g, &h));

    // conjugating a kernel element by a height-(1,1) element multiplies its
    // A-coordinate by n1 * n2 = 6
    let a = spec.gen_a();
    let by = spec.evaluate(&spec.parse_word("t1 t2").unwrap());
    println!("\nt2^-1 t1^-1 a t1 t2 = {}", spec.conjugate(&a, &by));

    // every defining relator evaluates to the identity
    for relator in ["t1^-1 t2^-1 t1 t2", "t1^-1 a t1 a^-2", "t2^-1 a t2 a^-3"] {
        let value = spec.evaluate(&spec.parse_word(relator).unwrap());
        println!("relator [{relator}] evaluates to identity: {}", value.is_identity());
    }

    // parse errors carry the byte position of the bad token
    let err = spec.parse_word("a t7^2").unwrap_err();
    println!("\nparse error demo: {err}");
}
