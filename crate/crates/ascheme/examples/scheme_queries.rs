//! Parses a scheme from its text form and runs the structural queries:
//! colors, valencies, intersection numbers, transposition, and the
//! decomposition of a relation into a union of colors.
//!
//! Run with `cargo run --release --example scheme_queries`.

use ascheme::generators;
use ascheme::Scheme;

fn main() {
    // Going through the text format exercises the full validator: the
    // parser re-checks the partition, transposition closure, and every
    // intersection number before handing back a Scheme.
    let text = generators::johnson(5, 2).unwrap().to_text();
    let sch = Scheme::parse(&text).unwrap();
    let n = sch.n();

    println!("n = {}, classes = {}", n, sch.s());
    println!("color(0, 1) = {}", sch.color(0, 1));
    println!("valencies = {:?}", sch.valencies());
    for r in 0..sch.s() as u16 {
        print!("transpose({r}) = {}  ", sch.transpose(r));
    }
    println!();

    // Intersection numbers: for points x, y with color(x, y) = t, the
    // number of z with color(x, z) = r and color(z, y) = u.
    println!(
        "intersection numbers c(r=1, u=1, t): {:?}",
        (0..sch.s())
            .map(|t| sch.intersection(1, 1, t))
            .collect::<Vec<_>>(),
    );

    println!("thin: {}", sch.is_thin());
    println!("commutative: {}", sch.is_commutative());
    println!("primitive: {}", sch.is_primitive().unwrap());

    // A relation given as a pair indicator can be tested for being a
    // union of colors.  The union of colors 0 and 2 passes; flipping one
    // pair breaks it.
    let mut indicator = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            let c = sch.color(x, y);
            indicator[x * n + y] = c == 0 || c == 2;
        }
    }
    let set = sch.relation_set(&indicator);
    println!(
        "union of colors 0 and 2: is_union = {}, colors = {:?}",
        set.is_union(),
        set.colors
    );

    indicator[1] = !indicator[1];
    println!(
        "after flipping one pair: is_union = {}",
        sch.relation_set(&indicator).is_union()
    );

    // Malformed inputs are rejected with a description of the failure.
    let broken = text.replacen("0 1 1 1 1 1 1 2 2 2", "0 1 1 1 1 1 1 2 2 1", 1);
    match Scheme::parse(&broken) {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("tampered matrix rejected: {e}"),
    }
}
