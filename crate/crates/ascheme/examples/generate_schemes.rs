//! Builds one scheme from every generator family and prints each in the
//! plain-text format, plus a one-line summary.
//!
//! Run with `cargo run --release --example generate_schemes`.

use ascheme::generators;
use ascheme::Scheme;

fn describe(name: &str, sch: &Scheme) {
    println!(
        "{name}: {} points, {} classes, valencies {:?}, thin {}, commutative {}, primitive {}",
        sch.n(),
        sch.s(),
        sch.valencies(),
        sch.is_thin(),
        sch.is_commutative(),
        sch.is_primitive().unwrap(),
    );
}

fn main() {
    // A cyclotomic scheme: points are Z_31, colors are the cosets of the
    // order-5 subgroup of the multiplicative group.
    let cyclotomic = generators::cyclotomic(31, 5).unwrap();
    describe("cyclotomic(31, 5)", &cyclotomic);

    // The scheme of a finite group: one color per group element.  Any
    // multiplication table works; two are built in.
    let z5 = generators::from_group(&generators::cyclic_group_table(5)).unwrap();
    describe("cyclic group Z_5", &z5);
    let s3 = generators::from_group(&generators::symmetric_group_table(3)).unwrap();
    describe("symmetric group S_3", &s3);

    // Johnson scheme J(5, 2): points are the 2-subsets of a 5-set, colored
    // by intersection size.
    let johnson = generators::johnson(5, 2).unwrap();
    describe("johnson(5, 2)", &johnson);

    // Hamming scheme H(3, 2): points are binary words of length 3, colored
    // by Hamming distance.
    let hamming = generators::hamming(3, 2).unwrap();
    describe("hamming(3, 2)", &hamming);

    // The trivial two-class scheme of the complete graph.
    let complete = generators::complete(5).unwrap();
    describe("complete(5)", &complete);

    // The text format round-trips through parse; the content hash names
    // the scheme in reports.
    let text = johnson.to_text();
    println!("\njohnson(5, 2) in the text format:\n{text}");
    let back = Scheme::parse(&text).unwrap();
    assert_eq!(back.content_hash(), johnson.content_hash());
    println!("round-trip hash: {}", back.content_hash());

    // Generators reject parameters that break their preconditions.
    println!(
        "\ncyclotomic(10, 3): {}",
        generators::cyclotomic(10, 3).unwrap_err()
    );
    println!(
        "johnson(20, 10): {}",
        generators::johnson(20, 10).unwrap_err()
    );
}
