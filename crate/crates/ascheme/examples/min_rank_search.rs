//! Searches for the minimum rank attained by the adjacency algebra of a
//! scheme over a finite field, excluding multiples of the all-one matrix.
//!
//! The search walks the projective classes of coefficient vectors (first
//! nonzero coefficient normalized to 1), materializes each candidate row
//! by row into an incremental eliminator, and abandons a candidate as soon
//! as its rank reaches the best value already known.
//!
//! Run with `cargo run --release --example min_rank_search`.

use ascheme::generators;
use ascheme::gf::combine;
use ascheme::minrank::{class_count, min_rank, SearchOptions};
use ascheme::FqField;

fn main() {
    // On this 31-point scheme the minimum rank over F_2 is 5, and
    // 31 = 2^5 - 1: the scheme order meets the projective bound exactly.
    let sch = generators::cyclotomic(31, 5).unwrap();
    let f2 = FqField::new(2, 1).unwrap();

    println!(
        "projective classes over F_2 with 7 coefficients: {}",
        class_count(2, sch.s())
    );

    let report = min_rank(&sch, &f2, &SearchOptions::default()).unwrap();
    println!(
        "minimum rank {} (examined {} candidates, exhaustive: {})",
        report.rkmin, report.candidates_examined, report.exhaustive,
    );
    println!("witness coefficients: {:?}", report.witness);

    // The witness can be checked independently.
    let matrix = combine(&sch, &f2, &report.witness);
    assert_eq!(matrix.rank(), report.rkmin);
    println!("witness rank verified: {}", matrix.rank());

    // A thin scheme of prime order n has a rank-1 element over any field
    // with n | q - 1: the outer product of a multiplicative character with
    // itself lands in the algebra.
    let z5 = generators::from_group(&generators::cyclic_group_table(5)).unwrap();
    let f11 = FqField::new(11, 1).unwrap();
    let report = min_rank(&z5, &f11, &SearchOptions::default()).unwrap();
    println!(
        "\nZ_5 over F_11: minimum rank {}, witness {:?}",
        report.rkmin, report.witness
    );

    // Budgets truncate the search deterministically; the report says so
    // instead of pretending the result is certified.
    let opts = SearchOptions {
        budget: Some(10),
        threads: 1,
    };
    let truncated = min_rank(&sch, &f2, &opts).unwrap();
    println!(
        "\nbudget 10 on the 31-point scheme: rank ≤ {}, exhaustive: {}",
        truncated.rkmin, truncated.exhaustive,
    );
}
