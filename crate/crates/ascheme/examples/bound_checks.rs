//! Runs every bound check on a small corpus and prints the reports.
//!
//! Each check returns a verdict: `holds`, `violated`, or `not_applicable`
//! when a precondition fails.  Preconditions are checked honestly: a
//! truncated search or an undetermined rationality question downgrades
//! the verdict instead of guessing.
//!
//! Run with `cargo run --release --example bound_checks`.

use ascheme::bounds::{
    check_min_rank_bound, check_min_rank_realization, check_rank_one_classification,
    check_scaling_relation_closure, check_semisimple_multiplicity_bound, BoundReport,
};
use ascheme::generators;
use ascheme::minrank::SearchOptions;
use ascheme::FqField;

fn show(label: &str, report: &BoundReport) {
    println!("{label}: {}", serde_json::to_string(report).unwrap());
}

fn main() {
    let opts = SearchOptions::default();
    let f2 = FqField::new(2, 1).unwrap();

    // Order bound from the minimum rank: n fits inside the projective
    // space of dimension rkmin over the field.  On cyclotomic(31, 5) over
    // F_2 the bound is met with equality: 31 = (2^5 - 1)/(2 - 1).
    let sch = generators::cyclotomic(31, 5).unwrap();
    let report = check_min_rank_bound(&sch, &f2, &opts).unwrap();
    show("min rank bound, tight case", &report);

    // The same check refuses imprimitive schemes.
    let j42 = generators::johnson(4, 2).unwrap();
    show(
        "min rank bound, imprimitive",
        &check_min_rank_bound(&j42, &f2, &opts).unwrap(),
    );

    // Order bound from the smallest non-principal multiplicity, at primes
    // where the algebra stays semisimple: 10 <= (7^4 - 1)/6 = 400.
    let j52 = generators::johnson(5, 2).unwrap();
    show(
        "multiplicity bound p = 7",
        &check_semisimple_multiplicity_bound(&j52, 7, 1).unwrap(),
    );
    // 3 divides the Frame number 900, so at p = 3 nothing is claimed.
    show(
        "multiplicity bound p = 3",
        &check_semisimple_multiplicity_bound(&j52, 3, 1).unwrap(),
    );

    // Rank-1 classification: the algebra of a primitive scheme contains a
    // rank-1 matrix outside the all-one line exactly when the scheme is
    // thin of prime order n with n | q - 1.
    let z5 = generators::from_group(&generators::cyclic_group_table(5)).unwrap();
    let f11 = FqField::new(11, 1).unwrap();
    show(
        "rank-1 classification, 5 | 10",
        &check_rank_one_classification(&z5, &f11, &opts).unwrap(),
    );
    show(
        "rank-1 classification, 5 ∤ 1",
        &check_rank_one_classification(&z5, &f2, &opts).unwrap(),
    );

    // Column-scaling closure: for every matrix A in the algebra and every
    // factor lambda, the pairs (x, y) with lambda * col_x(A) = col_y(A)
    // form a union of basis relations.  Checked over a finite field and
    // over the rationals.
    let f4 = FqField::new(2, 2).unwrap();
    show(
        "scaling closure over F_4",
        &check_scaling_relation_closure(&j52, Some(&f4), 50, 7).unwrap(),
    );
    show(
        "scaling closure over Q",
        &check_scaling_relation_closure(&j52, None, 50, 7).unwrap(),
    );

    // Realizability: at a semisimple prime, some algebra element reaches
    // rank at most the smallest non-principal multiplicity.  On
    // johnson(5, 2) at p = 7 the minimum rank 4 meets it exactly.
    show(
        "min rank vs multiplicity",
        &check_min_rank_realization(&j52, 7, &opts, 1).unwrap(),
    );
}
