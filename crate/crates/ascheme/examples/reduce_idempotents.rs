//! Reduces the exact central idempotents of a rational scheme modulo a
//! prime and inspects their ranks.
//!
//! When the prime does not divide the Frame number, the adjacency algebra
//! over F_p is semisimple and each reduced idempotent keeps its structure:
//! the rank over F_p equals degree times multiplicity, the same as the
//! rank over Q.  At primes dividing the Frame number the reduction is
//! refused.
//!
//! Run with `cargo run --release --example reduce_idempotents`.

use ascheme::generators;
use ascheme::spectral::{analyze, reduce_idempotent};
use ascheme::FqField;

fn main() {
    let sch = generators::johnson(5, 2).unwrap();
    let data = analyze(&sch).unwrap();
    println!("johnson(5, 2): frame number {}", data.frame);

    // 7 does not divide 900: reduce every idempotent mod 7 and compare
    // ranks with the rational parameters.
    let f7 = FqField::new(7, 1).unwrap();
    let mut rank_sum = 0;
    for (i, block) in data.blocks.iter().enumerate() {
        let reduced = reduce_idempotent(&sch, &data, i, &f7).unwrap();
        println!(
            "block {i}: degree {} multiplicity {} -> rank over F_7 = {} (rational rank {})",
            block.degree,
            block.multiplicity,
            reduced.rank(),
            block.rank,
        );
        assert_eq!(reduced.rank(), block.rank);
        rank_sum += reduced.rank();
    }
    println!("ranks sum to n = {rank_sum}");

    // The principal idempotent is the all-one matrix scaled by 1/n; mod 7
    // that is 5 * J, still rank 1.
    let principal = reduce_idempotent(&sch, &data, 0, &f7).unwrap();
    println!(
        "principal idempotent entry (0, 0) mod 7: {}",
        principal.get(0, 0)
    );

    // 3 divides 900: the algebra mod 3 is not semisimple and the
    // reduction is refused rather than producing a broken idempotent.
    let f3 = FqField::new(3, 1).unwrap();
    match reduce_idempotent(&sch, &data, 1, &f3) {
        Ok(_) => println!("unexpectedly reduced"),
        Err(e) => println!("mod 3: {e}"),
    }

    // Irrational schemes have no exact idempotents to reduce.
    let z5 = generators::from_group(&generators::cyclic_group_table(5)).unwrap();
    let z5_data = analyze(&z5).unwrap();
    match reduce_idempotent(&z5, &z5_data, 0, &f7) {
        Ok(_) => println!("unexpectedly reduced"),
        Err(e) => println!("Z_5: {e}"),
    }
}
