//! Decomposes adjacency algebras into their central primitive idempotents
//! and reads off the representation parameters: block degrees,
//! multiplicities, ranks, and the Frame number.
//!
//! The exact path refines the coefficient space of the regular
//! representation over Q and either produces rational idempotents or
//! proves there are none.  Schemes with irrational idempotents fall back
//! to a certified floating decomposition over C.
//!
//! Run with `cargo run --release --example spectral_analysis`.

use ascheme::generators;
use ascheme::spectral::analyze;

fn main() {
    // Johnson scheme J(5, 2): three rational blocks with multiplicities
    // 1, 4, 5 and Frame number 900.
    let sch = generators::johnson(5, 2).unwrap();
    let data = analyze(&sch).unwrap();
    println!(
        "johnson(5, 2): center dimension {}, rational: {:?}",
        data.center_dim, data.rational
    );
    for b in &data.blocks {
        println!(
            "  degree {}, multiplicity {:2}, rank {:2}{}",
            b.degree,
            b.multiplicity,
            b.rank,
            if b.principal { "  (principal)" } else { "" },
        );
    }
    println!("  smallest non-principal multiplicity: {:?}", data.m_min());
    println!("  frame number: {}", data.frame);
    for p in [2u32, 3, 5, 7, 11] {
        println!("  semisimple mod {p}: {}", data.is_semisimple_mod(p));
    }

    // The exact idempotents are available as coefficient vectors over the
    // adjacency algebra basis.
    let exact = data.exact.as_ref().unwrap();
    println!("  idempotent coefficients:");
    for (b, coeffs) in data.blocks.iter().zip(exact) {
        let printable: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
        println!(
            "    multiplicity {}: [{}]",
            b.multiplicity,
            printable.join(", ")
        );
    }

    // The cyclic scheme on 5 points has irrational idempotents (its
    // characters involve fifth roots of unity).  The exact path proves
    // this, then the floating path recovers the block structure: five
    // rank-1 blocks, Frame number 5^5.
    let z5 = generators::from_group(&generators::cyclic_group_table(5)).unwrap();
    let data = analyze(&z5).unwrap();
    println!(
        "\nZ_5: rational: {:?}, frame number: {}",
        data.rational, data.frame
    );
    for b in &data.blocks {
        println!(
            "  degree {}, multiplicity {}, rank {}",
            b.degree, b.multiplicity, b.rank
        );
    }

    // A noncommutative example: the group scheme of S_3 splits rationally
    // into two linear blocks and one block of degree 2.
    let s3 = generators::from_group(&generators::symmetric_group_table(3)).unwrap();
    let data = analyze(&s3).unwrap();
    println!(
        "\nS_3: center dimension {}, rational: {:?}",
        data.center_dim, data.rational
    );
    for b in &data.blocks {
        println!(
            "  degree {}, multiplicity {}, rank {}",
            b.degree, b.multiplicity, b.rank
        );
    }
    println!("  frame number: {}", data.frame);
}
