//! End-to-end acceptance checks, one function per criterion.  The target
//! uses its own harness so that every run prints exactly one PASS/FAIL
//! line per criterion, in order, whatever the outcome.

use std::collections::BTreeSet;
use std::time::Instant;

use nalgebra::{Complex, DMatrix};
use num_bigint::BigUint;
use num_traits::Zero;

use ascheme::bounds::{
    check_min_rank_bound, check_rank_one_classification, check_scaling_relation_closure,
    check_semisimple_multiplicity_bound, Verdict,
};
use ascheme::generators;
use ascheme::minrank::{min_rank, SearchOptions};
use ascheme::ratmat::{rat, QMatrix};
use ascheme::scheme;
use ascheme::spectral::{analyze, reduce_idempotent};
use ascheme::{FqField, Scheme};

thread_local! {
    static LINE_PRINTED: std::cell::Cell<bool> = const { std::cell::Cell::new(false) };
}

fn conclude(criterion: u32, ok: bool, detail: &str) {
    println!(
        "criterion {criterion}: {} ({detail})",
        if ok { "PASS" } else { "FAIL" }
    );
    LINE_PRINTED.with(|flag| flag.set(true));
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn z_scheme(p: usize) -> Scheme {
    generators::from_group(&generators::cyclic_group_table(p)).unwrap()
}

fn criterion_1_tight_min_rank_bound_over_f2() {
    let sch = generators::cyclotomic(31, 5).unwrap();
    let f2 = FqField::new(2, 1).unwrap();
    let started = Instant::now();
    let report = check_min_rank_bound(&sch, &f2, &SearchOptions::default()).unwrap();
    let elapsed = started.elapsed();

    let search = min_rank(&sch, &f2, &SearchOptions::default()).unwrap();
    let ok = report.verdict == Verdict::Holds
        && report.computed["rkmin"] == 5
        && report.computed["bound"] == 31
        && report.computed["equality"] == true
        && search.exhaustive
        && search.candidates_examined <= 127
        && elapsed.as_secs_f64() < 1.0;
    conclude(
        1,
        ok,
        &format!(
            "rkmin {} bound {} equality {} candidates {} in {:?}",
            report.computed["rkmin"],
            report.computed["bound"],
            report.computed["equality"],
            search.candidates_examined,
            elapsed,
        ),
    );
}

fn criterion_2_tight_min_rank_bound_over_f5() {
    let sch = generators::cyclotomic(31, 3).unwrap();
    let f5 = FqField::new(5, 1).unwrap();
    let started = Instant::now();
    let report = check_min_rank_bound(&sch, &f5, &SearchOptions::default()).unwrap();
    let elapsed = started.elapsed();

    let ok = report.verdict == Verdict::Holds
        && report.computed["rkmin"] == 3
        && report.computed["bound"] == 31
        && report.computed["equality"] == true
        && report.computed["exhaustive"] == true
        && elapsed.as_secs() <= 600;
    conclude(
        2,
        ok,
        &format!(
            "rkmin {} bound {} equality {} in {:?}",
            report.computed["rkmin"],
            report.computed["bound"],
            report.computed["equality"],
            elapsed,
        ),
    );
}

fn criterion_3_scaling_closure_suite() {
    let corpus: Vec<(&str, Scheme)> = vec![
        ("cyclotomic(31,5)", generators::cyclotomic(31, 5).unwrap()),
        ("cyclotomic(31,3)", generators::cyclotomic(31, 3).unwrap()),
        ("johnson(5,2)", generators::johnson(5, 2).unwrap()),
        ("hamming(3,2)", generators::hamming(3, 2).unwrap()),
        ("Z_5", z_scheme(5)),
        ("complete(4)", generators::complete(4).unwrap()),
        ("complete(5)", generators::complete(5).unwrap()),
        ("complete(6)", generators::complete(6).unwrap()),
        ("complete(7)", generators::complete(7).unwrap()),
    ];
    let started = Instant::now();
    let mut combos = 0u32;
    let mut failures = Vec::new();
    for (name, sch) in &corpus {
        for q in [2u32, 3, 4, 5, 7] {
            let field = FqField::from_order(q).unwrap();
            let report = check_scaling_relation_closure(sch, Some(&field), 200, 0x5CEA17).unwrap();
            combos += 1;
            if report.verdict != Verdict::Holds {
                failures.push(format!("{name} over F_{q}: {:?}", report.verdict));
            }
        }
    }
    let elapsed = started.elapsed();
    let ok = failures.is_empty() && elapsed.as_secs_f64() < 30.0;
    conclude(
        3,
        ok,
        &format!("{combos} scheme/field combinations, 200 random tuples each, in {elapsed:?}; failures: {failures:?}"),
    );
}

fn criterion_4_rank_one_classification_both_ways() {
    // For each thin prime-order scheme, fields on both sides of the
    // divisibility condition n | q - 1.
    let cases: &[(usize, &[u32], &[u32])] = &[
        (3, &[4, 7], &[2, 5]),
        (5, &[11, 16], &[2, 3, 4, 7]),
        (7, &[8], &[2, 3, 4, 5]),
    ];
    let mut checked = 0u32;
    let mut failures = Vec::new();
    for &(p, with, without) in cases {
        let sch = z_scheme(p);
        for &q in with {
            let field = FqField::from_order(q).unwrap();
            let report =
                check_rank_one_classification(&sch, &field, &SearchOptions::default()).unwrap();
            checked += 1;
            if report.verdict != Verdict::Holds
                || report.computed["rkmin"] != 1
                || (p as u64) >= q as u64
            {
                failures.push(format!("Z_{p} over F_{q} (dividing side): {report:?}"));
            }
        }
        for &q in without {
            let field = FqField::from_order(q).unwrap();
            let report =
                check_rank_one_classification(&sch, &field, &SearchOptions::default()).unwrap();
            checked += 1;
            let rkmin = report.computed["rkmin"].as_u64().unwrap();
            if report.verdict != Verdict::Holds || rkmin <= 1 {
                failures.push(format!("Z_{p} over F_{q} (non-dividing side): {report:?}"));
            }
        }
    }
    conclude(
        4,
        failures.is_empty(),
        &format!("{checked} field/scheme pairs, both directions; failures: {failures:?}"),
    );
}

/// Eigenvalue multiplicities of an integer matrix over Q, found by rank
/// deficiency at each integer in a window.  Independent of the spectral
/// module: only rational elimination is used.
fn integer_eigenvalue_multiplicities(a: &QMatrix, window: i64) -> Vec<(i64, usize)> {
    let n = a.rows();
    let mut out = Vec::new();
    for e in -window..=window {
        let shifted = a.sub(&QMatrix::identity(n).scale(&rat(e)));
        let mult = n - shifted.rank();
        if mult > 0 {
            out.push((e, mult));
        }
    }
    out
}

fn criterion_5_spectral_integrity() {
    let mut problems = Vec::new();

    // Exact path on johnson(5, 2).
    let sch = generators::johnson(5, 2).unwrap();
    let data = analyze(&sch).unwrap();
    let mults: BTreeSet<usize> = data.blocks.iter().map(|b| b.multiplicity).collect();
    if mults != BTreeSet::from([1, 4, 5]) || data.m_min() != Some(4) {
        problems.push(format!("johnson multiplicities {mults:?}"));
    }
    if data.frame != BigUint::from(900u32) {
        problems.push(format!("johnson frame {}", data.frame));
    }

    // Idempotent identities, re-verified with plain rational arithmetic.
    let n = sch.n();
    let exact = data.exact.as_ref().unwrap();
    let mats: Vec<QMatrix> = exact
        .iter()
        .map(|coeffs| ascheme::ratmat::combine(&sch, coeffs))
        .collect();
    let mut sum = QMatrix::zero(n, n);
    for (i, e) in mats.iter().enumerate() {
        if e.mul(e) != *e {
            problems.push(format!("idempotency fails for block {i}"));
        }
        if e.rank() != data.blocks[i].rank {
            problems.push(format!("rank mismatch for block {i}"));
        }
        for other in mats.iter().skip(i + 1) {
            if !e.mul(other).is_zero() {
                problems.push(format!("orthogonality fails at block {i}"));
            }
        }
        sum = sum.add(e);
    }
    if sum != QMatrix::identity(n) {
        problems.push("idempotents do not sum to the identity".into());
    }

    // Independent oracle: eigenvalue multiplicities of the valency-6
    // adjacency matrix, by rank deficiency over Q.
    let a1 = QMatrix::from_fn(
        n,
        n,
        |x, y| {
            if sch.color(x, y) == 1 {
                rat(1)
            } else {
                rat(0)
            }
        },
    );
    let spectrum = integer_eigenvalue_multiplicities(&a1, 6);
    if spectrum != vec![(-2, 5), (1, 4), (6, 1)] {
        problems.push(format!("adjacency spectrum {spectrum:?}"));
    }

    // Floating path on Z_5: five rank-1 blocks, residuals within 1e-9.
    let z5 = z_scheme(5);
    let zdata = analyze(&z5).unwrap();
    if zdata.rational != Some(false)
        || zdata.blocks.len() != 5
        || !zdata.blocks.iter().all(|b| b.rank == 1)
        || zdata.frame != BigUint::from(3125u32)
    {
        problems.push(format!(
            "Z_5 blocks {:?} frame {}",
            zdata.blocks, zdata.frame
        ));
    }
    let approx = zdata.approx.as_ref().unwrap();
    let mut total = DMatrix::<Complex<f64>>::zeros(5, 5);
    for coeffs in approx {
        let e = DMatrix::<Complex<f64>>::from_fn(5, 5, |x, y| coeffs[z5.color(x, y) as usize]);
        let residual = (&e * &e - &e).camax();
        if residual > 1e-9 {
            problems.push(format!("floating idempotency residual {residual}"));
        }
        total += e;
    }
    let identity_residual = (total - DMatrix::<Complex<f64>>::identity(5, 5)).camax();
    if identity_residual > 1e-9 {
        problems.push(format!("floating sum residual {identity_residual}"));
    }

    // Frame number with large factors.
    let c315 = generators::cyclotomic(31, 5).unwrap();
    let cdata = analyze(&c315).unwrap();
    if cdata.frame != BigUint::from(31u32).pow(7) {
        problems.push(format!("cyclotomic frame {}", cdata.frame));
    }

    conclude(5, problems.is_empty(), &format!("problems: {problems:?}"));
}

fn criterion_6_reductions_at_coprime_primes() {
    let sch = generators::johnson(5, 2).unwrap();
    let data = analyze(&sch).unwrap();
    let exact = data.exact.as_ref().unwrap();
    let primes: Vec<u32> = (2..=50)
        .filter(|&p| ascheme::gf::is_prime(p as u64))
        .collect();
    let coprime: Vec<u32> = primes.iter().copied().filter(|&p| 900 % p != 0).collect();
    assert_eq!(coprime, vec![7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);

    let mut failures = Vec::new();
    for &p in &coprime {
        if !data.is_semisimple_mod(p) {
            failures.push(format!("frame test disagrees at {p}"));
            continue;
        }
        for (i, coeffs) in exact.iter().enumerate() {
            let denominator_coprime = coeffs
                .iter()
                .all(|c| (c.denom() % num_bigint::BigInt::from(p)) != num_bigint::BigInt::zero());
            if !denominator_coprime {
                failures.push(format!("denominator divisible by {p} in block {i}"));
                continue;
            }
            let field = FqField::new(p, 1).unwrap();
            let reduced = reduce_idempotent(&sch, &data, i, &field).unwrap();
            let expected = data.blocks[i].degree * data.blocks[i].multiplicity;
            if reduced.rank() != expected {
                failures.push(format!(
                    "rank over F_{p} of block {i} is {} not {expected}",
                    reduced.rank()
                ));
            }
        }
    }
    conclude(
        6,
        failures.is_empty(),
        &format!(
            "{} primes, 3 idempotents each; failures: {failures:?}",
            coprime.len()
        ),
    );
}

fn criterion_7_multiplicity_bound_and_realization() {
    let sch = generators::johnson(5, 2).unwrap();

    let at7 = check_semisimple_multiplicity_bound(&sch, 7, 1).unwrap();
    let at3 = check_semisimple_multiplicity_bound(&sch, 3, 1).unwrap();
    let f7 = FqField::new(7, 1).unwrap();
    let search = min_rank(&sch, &f7, &SearchOptions::default()).unwrap();

    let ok = at7.verdict == Verdict::Holds
        && at7.computed["bound"] == 400
        && at7.computed["m_min"] == 4
        && at3.verdict == Verdict::NotApplicable
        && search.rkmin <= 4
        && search.exhaustive
        && search.candidates_examined <= 343;
    conclude(
        7,
        ok,
        &format!(
            "p=7 verdict {:?} bound {}, p=3 verdict {:?}, rkmin {} over {} candidates",
            at7.verdict,
            at7.computed["bound"],
            at3.verdict,
            search.rkmin,
            search.candidates_examined,
        ),
    );
}

/// Minimum rank by brute force: enumerate every coefficient vector in
/// `F_q^s`, skip multiples of the all-one vector, and compute each rank by
/// a from-scratch Gaussian elimination written here, using only the
/// field's arithmetic tables.
fn naive_min_rank(sch: &Scheme, field: &FqField) -> usize {
    let n = sch.n();
    let s = sch.s();
    let q = field.q() as u128;
    let mut best = n;
    for index in 1..q.pow(s as u32) {
        let mut coeffs = vec![0u32; s];
        let mut t = index;
        for c in coeffs.iter_mut() {
            *c = (t % q) as u32;
            t /= q;
        }
        if coeffs.iter().all(|&c| c == coeffs[0]) {
            continue;
        }
        let mut rows: Vec<Vec<u32>> = (0..n)
            .map(|x| (0..n).map(|y| coeffs[sch.color(x, y) as usize]).collect())
            .collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = field.inv(rows[rank][col]);
            for c in col..n {
                rows[rank][c] = field.mul(rows[rank][c], inv);
            }
            for r in 0..n {
                if r != rank && rows[r][col] != 0 {
                    let factor = rows[r][col];
                    for c in col..n {
                        let scaled = field.mul(factor, rows[rank][c]);
                        rows[r][c] = field.sub(rows[r][c], scaled);
                    }
                }
            }
            rank += 1;
        }
        best = best.min(rank);
    }
    best
}

/// Primitivity by definition: enumerate all unions of colors containing
/// the diagonal and look for a nontrivial equivalence relation.
fn naive_is_primitive(sch: &Scheme) -> bool {
    let n = sch.n();
    let s = sch.s();
    assert!(s <= 12, "subset enumeration wants a small class count");
    let full: u32 = (1 << (s - 1)) - 1;
    for mask in 1..full {
        let mut indicator = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                let c = sch.color(x, y);
                indicator[x * n + y] = c == 0 || (mask >> (c - 1)) & 1 == 1;
            }
        }
        if scheme::is_equivalence_relation(n, &indicator) {
            return false;
        }
    }
    true
}

fn criterion_8_oracle_equivalence() {
    let corpus: Vec<(&str, Scheme)> = vec![
        ("complete(4)", generators::complete(4).unwrap()),
        ("complete(7)", generators::complete(7).unwrap()),
        ("johnson(5,2)", generators::johnson(5, 2).unwrap()),
        ("johnson(4,2)", generators::johnson(4, 2).unwrap()),
        ("hamming(3,2)", generators::hamming(3, 2).unwrap()),
        ("hamming(2,3)", generators::hamming(2, 3).unwrap()),
        ("Z_4", z_scheme(4)),
        ("Z_5", z_scheme(5)),
        (
            "S_3",
            generators::from_group(&generators::symmetric_group_table(3)).unwrap(),
        ),
        ("cyclotomic(13,4)", generators::cyclotomic(13, 4).unwrap()),
        ("cyclotomic(31,5)", generators::cyclotomic(31, 5).unwrap()),
        ("cyclotomic(31,3)", generators::cyclotomic(31, 3).unwrap()),
    ];

    let mut rank_pairs = 0u32;
    let mut primitivity_pairs = 0u32;
    let mut mismatches = Vec::new();
    for (name, sch) in &corpus {
        for q in [2u32, 3, 4, 5, 7, 8, 9] {
            if (q as u128).pow(sch.s() as u32) > 10_000 {
                continue;
            }
            let field = FqField::from_order(q).unwrap();
            let fast = min_rank(sch, &field, &SearchOptions::default()).unwrap();
            let slow = naive_min_rank(sch, &field);
            rank_pairs += 1;
            if !fast.exhaustive || fast.rkmin != slow {
                mismatches.push(format!(
                    "{name} over F_{q}: search {} naive {slow}",
                    fast.rkmin
                ));
            }
        }
        if sch.s() <= 12 {
            primitivity_pairs += 1;
            if sch.is_primitive().unwrap() != naive_is_primitive(sch) {
                mismatches.push(format!("{name}: primitivity oracle disagrees"));
            }
        }
    }
    conclude(
        8,
        mismatches.is_empty() && rank_pairs > 10 && primitivity_pairs == corpus.len() as u32,
        &format!(
            "{rank_pairs} rank comparisons, {primitivity_pairs} primitivity comparisons; mismatches: {mismatches:?}"
        ),
    );
}

fn main() {
    let criteria: &[(u32, fn())] = &[
        (1, criterion_1_tight_min_rank_bound_over_f2),
        (2, criterion_2_tight_min_rank_bound_over_f5),
        (3, criterion_3_scaling_closure_suite),
        (4, criterion_4_rank_one_classification_both_ways),
        (5, criterion_5_spectral_integrity),
        (6, criterion_6_reductions_at_coprime_primes),
        (7, criterion_7_multiplicity_bound_and_realization),
        (8, criterion_8_oracle_equivalence),
    ];
    let mut failures = 0;
    for &(number, run) in criteria {
        LINE_PRINTED.with(|flag| flag.set(false));
        if std::panic::catch_unwind(run).is_err() {
            failures += 1;
            if !LINE_PRINTED.with(|flag| flag.get()) {
                println!("criterion {number}: FAIL (panicked before reaching a verdict)");
            }
        }
    }
    if failures > 0 {
        eprintln!("{failures} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
