//! Minimum rank over the adjacency algebra of a scheme, excluding scalar
//! multiples of the all-ones matrix.
//!
//! Every matrix in the algebra over `F_q` is a combination `sum w_r A_r` of
//! the adjacency matrices, so it is determined by its coefficient vector
//! `w`.  Rank is invariant under scaling, so the search walks one
//! representative per projective class (first nonzero coefficient equal
//! to 1), skipping the class of the all-ones matrix.  Rows of each
//! candidate are materialized lazily and fed into an incremental
//! eliminator that aborts as soon as the best rank found so far is
//! unbeatable.

use serde::Serialize;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Mutex;
use thiserror::Error;

use crate::gf::{FieldRef, FqField, RowReducer};
use crate::scheme::Scheme;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MinRankError {
    #[error("the adjacency algebra of a {s}-class scheme has no matrix outside the span of the all-ones matrix")]
    DegenerateSearch { s: usize },
}

/// Knobs for [`min_rank`].
#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Cap on the number of projective classes visited, in enumeration
    /// order.  `None` enumerates the whole space.
    pub budget: Option<u64>,
    /// Worker threads; 1 keeps the reported witness deterministic.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: None,
            threads: 1,
        }
    }
}

/// Result of a minimum-rank search.
#[derive(Debug, Clone, Serialize)]
pub struct MinRankReport {
    /// The smallest rank seen.  Equal to the true minimum whenever
    /// `exhaustive` is set.
    pub rkmin: usize,
    /// Coefficient vector of a matrix attaining `rkmin`, first nonzero
    /// entry normalized to 1.
    pub witness: Vec<u32>,
    /// Position of the witness in the enumeration of projective classes.
    pub witness_index: u64,
    /// Number of candidate matrices actually eliminated.  The class of the
    /// all-ones matrix is never a candidate.
    pub candidates_examined: u64,
    /// Whether the result certifies the global minimum: either every class
    /// was visited or a rank-1 matrix was found, below which nothing lies.
    pub exhaustive: bool,
    pub field: FieldRef,
}

/// Enumeration order of projective classes: classes whose representative
/// has leading 1 in coefficient `l` form a block of size `q^(s-1-l)`,
/// blocks ordered by `l`, suffixes in base-`q` numeric order.
fn decode_class(index: u64, q: u64, s: usize, coeffs: &mut [u32]) {
    let mut rest = index;
    let mut lead = 0usize;
    loop {
        let block = q.saturating_pow((s - 1 - lead) as u32);
        if rest < block {
            break;
        }
        rest -= block;
        lead += 1;
    }
    coeffs[..lead].fill(0);
    coeffs[lead] = 1;
    for j in (lead + 1..s).rev() {
        coeffs[j] = (rest % q) as u32;
        rest /= q;
    }
}

/// Number of projective classes of nonzero coefficient vectors,
/// `(q^s - 1) / (q - 1)`.
pub fn class_count(q: u64, s: usize) -> u128 {
    let mut total: u128 = 0;
    for l in 0..s {
        total += (q as u128).saturating_pow((s - 1 - l) as u32);
    }
    total
}

struct SharedState {
    best: AtomicUsize,
    stop: AtomicBool,
    examined: AtomicUsize,
    // (rank, index, coefficients) of the best witness so far.
    witness: Mutex<(usize, u64, Vec<u32>)>,
}

/// Rank of the candidate with coefficients `coeffs`, computed by feeding
/// rows into `reducer` until the rank reaches `stop_at`; returns `stop_at`
/// if truncated.
fn bounded_candidate_rank(
    sch: &Scheme,
    coeffs: &[u32],
    reducer: &mut RowReducer,
    scratch: &mut [u32],
    stop_at: usize,
) -> usize {
    reducer.reset();
    if stop_at == 0 {
        return 0;
    }
    for x in 0..sch.n() {
        for (cell, &color) in scratch.iter_mut().zip(sch.color_row(x)) {
            *cell = coeffs[color as usize];
        }
        reducer.offer(scratch);
        if reducer.rank() >= stop_at {
            return stop_at;
        }
    }
    reducer.rank()
}

fn run_range(sch: &Scheme, field: &FqField, range: std::ops::Range<u64>, state: &SharedState) {
    let q = field.q() as u64;
    let s = sch.s();
    let ones = vec![1u32; s];
    let mut coeffs = vec![0u32; s];
    let mut scratch = vec![0u32; sch.n()];
    let mut reducer = RowReducer::new(field.clone(), sch.n());
    for index in range {
        if state.stop.load(Ordering::Relaxed) {
            return;
        }
        decode_class(index, q, s, &mut coeffs);
        if coeffs == ones {
            continue;
        }
        let stop_at = state.best.load(Ordering::Relaxed);
        let rank = bounded_candidate_rank(sch, &coeffs, &mut reducer, &mut scratch, stop_at);
        state.examined.fetch_add(1, Ordering::Relaxed);
        if rank < stop_at {
            let mut guard = state.witness.lock().unwrap();
            if rank < guard.0 {
                *guard = (rank, index, coeffs.clone());
                state.best.fetch_min(rank, Ordering::Relaxed);
                if rank <= 1 {
                    state.stop.store(true, Ordering::Relaxed);
                    return;
                }
            }
        }
    }
}

/// Minimum rank over nonzero matrices of the adjacency algebra of `sch`
/// over `field` that are not scalar multiples of the all-ones matrix.
///
/// The minimum and the `exhaustive` flag do not depend on the thread
/// count; with `threads == 1` the witness is the first representative in
/// enumeration order attaining each successive improvement, so repeated
/// runs agree byte for byte.
pub fn min_rank(
    sch: &Scheme,
    field: &FqField,
    opts: &SearchOptions,
) -> Result<MinRankReport, MinRankError> {
    let s = sch.s();
    if s < 2 {
        return Err(MinRankError::DegenerateSearch { s });
    }
    let total = class_count(field.q() as u64, s);
    let clamped = total.min(u64::MAX as u128) as u64;
    let limit = opts.budget.map_or(clamped, |b| b.min(clamped));

    let state = SharedState {
        best: AtomicUsize::new(sch.n() + 1),
        stop: AtomicBool::new(false),
        examined: AtomicUsize::new(0),
        witness: Mutex::new((sch.n() + 1, u64::MAX, Vec::new())),
    };

    let threads = opts.threads.max(1);
    if threads == 1 {
        run_range(sch, field, 0..limit, &state);
    } else {
        let chunk = 4096u64;
        let chunks: Vec<std::ops::Range<u64>> = (0..limit.div_ceil(chunk))
            .map(|c| c * chunk..((c + 1) * chunk).min(limit))
            .collect();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool construction");
        pool.install(|| {
            rayon::scope(|scope| {
                for range in chunks {
                    let state = &state;
                    scope.spawn(move |_| run_range(sch, field, range, state));
                }
            });
        });
    }

    let (rank, index, coeffs) = state.witness.into_inner().unwrap();
    debug_assert!(rank <= sch.n(), "every candidate has rank at most n");
    let stopped_early = state.stop.load(Ordering::Relaxed);
    Ok(MinRankReport {
        rkmin: rank,
        witness: coeffs,
        witness_index: index,
        candidates_examined: state.examined.load(Ordering::Relaxed) as u64,
        exhaustive: (limit as u128 == total && !stopped_early) || rank == 1,
        field: field.descriptor(),
    })
}
