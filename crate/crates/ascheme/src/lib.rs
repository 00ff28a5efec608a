//! Exact computation with association schemes.
//!
//! An association scheme is a partition of the pairs `X × X` of a finite point
//! set into colored relations satisfying strong regularity axioms: color 0 is
//! the diagonal, the color classes are closed under transposition, and the
//! number of `z` with `color(x, z) = r` and `color(z, y) = u` depends only on
//! `color(x, y)`.  The 0/1 matrices of the colors span the adjacency algebra,
//! and most questions this crate answers are linear algebra inside that
//! algebra, carried out exactly.
//!
//! The crate provides:
//!
//! * [`scheme`]: the validated [`Scheme`] type, structural queries
//!   (commutativity, primitivity, thinness), decomposition of relations into
//!   unions of colors, and a plain-text file format.
//! * [`generators`]: cyclotomic schemes, schemes of finite groups, Johnson
//!   and Hamming schemes, and complete-graph schemes.
//! * [`gf`]: arithmetic in `F_q` for prime powers `q ≤ 2^20` and dense
//!   matrices over `F_q` with rank computation.
//! * [`minrank`]: exhaustive search for the minimum rank over the adjacency
//!   algebra modulo the line spanned by the all-one matrix.
//! * [`ratmat`]: exact dense linear algebra over the rationals.
//! * [`spectral`]: central primitive idempotents of the adjacency algebra
//!   over `Q` (exact) or `C` (floating), representation parameters, Frame
//!   numbers, and reduction of idempotents modulo a prime.
//! * [`bounds`]: column-scaling relations of algebra elements and the
//!   order-bound checks exposed by the `check` subcommand of the CLI.
//! * [`cli`]: the implementation of the `ascheme` binary.
//!
//! # Examples
//!
//! Runnable walkthroughs live in the crate's `examples/` directory, one per
//! capability:
//!
//! * `cargo run --release --example generate_schemes` builds every generator
//!   family and prints the schemes in the text format.
//! * `cargo run --release --example scheme_queries` validates a scheme and
//!   runs the structural queries.
//! * `cargo run --release --example min_rank_search` runs the projective
//!   min-rank search on a 31-point scheme where the order bound is tight.
//! * `cargo run --release --example spectral_analysis` computes idempotents,
//!   representation parameters, and Frame numbers, exactly and in floating
//!   mode.
//! * `cargo run --release --example bound_checks` evaluates every bound check
//!   on a small corpus and prints the reports.
//! * `cargo run --release --example reduce_idempotents` reduces exact
//!   idempotents modulo primes and inspects their ranks.
//!
//! The same functionality is reachable through the thin `ascheme` binary
//! (`generate`, `info`, `rkmin`, `check`, `corpus`).

pub mod bounds;
pub mod cli;
pub mod generators;
pub mod gf;
pub mod minrank;
pub mod ratmat;
pub mod scheme;
pub mod spectral;

pub use gf::{FqField, FqMatrix};
pub use scheme::{RelationSet, Scheme, SchemeError};
