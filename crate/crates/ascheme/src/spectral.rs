//! Central primitive idempotents of the adjacency algebra and the
//! invariants derived from them.
//!
//! Every element of the algebra is a coefficient vector of length `s`, and
//! left multiplication by `Z` acts on coefficient vectors through the
//! regular representation `L_Z`, an `s x s` integer matrix with the same
//! eigenvalues as the `n x n` matrix `Z` itself.  All spectral work
//! therefore happens in `s` dimensions.
//!
//! Two paths compute the idempotents.  The exact path refines the
//! coefficient space into common eigenspaces of the center using integer
//! eigenvalues only; it either produces exact rational idempotents or
//! proves that some central character is irrational.  The floating path
//! takes a random integer combination of the center basis, clusters its
//! complex eigenvalues, builds Lagrange projectors, and certifies the
//! results numerically.  Degrees, multiplicities, and the Frame number are
//! integers in the end, so both paths report identical invariants.

use nalgebra::{Complex, DMatrix};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::gf::{FqField, FqMatrix};
use crate::ratmat::{rat, QMatrix, QReducer};
use crate::scheme::Scheme;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectralError {
    #[error("exact eigenvalue computation is out of reach: {0}")]
    ExactPathUnavailable(String),
    #[error("floating-point spectral analysis failed to certify: {0}")]
    IllConditioned(String),
    #[error("a representation parameter did not come out as an integer: {0}")]
    NonIntegerParameter(String),
    #[error("the Frame quotient is not an integer: {0}")]
    NonIntegral(String),
    #[error("the scheme has irrational central idempotents")]
    NotRational,
    #[error("the adjacency algebra is not semisimple modulo {p}")]
    SemisimplicityViolated { p: u32 },
    #[error("an idempotent coefficient has denominator divisible by {p}")]
    DenominatorDivisible { p: u32 },
}

/// One Wedderburn block of the complex adjacency algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    /// Matrix size of the block (1 for commutative schemes).
    pub degree: usize,
    /// Multiplicity of the block in the standard module.
    pub multiplicity: usize,
    /// Rank of the block idempotent as an `n x n` matrix; equals
    /// `degree * multiplicity`.
    pub rank: usize,
    /// Whether this is the block of the all-ones matrix.
    pub principal: bool,
}

/// Spectral invariants of a scheme.  `blocks[0]` is always the principal
/// block; the others follow in a deterministic order.
#[derive(Debug, Clone)]
pub struct SpectralData {
    pub center_dim: usize,
    /// `Some(true)` or `Some(false)` when the exact path settled
    /// rationality; `None` when it was out of reach and only floating
    /// results exist.
    pub rational: Option<bool>,
    pub blocks: Vec<Block>,
    /// Exact idempotent coefficient vectors, parallel to `blocks`; present
    /// exactly when `rational == Some(true)`.
    pub exact: Option<Vec<Vec<BigRational>>>,
    /// Floating idempotent coefficient vectors, parallel to `blocks`;
    /// present when the floating path ran.
    pub approx: Option<Vec<Vec<Complex<f64>>>>,
    pub frame: BigUint,
}

impl SpectralData {
    /// Smallest multiplicity among non-principal blocks.
    pub fn m_min(&self) -> Option<usize> {
        self.blocks
            .iter()
            .filter(|b| !b.principal)
            .map(|b| b.multiplicity)
            .min()
    }

    /// Whether the adjacency algebra stays semisimple modulo `p`, by the
    /// Frame criterion.
    pub fn is_semisimple_mod(&self, p: u32) -> bool {
        &self.frame % BigUint::from(p) != BigUint::zero()
    }
}

/// Polynomials over the rationals, as coefficient vectors in ascending
/// degree with a nonzero leading coefficient.
mod qpoly {
    use super::*;

    pub fn trim(mut c: Vec<BigRational>) -> Vec<BigRational> {
        while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        c
    }

    pub fn monic(c: Vec<BigRational>) -> Vec<BigRational> {
        let c = trim(c);
        let lead = c.last().cloned().unwrap_or_else(BigRational::zero);
        if lead.is_zero() || lead.is_one() {
            return c;
        }
        c.into_iter().map(|v| v / &lead).collect()
    }

    pub fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        trim(out)
    }

    /// Remainder of `a` modulo `b`.
    pub fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let b = trim(b.to_vec());
        assert!(
            b.iter().any(|v| !v.is_zero()),
            "division by the zero polynomial"
        );
        let mut r = trim(a.to_vec());
        let lead = b.last().unwrap().clone();
        while r.len() >= b.len() && r.iter().any(|v| !v.is_zero()) {
            let shift = r.len() - b.len();
            let factor = r.last().unwrap() / &lead;
            for (i, bv) in b.iter().enumerate() {
                let v = &r[shift + i] - &factor * bv;
                r[shift + i] = v;
            }
            r = trim(r);
            if r.len() < b.len() {
                break;
            }
        }
        r
    }

    /// Quotient of `a` by `b` when the division is exact.
    pub fn div_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let b = trim(b.to_vec());
        let mut r = trim(a.to_vec());
        let lead = b.last().unwrap().clone();
        let mut q = vec![BigRational::zero(); r.len().saturating_sub(b.len()) + 1];
        while r.len() >= b.len() && r.iter().any(|v| !v.is_zero()) {
            let shift = r.len() - b.len();
            let factor = r.last().unwrap() / &lead;
            q[shift] = factor.clone();
            for (i, bv) in b.iter().enumerate() {
                let v = &r[shift + i] - &factor * bv;
                r[shift + i] = v;
            }
            r = trim(r);
        }
        assert!(r.iter().all(Zero::is_zero), "division was not exact");
        trim(q)
    }

    pub fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut x = monic(a.to_vec());
        let mut y = monic(b.to_vec());
        while y.iter().any(|v| !v.is_zero()) {
            let r = monic(rem(&x, &y));
            x = y;
            y = r;
        }
        monic(x)
    }

    pub fn lcm(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let g = gcd(a, b);
        monic(div_exact(&mul(a, b), &g))
    }

    /// Coefficients cleared to a primitive integer vector.
    pub fn to_integer(c: &[BigRational]) -> Vec<BigInt> {
        let mut scale = BigInt::one();
        for v in c {
            let den = v.denom();
            let g = num_integer::Integer::gcd(&scale, den);
            scale = scale / g * den;
        }
        c.iter()
            .map(|v| (v * BigRational::from_integer(scale.clone())).to_integer())
            .collect()
    }

    pub fn eval_int(c: &[BigInt], x: i64) -> BigInt {
        let x = BigInt::from(x);
        let mut acc = BigInt::zero();
        for coeff in c.iter().rev() {
            acc = acc * &x + coeff;
        }
        acc
    }
}

fn unit_vector(s: usize, j: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); s];
    v[j] = BigRational::one();
    v
}

/// An integer basis of the center of the adjacency algebra, as coefficient
/// vectors.  For a commutative scheme this is the standard basis.
pub fn center_basis(sch: &Scheme) -> Result<Vec<Vec<BigInt>>, SpectralError> {
    let s = sch.s();
    if sch.is_commutative() {
        return Ok((0..s)
            .map(|j| {
                let mut v = vec![BigInt::zero(); s];
                v[j] = BigInt::one();
                v
            })
            .collect());
    }
    if s > 64 {
        return Err(SpectralError::ExactPathUnavailable(format!(
            "center of a noncommutative algebra with {s} classes"
        )));
    }
    // Z = sum z_u A_u is central iff it commutes with every A_r, giving one
    // linear condition per (r, t) pair.  Most conditions are redundant, so
    // collect an independent subset before solving.
    let mut reducer = QReducer::new(s);
    let mut independent = Vec::new();
    for r in 0..s {
        for t in 0..s {
            let row: Vec<BigRational> = (0..s)
                .map(|u| rat(sch.intersection(u, r, t) as i64 - sch.intersection(r, u, t) as i64))
                .collect();
            if row.iter().any(|v| !v.is_zero()) && reducer.offer(row.clone(), Vec::new()).is_none()
            {
                independent.push(row);
            }
        }
    }
    if independent.is_empty() {
        independent.push(vec![BigRational::zero(); s]);
    }
    let kernel = QMatrix::from_rows(independent).kernel_basis();
    Ok(kernel
        .iter()
        .map(|v| {
            let mut ints = qpoly::to_integer(v);
            // Normalize the sign so the first nonzero entry is positive.
            if ints
                .iter()
                .find(|x| !x.is_zero())
                .is_some_and(Signed::is_negative)
            {
                for x in &mut ints {
                    *x = -x.clone();
                }
            }
            let content = ints
                .iter()
                .fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
            if !content.is_zero() && !content.is_one() {
                for x in &mut ints {
                    *x = x.clone() / &content;
                }
            }
            ints
        })
        .collect())
}

/// The regular representation of the element with coefficients `z`:
/// `(L_Z)[t][u] = sum_r z_r c_{r,u}^t`.
fn regular_rep(sch: &Scheme, z: &[BigInt]) -> QMatrix {
    let s = sch.s();
    QMatrix::from_fn(s, s, |t, u| {
        let mut acc = BigInt::zero();
        for (r, zr) in z.iter().enumerate() {
            if !zr.is_zero() {
                acc += zr * BigInt::from(sch.intersection(r, u, t));
            }
        }
        BigRational::from_integer(acc)
    })
}

/// `p(L)` applied to `v` by Horner's rule.
fn apply_poly(l: &QMatrix, p: &[BigRational], v: &[BigRational]) -> Vec<BigRational> {
    let mut acc = vec![BigRational::zero(); v.len()];
    for c in p.iter().rev() {
        acc = l.mul_vec(&acc);
        if !c.is_zero() {
            for (a, vi) in acc.iter_mut().zip(v) {
                *a += c * vi;
            }
        }
    }
    acc
}

/// Minimal polynomial of `l`, monic in ascending coefficient order.
fn min_poly(l: &QMatrix) -> Vec<BigRational> {
    let s = l.rows();
    let mut min = vec![BigRational::one()];
    for j in 0..s {
        let e = unit_vector(s, j);
        if apply_poly(l, &min, &e).iter().all(Zero::is_zero) {
            continue;
        }
        // Annihilator polynomial of e under l, via the Krylov sequence.
        let mut reducer = QReducer::new(s);
        let mut v = e;
        let mut local = Vec::new();
        for step in 0..=s {
            let mut tag = vec![BigRational::zero(); s + 1];
            tag[step] = BigRational::one();
            if let Some(dep) = reducer.offer(v.clone(), tag) {
                local = qpoly::monic(dep[..=step].to_vec());
                break;
            }
            v = l.mul_vec(&v);
        }
        assert!(
            !local.is_empty(),
            "a Krylov sequence on an s-space must close within s steps"
        );
        min = qpoly::lcm(&min, &local);
        if min.len() == s + 1 {
            break;
        }
    }
    min
}

/// Integer roots of the minimal polynomial of `l`, scanned over the range
/// given by the induced 1-norm bound on its eigenvalues.
fn integer_eigenvalues(l: &QMatrix, poly: &[BigRational]) -> Result<Vec<i64>, SpectralError> {
    let s = l.rows();
    let mut bound = BigRational::zero();
    for u in 0..s {
        let col_sum: BigRational = (0..s).map(|t| l.get(t, u).abs()).sum();
        if col_sum > bound {
            bound = col_sum;
        }
    }
    let bound = bound.ceil().to_integer();
    let limit = BigInt::from(200_000);
    if bound > limit {
        return Err(SpectralError::ExactPathUnavailable(format!(
            "eigenvalue scan range {bound} is too wide"
        )));
    }
    let b = bound.to_i64().unwrap();
    let ints = qpoly::to_integer(poly);
    Ok((-b..=b)
        .filter(|&x| qpoly::eval_int(&ints, x).is_zero())
        .collect())
}

enum ExactOutcome {
    /// Coefficient vectors of the central primitive idempotents, paired
    /// with the dimension of the block each one generates.
    Rational(Vec<(Vec<BigRational>, usize)>),
    /// Some central character is provably irrational.
    Irrational,
}

/// Columns of `basis` mapped through `l`, minus `lambda` times themselves.
fn shifted_image(l: &QMatrix, basis: &QMatrix, lambda: i64) -> QMatrix {
    let lam = rat(lambda);
    let mut out = QMatrix::zero(basis.rows(), basis.cols());
    for c in 0..basis.cols() {
        let col: Vec<BigRational> = (0..basis.rows()).map(|r| basis.get(r, c).clone()).collect();
        let image = l.mul_vec(&col);
        for r in 0..basis.rows() {
            out.set(r, c, &image[r] - &lam * &col[r]);
        }
    }
    out
}

fn exact_idempotents(sch: &Scheme, center: &[Vec<BigInt>]) -> Result<ExactOutcome, SpectralError> {
    let s = sch.s();
    let mut subspaces = vec![QMatrix::identity(s)];
    for z in center {
        let l = regular_rep(sch, z);
        let poly = min_poly(&l);
        if poly.len() == 2 {
            // Scalar action; nothing to split.
            continue;
        }
        let roots = integer_eigenvalues(&l, &poly)?;
        let mut refined = Vec::new();
        for basis in &subspaces {
            if basis.cols() == 1 {
                refined.push(basis.clone());
                continue;
            }
            let mut covered = 0;
            let mut parts = Vec::new();
            for &lambda in &roots {
                let kernel = shifted_image(&l, basis, lambda).kernel_basis();
                if kernel.is_empty() {
                    continue;
                }
                covered += kernel.len();
                let part = QMatrix::from_fn(s, kernel.len(), |r, c| {
                    (0..basis.cols())
                        .map(|m| basis.get(r, m) * &kernel[c][m])
                        .sum()
                });
                parts.push(part);
            }
            if covered < basis.cols() {
                // The remaining eigenvalues are irrational: every integer
                // candidate inside the eigenvalue bound was tried.
                return Ok(ExactOutcome::Irrational);
            }
            refined.extend(parts);
        }
        subspaces = refined;
    }
    debug_assert_eq!(
        subspaces.len(),
        center.len(),
        "blocks correspond to center characters"
    );

    // The identity decomposes as the sum of the block identities, which are
    // exactly the central primitive idempotents.
    let mut u = QMatrix::zero(s, s);
    let mut owner = Vec::with_capacity(s);
    let mut col = 0;
    for (j, basis) in subspaces.iter().enumerate() {
        for c in 0..basis.cols() {
            for r in 0..s {
                u.set(r, col, basis.get(r, c).clone());
            }
            owner.push(j);
            col += 1;
        }
    }
    assert_eq!(col, s, "block dimensions add up to the algebra dimension");
    let inv = u
        .inverse()
        .expect("a direct sum decomposition gives an invertible change of basis");
    let x = inv.mul_vec(&unit_vector(s, 0));
    let mut coeffs = vec![vec![BigRational::zero(); s]; subspaces.len()];
    for (pos, &j) in owner.iter().enumerate() {
        if x[pos].is_zero() {
            continue;
        }
        for r in 0..s {
            let v = &coeffs[j][r] + u.get(r, pos) * &x[pos];
            coeffs[j][r] = v;
        }
    }
    let paired = coeffs
        .into_iter()
        .zip(subspaces.iter().map(QMatrix::cols))
        .collect();
    Ok(ExactOutcome::Rational(paired))
}

/// Sparse structure constants: for each `(r, u)`, the nonzero `(t, c_{r,u}^t)`.
struct StructureConstants {
    s: usize,
    triples: Vec<Vec<(u16, u32)>>,
}

impl StructureConstants {
    fn new(sch: &Scheme) -> Self {
        let s = sch.s();
        let mut triples = Vec::with_capacity(s * s);
        for r in 0..s {
            for u in 0..s {
                let list: Vec<(u16, u32)> = (0..s)
                    .filter_map(|t| {
                        let c = sch.intersection(r, u, t);
                        (c != 0).then_some((t as u16, c))
                    })
                    .collect();
                triples.push(list);
            }
        }
        StructureConstants { s, triples }
    }

    fn product_rational(&self, w: &[BigRational], v: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.s];
        for (r, wr) in w.iter().enumerate() {
            if wr.is_zero() {
                continue;
            }
            for (u, vu) in v.iter().enumerate() {
                if vu.is_zero() {
                    continue;
                }
                let factor = wr * vu;
                for &(t, c) in &self.triples[r * self.s + u] {
                    out[t as usize] += &factor * rat(c as i64);
                }
            }
        }
        out
    }

    fn product_complex(&self, w: &[Complex<f64>], v: &[Complex<f64>]) -> Vec<Complex<f64>> {
        let mut out = vec![Complex::new(0.0, 0.0); self.s];
        for (r, wr) in w.iter().enumerate() {
            if wr.norm_sqr() == 0.0 {
                continue;
            }
            for (u, vu) in v.iter().enumerate() {
                if vu.norm_sqr() == 0.0 {
                    continue;
                }
                let factor = wr * vu;
                for &(t, c) in &self.triples[r * self.s + u] {
                    out[t as usize] += factor * (c as f64);
                }
            }
        }
        out
    }
}

fn verify_exact(sch: &Scheme, entries: &[(Vec<BigRational>, usize)]) {
    let s = sch.s();
    let sc = StructureConstants::new(sch);
    let mut total = vec![BigRational::zero(); s];
    for (c, _) in entries {
        let square = sc.product_rational(c, c);
        assert_eq!(&square, c, "block identities are idempotent");
        for (t, v) in total.iter_mut().zip(c) {
            *t += v;
        }
    }
    assert_eq!(
        total,
        unit_vector(s, 0),
        "block identities sum to the identity"
    );
    for pair in entries.windows(2).take(8) {
        let cross = sc.product_rational(&pair[0].0, &pair[1].0);
        assert!(
            cross.iter().all(Zero::is_zero),
            "distinct block identities are orthogonal"
        );
    }
}

/// Degree, multiplicity, and rank of the block with idempotent coefficient
/// `pi_0` at the identity and dimension `dim` inside the algebra.
fn block_params(
    n: usize,
    pi_0: &BigRational,
    dim: usize,
    principal: bool,
) -> Result<Block, SpectralError> {
    let rank_rat = pi_0 * rat(n as i64);
    if !rank_rat.is_integer() || rank_rat <= BigRational::zero() {
        return Err(SpectralError::NonIntegerParameter(format!(
            "idempotent trace {rank_rat} is not a positive integer"
        )));
    }
    let rank = rank_rat.to_integer().to_usize().ok_or_else(|| {
        SpectralError::NonIntegerParameter("idempotent trace exceeds the point count".into())
    })?;
    let degree = (dim as f64).sqrt().round() as usize;
    if degree * degree != dim {
        return Err(SpectralError::NonIntegerParameter(format!(
            "block dimension {dim} is not a perfect square"
        )));
    }
    if rank % degree != 0 {
        return Err(SpectralError::NonIntegerParameter(format!(
            "rank {rank} is not divisible by degree {degree}"
        )));
    }
    Ok(Block {
        degree,
        multiplicity: rank / degree,
        rank,
        principal,
    })
}

fn is_principal_exact(c: &[BigRational], n: usize) -> bool {
    let inv_n = BigRational::new(BigInt::one(), BigInt::from(n));
    c.iter().all(|v| v == &inv_n)
}

/// The Frame number `n^s * prod(valencies) / prod(multiplicity^(degree^2))`
/// over non-principal blocks.
fn frame_number(sch: &Scheme, blocks: &[Block]) -> Result<BigUint, SpectralError> {
    let mut numerator = BigUint::from(sch.n()).pow(sch.s() as u32);
    for &d in sch.valencies() {
        numerator *= BigUint::from(d);
    }
    let mut denominator = BigUint::one();
    for b in blocks.iter().filter(|b| !b.principal) {
        denominator *= BigUint::from(b.multiplicity).pow((b.degree * b.degree) as u32);
    }
    if &numerator % &denominator != BigUint::zero() {
        return Err(SpectralError::NonIntegral(format!(
            "{numerator} / {denominator}"
        )));
    }
    Ok(numerator / denominator)
}

const FLOAT_TOL: f64 = 1e-9;
const CLUSTER_TOL: f64 = 1e-6;

/// One full floating attempt.  Any failure here, including integrality
/// checks on the extracted parameters, is a conditioning artifact (the true
/// values are integers), so the caller retries with a fresh combination.
fn float_idempotents_once(
    sch: &Scheme,
    center: &[Vec<BigInt>],
    sc: &StructureConstants,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<Block>, Vec<Vec<Complex<f64>>>), String> {
    let s = sch.s();
    let k = center.len();
    // A random integer combination of the center basis; distinct blocks
    // have distinct center characters, so a random element separates them
    // with overwhelming probability.
    let w: Vec<BigInt> = if k == 1 {
        center[0].clone()
    } else {
        let mut acc = vec![BigInt::zero(); s];
        for z in center {
            let t = rng.gen_range(-8i64..=8);
            for (a, zi) in acc.iter_mut().zip(z) {
                *a += zi * BigInt::from(t);
            }
        }
        acc
    };
    let l_rat = regular_rep(sch, &w);
    let l = DMatrix::<f64>::from_fn(s, s, |t, u| l_rat.get(t, u).to_f64().unwrap());
    let eigen = l.clone().complex_eigenvalues();
    let scale = eigen.iter().map(|e| e.norm()).fold(1.0, f64::max);

    // Greedy clustering.
    let mut assigned = vec![false; s];
    let mut clusters: Vec<(Complex<f64>, usize)> = Vec::new();
    for i in 0..s {
        if assigned[i] {
            continue;
        }
        let mut members = vec![i];
        for j in i + 1..s {
            if !assigned[j] && (eigen[j] - eigen[i]).norm() <= CLUSTER_TOL * scale {
                assigned[j] = true;
                members.push(j);
            }
        }
        let mean = members.iter().map(|&m| eigen[m]).sum::<Complex<f64>>()
            / Complex::new(members.len() as f64, 0.0);
        clusters.push((mean, members.len()));
    }
    if clusters.len() != k {
        return Err(format!(
            "expected {k} eigenvalue clusters, found {}",
            clusters.len()
        ));
    }
    clusters.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .expect("finite eigenvalues")
    });

    // Lagrange projectors evaluated on the regular representation, applied
    // to the identity's coefficient vector.
    let lf = |v: &[Complex<f64>]| -> Vec<Complex<f64>> {
        (0..s)
            .map(|t| (0..s).map(|u| l[(t, u)] * v[u]).sum())
            .collect()
    };
    let mut coeffs = Vec::with_capacity(k);
    let mut dims = Vec::with_capacity(k);
    for (j, &(lambda_j, dim)) in clusters.iter().enumerate() {
        let mut v: Vec<Complex<f64>> = vec![Complex::new(0.0, 0.0); s];
        v[0] = Complex::new(1.0, 0.0);
        for (i, &(lambda_i, _)) in clusters.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = lambda_j - lambda_i;
            if denom.norm() < CLUSTER_TOL * scale {
                return Err("cluster representatives are too close".into());
            }
            let image = lf(&v);
            for (vt, im) in v.iter_mut().zip(image) {
                *vt = (im - lambda_i * *vt) / denom;
            }
        }
        coeffs.push(v);
        dims.push(dim);
    }

    // Certification in the coefficient space.
    let mut total = vec![Complex::new(0.0, 0.0); s];
    for c in &coeffs {
        let square = sc.product_complex(c, c);
        let residual: f64 = square.iter().zip(c).map(|(a, b)| (a - b).norm()).sum();
        if residual > FLOAT_TOL * s as f64 {
            return Err(format!("idempotency residual {residual:.3e}"));
        }
        for (t, v) in total.iter_mut().zip(c) {
            *t += v;
        }
    }
    total[0] -= Complex::new(1.0, 0.0);
    let sum_residual: f64 = total.iter().map(|v| v.norm()).sum();
    if sum_residual > FLOAT_TOL * s as f64 {
        return Err(format!("partition-of-identity residual {sum_residual:.3e}"));
    }
    for i in 0..coeffs.len().min(4) {
        for j in i + 1..coeffs.len().min(4) {
            let cross = sc.product_complex(&coeffs[i], &coeffs[j]);
            let residual: f64 = cross.iter().map(|v| v.norm()).sum();
            if residual > FLOAT_TOL * s as f64 {
                return Err(format!("orthogonality residual {residual:.3e}"));
            }
        }
    }

    // Parameter extraction, with integrality as part of certification.
    let n = sch.n();
    let mut entries: Vec<(Block, Vec<Complex<f64>>)> = Vec::with_capacity(coeffs.len());
    for (c, dim) in coeffs.into_iter().zip(dims) {
        if (c[0].im * n as f64).abs() > 1e-6 {
            return Err(format!(
                "idempotent trace has imaginary part {:.3e}",
                c[0].im * n as f64
            ));
        }
        let rank_f = c[0].re * n as f64;
        let rank = rank_f.round();
        if (rank_f - rank).abs() > 1e-6 * (1.0 + rank_f.abs()) || rank < 1.0 {
            return Err(format!("idempotent trace came out as {rank_f}"));
        }
        let rank = rank as usize;
        let degree = (dim as f64).sqrt().round() as usize;
        if degree * degree != dim {
            return Err(format!("block dimension {dim} is not a perfect square"));
        }
        if rank % degree != 0 {
            return Err(format!("rank {rank} is not divisible by degree {degree}"));
        }
        let principal = c
            .iter()
            .all(|v| (v - Complex::new(1.0 / n as f64, 0.0)).norm() < 1e-6);
        entries.push((
            Block {
                degree,
                multiplicity: rank / degree,
                rank,
                principal,
            },
            c,
        ));
    }
    entries.sort_by(|a, b| {
        let key = |e: &(Block, Vec<Complex<f64>>)| {
            let quantized: Vec<(i64, i64)> =
                e.1.iter()
                    .map(|v| ((v.re * 1e6).round() as i64, (v.im * 1e6).round() as i64))
                    .collect();
            (!e.0.principal, e.0.rank, e.0.degree, quantized)
        };
        key(a).cmp(&key(b))
    });
    let (blocks, coeffs): (Vec<Block>, Vec<Vec<Complex<f64>>>) = entries.into_iter().unzip();
    if let Err(e) = check_block_sums(sch, &blocks) {
        return Err(e.to_string());
    }
    Ok((blocks, coeffs))
}

/// Default seed for the floating path; [`analyze_seeded`] accepts others.
pub const DEFAULT_SEED: u64 = 0x5CEA17;

pub fn analyze(sch: &Scheme) -> Result<SpectralData, SpectralError> {
    analyze_seeded(sch, DEFAULT_SEED)
}

pub fn analyze_seeded(sch: &Scheme, seed: u64) -> Result<SpectralData, SpectralError> {
    let center = center_basis(sch)?;
    let exact = match exact_idempotents(sch, &center) {
        Ok(outcome) => Some(outcome),
        Err(SpectralError::ExactPathUnavailable(_)) => None,
        Err(e) => return Err(e),
    };
    match exact {
        Some(ExactOutcome::Rational(paired)) => {
            verify_exact(sch, &paired);
            build_exact_data(sch, center.len(), paired)
        }
        Some(ExactOutcome::Irrational) => build_float_data(sch, &center, seed, Some(false)),
        None => build_float_data(sch, &center, seed, None),
    }
}

fn build_exact_data(
    sch: &Scheme,
    center_dim: usize,
    paired: Vec<(Vec<BigRational>, usize)>,
) -> Result<SpectralData, SpectralError> {
    let n = sch.n();
    let mut entries: Vec<(Block, Vec<BigRational>)> = Vec::with_capacity(paired.len());
    for (c, dim) in paired {
        let principal = is_principal_exact(&c, n);
        let block = block_params(n, &c[0], dim, principal)?;
        entries.push((block, c));
    }
    entries.sort_by(|a, b| {
        (!a.0.principal, a.0.rank, a.0.degree, &a.1).cmp(&(
            !b.0.principal,
            b.0.rank,
            b.0.degree,
            &b.1,
        ))
    });
    let (blocks, exact): (Vec<Block>, Vec<Vec<BigRational>>) = entries.into_iter().unzip();
    check_block_sums(sch, &blocks)?;
    let frame = frame_number(sch, &blocks)?;
    Ok(SpectralData {
        center_dim,
        rational: Some(true),
        blocks,
        exact: Some(exact),
        approx: None,
        frame,
    })
}

fn build_float_data(
    sch: &Scheme,
    center: &[Vec<BigInt>],
    seed: u64,
    rational: Option<bool>,
) -> Result<SpectralData, SpectralError> {
    let sc = StructureConstants::new(sch);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last_err = String::new();
    for _attempt in 0..8 {
        match float_idempotents_once(sch, center, &sc, &mut rng) {
            Ok((blocks, approx)) => {
                let frame = frame_number(sch, &blocks)?;
                return Ok(SpectralData {
                    center_dim: center.len(),
                    rational,
                    blocks,
                    exact: None,
                    approx: Some(approx),
                    frame,
                });
            }
            Err(e) => last_err = e,
        }
    }
    Err(SpectralError::IllConditioned(last_err))
}

/// Global sanity: ranks add up to `n`, block dimensions to `s`, and exactly
/// one block is principal.
fn check_block_sums(sch: &Scheme, blocks: &[Block]) -> Result<(), SpectralError> {
    let rank_sum: usize = blocks.iter().map(|b| b.rank).sum();
    let dim_sum: usize = blocks.iter().map(|b| b.degree * b.degree).sum();
    let principals = blocks.iter().filter(|b| b.principal).count();
    if rank_sum != sch.n() || dim_sum != sch.s() || principals != 1 {
        return Err(SpectralError::NonIntegerParameter(format!(
            "inconsistent block family: ranks sum to {rank_sum} (n = {}), dimensions to {dim_sum} (s = {}), {principals} principal blocks",
            sch.n(),
            sch.s()
        )));
    }
    Ok(())
}

/// Reduce an exact idempotent coefficient-wise into `field` and realize it
/// as an `n x n` matrix.
///
/// Requires exact data (the scheme must be rational) and semisimplicity of
/// the algebra modulo the field characteristic.
pub fn reduce_idempotent(
    sch: &Scheme,
    data: &SpectralData,
    index: usize,
    field: &FqField,
) -> Result<FqMatrix, SpectralError> {
    let exact = data.exact.as_ref().ok_or(SpectralError::NotRational)?;
    let p = field.p();
    if !data.is_semisimple_mod(p) {
        return Err(SpectralError::SemisimplicityViolated { p });
    }
    let coeffs = reduce_coefficients(&exact[index], field)?;
    Ok(crate::gf::combine(sch, field, &coeffs))
}

fn reduce_coefficients(coeffs: &[BigRational], field: &FqField) -> Result<Vec<u32>, SpectralError> {
    let p = BigInt::from(field.p());
    coeffs
        .iter()
        .map(|v| {
            let den = v.denom() % &p;
            if den.is_zero() {
                return Err(SpectralError::DenominatorDivisible { p: field.p() });
            }
            let num = v.numer() % &p;
            let num_elt = field.from_int(num.to_i64().expect("residue fits in i64"));
            let den_elt = field.from_int(den.to_i64().expect("residue fits in i64"));
            Ok(field.div(num_elt, den_elt))
        })
        .collect()
}
