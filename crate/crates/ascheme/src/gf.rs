//! Arithmetic in `F_q` and dense matrices over it.
//!
//! Fields are built for any prime power `q = p^f ≤ 2^20`.  Elements are
//! integers in `0..q` packing the coefficients of a residue polynomial in
//! base `p` (for `f = 1` this is the residue itself).  Multiplication uses
//! discrete log/antilog tables over a fixed generator of the multiplicative
//! group, so the hot loops cost a few table lookups per operation.
//!
//! Extension fields reduce modulo the lexicographically least monic
//! irreducible polynomial of degree `f`, ordered by the packed value of the
//! non-leading coefficients, so a field is determined by `(p, f)` alone and
//! every report naming a field is reproducible.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::scheme::Scheme;

/// Errors from field construction.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("{p} is not prime")]
    NotPrime { p: u32 },
    #[error("field order {q} exceeds the supported bound 2^20")]
    TooLarge { q: u128 },
}

/// Trial-division primality for the small moduli used throughout.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factors of `n`, without multiplicity.
fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

struct Inner {
    p: u32,
    f: u32,
    q: u32,
    /// Coefficients of the monic modulus, constant term first, length `f + 1`.
    modulus: Vec<u32>,
    /// `log[a]` for `a in 1..q`; entry 0 is unused.
    log: Vec<u32>,
    /// Powers of the generator, doubled so `exp[i + j]` needs no reduction
    /// for `i, j < q - 1`.
    exp: Vec<u32>,
}

/// A finite field `F_q`, cheap to clone and shareable across threads.
#[derive(Clone)]
pub struct FqField {
    inner: Arc<Inner>,
}

/// Serializable field description for reports.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct FieldRef {
    pub p: u32,
    pub f: u32,
    pub q: u32,
    pub modulus: Vec<u32>,
}

/// Polynomials over `F_p` as coefficient vectors, constant term first.
mod poly {
    /// Trim trailing zeros; the zero polynomial becomes the empty vector.
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut res = vec![0u64; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                res[i + j] = (res[i + j] + ai as u64 * bj as u64) % p as u64;
            }
        }
        let mut res: Vec<u32> = res.into_iter().map(|c| c as u32).collect();
        let deg_m = m.len() - 1;
        let mut i = res.len();
        while i > deg_m {
            i -= 1;
            let c = res[i];
            if c == 0 {
                continue;
            }
            res[i] = 0;
            for j in 0..deg_m {
                let sub = (c as u64 * m[j] as u64) % p as u64;
                res[i - deg_m + j] =
                    ((res[i - deg_m + j] as u64 + p as u64 * p as u64 - sub) % p as u64) as u32;
            }
        }
        trim(res)
    }

    pub fn pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1u32];
        let mut acc = trim(base.to_vec());
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &acc, m, p);
            }
            acc = mul_mod(&acc, &acc, m, p);
            e >>= 1;
        }
        result
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let len = a.len().max(b.len());
        let mut out = vec![0u32; len];
        for i in 0..len {
            let ai = a.get(i).copied().unwrap_or(0);
            let bi = b.get(i).copied().unwrap_or(0);
            out[i] = (ai + p - bi) % p;
        }
        trim(out)
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let deg_m = m.len() - 1;
        let lead_inv = mod_inverse(m[deg_m], p);
        while a.len() > deg_m {
            let c = (a[a.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = a.len() - 1 - deg_m;
            if c != 0 {
                for j in 0..=deg_m {
                    let sub = (c as u64 * m[j] as u64) % p as u64;
                    a[shift + j] =
                        ((a[shift + j] as u64 + p as u64 * p as u64 - sub) % p as u64) as u32;
                }
            }
            a.pop();
            a = trim(a);
            if a.is_empty() {
                break;
            }
        }
        a
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn mod_inverse(a: u32, p: u32) -> u32 {
        // Fermat: p is prime and a is nonzero mod p.
        let mut result = 1u64;
        let mut acc = a as u64 % p as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * acc % p as u64;
            }
            acc = acc * acc % p as u64;
            e >>= 1;
        }
        result as u32
    }

    /// Rabin's criterion: `m` of degree `f` is irreducible over `F_p` iff
    /// `x^(p^f) ≡ x (mod m)` and `gcd(x^(p^(f/l)) - x, m) = 1` for every
    /// prime `l` dividing `f`.
    pub fn is_irreducible(m: &[u32], p: u32, factors_of_f: &[u32]) -> bool {
        let f = (m.len() - 1) as u32;
        let x = vec![0u32, 1u32];
        let frobenius_iterate = |k: u32| -> Vec<u32> {
            let mut t = trim(x.clone());
            for _ in 0..k {
                t = pow_mod(&t, p as u64, m, p);
            }
            t
        };
        for &l in factors_of_f {
            let t = frobenius_iterate(f / l);
            let g = gcd(&sub(&t, &x, p), m, p);
            if g.len() != 1 {
                return false;
            }
        }
        let t = frobenius_iterate(f);
        sub(&t, &x, p).is_empty()
    }
}

impl FqField {
    /// Builds `F_(p^f)`.  Panics if `f = 0`; errors if `p` is not prime or
    /// `p^f > 2^20`.
    pub fn new(p: u32, f: u32) -> Result<Self, FieldError> {
        assert!(f >= 1, "extension degree must be at least 1");
        if !is_prime(p as u64) {
            return Err(FieldError::NotPrime { p });
        }
        let q128 = (p as u128).checked_pow(f).unwrap_or(u128::MAX);
        if q128 > 1 << 20 {
            return Err(FieldError::TooLarge { q: q128 });
        }
        let q = q128 as u32;

        let modulus = if f == 1 {
            vec![0, 1]
        } else {
            Self::least_irreducible(p, f)
        };

        // Packing helpers on coefficient vectors.
        let pack = |coeffs: &[u32]| -> u32 {
            let mut v = 0u32;
            for &c in coeffs.iter().rev() {
                v = v * p + c;
            }
            v
        };
        let unpack = |mut v: u32| -> Vec<u32> {
            let mut out = Vec::new();
            while v > 0 {
                out.push(v % p);
                v /= p;
            }
            out
        };
        let slow_mul =
            |a: u32, b: u32| -> u32 { pack(&poly::mul_mod(&unpack(a), &unpack(b), &modulus, p)) };

        // Generator of the multiplicative group: the least element whose
        // order is exactly q - 1.
        let factors = prime_factors(q - 1);
        let pow = |mut base: u32, mut e: u32| -> u32 {
            let mut result = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    result = slow_mul(result, base);
                }
                base = slow_mul(base, base);
                e >>= 1;
            }
            result
        };
        let mut generator = 0;
        for candidate in 2..q {
            if factors.iter().all(|&l| pow(candidate, (q - 1) / l) != 1) {
                generator = candidate;
                break;
            }
        }
        if generator == 0 {
            // q = 2: the unit element generates the trivial group.
            generator = 1;
        }

        let mut exp = vec![0u32; 2 * (q as usize - 1).max(1)];
        let mut log = vec![0u32; q as usize];
        let mut acc = 1u32;
        for i in 0..(q - 1).max(1) {
            exp[i as usize] = acc;
            log[acc as usize] = i;
            acc = slow_mul(acc, generator);
        }
        debug_assert_eq!(acc, 1, "generator order must divide q - 1");
        for i in 0..(q as usize - 1).max(1) {
            exp[i + (q as usize - 1).max(1)] = exp[i];
        }

        Ok(FqField {
            inner: Arc::new(Inner {
                p,
                f,
                q,
                modulus,
                log,
                exp,
            }),
        })
    }

    /// Builds the field of order `q`, factoring `q` as a prime power.
    pub fn from_order(q: u32) -> Result<Self, FieldError> {
        if q < 2 {
            return Err(FieldError::NotPrime { p: q });
        }
        let ps = prime_factors(q);
        if ps.len() != 1 {
            return Err(FieldError::NotPrime { p: q });
        }
        let p = ps[0];
        let mut f = 0u32;
        let mut rest = q;
        while rest % p == 0 {
            rest /= p;
            f += 1;
        }
        if rest != 1 {
            return Err(FieldError::NotPrime { p: q });
        }
        Self::new(p, f)
    }

    fn least_irreducible(p: u32, f: u32) -> Vec<u32> {
        let factors = prime_factors(f);
        let q = (p as u64).pow(f);
        for k in 0..q {
            let mut coeffs = Vec::with_capacity(f as usize + 1);
            let mut v = k;
            for _ in 0..f {
                coeffs.push((v % p as u64) as u32);
                v /= p as u64;
            }
            coeffs.push(1);
            if poly::is_irreducible(&coeffs, p, &factors) {
                return coeffs;
            }
        }
        unreachable!("an irreducible polynomial of every degree exists over F_p");
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn f(&self) -> u32 {
        self.inner.f
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Coefficients of the modulus, constant term first.  For `f = 1` this
    /// is `x`, i.e. `[0, 1]`.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn descriptor(&self) -> FieldRef {
        FieldRef {
            p: self.inner.p,
            f: self.inner.f,
            q: self.inner.q,
            modulus: self.inner.modulus.clone(),
        }
    }

    /// All field elements in their canonical order.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.inner.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.inner;
        if inner.p == 2 {
            a ^ b
        } else if inner.f == 1 {
            let s = a + b;
            if s >= inner.q {
                s - inner.q
            } else {
                s
            }
        } else {
            let mut out = 0u32;
            let mut mult = 1u32;
            let (mut a, mut b) = (a, b);
            while a > 0 || b > 0 {
                let s = a % inner.p + b % inner.p;
                out += (if s >= inner.p { s - inner.p } else { s }) * mult;
                mult *= inner.p;
                a /= inner.p;
                b /= inner.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let inner = &*self.inner;
        if inner.p == 2 {
            a
        } else if inner.f == 1 {
            if a == 0 {
                0
            } else {
                inner.q - a
            }
        } else {
            let mut out = 0u32;
            let mut mult = 1u32;
            let mut a = a;
            while a > 0 {
                let d = a % inner.p;
                if d != 0 {
                    out += (inner.p - d) * mult;
                }
                mult *= inner.p;
                a /= inner.p;
            }
            out
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.inner;
        inner.exp[(inner.log[a as usize] + inner.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; panics on 0.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert_ne!(a, 0, "division by zero");
        let inner = &*self.inner;
        let l = inner.log[a as usize];
        let order = inner.q - 1;
        if l == 0 {
            return a; // a = 1 (or q = 2)
        }
        inner.exp[(order - l) as usize]
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, base: u32, mut e: u64) -> u32 {
        let mut result = 1u32;
        let mut acc = base;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, acc);
            }
            acc = self.mul(acc, acc);
            e >>= 1;
        }
        result
    }

    /// The image of an integer under `Z -> F_p ⊆ F_q`.
    pub fn from_int(&self, v: i64) -> u32 {
        let p = self.inner.p as i64;
        (v.rem_euclid(p)) as u32
    }
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.f == other.inner.f
    }
}

impl Eq for FqField {}

impl fmt::Debug for FqField {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "F_{}", self.inner.q)?;
        if self.inner.f > 1 {
            write!(
                out,
                " = F_{}[x]/({})",
                self.inner.p,
                modulus_string(&self.inner.modulus)
            )?;
        }
        Ok(())
    }
}

fn modulus_string(coeffs: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let term = match (i, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        };
        terms.push(term);
    }
    terms.join(" + ")
}

/// A dense row-major matrix over `F_q`.
#[derive(Clone)]
pub struct FqMatrix {
    field: FqField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FqMatrix {
    pub fn zero(field: FqField, rows: usize, cols: usize) -> Self {
        FqMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FqField, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_fn(
        field: FqField,
        rows: usize,
        cols: usize,
        f: impl Fn(usize, usize) -> u32,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                debug_assert!(v < field.q());
                data.push(v);
            }
        }
        FqMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(v < self.field.q());
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &FqMatrix) -> FqMatrix {
        assert_eq!(self.cols, other.rows);
        assert!(self.field == other.field);
        let f = &self.field;
        let mut out = FqMatrix::zero(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                for j in 0..other.cols {
                    let t = f.mul(a, orow[j]);
                    let cell = &mut out.data[i * other.cols + j];
                    *cell = f.add(*cell, t);
                }
            }
        }
        out
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Exact rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        self.rank_impl(usize::MAX)
    }

    /// Rank with early exit: returns `stop_at` as soon as `stop_at`
    /// independent rows have been found, so a return value of `stop_at`
    /// means "at least `stop_at`".
    pub fn rank_bounded(&self, stop_at: usize) -> usize {
        self.rank_impl(stop_at)
    }

    fn rank_impl(&self, stop_at: usize) -> usize {
        let mut reducer = RowReducer::new(self.field.clone(), self.cols);
        let mut scratch = vec![0u32; self.cols];
        for i in 0..self.rows {
            scratch.copy_from_slice(self.row(i));
            reducer.offer(&mut scratch);
            if reducer.rank() >= stop_at {
                return stop_at;
            }
        }
        reducer.rank()
    }
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(out, "{}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(out, " ")?;
                }
                write!(out, "{}", self.get(i, j))?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Incremental row-space builder used for rank computation and the
/// min-rank search.  Stored rows are normalized to leading coefficient 1
/// and kept sorted by pivot column, so reducing a new row is a single pass.
pub struct RowReducer {
    field: FqField,
    cols: usize,
    storage: Vec<u32>,
    /// `(pivot column, row index in storage)`, sorted by pivot column.
    pivots: Vec<(usize, usize)>,
}

impl RowReducer {
    pub fn new(field: FqField, cols: usize) -> Self {
        RowReducer {
            field,
            cols,
            storage: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn reset(&mut self) {
        self.storage.clear();
        self.pivots.clear();
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` in place against the stored basis; if a nonzero
    /// remainder survives it joins the basis.  Returns true when the rank
    /// grew.
    pub fn offer(&mut self, row: &mut [u32]) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        let f = &self.field;
        for &(col, idx) in &self.pivots {
            let c = row[col];
            if c == 0 {
                continue;
            }
            let stored = &self.storage[idx * self.cols..(idx + 1) * self.cols];
            // stored[col] = 1 and stored[..col] = 0.
            row[col] = 0;
            for j in col + 1..self.cols {
                let sv = stored[j];
                if sv != 0 {
                    row[j] = f.sub(row[j], f.mul(c, sv));
                }
            }
        }
        let lead = match row.iter().position(|&v| v != 0) {
            Some(col) => col,
            None => return false,
        };
        let inv = f.inv(row[lead]);
        if inv != 1 {
            for v in row.iter_mut() {
                *v = f.mul(*v, inv);
            }
        }
        let idx = self.storage.len() / self.cols;
        self.storage.extend_from_slice(row);
        let pos = self.pivots.partition_point(|&(c, _)| c < lead);
        self.pivots.insert(pos, (lead, idx));
        true
    }
}

/// The matrix `sum_r coeffs[r] * A_r` over `F_q`, where `A_r` is the 0/1
/// adjacency matrix of color `r`.
pub fn combine(sch: &Scheme, field: &FqField, coeffs: &[u32]) -> FqMatrix {
    assert_eq!(coeffs.len(), sch.s(), "one coefficient per color");
    for &c in coeffs {
        assert!(c < field.q(), "coefficient {c} outside the field");
    }
    let n = sch.n();
    let mut data = Vec::with_capacity(n * n);
    for x in 0..n {
        for &color in sch.color_row(x) {
            data.push(coeffs[color as usize]);
        }
    }
    FqMatrix {
        field: field.clone(),
        rows: n,
        cols: n,
        data,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn least_irreducible_moduli() {
        assert_eq!(FqField::new(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]); // x^4 + x + 1
        assert_eq!(FqField::new(2, 2).unwrap().modulus(), &[1, 1, 1]); // x^2 + x + 1
        assert_eq!(FqField::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]); // x^3 + x + 1
        assert_eq!(FqField::new(3, 2).unwrap().modulus(), &[1, 0, 1]); // x^2 + 1
        assert_eq!(FqField::new(5, 1).unwrap().modulus(), &[0, 1]); // x
    }

    #[test]
    fn construction_guards() {
        assert_eq!(
            FqField::new(6, 1).unwrap_err(),
            FieldError::NotPrime { p: 6 }
        );
        assert_eq!(
            FqField::new(2, 21).unwrap_err(),
            FieldError::TooLarge { q: 1 << 21 }
        );
        assert_eq!(
            FqField::from_order(12).unwrap_err(),
            FieldError::NotPrime { p: 12 }
        );
        let f16 = FqField::from_order(16).unwrap();
        assert_eq!((f16.p(), f16.f(), f16.q()), (2, 4, 16));
    }

    #[test]
    fn field_axioms_exhaustively_for_small_orders() {
        for q in [2u32, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = FqField::from_order(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "inverse failed for {a} in F_{q}");
                }
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, 0), a);
            }
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.add(a, b), f.add(b, a));
                    for c in f.elements().step_by((q as usize / 9).max(1)) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn subfield_embedding_of_f2_in_f16() {
        // 0 and 1 are the prime subfield; adding 1 to itself gives 0.
        let f = FqField::new(2, 4).unwrap();
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(3, 3), 5); // x+1 squared = x^2+1 under x^4+x+1
    }

    #[test]
    fn rank_of_simple_matrices() {
        let f2 = FqField::new(2, 1).unwrap();
        let ones = FqMatrix::from_fn(f2.clone(), 4, 4, |_, _| 1);
        assert_eq!(ones.rank(), 1);
        let id = FqMatrix::identity(f2.clone(), 4);
        assert_eq!(id.rank(), 4);
        assert_eq!(id.rank_bounded(2), 2);
        assert_eq!(ones.rank_bounded(2), 1);
        let m2 = FqMatrix::from_fn(f2, 2, 2, |i, j| (i + j) as u32 % 2);
        assert_eq!(m2.rank(), 2);
        // The rows of this circulant sum to (3, 3, 3) = 0 over F_3.
        let f3 = FqField::new(3, 1).unwrap();
        let m3 = FqMatrix::from_fn(f3, 3, 3, |i, j| ((i + j) % 3) as u32);
        assert_eq!(m3.rank(), 2);
    }

    #[test]
    fn matrix_product_and_identity() {
        let f5 = FqField::new(5, 1).unwrap();
        let a = FqMatrix::from_fn(f5.clone(), 2, 2, |i, j| ((i * 2 + j + 1) % 5) as u32);
        let id = FqMatrix::identity(f5, 2);
        let prod = a.mul(&id);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(prod.get(i, j), a.get(i, j));
            }
        }
    }

    #[test]
    fn combine_reproduces_an_adjacency_matrix() {
        let sch = generators::cyclotomic(31, 5).unwrap();
        let f2 = FqField::new(2, 1).unwrap();
        let mut coeffs = vec![0u32; sch.s()];
        coeffs[1] = 1;
        let a1 = combine(&sch, &f2, &coeffs);
        for x in 0..sch.n() {
            for y in 0..sch.n() {
                assert_eq!(a1.get(x, y), (sch.color(x, y) == 1) as u32);
            }
        }
    }
}
