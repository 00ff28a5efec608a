//! Constructions of concrete association schemes.
//!
//! Every generator builds a color matrix and passes it through full
//! validation in [`Scheme::from_color_matrix`], so a bug in a construction
//! surfaces as a validation error rather than a corrupt scheme.  Point-count
//! caps default to [`DEFAULT_MAX_POINTS`]; the `_with_limit` variants accept
//! an explicit cap.

use thiserror::Error;

use crate::gf::is_prime;
use crate::scheme::Scheme;

/// Default cap on the number of points a generator will produce.
pub const DEFAULT_MAX_POINTS: usize = 512;

/// Largest prime accepted by [`cyclotomic`]; bounds the primitive-root
/// search.
pub const MAX_CYCLOTOMIC_PRIME: u64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("{r} does not divide {of}")]
    NotADivisor { r: u64, of: u64 },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("the scheme would have {n} points, above the cap of {max}")]
    TooLarge { n: u128, max: usize },
    #[error("the multiplication table is not a group: {0}")]
    NotAGroup(String),
}

/// The scheme of index-`(p-1)/r` cyclotomic cosets on `Z_p`.
///
/// `H` is the unique subgroup of order `r` of the multiplicative group
/// mod `p`; pairs `(x, y)` are colored by the coset of `y - x`.  Color 1 is
/// the coset `H` itself and the remaining cosets are numbered by their
/// smallest representative.
pub fn cyclotomic(p: u64, r: u64) -> Result<Scheme, GeneratorError> {
    cyclotomic_with_limit(p, r, DEFAULT_MAX_POINTS)
}

pub fn cyclotomic_with_limit(p: u64, r: u64, max_points: usize) -> Result<Scheme, GeneratorError> {
    if !is_prime(p) {
        return Err(GeneratorError::NotPrime { p });
    }
    if p > MAX_CYCLOTOMIC_PRIME {
        return Err(GeneratorError::ParameterOutOfRange(format!(
            "p = {p} exceeds the supported bound {MAX_CYCLOTOMIC_PRIME}"
        )));
    }
    if r == 0 || (p - 1) % r != 0 {
        return Err(GeneratorError::NotADivisor { r, of: p - 1 });
    }
    if p as u128 > max_points as u128 {
        return Err(GeneratorError::TooLarge {
            n: p as u128,
            max: max_points,
        });
    }
    let n = p as usize;

    let mulmod = |a: u64, b: u64| (a * b) % p;
    let powmod = |mut base: u64, mut e: u64| -> u64 {
        let mut acc = 1u64;
        base %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            e >>= 1;
        }
        acc
    };

    // Smallest primitive root mod p.
    let generator = if p == 2 {
        1
    } else {
        let mut factors = Vec::new();
        let mut rest = p - 1;
        let mut d = 2;
        while d * d <= rest {
            if rest % d == 0 {
                factors.push(d);
                while rest % d == 0 {
                    rest /= d;
                }
            }
            d += 1;
        }
        if rest > 1 {
            factors.push(rest);
        }
        (2..p)
            .find(|&g| factors.iter().all(|&l| powmod(g, (p - 1) / l) != 1))
            .expect("the multiplicative group mod a prime is cyclic")
    };

    // The subgroup H of order r and the coloring of differences by coset,
    // numbered in order of smallest representative.
    let h = powmod(generator, (p - 1) / r);
    let mut color_of_diff = vec![0u16; n];
    let mut next_color = 1u16;
    for d in 1..p {
        if color_of_diff[d as usize] != 0 {
            continue;
        }
        let mut e = d;
        loop {
            color_of_diff[e as usize] = next_color;
            e = mulmod(e, h);
            if e == d {
                break;
            }
        }
        next_color += 1;
    }
    debug_assert_eq!(next_color as u64, (p - 1) / r + 1);

    let mut colors = vec![0u16; n * n];
    for x in 0..n {
        for y in 0..n {
            colors[x * n + y] = color_of_diff[(y + n - x) % n];
        }
    }
    Ok(Scheme::from_color_matrix(n, colors).expect("cyclotomic coloring satisfies the axioms"))
}

/// The thin scheme of a finite group given by its multiplication table:
/// `table[x][y]` is the product `x * y` and `(x, y)` is colored by
/// `x^{-1} * y`.
///
/// The table is checked to be a group: an identity, two-sided inverses, and
/// associativity by exhaustive scan.  (Together with those, the Latin
/// property is automatic.)  Colors are group elements relabeled so that the
/// identity is color 0.
pub fn from_group(table: &[Vec<u32>]) -> Result<Scheme, GeneratorError> {
    from_group_with_limit(table, DEFAULT_MAX_POINTS)
}

pub fn from_group_with_limit(
    table: &[Vec<u32>],
    max_points: usize,
) -> Result<Scheme, GeneratorError> {
    let m = table.len();
    if m == 0 {
        return Err(GeneratorError::NotAGroup("empty table".into()));
    }
    if m > max_points {
        return Err(GeneratorError::TooLarge {
            n: m as u128,
            max: max_points,
        });
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != m {
            return Err(GeneratorError::NotAGroup(format!(
                "row {i} has length {}",
                row.len()
            )));
        }
        if let Some(&v) = row.iter().find(|&&v| v as usize >= m) {
            return Err(GeneratorError::NotAGroup(format!(
                "entry {v} out of range in row {i}"
            )));
        }
    }
    let mul = |x: usize, y: usize| table[x][y] as usize;

    let identity = (0..m)
        .find(|&e| (0..m).all(|j| mul(e, j) == j && mul(j, e) == j))
        .ok_or_else(|| GeneratorError::NotAGroup("no identity element".into()))?;
    let mut inverse = vec![usize::MAX; m];
    for x in 0..m {
        inverse[x] = (0..m)
            .find(|&y| mul(x, y) == identity && mul(y, x) == identity)
            .ok_or_else(|| {
                GeneratorError::NotAGroup(format!("element {x} has no two-sided inverse"))
            })?;
    }
    for x in 0..m {
        for y in 0..m {
            let xy = mul(x, y);
            for z in 0..m {
                if mul(xy, z) != mul(x, mul(y, z)) {
                    return Err(GeneratorError::NotAGroup(format!(
                        "associativity fails at ({x}, {y}, {z})"
                    )));
                }
            }
        }
    }

    // Identity becomes color 0; other elements keep their relative order.
    let label = |g: usize| -> u16 {
        if g == identity {
            0
        } else if g < identity {
            (g + 1) as u16
        } else {
            g as u16
        }
    };
    let mut colors = vec![0u16; m * m];
    for x in 0..m {
        for y in 0..m {
            colors[x * m + y] = label(mul(inverse[x], y));
        }
    }
    Ok(Scheme::from_color_matrix(m, colors).expect("a group table yields a thin scheme"))
}

/// Multiplication table of the cyclic group `Z_n`.
pub fn cyclic_group_table(n: usize) -> Vec<Vec<u32>> {
    assert!(n >= 1);
    (0..n)
        .map(|i| (0..n).map(|j| ((i + j) % n) as u32).collect())
        .collect()
}

/// Multiplication table of the symmetric group on `deg` letters, with
/// elements enumerated lexicographically and composed left-to-right
/// (`(p * q)(i) = p[q[i]]`).
pub fn symmetric_group_table(deg: usize) -> Vec<Vec<u32>> {
    assert!((1..=5).contains(&deg), "supported degrees: 1..=5");
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = (0..deg).collect();
    loop {
        perms.push(current.clone());
        // Next lexicographic permutation.
        let Some(i) = (0..deg.saturating_sub(1))
            .rev()
            .find(|&i| current[i] < current[i + 1])
        else {
            break;
        };
        let j = (i + 1..deg)
            .rev()
            .find(|&j| current[j] > current[i])
            .unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    let index_of = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap() as u32;
    perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| {
                    let composed: Vec<usize> = (0..deg).map(|i| p[q[i]]).collect();
                    index_of(&composed)
                })
                .collect()
        })
        .collect()
}

/// The Johnson scheme on `k`-subsets of a `v`-set, colored by
/// `k - |a ∩ b|`.
pub fn johnson(v: u64, k: u64) -> Result<Scheme, GeneratorError> {
    johnson_with_limit(v, k, DEFAULT_MAX_POINTS)
}

pub fn johnson_with_limit(v: u64, k: u64, max_points: usize) -> Result<Scheme, GeneratorError> {
    if k < 1 || 2 * k > v {
        return Err(GeneratorError::ParameterOutOfRange(format!(
            "need 1 <= k and 2k <= v, got v = {v}, k = {k}"
        )));
    }
    let mut binom: u128 = 1;
    for i in 0..k {
        match binom.checked_mul((v - i) as u128) {
            Some(b) => binom = b / (i + 1) as u128,
            None => {
                return Err(GeneratorError::TooLarge {
                    n: u128::MAX,
                    max: max_points,
                })
            }
        }
    }
    if binom > max_points as u128 {
        return Err(GeneratorError::TooLarge {
            n: binom,
            max: max_points,
        });
    }
    let n = binom as usize;

    // k-subsets in lexicographic order.
    let k = k as usize;
    let mut subsets: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut cur: Vec<u32> = (0..k as u32).collect();
    loop {
        subsets.push(cur.clone());
        // The rightmost entry that can still be advanced; each position i
        // maxes out at v - k + i.
        let Some(i) = (0..k).rev().find(|&i| cur[i] < (v as usize - k + i) as u32) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    debug_assert_eq!(subsets.len(), n);

    let meet = |a: &[u32], b: &[u32]| -> usize {
        let (mut i, mut j, mut count) = (0usize, 0usize, 0usize);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        count
    };
    let mut colors = vec![0u16; n * n];
    for x in 0..n {
        for y in 0..n {
            colors[x * n + y] = (k - meet(&subsets[x], &subsets[y])) as u16;
        }
    }
    Ok(Scheme::from_color_matrix(n, colors).expect("the Johnson coloring satisfies the axioms"))
}

/// The Hamming scheme on words of length `m` over an alphabet of size `a`,
/// colored by Hamming distance.
pub fn hamming(m: u64, a: u64) -> Result<Scheme, GeneratorError> {
    hamming_with_limit(m, a, DEFAULT_MAX_POINTS)
}

pub fn hamming_with_limit(m: u64, a: u64, max_points: usize) -> Result<Scheme, GeneratorError> {
    if m < 1 || a < 2 {
        return Err(GeneratorError::ParameterOutOfRange(format!(
            "need m >= 1 and a >= 2, got m = {m}, a = {a}"
        )));
    }
    let n128 = (a as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if n128 > max_points as u128 {
        return Err(GeneratorError::TooLarge {
            n: n128,
            max: max_points,
        });
    }
    let n = n128 as usize;
    let distance = |x: usize, y: usize| -> u16 {
        let (mut x, mut y, mut d) = (x as u64, y as u64, 0u16);
        for _ in 0..m {
            if x % a != y % a {
                d += 1;
            }
            x /= a;
            y /= a;
        }
        d
    };
    let mut colors = vec![0u16; n * n];
    for x in 0..n {
        for y in 0..n {
            colors[x * n + y] = distance(x, y);
        }
    }
    Ok(Scheme::from_color_matrix(n, colors).expect("the Hamming coloring satisfies the axioms"))
}

/// The two-color scheme of the complete graph on `n` points (the one-point
/// scheme when `n = 1`).
pub fn complete(n: usize) -> Result<Scheme, GeneratorError> {
    complete_with_limit(n, DEFAULT_MAX_POINTS)
}

pub fn complete_with_limit(n: usize, max_points: usize) -> Result<Scheme, GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::ParameterOutOfRange(
            "n must be positive".into(),
        ));
    }
    if n > max_points {
        return Err(GeneratorError::TooLarge {
            n: n as u128,
            max: max_points,
        });
    }
    let colors: Vec<u16> = (0..n * n)
        .map(|cell| (cell / n != cell % n) as u16)
        .collect();
    Ok(Scheme::from_color_matrix(n, colors).expect("the complete coloring satisfies the axioms"))
}
