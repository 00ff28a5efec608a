//! Validated association schemes and structural queries.
//!
//! A scheme on `n` points with `s` colors is stored as a dense `n × n` color
//! matrix with entries in `0..s`.  Construction through
//! [`Scheme::from_color_matrix`] checks every axiom: color 0 is exactly the
//! diagonal, colors are closed under transposition, and every intersection
//! number `c[r][u][t]` (the number of `z` with `color(x, z) = r` and
//! `color(z, y) = u`, for `(x, y)` of color `t`) is independent of the chosen
//! pair.  All downstream modules rely on these invariants and never re-check
//! them.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Errors raised while validating or parsing a color matrix.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchemeError {
    /// Color 0 does not coincide with the diagonal.
    #[error("color 0 is not exactly the diagonal: cell ({x}, {y}) has color {color}")]
    NotReflexive { x: usize, y: usize, color: u16 },
    /// No involution on colors maps each cell to its transposed cell.
    #[error("colors are not closed under transposition: color {color} pairs with both {first} and {second}")]
    NotTransposeClosed { color: u16, first: u16, second: u16 },
    /// Some intersection count depends on the chosen pair of points.
    #[error(
        "intersection count for (r={r}, u={u}, t={t}) is {expected} at the witness pair but {found} at ({x}, {y})"
    )]
    InconsistentIntersection {
        r: u16,
        u: u16,
        t: u16,
        expected: u32,
        found: u32,
        x: usize,
        y: usize,
    },
    /// The query needs at least two points.
    #[error("the scheme has {n} point(s) but the query needs at least 2")]
    OrderTooSmall { n: usize },
    /// A color index outside `0..s` appeared in the input.
    #[error("color {color} at cell ({x}, {y}) is outside 0..{s}")]
    InvalidColor {
        color: u32,
        x: usize,
        y: usize,
        s: usize,
    },
    /// Colors must be consecutive integers starting at 0; one is unused.
    #[error("color {color} never occurs: colors must be consecutive integers starting at 0")]
    MissingColor { color: u16 },
    /// The input text is not a well-formed scheme file.
    #[error("parse error: {0}")]
    Parse(String),
}

/// An association scheme: a color matrix that passed full validation.
#[derive(Debug, Clone)]
pub struct Scheme {
    n: usize,
    s: usize,
    /// Row-major `n × n` color matrix.
    colors: Vec<u16>,
    /// The transposition involution on colors.
    sigma: Vec<u16>,
    /// Valency of each color: the constant row count `d_r`.
    valencies: Vec<usize>,
    /// Dense `s × s × s` tensor of intersection numbers, indexed by
    /// `(r * s + u) * s + t`.
    intersection: Vec<u32>,
}

/// A 0/1 relation on the point set, optionally recognized as a union of
/// colors of a fixed scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    /// Row-major `n × n` indicator.
    pub indicator: Vec<bool>,
    /// The set of colors whose union equals the indicator, when such a set
    /// exists; `None` when the relation cuts through some color class.
    pub colors: Option<BTreeSet<u16>>,
}

impl RelationSet {
    /// Whether the relation is a union of color classes.
    pub fn is_union(&self) -> bool {
        self.colors.is_some()
    }
}

/// Identifying data for a scheme embedded in JSON reports.
#[derive(Debug, Clone, Serialize)]
pub struct SchemeRef {
    pub hash: String,
    pub n: usize,
    pub s: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl Scheme {
    /// Validates a row-major `n × n` color matrix and builds the scheme.
    ///
    /// The number of colors is inferred as one plus the largest entry, and
    /// every color in that range must actually occur.
    pub fn from_color_matrix(n: usize, colors: Vec<u16>) -> Result<Self, SchemeError> {
        assert_eq!(colors.len(), n * n, "color matrix must have n*n entries");
        assert!(n >= 1, "a scheme needs at least one point");
        let s = colors.iter().copied().max().unwrap_or(0) as usize + 1;

        // Color 0 on the diagonal.
        for x in 0..n {
            let c = colors[x * n + x];
            if c != 0 {
                return Err(SchemeError::NotReflexive { x, y: x, color: c });
            }
        }

        // A single involution must map the color of each cell to the color of
        // the transposed cell.  Recording both directions at once catches
        // conflicts such as a nonzero color paired with the diagonal color.
        let mut sigma: Vec<Option<u16>> = vec![None; s];
        sigma[0] = Some(0);
        let mut seen = vec![false; s];
        seen[0] = true;
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                let a = colors[x * n + y];
                let b = colors[y * n + x];
                seen[a as usize] = true;
                for (from, to) in [(a, b), (b, a)] {
                    match sigma[from as usize] {
                        None => sigma[from as usize] = Some(to),
                        Some(prev) if prev != to => {
                            return Err(SchemeError::NotTransposeClosed {
                                color: from,
                                first: prev,
                                second: to,
                            })
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        for (color, flag) in seen.iter().enumerate() {
            if !flag {
                return Err(SchemeError::MissingColor {
                    color: color as u16,
                });
            }
        }
        let sigma: Vec<u16> = sigma
            .into_iter()
            .map(|v| v.expect("all colors seen"))
            .collect();

        // With transposition settled, color 0 off the diagonal is a
        // reflexivity violation.
        for x in 0..n {
            for y in 0..n {
                if x != y && colors[x * n + y] == 0 {
                    return Err(SchemeError::NotReflexive { x, y, color: 0 });
                }
            }
        }

        // Fill the intersection tensor from one witness pair per color, then
        // verify every pair against it.  Each pair contributes exactly n
        // counts, so comparing the counted entries also pins the untouched
        // entries to zero.
        let mut witness = vec![usize::MAX; s];
        for x in 0..n {
            for y in 0..n {
                let t = colors[x * n + y] as usize;
                if witness[t] == usize::MAX {
                    witness[t] = x * n + y;
                }
            }
        }
        let mut intersection = vec![0u32; s * s * s];
        for t in 0..s {
            let cell = witness[t];
            let (x, y) = (cell / n, cell % n);
            for z in 0..n {
                let r = colors[x * n + z] as usize;
                let u = colors[z * n + y] as usize;
                intersection[(r * s + u) * s + t] += 1;
            }
        }
        let mut counts = vec![0u32; s * s];
        let mut touched: Vec<usize> = Vec::with_capacity(n);
        for x in 0..n {
            for y in 0..n {
                let t = colors[x * n + y] as usize;
                for z in 0..n {
                    let r = colors[x * n + z] as usize;
                    let u = colors[z * n + y] as usize;
                    let k = r * s + u;
                    if counts[k] == 0 {
                        touched.push(k);
                    }
                    counts[k] += 1;
                }
                for &k in &touched {
                    let expected = intersection[k * s + t];
                    if counts[k] != expected {
                        return Err(SchemeError::InconsistentIntersection {
                            r: (k / s) as u16,
                            u: (k % s) as u16,
                            t: t as u16,
                            expected,
                            found: counts[k],
                            x,
                            y,
                        });
                    }
                    counts[k] = 0;
                }
                touched.clear();
            }
        }

        // Valencies: d_r = c[r][sigma(r)][0], cross-checked against row 0.
        let mut valencies = vec![0usize; s];
        for r in 0..s {
            let sr = sigma[r] as usize;
            valencies[r] = intersection[(r * s + sr) * s] as usize;
        }
        let mut row0 = vec![0usize; s];
        for y in 0..n {
            row0[colors[y] as usize] += 1;
        }
        debug_assert_eq!(valencies, row0);
        debug_assert_eq!(valencies.iter().sum::<usize>(), n);

        Ok(Scheme {
            n,
            s,
            colors,
            sigma,
            valencies,
            intersection,
        })
    }

    /// Number of points.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of colors, counting the diagonal color 0.
    pub fn s(&self) -> usize {
        self.s
    }

    /// Color of the pair `(x, y)`.
    #[inline]
    pub fn color(&self, x: usize, y: usize) -> u16 {
        self.colors[x * self.n + y]
    }

    /// Row `x` of the color matrix.
    #[inline]
    pub fn color_row(&self, x: usize) -> &[u16] {
        &self.colors[x * self.n..(x + 1) * self.n]
    }

    /// The color of the transposed relation.
    #[inline]
    pub fn transpose(&self, r: u16) -> u16 {
        self.sigma[r as usize]
    }

    /// Valency `d_r`: the constant number of entries of color `r` per row.
    pub fn valency(&self, r: u16) -> usize {
        self.valencies[r as usize]
    }

    /// All valencies, indexed by color.
    pub fn valencies(&self) -> &[usize] {
        &self.valencies
    }

    /// Intersection number `c[r][u][t]`.
    #[inline]
    pub fn intersection(&self, r: usize, u: usize, t: usize) -> u32 {
        self.intersection[(r * self.s + u) * self.s + t]
    }

    /// Whether multiplication of adjacency matrices commutes, i.e.
    /// `c[r][u][t] = c[u][r][t]` for all colors.
    pub fn is_commutative(&self) -> bool {
        let s = self.s;
        for r in 0..s {
            for u in 0..r {
                for t in 0..s {
                    if self.intersection[(r * s + u) * s + t]
                        != self.intersection[(u * s + r) * s + t]
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether every valency equals 1.
    pub fn is_thin(&self) -> bool {
        self.valencies.iter().all(|&d| d == 1)
    }

    /// Whether the only equivalence relations expressible as unions of colors
    /// are the diagonal and everything.
    ///
    /// Checked by connectivity: the scheme is primitive exactly when the
    /// symmetrized graph of every nonreflexive color is connected.
    pub fn is_primitive(&self) -> Result<bool, SchemeError> {
        if self.n < 2 {
            return Err(SchemeError::OrderTooSmall { n: self.n });
        }
        let n = self.n;
        let mut visited = vec![false; n];
        let mut stack = Vec::with_capacity(n);
        for r in 1..self.s as u16 {
            let rt = self.transpose(r);
            visited.iter_mut().for_each(|v| *v = false);
            visited[0] = true;
            stack.push(0usize);
            let mut reached = 1usize;
            while let Some(x) = stack.pop() {
                let row = self.color_row(x);
                for (y, &c) in row.iter().enumerate() {
                    if (c == r || c == rt) && !visited[y] {
                        visited[y] = true;
                        reached += 1;
                        stack.push(y);
                    }
                }
            }
            if reached < n {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Decomposes a 0/1 relation into a union of colors if possible.
    ///
    /// The returned set lists every color on which the indicator is
    /// constantly true; it is `None` when the indicator is not constant on
    /// some color class.  The empty relation is a legal union (of no colors).
    pub fn relation_set(&self, indicator: &[bool]) -> RelationSet {
        assert_eq!(indicator.len(), self.n * self.n, "indicator must be n*n");
        let mut value: Vec<Option<bool>> = vec![None; self.s];
        let mut union = true;
        for (cell, &v) in indicator.iter().enumerate() {
            let c = self.colors[cell] as usize;
            match value[c] {
                None => value[c] = Some(v),
                Some(prev) if prev != v => {
                    union = false;
                }
                Some(_) => {}
            }
        }
        let colors = if union {
            Some(
                value
                    .iter()
                    .enumerate()
                    .filter_map(|(c, v)| {
                        if v == &Some(true) {
                            Some(c as u16)
                        } else {
                            None
                        }
                    })
                    .collect(),
            )
        } else {
            None
        };
        RelationSet {
            indicator: indicator.to_vec(),
            colors,
        }
    }

    /// Canonical text form: a header line `n s`, then the color matrix, one
    /// row per line.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.n * self.n * 3 + 16);
        let _ = writeln!(out, "{} {}", self.n, self.s);
        for x in 0..self.n {
            let row = self.color_row(x);
            for (y, c) in row.iter().enumerate() {
                if y > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{}", c);
            }
            out.push('\n');
        }
        out
    }

    /// SHA-256 of the canonical text form, prefixed with `sha256:`.
    ///
    /// Comments in an input file do not affect the hash.
    pub fn content_hash(&self) -> String {
        let digest = Sha256::digest(self.to_text().as_bytes());
        let mut hex = String::with_capacity(7 + 64);
        hex.push_str("sha256:");
        for byte in digest {
            let _ = write!(hex, "{:02x}", byte);
        }
        hex
    }

    /// Identifying data for reports.
    pub fn reference(&self, source: Option<String>) -> SchemeRef {
        SchemeRef {
            hash: self.content_hash(),
            n: self.n,
            s: self.s,
            source,
        }
    }

    /// Parses the text format produced by [`Scheme::to_text`].
    ///
    /// `#` starts a comment running to the end of the line.  The first two
    /// tokens are `n` and `s`; the following `n * n` tokens are colors.  The
    /// declared `s` must match the number of distinct colors actually used.
    pub fn parse(text: &str) -> Result<Self, SchemeError> {
        let tokens: Vec<&str> = text
            .lines()
            .map(|line| line.split('#').next().unwrap_or(""))
            .flat_map(|line| line.split_whitespace())
            .collect();
        let number = |tok: &str| -> Result<u64, SchemeError> {
            tok.parse::<u64>()
                .map_err(|_| SchemeError::Parse(format!("not a number: {tok:?}")))
        };
        if tokens.len() < 2 {
            return Err(SchemeError::Parse("missing the `n s` header".into()));
        }
        let n = number(tokens[0])? as usize;
        let s = number(tokens[1])? as usize;
        if n == 0 {
            return Err(SchemeError::Parse("n must be positive".into()));
        }
        if s == 0 || s > u16::MAX as usize {
            return Err(SchemeError::Parse(format!("color count {s} out of range")));
        }
        if tokens.len() != 2 + n * n {
            return Err(SchemeError::Parse(format!(
                "expected {} color entries after the header, found {}",
                n * n,
                tokens.len() - 2
            )));
        }
        let mut colors = Vec::with_capacity(n * n);
        for (i, tok) in tokens[2..].iter().enumerate() {
            let c = number(tok)?;
            let (x, y) = (i / n, i % n);
            if c >= s as u64 {
                return Err(SchemeError::InvalidColor {
                    color: c as u32,
                    x,
                    y,
                    s,
                });
            }
            colors.push(c as u16);
        }
        let max = colors.iter().copied().max().unwrap_or(0) as usize;
        if max + 1 != s {
            return Err(SchemeError::MissingColor {
                color: (max + 1) as u16,
            });
        }
        Self::from_color_matrix(n, colors)
    }
}

/// Whether a 0/1 relation is an equivalence relation on `0..n`.
pub fn is_equivalence_relation(n: usize, indicator: &[bool]) -> bool {
    assert_eq!(indicator.len(), n * n);
    for x in 0..n {
        if !indicator[x * n + x] {
            return false;
        }
        for y in 0..n {
            if indicator[x * n + y] != indicator[y * n + x] {
                return false;
            }
        }
    }
    for x in 0..n {
        for z in 0..n {
            if !indicator[x * n + z] {
                continue;
            }
            for y in 0..n {
                if indicator[z * n + y] && !indicator[x * n + y] {
                    return false;
                }
            }
        }
    }
    true
}
