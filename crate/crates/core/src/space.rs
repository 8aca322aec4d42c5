//! Finite semimetric spaces with exact rational distances.
//!
//! Points are `0..n`. Besides the distance table every space keeps the sorted
//! list of distinct values and a *color* table: `color(i, j)` is the index of
//! `dist(i, j)` in that list. Color 0 is always the zero distance, so the
//! searches in [`crate::similarity`] only ever compare small integers.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result, ValidationError};

/// An exact rational distance. Equality is equality of rationals.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DistanceValue(BigRational);

impl DistanceValue {
    pub fn zero() -> Self {
        DistanceValue(BigRational::zero())
    }

    pub fn from_integer(v: i64) -> Self {
        DistanceValue(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        DistanceValue(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for DistanceValue {
    fn from(r: BigRational) -> Self {
        DistanceValue(r)
    }
}

impl Add for &DistanceValue {
    type Output = DistanceValue;

    fn add(self, rhs: &DistanceValue) -> DistanceValue {
        DistanceValue(&self.0 + &rhs.0)
    }
}

impl fmt::Display for DistanceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// Error from parsing a single rational literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralError(pub String);

impl fmt::Display for LiteralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for LiteralError {}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (neg, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((a, b)) => (a, b),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().ok()?
    };
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = BigRational::new(numer, denom);
    Some(if neg { -r } else { r })
}

impl FromStr for DistanceValue {
    type Err = LiteralError;

    /// Accepts decimal literals (`3`, `3.5`, `-0.25`) and fractions (`7/2`).
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let bad = || LiteralError(format!("malformed number {s:?}"));
        if let Some((p, q)) = s.split_once('/') {
            let numer = parse_decimal(p)
                .filter(|r| r.is_integer())
                .ok_or_else(bad)?;
            let denom = parse_decimal(q)
                .filter(|r| r.is_integer())
                .ok_or_else(bad)?;
            if denom.is_zero() {
                return Err(LiteralError(format!("zero denominator in {s:?}")));
            }
            Ok(DistanceValue(numer / denom))
        } else {
            parse_decimal(s).map(DistanceValue).ok_or_else(bad)
        }
    }
}

/// Index of the unordered pair `{i, j}`, `i < j`, in lexicographic pair order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// All unordered pairs `(i, j)`, `i < j < n`, in lexicographic order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// A finite semimetric space `(X, d)` on the points `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemimetricSpace {
    n: usize,
    dist: Vec<DistanceValue>,
    values: Vec<DistanceValue>,
    colors: Vec<u32>,
}

impl SemimetricSpace {
    /// Builds a space from a full `n x n` table, checking every axiom.
    pub fn new(rows: Vec<Vec<DistanceValue>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(ValidationError::Empty.into());
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parse {
                    line: i + 2,
                    message: format!("row {i} has {} entries, expected {n}", row.len()),
                });
            }
        }
        for (i, row) in rows.iter().enumerate() {
            if let Some(j) = row.iter().position(DistanceValue::is_negative) {
                return Err(ValidationError::Negative { i, j }.into());
            }
        }
        for (i, row) in rows.iter().enumerate() {
            if !row[i].is_zero() {
                return Err(ValidationError::NonzeroDiagonal { i }.into());
            }
        }
        for (i, j) in pairs(n) {
            if rows[i][j] != rows[j][i] {
                return Err(ValidationError::Asymmetry { i, j }.into());
            }
            if rows[i][j].is_zero() {
                return Err(ValidationError::ZeroOffDiagonal { i, j }.into());
            }
        }
        Ok(Self::from_table(n, rows.into_iter().flatten().collect()))
    }

    /// Builds a space from the upper triangle, `value(i, j)` called for `i < j`.
    pub fn from_pairs<F>(n: usize, mut value: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> DistanceValue,
    {
        if n == 0 {
            return Err(ValidationError::Empty.into());
        }
        let mut dist = vec![DistanceValue::zero(); n * n];
        for (i, j) in pairs(n) {
            let v = value(i, j);
            if v.is_negative() {
                return Err(ValidationError::Negative { i, j }.into());
            }
            if v.is_zero() {
                return Err(ValidationError::ZeroOffDiagonal { i, j }.into());
            }
            dist[i * n + j] = v.clone();
            dist[j * n + i] = v;
        }
        Ok(Self::from_table(n, dist))
    }

    fn from_table(n: usize, dist: Vec<DistanceValue>) -> Self {
        let values: Vec<DistanceValue> = dist
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let colors = dist
            .iter()
            .map(|v| values.binary_search(v).expect("value present") as u32)
            .collect();
        SemimetricSpace {
            n,
            dist,
            values,
            colors,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dist(&self, i: usize, j: usize) -> &DistanceValue {
        &self.dist[i * self.n + j]
    }

    /// Index of `dist(i, j)` in [`value_set`](Self::value_set).
    #[inline]
    pub fn color(&self, i: usize, j: usize) -> u32 {
        self.colors[i * self.n + j]
    }

    /// The distinct distances, ascending. Always starts with 0.
    pub fn value_set(&self) -> &[DistanceValue] {
        &self.values
    }

    pub fn equality_pattern(&self) -> EqualityPattern {
        let mut blocks = vec![Vec::new(); self.values.len().saturating_sub(1)];
        for (i, j) in pairs(self.n) {
            blocks[self.color(i, j) as usize - 1].push((i, j));
        }
        EqualityPattern::canonical(self.n, blocks)
    }

    /// Restriction of the distance to `points`, renumbered in the given order.
    pub fn subspace(&self, points: &[usize]) -> Result<SemimetricSpace> {
        if points.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut seen = vec![false; self.n];
        for &p in points {
            if p >= self.n {
                return Err(Error::IndexOutOfRange {
                    index: p,
                    n: self.n,
                });
            }
            if std::mem::replace(&mut seen[p], true) {
                return Err(Error::DuplicateIndex { index: p });
            }
        }
        SemimetricSpace::from_pairs(points.len(), |a, b| self.dist(points[a], points[b]).clone())
    }

    /// Checks the triangle inequality, for callers that claim a metric.
    pub fn check_metric(&self) -> std::result::Result<(), ValidationError> {
        for x in 0..self.n {
            for y in 0..self.n {
                for z in 0..self.n {
                    if self.dist(x, z) > &(self.dist(x, y) + self.dist(y, z)) {
                        return Err(ValidationError::Triangle { x, y, z });
                    }
                }
            }
        }
        Ok(())
    }

    /// Renders the space in the matrix file format.
    pub fn to_matrix_string(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.dist(i, j).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl FromStr for SemimetricSpace {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_space(text)
    }
}

/// Parses the matrix file format: the point count `n` on the first
/// significant line, then `n` rows of `n` rational literals. Lines whose
/// first non-blank character is `#` and blank lines are skipped.
pub fn parse_space(text: &str) -> Result<SemimetricSpace> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty input, expected the point count".into(),
    })?;
    let n: usize = header.parse().map_err(|_| Error::Parse {
        line: header_line,
        message: format!("expected the point count, found {header:?}"),
    })?;
    if n == 0 {
        return Err(ValidationError::Empty.into());
    }

    let mut rows = Vec::with_capacity(n);
    for (line, text) in lines {
        if rows.len() == n {
            return Err(Error::Parse {
                line,
                message: format!("more than {n} rows"),
            });
        }
        let row = text
            .split_whitespace()
            .map(|tok| tok.parse::<DistanceValue>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
        if row.len() != n {
            return Err(Error::Parse {
                line,
                message: format!("row has {} entries, expected {n}", row.len()),
            });
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Parse {
            line: text.lines().count(),
            message: format!("found {} rows, expected {n}", rows.len()),
        });
    }
    SemimetricSpace::new(rows)
}

/// The partition of unordered pairs by distance equality.
///
/// Blocks are kept in canonical order: size descending, then by smallest
/// pair; pairs inside a block are sorted. Two patterns compare equal iff
/// they have the same point count and the same blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EqualityPattern {
    n: usize,
    blocks: Vec<Vec<(usize, usize)>>,
}

impl EqualityPattern {
    fn canonical(n: usize, mut blocks: Vec<Vec<(usize, usize)>>) -> Self {
        blocks.retain(|b| !b.is_empty());
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a[0].cmp(&b[0])));
        EqualityPattern { n, blocks }
    }

    /// Builds a pattern from arbitrary blocks, checking that they partition
    /// the pairs of `0..n`.
    pub fn from_blocks(n: usize, blocks: Vec<Vec<(usize, usize)>>) -> Result<Self> {
        let mut seen = vec![false; pair_count(n)];
        for &(a, b) in blocks.iter().flatten() {
            let (i, j) = (a.min(b), a.max(b));
            if i == j || j >= n {
                return Err(Error::IndexOutOfRange { index: j, n });
            }
            if std::mem::replace(&mut seen[pair_index(n, i, j)], true) {
                return Err(Error::InvalidRgs(format!("pair ({i}, {j}) appears twice")));
            }
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            let (i, j) = pairs(n).nth(k).expect("pair exists");
            return Err(Error::InvalidRgs(format!("pair ({i}, {j}) is not covered")));
        }
        let blocks = blocks
            .into_iter()
            .map(|b| b.into_iter().map(|(a, c)| (a.min(c), a.max(c))).collect())
            .collect();
        Ok(Self::canonical(n, blocks))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<(usize, usize)>] {
        &self.blocks
    }

    /// Block sizes, descending.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Restricted-growth labels of the pairs in lexicographic pair order.
    pub fn rgs(&self) -> Vec<u8> {
        let mut owner = vec![0usize; pair_count(self.n)];
        for (b, block) in self.blocks.iter().enumerate() {
            for &(i, j) in block {
                owner[pair_index(self.n, i, j)] = b;
            }
        }
        let mut relabel = vec![u8::MAX; self.blocks.len()];
        let mut next = 0u8;
        owner
            .into_iter()
            .map(|b| {
                if relabel[b] == u8::MAX {
                    relabel[b] = next;
                    next += 1;
                }
                relabel[b]
            })
            .collect()
    }

    /// Deterministic string `n<n>|<sizes>|<blocks>`; equal patterns give
    /// equal strings. Not invariant under relabeling points.
    pub fn fingerprint(&self) -> String {
        let sizes: Vec<String> = self.blocks.iter().map(|b| b.len().to_string()).collect();
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|(i, j)| format!("{i}-{j}"))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        format!("n{}|{}|{}", self.n, sizes.join("."), blocks.join(";"))
    }
}

/// Recovers the block-size multiset (descending) from a fingerprint.
pub fn fingerprint_block_sizes(fingerprint: &str) -> Option<Vec<usize>> {
    let mut parts = fingerprint.split('|');
    parts.next().filter(|p| p.starts_with('n'))?;
    let sizes = parts.next()?;
    if sizes.is_empty() {
        return Some(Vec::new());
    }
    sizes.split('.').map(|s| s.parse().ok()).collect()
}

/// Fingerprint of a pattern; see [`EqualityPattern::fingerprint`].
pub fn pattern_fingerprint(pattern: &EqualityPattern) -> String {
    pattern.fingerprint()
}
