//! Named example spaces, seeded random spaces, and exhaustive enumeration
//! of equality patterns.
//!
//! Pairs are always ordered lexicographically, `(0,1), (0,2), ..., (n-2,n-1)`,
//! so a pattern is identified by the restricted-growth string (RGS) giving
//! each pair its block label in that order. Any labeling of the blocks with
//! distinct positive values is a semimetric (no triangle inequality needed),
//! so every pattern is realized by [`space_from_pattern`].

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::space::{pair_count, pairs, DistanceValue, EqualityPattern, SemimetricSpace};

/// Default upper bound on `n` for pattern enumeration (Bell(10) patterns).
pub const DEFAULT_PATTERN_CAP: usize = 5;

const DIGITS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// An equality pattern encoded as a restricted-growth string over the pairs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternId {
    n: usize,
    rgs: Vec<u8>,
}

impl PatternId {
    pub fn new(n: usize, rgs: Vec<u8>) -> Result<Self> {
        if rgs.len() != pair_count(n) {
            return Err(Error::InvalidRgs(format!(
                "length {} for {n} points, expected {}",
                rgs.len(),
                pair_count(n)
            )));
        }
        let mut max: Option<u8> = None;
        for (k, &r) in rgs.iter().enumerate() {
            let limit = max.map_or(0, |m| m + 1);
            if r > limit {
                return Err(Error::InvalidRgs(format!(
                    "label {r} at position {k} exceeds {limit}"
                )));
            }
            max = Some(max.map_or(r, |m| m.max(r)));
        }
        Ok(PatternId { n, rgs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rgs(&self) -> &[u8] {
        &self.rgs
    }

    pub fn block_count(&self) -> usize {
        self.rgs.iter().max().map_or(0, |&m| m as usize + 1)
    }

    pub fn to_pattern(&self) -> EqualityPattern {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for ((i, j), &r) in pairs(self.n).zip(&self.rgs) {
            blocks[r as usize].push((i, j));
        }
        EqualityPattern::from_blocks(self.n, blocks).expect("RGS covers every pair once")
    }

    pub fn from_pattern(pattern: &EqualityPattern) -> Self {
        PatternId {
            n: pattern.n(),
            rgs: pattern.rgs(),
        }
    }

    /// Parses the digit string for `n` points.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let rgs = s
            .bytes()
            .map(|b| DIGITS.iter().position(|&d| d == b).map(|p| p as u8))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidRgs(format!("bad digit in {s:?}")))?;
        PatternId::new(n, rgs)
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &r in &self.rgs {
            write!(f, "{}", DIGITS[r as usize] as char)?;
        }
        Ok(())
    }
}

impl FromStr for PatternId {
    type Err = Error;

    /// Infers `n` from the string length.
    fn from_str(s: &str) -> Result<Self> {
        let n = (2..64)
            .find(|&n| pair_count(n) == s.len())
            .ok_or_else(|| Error::InvalidRgs(format!("length {} is not n(n-1)/2", s.len())))?;
        PatternId::parse(n, s)
    }
}

fn positive(name: &'static str, v: &DistanceValue) -> Result<()> {
    if v.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveParameter {
            name,
            value: v.to_string(),
        })
    }
}

/// The 3 x 4 rectangle with vertices `z1..z4` as points `0..4`.
pub fn rectangle_example() -> SemimetricSpace {
    SemimetricSpace::from_pairs(4, |i, j| {
        DistanceValue::from_integer(match (i, j) {
            (0, 1) | (2, 3) => 3,
            (1, 2) | (0, 3) => 4,
            _ => 5,
        })
    })
    .expect("valid")
}

/// Four points with sides `s, t, s, t` around the cycle `0-1-2-3` and both
/// diagonals `s + t`.
pub fn pseudolinear(s: &DistanceValue, t: &DistanceValue) -> Result<SemimetricSpace> {
    positive("s", s)?;
    positive("t", t)?;
    let diagonal = s + t;
    SemimetricSpace::from_pairs(4, |i, j| match (i, j) {
        (0, 1) | (2, 3) => s.clone(),
        (1, 2) | (0, 3) => t.clone(),
        _ => diagonal.clone(),
    })
}

pub fn discrete_space(n: usize, k: &DistanceValue) -> Result<SemimetricSpace> {
    positive("k", k)?;
    SemimetricSpace::from_pairs(n, |_, _| k.clone())
}

/// All pairwise distances distinct: `1, 2, ..., m` in pair order, or in
/// metric mode `1 + p/m` for `p = 0..m`, which lie in `[1, 2)` and so satisfy
/// every triangle inequality.
pub fn strongly_rigid_space(n: usize, metric_mode: bool) -> Result<SemimetricSpace> {
    let m = pair_count(n) as i64;
    let mut k = 0i64;
    SemimetricSpace::from_pairs(n, |_, _| {
        k += 1;
        if metric_mode {
            DistanceValue::from_ratio(m + k - 1, m)
        } else {
            DistanceValue::from_integer(k)
        }
    })
}

/// Seeded random space with exactly `block_count` distance values.
///
/// Pairs get independent uniform labels from a ChaCha8 stream seeded with
/// `seed`; draws that leave a label unused are rejected, so the partition is
/// uniform among surjective labelings. Label `b` becomes distance `b + 1`.
pub fn random_space(n: usize, block_count: usize, seed: u64) -> Result<SemimetricSpace> {
    let m = pair_count(n);
    let valid = if m == 0 {
        block_count <= 1
    } else {
        (1..=m).contains(&block_count)
    };
    if n == 0 || !valid {
        return Err(Error::BadBlockCount {
            n,
            block_count,
            max: m,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels = loop {
        let labels: Vec<usize> = (0..m).map(|_| rng.gen_range(0..block_count)).collect();
        let mut hit = vec![false; block_count];
        labels.iter().for_each(|&l| hit[l] = true);
        if hit.iter().all(|&h| h) || m == 0 {
            break labels;
        }
    };
    let mut k = 0;
    SemimetricSpace::from_pairs(n, |_, _| {
        k += 1;
        DistanceValue::from_integer(labels[k - 1] as i64 + 1)
    })
}

/// Lexicographic iterator over restricted-growth strings of a fixed length.
#[derive(Debug, Clone)]
pub struct Patterns {
    n: usize,
    current: Option<Vec<u8>>,
}

impl Iterator for Patterns {
    type Item = PatternId;

    fn next(&mut self) -> Option<PatternId> {
        let current = self.current.take()?;
        let mut next = current.clone();
        // prefix maxima determine how far each position may grow
        let mut prefix_max = Vec::with_capacity(next.len());
        let mut m = 0u8;
        for &r in &next {
            m = m.max(r);
            prefix_max.push(m);
        }
        if let Some(k) = (1..next.len())
            .rev()
            .find(|&k| next[k] <= prefix_max[k - 1])
        {
            next[k] += 1;
            next[k + 1..].iter_mut().for_each(|r| *r = 0);
            self.current = Some(next);
        }
        Some(PatternId {
            n: self.n,
            rgs: current,
        })
    }
}

/// Every equality pattern on `n` points, in lexicographic RGS order.
pub fn enumerate_patterns(n: usize) -> Result<Patterns> {
    enumerate_patterns_capped(n, DEFAULT_PATTERN_CAP)
}

pub fn enumerate_patterns_capped(n: usize, cap: usize) -> Result<Patterns> {
    if n < 2 {
        return Err(Error::DegreeTooSmall { n, min: 2 });
    }
    if n > cap {
        return Err(Error::DegreeTooLarge { n, cap });
    }
    Ok(Patterns {
        n,
        current: Some(vec![0; pair_count(n)]),
    })
}

/// Realizes a pattern: block `b` gets distance `b + 1`.
pub fn space_from_pattern(p: &PatternId) -> Result<SemimetricSpace> {
    let p = PatternId::new(p.n, p.rgs.clone())?;
    if p.n == 0 {
        return Err(Error::InvalidRgs("zero points".into()));
    }
    let mut k = 0;
    SemimetricSpace::from_pairs(p.n, |_, _| {
        k += 1;
        DistanceValue::from_integer(p.rgs[k - 1] as i64 + 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{is_discrete, is_rectangle_type, is_strongly_rigid};
    use std::collections::HashSet;

    fn dv(v: i64) -> DistanceValue {
        DistanceValue::from_integer(v)
    }

    /// Bell numbers from the Bell triangle, independent of the enumerator.
    fn bell(m: usize) -> u64 {
        let mut row = vec![1u64];
        for _ in 0..m {
            let mut next = vec![*row.last().unwrap()];
            for &x in &row {
                let last = *next.last().unwrap();
                next.push(last + x);
            }
            row = next;
        }
        row[0]
    }

    #[test]
    fn bell_oracle() {
        assert_eq!(
            (0..=10).map(bell).collect::<Vec<_>>(),
            [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975]
        );
    }

    #[test]
    fn pattern_counts() {
        assert_eq!(enumerate_patterns(2).unwrap().count(), 1);
        assert_eq!(enumerate_patterns(3).unwrap().count() as u64, bell(3));
        assert_eq!(enumerate_patterns(4).unwrap().count() as u64, bell(6));
        assert_eq!(enumerate_patterns(5).unwrap().count() as u64, bell(10));
        assert_eq!(
            enumerate_patterns(6).unwrap_err(),
            Error::DegreeTooLarge { n: 6, cap: 5 }
        );
        assert!(enumerate_patterns(1).is_err());
    }

    #[test]
    fn patterns_are_distinct_and_ordered() {
        for n in 2..=4 {
            let all: Vec<_> = enumerate_patterns(n).unwrap().collect();
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            let set: HashSet<_> = all.iter().map(|p| p.to_pattern()).collect();
            assert_eq!(set.len(), all.len());
            assert_eq!(all[0].to_string(), "0".repeat(pair_count(n)));
        }
        let three: Vec<String> = enumerate_patterns(3)
            .unwrap()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(three, ["000", "001", "010", "011", "012"]);
    }

    #[test]
    fn round_trip_through_spaces() {
        for n in 2..=4 {
            for p in enumerate_patterns(n).unwrap() {
                let s = space_from_pattern(&p).unwrap();
                assert_eq!(s.equality_pattern(), p.to_pattern());
                assert_eq!(PatternId::from_pattern(&s.equality_pattern()), p);
            }
        }
        for p in enumerate_patterns(5).unwrap().step_by(97) {
            assert_eq!(
                space_from_pattern(&p).unwrap().equality_pattern(),
                p.to_pattern()
            );
        }
    }

    #[test]
    fn unique_one_factorization_of_k4() {
        let matchings: Vec<_> = enumerate_patterns(4)
            .unwrap()
            .filter(|p| {
                let pat = p.to_pattern();
                pat.blocks().len() == 3
                    && pat.blocks().iter().all(|b| {
                        b.len() == 2 && {
                            let ((a, c), (d, e)) = (b[0], b[1]);
                            a != d && a != e && c != d && c != e
                        }
                    })
            })
            .collect();
        assert_eq!(matchings.len(), 1);
        assert_eq!(matchings[0].to_string(), "012210");
        assert!(is_rectangle_type(
            &space_from_pattern(&matchings[0]).unwrap()
        ));
    }

    #[test]
    fn named_patterns() {
        let single = PatternId::parse(3, "000").unwrap();
        assert!(is_discrete(&space_from_pattern(&single).unwrap()));
        let singletons = PatternId::parse(4, "012345").unwrap();
        assert!(is_strongly_rigid(&space_from_pattern(&singletons).unwrap()));
    }

    #[test]
    fn invalid_rgs() {
        assert!(PatternId::new(3, vec![1, 0, 0]).is_err());
        assert!(PatternId::new(3, vec![0, 2, 1]).is_err());
        assert!(PatternId::new(3, vec![0, 0]).is_err());
        assert!(PatternId::parse(3, "0a!").is_err());
        assert!("0010".parse::<PatternId>().is_err());
        assert_eq!("001021".parse::<PatternId>().unwrap().n(), 4);
    }

    #[test]
    fn rectangle() {
        let r = rectangle_example();
        assert_eq!(r.value_set(), &[dv(0), dv(3), dv(4), dv(5)]);
        assert_eq!(r.dist(0, 1), &dv(3));
        assert_eq!(r.dist(3, 0), &dv(4));
        assert_eq!(r.dist(1, 3), &dv(5));
        assert!(r.check_metric().is_ok());
    }

    #[test]
    fn pseudolinear_quadruples() {
        let p = pseudolinear(&dv(3), &dv(4)).unwrap();
        assert_eq!(p.value_set(), &[dv(0), dv(3), dv(4), dv(7)]);
        assert!(p.check_metric().is_ok());
        assert!(matches!(
            pseudolinear(&dv(0), &dv(1)),
            Err(Error::NonPositiveParameter { name: "s", .. })
        ));
        assert!(pseudolinear(&dv(1), &dv(-1)).is_err());
    }

    #[test]
    fn discrete_spaces() {
        assert_eq!(discrete_space(1, &dv(1)).unwrap().len(), 1);
        assert_eq!(
            discrete_space(3, &dv(1)).unwrap().value_set(),
            &[dv(0), dv(1)]
        );
        assert!(is_discrete(&discrete_space(5, &dv(2)).unwrap()));
        assert!(discrete_space(3, &dv(0)).is_err());
    }

    #[test]
    fn rigid_spaces() {
        let plain = strongly_rigid_space(3, false).unwrap();
        assert_eq!(plain.value_set(), &[dv(0), dv(1), dv(2), dv(3)]);
        assert!(is_strongly_rigid(&plain));

        let metric = strongly_rigid_space(4, true).unwrap();
        assert_eq!(metric.value_set().len(), 7);
        assert!(metric.value_set()[1..]
            .iter()
            .all(|v| *v >= dv(1) && *v <= dv(2)));
        assert!(metric.check_metric().is_ok());

        assert!(is_strongly_rigid(&strongly_rigid_space(1, true).unwrap()));
    }

    #[test]
    fn random_spaces() {
        assert!(is_discrete(&random_space(5, 1, 7).unwrap()));
        assert!(is_strongly_rigid(&random_space(5, 10, 7).unwrap()));
        assert_eq!(
            random_space(6, 4, 42).unwrap(),
            random_space(6, 4, 42).unwrap()
        );
        assert_eq!(random_space(6, 4, 42).unwrap().value_set().len(), 5);
        assert!(matches!(
            random_space(4, 7, 1),
            Err(Error::BadBlockCount { .. })
        ));
        assert!(matches!(
            random_space(4, 0, 1),
            Err(Error::BadBlockCount { .. })
        ));
        assert_eq!(random_space(1, 1, 3).unwrap().len(), 1);
    }
}
