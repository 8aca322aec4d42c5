//! Exhaustive census over all equality patterns on `n` points: the
//! structural classifier against brute-force `Cs = Sym` for every pattern.

use crate::classify::{classify, Classification};
use crate::error::Result;
use crate::generators::{enumerate_patterns, space_from_pattern, PatternId};
use crate::similarity::{self_similarity_group, SearchConfig};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    pub total: usize,
    /// Patterns whose brute-force group is all of `Sym(n)`.
    pub full_sym: Vec<PatternId>,
    pub discrete: usize,
    pub strongly_rigid: usize,
    pub weakly_rigid: usize,
    pub rectangle_type: usize,
    pub structural_cs_sym: usize,
    /// Patterns where the structural verdict and the group disagree.
    pub disagreements: Vec<PatternId>,
}

impl Census {
    fn record(&mut self, pattern: PatternId, class: Classification, brute_force: bool) {
        self.total += 1;
        self.discrete += class.discrete as usize;
        self.strongly_rigid += class.strongly_rigid as usize;
        self.weakly_rigid += class.weakly_rigid as usize;
        self.rectangle_type += class.rectangle_type as usize;
        self.structural_cs_sym += class.cs_equals_sym as usize;
        if class.cs_equals_sym != brute_force {
            self.disagreements.push(pattern.clone());
        }
        if brute_force {
            self.full_sym.push(pattern);
        }
    }
}

/// Runs the census, visiting patterns in lexicographic RGS order.
pub fn run_census(n: usize, config: &SearchConfig) -> Result<Census> {
    run_census_with(n, config, |_, _, _| {})
}

/// Like [`run_census`], calling `inspect(pattern, classification, cs_is_sym)`
/// for every pattern.
pub fn run_census_with<F>(n: usize, config: &SearchConfig, mut inspect: F) -> Result<Census>
where
    F: FnMut(&PatternId, &Classification, bool),
{
    let mut census = Census {
        n,
        ..Census::default()
    };
    for pattern in enumerate_patterns(n)? {
        let space = space_from_pattern(&pattern)?;
        let class = classify(&space);
        let full = self_similarity_group(&space, config)?.is_symmetric_group();
        inspect(&pattern, &class, full);
        census.record(pattern, class, full);
    }
    Ok(census)
}
