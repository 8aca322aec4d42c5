//! Structural classification of spaces whose self-similarity group is the
//! whole symmetric group.
//!
//! `Cs(X, d) = Sym(X)` holds iff the space is discrete, strongly rigid, or a
//! four-point space of rectangle type. [`cs_equals_sym_structural`] decides
//! this without any permutation search; [`theorem_crosscheck`] compares it
//! with the brute-force group.

use crate::error::{Error, Result};
use crate::similarity::{self_similarity_group, SearchConfig};
use crate::space::SemimetricSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub discrete: bool,
    pub strongly_rigid: bool,
    pub weakly_rigid: bool,
    pub rectangle_type: bool,
    pub cs_equals_sym: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossCheck {
    pub structural: bool,
    pub brute_force: bool,
    pub agree: bool,
}

fn triangles(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |a| (a + 1..n).flat_map(move |b| (b + 1..n).map(move |c| (a, b, c))))
}

/// At most one nonzero distance.
pub fn is_discrete(space: &SemimetricSpace) -> bool {
    space.value_set().len() <= 2
}

/// Distinct unordered pairs always have distinct distances.
pub fn is_strongly_rigid(space: &SemimetricSpace) -> bool {
    space
        .equality_pattern()
        .blocks()
        .iter()
        .all(|b| b.len() == 1)
}

/// Every three-point subspace is strongly rigid.
pub fn is_weakly_rigid(space: &SemimetricSpace) -> bool {
    triangles(space.len()).all(|(a, b, c)| {
        let (x, y, z) = (space.color(a, b), space.color(b, c), space.color(a, c));
        x != y && y != z && x != z
    })
}

/// Some three points are pairwise equidistant.
pub fn has_equilateral_triangle(space: &SemimetricSpace) -> bool {
    triangles(space.len()).any(|(a, b, c)| {
        let x = space.color(a, b);
        x == space.color(b, c) && x == space.color(a, c)
    })
}

/// All three-point subspaces have the same multiset of side lengths.
pub fn three_point_subspaces_all_isometric(space: &SemimetricSpace) -> Result<bool> {
    if space.len() < 3 {
        return Err(Error::TooFewPoints { n: space.len() });
    }
    let sides = |(a, b, c): (usize, usize, usize)| {
        let mut s = [space.color(a, b), space.color(b, c), space.color(a, c)];
        s.sort_unstable();
        s
    };
    let mut all = triangles(space.len()).map(sides);
    let first = all.next().expect("n >= 3");
    Ok(all.all(|s| s == first))
}

/// Four points whose pattern is the 1-factorization of K4: three blocks,
/// each a perfect matching.
fn is_one_factorization(space: &SemimetricSpace) -> bool {
    let pattern = space.equality_pattern();
    space.len() == 4
        && pattern.blocks().len() == 3
        && pattern.blocks().iter().all(|b| {
            let &[(a, b), (c, d)] = b.as_slice() else {
                return false;
            };
            a != c && a != d && b != c && b != d
        })
}

/// Combinatorially similar to the 3-4-5 rectangle.
///
/// Computed both from the pattern and as "four points, weakly rigid, all
/// triangles isometric"; the two must agree.
pub fn is_rectangle_type(space: &SemimetricSpace) -> bool {
    let by_pattern = is_one_factorization(space);
    debug_assert_eq!(
        by_pattern,
        space.len() == 4
            && is_weakly_rigid(space)
            && three_point_subspaces_all_isometric(space).unwrap_or(false)
    );
    by_pattern
}

/// Decides `Cs = Sym` from the three structural conditions alone.
pub fn cs_equals_sym_structural(space: &SemimetricSpace) -> bool {
    is_discrete(space)
        || is_strongly_rigid(space)
        || (space.len() >= 3
            && is_weakly_rigid(space)
            && three_point_subspaces_all_isometric(space).unwrap_or(false))
}

pub fn classify(space: &SemimetricSpace) -> Classification {
    Classification {
        discrete: is_discrete(space),
        strongly_rigid: is_strongly_rigid(space),
        weakly_rigid: is_weakly_rigid(space),
        rectangle_type: is_rectangle_type(space),
        cs_equals_sym: cs_equals_sym_structural(space),
    }
}

/// Compares the structural verdict with the group found by search.
pub fn theorem_crosscheck(space: &SemimetricSpace, config: &SearchConfig) -> Result<CrossCheck> {
    let structural = cs_equals_sym_structural(space);
    let brute_force = self_similarity_group(space, config)?.is_symmetric_group();
    Ok(CrossCheck {
        structural,
        brute_force,
        agree: structural == brute_force,
    })
}
