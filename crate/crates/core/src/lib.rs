//! Combinatorial self-similarities of finite semimetric spaces.
//!
//! A permutation `psi` of the points of `(X, d)` is a combinatorial self
//! similarity when some bijection `f` of the distance values satisfies
//! `d(x, y) = f(d(psi(x), psi(y)))` for every pair of points. These
//! permutations form a group `Cs(X, d)`, and this crate computes it, along
//! with the isometry group `Iso(X, d)`, decides combinatorial similarity of
//! two spaces, and classifies the spaces whose group is the full symmetric
//! group:
//!
//! * discrete spaces (at most one nonzero distance),
//! * strongly rigid spaces (all nonzero distances distinct),
//! * four-point spaces combinatorially similar to a 3-4-5 rectangle.
//!
//! The structural classifier in [`classify`] is cross-checked against a
//! brute-force search over all permutations ([`similarity`]) and, through
//! [`generators`] and [`census`], over every distance-equality pattern on up
//! to five points.

pub mod census;
pub mod classify;
pub mod cli;
pub mod error;
pub mod generators;
pub mod perm;
pub mod report;
pub mod similarity;
pub mod space;

pub use classify::{
    classify, cs_equals_sym_structural, theorem_crosscheck, Classification, CrossCheck,
};
pub use error::{Error, Result, ValidationError};
pub use generators::{
    discrete_space, enumerate_patterns, pseudolinear, random_space, rectangle_example,
    space_from_pattern, strongly_rigid_space, PatternId,
};
pub use perm::{all_permutations, group_from_elements, PermGroup, Permutation};
pub use similarity::{
    are_combinatorially_similar, induced_value_map, is_isometry, is_weak_similarity,
    self_isometry_group, self_similarity_group, SearchConfig, SearchMode, SimilarityWitness,
    ValueBijection,
};
pub use space::{DistanceValue, EqualityPattern, SemimetricSpace};
