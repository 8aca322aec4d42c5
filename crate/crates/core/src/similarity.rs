//! Combinatorial similarities, isometries and weak similarities.
//!
//! Orientation: a bijection `psi` always goes from a *source* space
//! `(Y, rho)` to a *target* space `(X, d)`, and its value map `f` goes from
//! target values to source values, so that a witness satisfies
//! `rho(x, y) = f(d(psi(x), psi(y)))` for all `x, y` in `Y`.
//!
//! Everything below works on the color tables of the spaces. A bijection
//! is a combinatorial similarity exactly when the relation
//! `color_d(psi x, psi y) -> color_rho(x, y)` is a well-defined injective map,
//! so the searches only need to maintain that partial map and its inverse.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::perm::{all_permutations, group_from_elements, PermGroup, Permutation, DEFAULT_CAP};
use crate::space::{pairs, DistanceValue, SemimetricSpace};

/// How self-similarity groups are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    /// Filter every permutation of the points. Refuses degrees above the cap.
    #[default]
    Exhaustive,
    /// Backtrack over partial point maps, pruning on the first conflict.
    Pruned,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub cap: usize,
    pub mode: SearchMode,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            cap: DEFAULT_CAP,
            mode: SearchMode::Exhaustive,
        }
    }
}

impl SearchConfig {
    pub fn exhaustive(cap: usize) -> Self {
        SearchConfig {
            cap,
            mode: SearchMode::Exhaustive,
        }
    }

    pub fn pruned() -> Self {
        SearchConfig {
            cap: DEFAULT_CAP,
            mode: SearchMode::Pruned,
        }
    }
}

/// A bijection between the distance values of two spaces, sorted by domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueBijection {
    pairs: Vec<(DistanceValue, DistanceValue)>,
}

impl ValueBijection {
    fn from_colors(target: &SemimetricSpace, source: &SemimetricSpace, map: &[u32]) -> Self {
        let pairs = map
            .iter()
            .enumerate()
            .map(|(t, &s)| {
                (
                    target.value_set()[t].clone(),
                    source.value_set()[s as usize].clone(),
                )
            })
            .collect();
        ValueBijection { pairs }
    }

    /// `(domain value, image)` pairs, domain ascending.
    pub fn pairs(&self) -> &[(DistanceValue, DistanceValue)] {
        &self.pairs
    }

    pub fn get(&self, v: &DistanceValue) -> Option<&DistanceValue> {
        self.pairs
            .binary_search_by(|(d, _)| d.cmp(v))
            .ok()
            .map(|k| &self.pairs[k].1)
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.iter().all(|(a, b)| a == b)
    }

    /// Strictly increasing, i.e. order-preserving.
    pub fn is_increasing(&self) -> bool {
        self.pairs.windows(2).all(|w| w[0].1 < w[1].1)
    }
}

/// A point bijection together with its value bijection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityWitness {
    pub psi: Permutation,
    pub f: ValueBijection,
}

impl SimilarityWitness {
    /// Checks `source(x, y) = f(target(psi x, psi y))` on all ordered pairs.
    pub fn verify(&self, source: &SemimetricSpace, target: &SemimetricSpace) -> bool {
        let n = source.len();
        if target.len() != n || self.psi.degree() != n {
            return false;
        }
        (0..n).all(|x| {
            (0..n).all(|y| {
                self.f
                    .get(target.dist(self.psi.apply(x), self.psi.apply(y)))
                    == Some(source.dist(x, y))
            })
        })
    }
}

fn check_sizes(
    source: &SemimetricSpace,
    target: &SemimetricSpace,
    psi: &Permutation,
) -> Result<()> {
    if source.len() != target.len() {
        return Err(Error::SizeMismatch {
            source_n: source.len(),
            target_n: target.len(),
        });
    }
    if psi.degree() != source.len() {
        return Err(Error::DegreeMismatch {
            left: source.len(),
            right: psi.degree(),
        });
    }
    Ok(())
}

const UNSET: u32 = u32::MAX;

/// Color-level value map (target color -> source color), if `images`
/// induces one.
fn induced_colors(
    source: &SemimetricSpace,
    target: &SemimetricSpace,
    images: &[usize],
) -> Option<Vec<u32>> {
    let k = target.value_set().len();
    if source.value_set().len() != k {
        return None;
    }
    let mut fwd = vec![UNSET; k];
    let mut back = vec![UNSET; k];
    fwd[0] = 0;
    back[0] = 0;
    for (x, y) in pairs(source.len()) {
        let s = source.color(x, y);
        let t = target.color(images[x], images[y]);
        match (fwd[t as usize], back[s as usize]) {
            (UNSET, UNSET) => {
                fwd[t as usize] = s;
                back[s as usize] = t;
            }
            (f, _) if f == s => {}
            _ => return None,
        }
    }
    Some(fwd)
}

/// The value bijection `f` with `source(x, y) = f(target(psi x, psi y))`, if
/// it exists, which is the case exactly when `psi` is a combinatorial
/// similarity.
pub fn induced_value_map(
    source: &SemimetricSpace,
    target: &SemimetricSpace,
    psi: &Permutation,
) -> Result<Option<ValueBijection>> {
    check_sizes(source, target, psi)?;
    Ok(induced_colors(source, target, psi.images())
        .map(|m| ValueBijection::from_colors(target, source, &m)))
}

pub fn is_isometry(
    source: &SemimetricSpace,
    target: &SemimetricSpace,
    psi: &Permutation,
) -> Result<bool> {
    check_sizes(source, target, psi)?;
    Ok(pairs(source.len())
        .all(|(x, y)| source.dist(x, y) == target.dist(psi.apply(x), psi.apply(y))))
}

/// True iff `source(x, y) <= source(w, z)` exactly when
/// `target(psi x, psi y) <= target(psi w, psi z)`.
pub fn is_weak_similarity(
    source: &SemimetricSpace,
    target: &SemimetricSpace,
    psi: &Permutation,
) -> Result<bool> {
    Ok(induced_value_map(source, target, psi)?.is_some_and(|f| f.is_increasing()))
}

/// Depth-first extension of partial point maps `source -> target`,
/// assigning points in index order and candidates in ascending order.
struct Matcher<'a> {
    source: &'a SemimetricSpace,
    target: &'a SemimetricSpace,
    images: Vec<usize>,
    used: Vec<bool>,
    fwd: Vec<u32>,
    back: Vec<u32>,
    trail: Vec<(u32, u32)>,
}

impl<'a> Matcher<'a> {
    fn new(source: &'a SemimetricSpace, target: &'a SemimetricSpace) -> Self {
        let mut fwd = vec![UNSET; target.value_set().len()];
        let mut back = vec![UNSET; source.value_set().len()];
        fwd[0] = 0;
        back[0] = 0;
        Matcher {
            source,
            target,
            images: Vec::with_capacity(source.len()),
            used: vec![false; source.len()],
            fwd,
            back,
            trail: Vec::new(),
        }
    }

    /// Tries to map the next source point to `v`; on conflict the value map
    /// is left untouched.
    fn push(&mut self, v: usize) -> bool {
        let k = self.images.len();
        let mark = self.trail.len();
        for j in 0..k {
            let s = self.source.color(j, k);
            let t = self.target.color(self.images[j], v);
            match (self.fwd[t as usize], self.back[s as usize]) {
                (UNSET, UNSET) => {
                    self.fwd[t as usize] = s;
                    self.back[s as usize] = t;
                    self.trail.push((t, s));
                }
                (f, _) if f == s => {}
                _ => {
                    self.undo(mark);
                    return false;
                }
            }
        }
        self.images.push(v);
        self.used[v] = true;
        true
    }

    fn pop(&mut self, mark: usize) {
        let v = self.images.pop().expect("nonempty");
        self.used[v] = false;
        self.undo(mark);
    }

    fn undo(&mut self, mark: usize) {
        for (t, s) in self.trail.drain(mark..) {
            self.fwd[t as usize] = UNSET;
            self.back[s as usize] = UNSET;
        }
    }

    fn search<F>(&mut self, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize], &[u32]) -> ControlFlow<()>,
    {
        let n = self.source.len();
        if self.images.len() == n {
            return visit(&self.images, &self.fwd);
        }
        for v in 0..n {
            if self.used[v] {
                continue;
            }
            let mark = self.trail.len();
            if self.push(v) {
                let flow = self.search(visit);
                self.pop(mark);
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
}

fn block_sizes_match(a: &SemimetricSpace, b: &SemimetricSpace) -> bool {
    a.equality_pattern().block_sizes() == b.equality_pattern().block_sizes()
}

/// All combinatorial self-similarities found by backtracking, in
/// lexicographic order.
pub fn pruned_self_similarities(space: &SemimetricSpace) -> Vec<Permutation> {
    let mut found = Vec::new();
    let _ = Matcher::new(space, space).search(&mut |images, _| {
        found.push(Permutation::from_images_unchecked(images.to_vec()));
        ControlFlow::Continue(())
    });
    found
}

/// All combinatorial self-similarities found by filtering every permutation.
pub fn exhaustive_self_similarities(
    space: &SemimetricSpace,
    cap: usize,
) -> Result<Vec<Permutation>> {
    Ok(all_permutations(space.len(), cap)?
        .filter(|p| induced_colors(space, space, p.images()).is_some())
        .collect())
}

/// `Cs(X, d)`: every permutation that is a combinatorial self similarity.
pub fn self_similarity_group(space: &SemimetricSpace, config: &SearchConfig) -> Result<PermGroup> {
    let elements = match config.mode {
        SearchMode::Exhaustive => exhaustive_self_similarities(space, config.cap)?,
        SearchMode::Pruned => pruned_self_similarities(space),
    };
    group_from_elements(space.len(), elements)
}

/// `Iso(X, d)`: every permutation preserving all distances.
pub fn self_isometry_group(space: &SemimetricSpace, config: &SearchConfig) -> Result<PermGroup> {
    let elements: Vec<Permutation> = match config.mode {
        SearchMode::Exhaustive => all_permutations(space.len(), config.cap)?
            .filter(|p| {
                pairs(space.len())
                    .all(|(x, y)| space.color(x, y) == space.color(p.apply(x), p.apply(y)))
            })
            .collect(),
        SearchMode::Pruned => pruned_self_similarities(space)
            .into_iter()
            .filter(|p| {
                pairs(space.len())
                    .all(|(x, y)| space.color(x, y) == space.color(p.apply(x), p.apply(y)))
            })
            .collect(),
    };
    group_from_elements(space.len(), elements)
}

/// A witness that `a` and `b` are combinatorially similar (`psi: a -> b`),
/// or `None` if they are not.
pub fn are_combinatorially_similar(
    a: &SemimetricSpace,
    b: &SemimetricSpace,
) -> Option<SimilarityWitness> {
    if a.len() != b.len() || !block_sizes_match(a, b) {
        return None;
    }
    let mut witness = None;
    let _ = Matcher::new(a, b).search(&mut |images, fwd| {
        witness = Some(SimilarityWitness {
            psi: Permutation::from_images_unchecked(images.to_vec()),
            f: ValueBijection::from_colors(b, a, fwd),
        });
        ControlFlow::Break(())
    });
    witness
}
