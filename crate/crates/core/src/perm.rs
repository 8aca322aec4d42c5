//! Permutations of `0..n` and explicit finite permutation groups.
//!
//! Composition convention, used everywhere in this crate:
//! `p.compose(&q)` maps `i` to `p(q(i))`, i.e. apply `q` first.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Default upper bound on the degree for exhaustive enumeration.
pub const DEFAULT_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotAPermutation { images });
            }
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for c in cycles {
            for (k, &a) in c.iter().enumerate() {
                if a >= n {
                    return Err(Error::IndexOutOfRange { index: a, n });
                }
                images[a] = c[(k + 1) % c.len()];
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p] = i;
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, i) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")
    }
}

pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    p.compose(q)
}

pub fn inverse(p: &Permutation) -> Permutation {
    p.inverse()
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Lexicographic iterator over the permutations of `0..n`.
#[derive(Debug, Clone)]
pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut a = current.clone();
        // Narayana's next-permutation step
        if let Some(k) = (0..a.len().saturating_sub(1))
            .rev()
            .find(|&k| a[k] < a[k + 1])
        {
            let l = (k + 1..a.len())
                .rev()
                .find(|&l| a[k] < a[l])
                .expect("successor exists");
            a.swap(k, l);
            a[k + 1..].reverse();
            self.next = Some(a);
        }
        Some(Permutation { images: current })
    }
}

/// All `n!` permutations of `0..n` in lexicographic order of image arrays.
pub fn all_permutations(n: usize, cap: usize) -> Result<Permutations> {
    if n == 0 {
        return Err(Error::DegreeTooSmall { n, min: 1 });
    }
    if n > cap {
        return Err(Error::DegreeTooLarge { n, cap });
    }
    Ok(Permutations {
        next: Some((0..n).collect()),
    })
}

/// A finite permutation group stored as its full element set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    elements: BTreeSet<Permutation>,
}

impl PermGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements in lexicographic order of image arrays.
    pub fn elements(&self) -> impl Iterator<Item = &Permutation> + '_ {
        self.elements.iter()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.contains(p)
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.is_subset(&other.elements)
    }

    /// True iff this is all of `Sym(n)`.
    pub fn is_symmetric_group(&self) -> bool {
        self.order() as u128 == factorial(self.degree)
    }

    /// `{ psi ∘ g ∘ psi⁻¹ : g ∈ self }`.
    pub fn conjugate_by(&self, psi: &Permutation) -> Result<PermGroup> {
        let inv = psi.inverse();
        let elements = self
            .elements
            .iter()
            .map(|g| psi.compose(g)?.compose(&inv))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(PermGroup {
            degree: self.degree,
            elements,
        })
    }
}

pub fn is_symmetric_group(g: &PermGroup) -> bool {
    g.is_symmetric_group()
}

/// Validates that `perms` (all of degree `degree`) form a group.
///
/// Closure is checked through a generating set: elements are scanned in
/// order, each one not yet generated is added as a generator, and the
/// generated subgroup is grown by breadth-first multiplication. Every
/// product is checked for membership, so any escape is reported with the
/// offending pair. The result is exact and costs `O(|G| * gens)` products
/// instead of `O(|G|^2)`. A finite set closed under composition also
/// contains all inverses.
pub fn group_from_elements<I>(degree: usize, perms: I) -> Result<PermGroup>
where
    I: IntoIterator<Item = Permutation>,
{
    let mut elements = BTreeSet::new();
    for p in perms {
        if p.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: p.degree(),
            });
        }
        elements.insert(p);
    }
    if !elements.contains(&Permutation::identity(degree)) {
        return Err(Error::MissingIdentity);
    }
    let group = PermGroup { degree, elements };
    // Sym(n) is the only n!-element set of degree-n permutations.
    if group.is_symmetric_group() {
        return Ok(group);
    }

    let mut generated: HashSet<Permutation> = HashSet::from([Permutation::identity(degree)]);
    let mut generators: Vec<Permutation> = Vec::new();
    for candidate in &group.elements {
        if generated.contains(candidate) {
            continue;
        }
        generators.push(candidate.clone());
        // Regrow the closure of <generators> from scratch.
        generated = HashSet::from([Permutation::identity(degree)]);
        let mut queue: VecDeque<Permutation> = VecDeque::from([Permutation::identity(degree)]);
        while let Some(h) = queue.pop_front() {
            for g in &generators {
                let prod = h.compose(g)?;
                if !group.elements.contains(&prod) {
                    return Err(Error::NotClosed {
                        left: h.to_string(),
                        right: g.to_string(),
                    });
                }
                if generated.insert(prod.clone()) {
                    queue.push_back(prod);
                }
            }
        }
    }
    debug_assert_eq!(generated.len(), group.order());
    Ok(group)
}
