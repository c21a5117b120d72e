use itertools::Itertools;

use crate::error::{CalcError, Result};

/// A permutation of `r` slots, stored as the image of each slot (0-based).
///
/// Pushing forward along `s` moves the factor in slot `k` to slot `s(k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(CalcError::InvalidPermutation { size: images.len(), images });
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(r: usize) -> Self {
        Permutation((0..r).collect())
    }

    /// The cycle `k -> k + 1 (mod r)`.
    pub fn cyclic(r: usize) -> Self {
        Permutation((0..r).map(|k| (k + 1) % r.max(1)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, k: usize) -> usize {
        self.0[k]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&k| self.0[k]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &v)| k == v)
    }

    pub fn is_even(&self) -> bool {
        let inversions = (0..self.0.len()).tuple_combinations().filter(|&(a, b)| self.0[a] > self.0[b]).count();
        inversions % 2 == 0
    }

    /// Powers `self^0, self^1, ...` up to (excluding) the first return to the
    /// identity.
    pub fn cyclic_group(&self) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.len())];
        let mut cur = self.clone();
        while !cur.is_identity() {
            out.push(cur.clone());
            cur = self.compose(&cur);
        }
        out
    }

    /// All `r!` permutations.
    pub fn all(r: usize) -> impl Iterator<Item = Permutation> {
        (0..r).permutations(r).map(Permutation)
    }

    /// The alternating group on `r` slots.
    pub fn alternating(r: usize) -> impl Iterator<Item = Permutation> {
        Permutation::all(r).filter(Permutation::is_even)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_sizes() {
        assert_eq!(Permutation::all(4).count(), 24);
        assert_eq!(Permutation::alternating(4).count(), 12);
        assert_eq!(Permutation::all(0).count(), 1);
        assert_eq!(Permutation::cyclic(5).cyclic_group().len(), 5);
        assert_eq!(Permutation::identity(3).cyclic_group().len(), 1);
        assert_eq!(Permutation::new(vec![1, 0, 3, 2]).unwrap().cyclic_group().len(), 2);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![2, 0]).is_err());
    }
}
