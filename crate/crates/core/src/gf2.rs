//! Sparse row reduction over GF(2).

use std::collections::{BTreeMap, BTreeSet};

/// A sparse vector over GF(2): the set of coordinates equal to 1.
pub type SparseVec = BTreeSet<usize>;

/// Incrementally maintained echelon basis of a GF(2) subspace, keyed by the
/// largest coordinate of each row.
#[derive(Debug, Default, Clone)]
pub struct EchelonBasis {
    rows: BTreeMap<usize, SparseVec>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis, returning the remainder.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        while let Some(top) = v.pop_last() {
            match self.rows.get(&top) {
                Some(row) => {
                    for &c in row.iter().filter(|&&c| c != top) {
                        toggle(&mut v, c);
                    }
                }
                None => {
                    out.insert(top);
                }
            }
        }
        out
    }

    /// Add `v` to the spanning set. Returns false if it was already in the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        match r.iter().next_back() {
            Some(&pivot) => {
                self.rows.insert(pivot, r);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

fn toggle(v: &mut SparseVec, c: usize) {
    if !v.remove(&c) {
        v.insert(c);
    }
}
