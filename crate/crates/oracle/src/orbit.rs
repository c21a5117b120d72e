//! Symmetrization by orbit counting: each distinct arrangement of a tuple
//! occurs `prod(mult_i!)` times in the full permutation sum, so it survives
//! mod 2 exactly when no entry repeats.

use std::collections::BTreeSet;

/// Distinct arrangements of `factors` with odd multiplicity in the sum over
/// all permutations.
pub fn sym_by_orbits<T: Ord + Clone>(factors: &[T]) -> BTreeSet<Vec<T>> {
    let mut out = BTreeSet::new();
    let distinct: BTreeSet<&T> = factors.iter().collect();
    if distinct.len() != factors.len() {
        return out;
    }
    arrangements(factors.to_vec(), 0, &mut out);
    out
}

fn arrangements<T: Ord + Clone>(mut v: Vec<T>, k: usize, out: &mut BTreeSet<Vec<T>>) {
    if k == v.len() {
        out.insert(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        arrangements(v.clone(), k + 1, out);
        v.swap(k, i);
    }
}

/// Mod-2 sum over several tuples.
pub fn sym_sum<T: Ord + Clone>(tuples: &[Vec<T>]) -> BTreeSet<Vec<T>> {
    let mut acc = BTreeSet::new();
    for t in tuples {
        for m in sym_by_orbits(t) {
            if !acc.remove(&m) {
                acc.insert(m);
            }
        }
    }
    acc
}
