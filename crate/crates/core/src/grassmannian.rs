//! Degree pairing on the maximal orthogonal grassmannian `G_d`.
//!
//! Only the degree of a product of elementary classes `z^d_{n-d-a}` is
//! modelled: it is 1 exactly when the indices are `{0, 1, ..., d}`.

use crate::error::{CalcError, Result};
use crate::quadric::QuadricContext;

/// A product `prod_k z^d_{n-d-a_k}`, stored by its sorted indices `a_k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZProduct {
    indices: Vec<u32>,
}

impl ZProduct {
    pub fn new(mut indices: Vec<u32>, ctx: &QuadricContext) -> Result<Self> {
        let d = ctx.d();
        if indices.len() > d as usize + 1 {
            return Err(CalcError::IndexOutOfRange(format!("{} factors exceed d + 1 = {}", indices.len(), d + 1)));
        }
        if let Some(&a) = indices.iter().find(|&&a| a > d) {
            return Err(CalcError::IndexOutOfRange(format!("index {a} exceeds d = {d}")));
        }
        indices.sort_unstable();
        Ok(ZProduct { indices })
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn degree(&self, ctx: &QuadricContext) -> bool {
        self.indices.len() == ctx.d() as usize + 1 && self.indices.iter().enumerate().all(|(k, &a)| a == k as u32)
    }
}

/// Every nondecreasing index list of length `len` with entries in `0..=d`.
pub fn nondecreasing_lists(len: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(len: usize, lo: u32, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for a in lo..=d {
            cur.push(a);
            go(len, a, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, 0, d, &mut Vec::new(), &mut out);
    out
}
