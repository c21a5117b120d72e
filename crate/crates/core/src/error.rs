use thiserror::Error;

use crate::quadric::BasisClass;

/// Errors raised by the cycle calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalcError {
    #[error("quadric dimension must be positive, got {0}")]
    InvalidDimension(u32),
    #[error("{class} is not a basis class of the {n}-dimensional split quadric")]
    InvalidClass { class: BasisClass, n: u32 },
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("not a permutation of {size} slots: {images:?}")]
    InvalidPermutation { size: usize, images: Vec<usize> },
    #[error("slot map {map:?} is not a surjection onto {target} slots")]
    NotSurjective { map: Vec<usize>, target: usize },
    #[error("slot {slot} out of range for arity {arity}")]
    SlotOutOfRange { slot: usize, arity: usize },
    #[error("cannot push forward along all {0} factors; use the degree instead")]
    DropAll(usize),
    #[error("inconsistent correspondence split: arities {left} and {right} with middle {middle}")]
    BadSplit { left: usize, right: usize, middle: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
}

pub type Result<T, E = CalcError> = std::result::Result<T, E>;
