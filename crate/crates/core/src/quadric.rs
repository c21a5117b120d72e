//! The mod-2 Chow ring of a single split quadric.
//!
//! For a split quadric of dimension `n` with `d = n / 2` the ring is free on
//! the hyperplane powers `h^k` and the classes `l_j` of `j`-dimensional
//! isotropic subspaces. When `n` is even the middle dimension carries a
//! second class `l'_d`, and `h^d = l_d + l'_d` is not a basis element.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CalcError, Result};

/// Which of the two middle-dimensional classes carries the name `l_d`.
///
/// The ring laws are symmetric in the two classes, so this only labels
/// output; it never changes a computed identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    #[default]
    Ld,
    LdPrime,
}

/// Middle class used by the `h^d x l_d` term of the symmetric delta cycles
/// on even-dimensional quadrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MiddleConvention {
    #[default]
    Ld,
    LdPrime,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Ld => "ld",
            Orientation::LdPrime => "ldprime",
        })
    }
}

impl fmt::Display for MiddleConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MiddleConvention::Ld => "ld",
            MiddleConvention::LdPrime => "ldprime",
        })
    }
}

/// One canonical basis element of `Ch(X_K)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisClass {
    /// Hyperplane power `h^k`.
    H(u32),
    /// Class `l_j` of a `j`-dimensional isotropic subspace.
    L(u32),
    /// The second middle class `l'_d`; the index must equal `d`.
    LPrime(u32),
}

impl BasisClass {
    pub const ONE: BasisClass = BasisClass::H(0);
    pub const POINT: BasisClass = BasisClass::L(0);

    pub fn is_h_power(self) -> bool {
        matches!(self, BasisClass::H(_))
    }
}

impl fmt::Display for BasisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BasisClass::H(0) => f.write_str("1"),
            BasisClass::H(k) => write!(f, "h^{k}"),
            BasisClass::L(j) => write!(f, "l_{j}"),
            BasisClass::LPrime(j) => write!(f, "l'_{j}"),
        }
    }
}

/// The ambient split quadric, fixing every ring law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadricContext {
    n: u32,
    d: u32,
    orientation: Orientation,
    delta_middle: MiddleConvention,
}

impl QuadricContext {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(CalcError::InvalidDimension(n));
        }
        Ok(QuadricContext {
            n,
            d: n / 2,
            orientation: Orientation::default(),
            delta_middle: MiddleConvention::default(),
        })
    }

    pub fn with_orientation(mut self, orientation: Orientation) -> Self {
        self.orientation = orientation;
        self
    }

    pub fn with_delta_middle(mut self, convention: MiddleConvention) -> Self {
        self.delta_middle = convention;
        self
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn is_even(&self) -> bool {
        self.n.is_multiple_of(2)
    }

    /// `l_d^2 != 0`, which happens exactly when `4 | n`.
    pub fn middle_square_nonzero(&self) -> bool {
        self.n.is_multiple_of(4)
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn delta_middle(&self) -> MiddleConvention {
        self.delta_middle
    }

    /// The middle class selected by the delta convention.
    pub fn delta_middle_class(&self) -> BasisClass {
        match self.delta_middle {
            MiddleConvention::LdPrime if self.is_even() => BasisClass::LPrime(self.d),
            _ => BasisClass::L(self.d),
        }
    }

    pub fn is_valid(&self, b: BasisClass) -> bool {
        match b {
            BasisClass::H(k) => k < self.d || (k == self.d && !self.is_even()),
            BasisClass::L(j) => j <= self.d,
            BasisClass::LPrime(j) => self.is_even() && j == self.d,
        }
    }

    pub fn validate(&self, b: BasisClass) -> Result<BasisClass> {
        if self.is_valid(b) {
            Ok(b)
        } else {
            Err(CalcError::InvalidClass { class: b, n: self.n })
        }
    }

    /// Every basis class, ordered by the derived `Ord`.
    pub fn basis(&self) -> Vec<BasisClass> {
        let top_h = if self.is_even() { self.d } else { self.d + 1 };
        let mut out: Vec<BasisClass> = (0..top_h).map(BasisClass::H).collect();
        out.extend((0..=self.d).map(BasisClass::L));
        if self.is_even() {
            out.push(BasisClass::LPrime(self.d));
        }
        out
    }

    pub fn codim(&self, b: BasisClass) -> u32 {
        match b {
            BasisClass::H(k) => k,
            BasisClass::L(j) | BasisClass::LPrime(j) => self.n - j,
        }
    }

    /// Canonical expansion of `h^k`: empty above `d`, `l_d + l'_d` at `k = d`
    /// for even `n`.
    pub fn h_power(&self, k: u32) -> Vec<BasisClass> {
        if k > self.d {
            Vec::new()
        } else if k == self.d && self.is_even() {
            vec![BasisClass::L(self.d), BasisClass::LPrime(self.d)]
        } else {
            vec![BasisClass::H(k)]
        }
    }

    /// `l_j` for `j >= 0`; negative indices vanish.
    pub fn l_class(&self, j: i64) -> Option<BasisClass> {
        (0..=self.d as i64).contains(&j).then_some(BasisClass::L(j as u32))
    }

    /// Product of two basis classes as a sorted mod-2 sum of basis classes.
    pub fn mul_basis(&self, a: BasisClass, b: BasisClass) -> Result<Vec<BasisClass>> {
        self.validate(a)?;
        self.validate(b)?;
        Ok(self.mul_valid(a, b))
    }

    pub(crate) fn mul_valid(&self, a: BasisClass, b: BasisClass) -> Vec<BasisClass> {
        use BasisClass::*;
        match (a, b) {
            (H(x), H(y)) => self.h_power(x + y),
            (H(x), L(j)) | (L(j), H(x)) => self.lower(j, x, BasisClass::L),
            (H(x), LPrime(j)) | (LPrime(j), H(x)) => self.lower(j, x, BasisClass::LPrime),
            (L(i), L(j)) => {
                if self.is_even() && i == self.d && j == self.d && self.middle_square_nonzero() {
                    vec![L(0)]
                } else {
                    Vec::new()
                }
            }
            (LPrime(_), LPrime(_)) => {
                if self.middle_square_nonzero() {
                    vec![L(0)]
                } else {
                    Vec::new()
                }
            }
            (L(i), LPrime(_)) | (LPrime(_), L(i)) => {
                if i == self.d && !self.middle_square_nonzero() {
                    vec![L(0)]
                } else {
                    Vec::new()
                }
            }
        }
    }

    fn lower(&self, j: u32, by: u32, middle: fn(u32) -> BasisClass) -> Vec<BasisClass> {
        match j.checked_sub(by) {
            Some(0) if by > 0 => vec![BasisClass::L(0)],
            Some(r) if r == j => vec![middle(j)],
            Some(r) => vec![BasisClass::L(r)],
            None => Vec::new(),
        }
    }

    /// Degree of a basis class: 1 exactly for the point class.
    pub fn point_pushforward(b: BasisClass) -> bool {
        b == BasisClass::POINT
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use BasisClass::*;

    fn ctx(n: u32) -> QuadricContext {
        QuadricContext::new(n).unwrap()
    }

    #[test]
    fn context_fields() {
        for n in 1..20 {
            let c = ctx(n);
            assert_eq!(c.d(), n / 2);
            assert_eq!(c.middle_square_nonzero(), n % 4 == 0);
        }
        assert!(QuadricContext::new(0).is_err());
    }

    #[test]
    fn basis_size_is_rank_of_split_quadric() {
        for n in 1..16 {
            let c = ctx(n);
            let expected = if n % 2 == 0 { n + 2 } else { n + 1 };
            assert_eq!(c.basis().len() as u32, expected);
        }
    }

    #[test]
    fn ring_law_examples() {
        assert_eq!(ctx(5).mul_basis(H(1), L(2)).unwrap(), vec![L(1)]);
        assert_eq!(ctx(5).mul_basis(H(1), H(2)).unwrap(), vec![]);
        assert_eq!(ctx(4).mul_basis(L(2), L(2)).unwrap(), vec![L(0)]);
        assert_eq!(ctx(6).mul_basis(L(3), L(3)).unwrap(), vec![]);
        assert_eq!(ctx(6).mul_basis(L(3), LPrime(3)).unwrap(), vec![L(0)]);
        assert_eq!(ctx(5).mul_basis(L(1), L(2)).unwrap(), vec![]);
    }

    #[test]
    fn h_to_the_d_splits_for_even_n() {
        let c = ctx(6);
        assert_eq!(c.mul_basis(H(1), H(2)).unwrap(), vec![L(3), LPrime(3)]);
        assert_eq!(c.mul_basis(H(1), LPrime(3)).unwrap(), vec![L(2)]);
        assert_eq!(c.mul_basis(H(2), LPrime(3)).unwrap(), vec![L(1)]);
    }

    #[test]
    fn invalid_classes_are_rejected() {
        assert!(ctx(5).mul_basis(LPrime(2), H(0)).is_err());
        assert!(ctx(6).mul_basis(H(3), H(0)).is_err());
        assert!(ctx(6).mul_basis(LPrime(2), H(0)).is_err());
        assert!(ctx(5).mul_basis(L(3), H(0)).is_err());
    }

    #[test]
    fn codim_and_point() {
        assert_eq!(ctx(5).codim(H(2)), 2);
        assert_eq!(ctx(5).codim(L(1)), 4);
        assert_eq!(ctx(6).codim(LPrime(3)), 3);
        assert!(QuadricContext::point_pushforward(L(0)));
        assert!(!QuadricContext::point_pushforward(H(0)));
        assert!(!QuadricContext::point_pushforward(L(1)));
    }

    #[test]
    fn commutative_associative_graded() {
        for n in 1..=12 {
            let c = ctx(n);
            let basis = c.basis();
            for &a in &basis {
                for &b in &basis {
                    let ab = c.mul_basis(a, b).unwrap();
                    assert_eq!(ab, c.mul_basis(b, a).unwrap());
                    for &p in &ab {
                        assert_eq!(c.codim(p), c.codim(a) + c.codim(b));
                    }
                    for &e in &basis {
                        let left = mul_sum(&c, &ab, &[e]);
                        let bc = c.mul_basis(b, e).unwrap();
                        let right = mul_sum(&c, &[a], &bc);
                        assert_eq!(left, right, "n={n} ({a})({b})({e})");
                    }
                }
            }
        }
    }

    fn mul_sum(c: &QuadricContext, xs: &[BasisClass], ys: &[BasisClass]) -> Vec<BasisClass> {
        let mut acc = std::collections::BTreeSet::new();
        for &x in xs {
            for &y in ys {
                for p in c.mul_basis(x, y).unwrap() {
                    if !acc.remove(&p) {
                        acc.insert(p);
                    }
                }
            }
        }
        acc.into_iter().collect()
    }

    #[test]
    fn oracle_agreement() {
        use quadcycles_oracle::integral::{Class, IntegralQuadric};
        for n in 1..=12 {
            let c = ctx(n);
            let oracle = IntegralQuadric::new(n);
            let to_oracle = |b: BasisClass| match b {
                H(k) => Class::H(k),
                L(j) => Class::L(j),
                LPrime(j) => Class::LPrime(j),
            };
            for &a in &c.basis() {
                for &b in &c.basis() {
                    let mut expected: Vec<BasisClass> = oracle
                        .product_mod2(to_oracle(a), to_oracle(b))
                        .into_iter()
                        .map(|cl| match cl {
                            Class::H(k) => H(k),
                            Class::L(j) => L(j),
                            Class::LPrime(j) => LPrime(j),
                        })
                        .collect();
                    expected.sort();
                    assert_eq!(c.mul_basis(a, b).unwrap(), expected, "n={n} {a}*{b}");
                }
            }
        }
    }
}
