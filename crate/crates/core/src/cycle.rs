//! Mod-2 cycles on `X^r`.
//!
//! A [`Cycle`] is a finite set of external-product monomials; addition is
//! symmetric difference. Every operation that needs ring structure takes the
//! [`QuadricContext`] explicitly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;

use crate::error::{CalcError, Result};
use crate::gf2::{EchelonBasis, SparseVec};
use crate::perm::Permutation;
use crate::quadric::{BasisClass, QuadricContext};

/// An external product `b_1 x ... x b_r` of basis classes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<BasisClass>);

impl Monomial {
    pub fn new(factors: Vec<BasisClass>) -> Self {
        Monomial(factors)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn factors(&self) -> &[BasisClass] {
        &self.0
    }

    pub fn codim(&self, ctx: &QuadricContext) -> u32 {
        self.0.iter().map(|&b| ctx.codim(b)).sum()
    }

    pub fn is_point(&self) -> bool {
        self.0.iter().all(|&b| QuadricContext::point_pushforward(b))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(" x "))
    }
}

impl From<Vec<BasisClass>> for Monomial {
    fn from(v: Vec<BasisClass>) -> Self {
        Monomial(v)
    }
}

/// Expand a product of per-slot sums into monomials.
fn expand(slots: &[Vec<BasisClass>]) -> Vec<Monomial> {
    if slots.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    slots.iter().map(|s| s.iter().copied()).multi_cartesian_product().map(Monomial).collect()
}

/// Product of two mod-2 sums of basis classes.
fn mul_sums(ctx: &QuadricContext, xs: &[BasisClass], ys: &[BasisClass]) -> Vec<BasisClass> {
    let mut acc = BTreeSet::new();
    for &x in xs {
        for &y in ys {
            for p in ctx.mul_valid(x, y) {
                if !acc.remove(&p) {
                    acc.insert(p);
                }
            }
        }
    }
    acc.into_iter().collect()
}

/// An element of `Ch(X_K^r)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    arity: usize,
    terms: BTreeSet<Monomial>,
}

impl Cycle {
    pub fn zero(arity: usize) -> Self {
        Cycle { arity, terms: BTreeSet::new() }
    }

    /// The fundamental class `[X] x ... x [X]`.
    pub fn unit(arity: usize) -> Self {
        Cycle::from_monomial(Monomial(vec![BasisClass::ONE; arity]))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let arity = m.arity();
        let mut terms = BTreeSet::new();
        terms.insert(m);
        Cycle { arity, terms }
    }

    pub fn basis(b: BasisClass) -> Self {
        Cycle::from_monomial(Monomial(vec![b]))
    }

    /// Build from monomials, cancelling repeats mod 2.
    pub fn from_monomials(arity: usize, ms: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let mut c = Cycle::zero(arity);
        for m in ms {
            if m.arity() != arity {
                return Err(CalcError::ArityMismatch { left: arity, right: m.arity() });
            }
            c.toggle(m);
        }
        Ok(c)
    }

    /// Arity-one cycle from a mod-2 sum of basis classes.
    pub fn from_classes(classes: &[BasisClass]) -> Self {
        let mut c = Cycle::zero(1);
        for &b in classes {
            c.toggle(Monomial(vec![b]));
        }
        c
    }

    /// `h^k` on `X`, normalized (zero above `d`, `l_d + l'_d` at `d` for even `n`).
    pub fn h_power(k: u32, ctx: &QuadricContext) -> Self {
        Cycle::from_classes(&ctx.h_power(k))
    }

    /// `l_j` on `X`; zero for negative `j`.
    pub fn l(j: i64, ctx: &QuadricContext) -> Self {
        match ctx.l_class(j) {
            Some(b) => Cycle::basis(b),
            None => Cycle::zero(1),
        }
    }

    /// External product of arity-one sums given slot by slot.
    pub fn external_of_slots(slots: &[Vec<BasisClass>]) -> Self {
        let mut c = Cycle::zero(slots.len());
        for m in expand(slots) {
            c.toggle(m);
        }
        c
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn toggle(&mut self, m: Monomial) {
        debug_assert_eq!(m.arity(), self.arity);
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn validate(&self, ctx: &QuadricContext) -> Result<()> {
        for m in &self.terms {
            for &b in m.factors() {
                ctx.validate(b)?;
            }
        }
        Ok(())
    }

    /// Codimensions occurring in the support.
    pub fn codims(&self, ctx: &QuadricContext) -> BTreeSet<u32> {
        self.terms.iter().map(|m| m.codim(ctx)).collect()
    }

    fn check_arity(&self, other: &Cycle) -> Result<()> {
        if self.arity != other.arity {
            return Err(CalcError::ArityMismatch { left: self.arity, right: other.arity });
        }
        Ok(())
    }

    pub fn add(&self, other: &Cycle) -> Result<Cycle> {
        self.check_arity(other)?;
        let terms = self.terms.symmetric_difference(&other.terms).cloned().collect();
        Ok(Cycle { arity: self.arity, terms })
    }

    /// Intersection product, factor by factor.
    pub fn mul(&self, other: &Cycle, ctx: &QuadricContext) -> Result<Cycle> {
        self.check_arity(other)?;
        self.validate(ctx)?;
        other.validate(ctx)?;
        let mut out = Cycle::zero(self.arity);
        for a in &self.terms {
            for b in &other.terms {
                let slots: Vec<Vec<BasisClass>> =
                    a.factors().iter().zip(b.factors()).map(|(&x, &y)| ctx.mul_valid(x, y)).collect();
                for m in expand(&slots) {
                    out.toggle(m);
                }
            }
        }
        Ok(out)
    }

    pub fn external(&self, other: &Cycle) -> Cycle {
        let mut out = Cycle::zero(self.arity + other.arity);
        for a in &self.terms {
            for b in &other.terms {
                let mut f = a.0.clone();
                f.extend_from_slice(&b.0);
                out.toggle(Monomial(f));
            }
        }
        out
    }

    /// Push forward along the slot permutation `s`.
    pub fn permute(&self, s: &Permutation) -> Result<Cycle> {
        if s.len() != self.arity {
            return Err(CalcError::ArityMismatch { left: self.arity, right: s.len() });
        }
        let mut out = Cycle::zero(self.arity);
        for m in &self.terms {
            out.toggle(permute_monomial(m, s));
        }
        Ok(out)
    }

    /// Sum of pushforwards over all `r!` permutations.
    pub fn sym(&self) -> Cycle {
        let mut out = Cycle::zero(self.arity);
        for s in Permutation::all(self.arity) {
            for m in &self.terms {
                out.toggle(permute_monomial(m, &s));
            }
        }
        out
    }

    /// Sum of pushforwards over the cyclic group generated by `generator`.
    pub fn subgroup_sum(&self, generator: &Permutation) -> Result<Cycle> {
        if generator.len() != self.arity {
            return Err(CalcError::ArityMismatch { left: self.arity, right: generator.len() });
        }
        let mut out = Cycle::zero(self.arity);
        for g in generator.cyclic_group() {
            for m in &self.terms {
                out.toggle(permute_monomial(m, &g));
            }
        }
        Ok(out)
    }

    /// Sum of pushforwards over an explicit list of permutations.
    pub fn sum_over<'a>(&self, group: impl IntoIterator<Item = &'a Permutation>) -> Result<Cycle> {
        let mut out = Cycle::zero(self.arity);
        for g in group {
            out = out.add(&self.permute(g)?)?;
        }
        Ok(out)
    }

    /// Pullback along the generalized diagonal `X^s -> X^r`,
    /// `(x_1, ..., x_s) -> (x_{f(1)}, ..., x_{f(r)})`.
    ///
    /// `map[k]` is the target slot (0-based) of source slot `k`; factors that
    /// share a target slot are multiplied together.
    pub fn diagonal_pullback(&self, map: &[usize], target: usize, ctx: &QuadricContext) -> Result<Cycle> {
        if map.len() != self.arity {
            return Err(CalcError::ArityMismatch { left: self.arity, right: map.len() });
        }
        let hit: BTreeSet<usize> = map.iter().copied().collect();
        if target == 0 || map.iter().any(|&t| t >= target) || hit.len() != target {
            return Err(CalcError::NotSurjective { map: map.to_vec(), target });
        }
        self.validate(ctx)?;
        let mut out = Cycle::zero(target);
        for m in &self.terms {
            let mut slots = vec![vec![BasisClass::ONE]; target];
            for (&b, &t) in m.factors().iter().zip(map) {
                slots[t] = mul_sums(ctx, &slots[t], &[b]);
            }
            for p in expand(&slots) {
                out.toggle(p);
            }
        }
        Ok(out)
    }

    /// Pushforward along the projection forgetting the slots in `drop`.
    pub fn projection_pushforward(&self, drop: &[usize]) -> Result<Cycle> {
        let dropped: BTreeSet<usize> = drop.iter().copied().collect();
        if let Some(&s) = dropped.iter().find(|&&s| s >= self.arity) {
            return Err(CalcError::SlotOutOfRange { slot: s, arity: self.arity });
        }
        if dropped.len() == self.arity {
            return Err(CalcError::DropAll(self.arity));
        }
        let mut out = Cycle::zero(self.arity - dropped.len());
        for m in &self.terms {
            let survives = dropped.iter().all(|&s| m.0[s] == BasisClass::POINT);
            if survives {
                let kept = m.0.iter().enumerate().filter(|(k, _)| !dropped.contains(k)).map(|(_, &b)| b).collect();
                out.toggle(Monomial(kept));
            }
        }
        Ok(out)
    }

    /// Degree of the zero-dimensional part, mod 2.
    pub fn degree(&self) -> bool {
        self.terms.iter().filter(|m| m.is_point()).count() % 2 == 1
    }

    /// Action of `alpha`, viewed as a correspondence `X ~> X^(r-1)`, on a
    /// cycle of `X`.
    pub fn corr_action(alpha: &Cycle, x: &Cycle, ctx: &QuadricContext) -> Result<Cycle> {
        if alpha.arity < 2 {
            return Err(CalcError::BadSplit { left: alpha.arity, right: x.arity, middle: 1 });
        }
        if x.arity != 1 {
            return Err(CalcError::ArityMismatch { left: 1, right: x.arity });
        }
        let lifted = x.external(&Cycle::unit(alpha.arity - 1));
        alpha.mul(&lifted, ctx)?.projection_pushforward(&[0])
    }

    /// Composition `beta ∘ alpha` of correspondences `alpha: X^a ~> X^b` and
    /// `beta: X^b ~> X^c`, where `b = middle`.
    pub fn corr_compose(alpha: &Cycle, beta: &Cycle, middle: usize, ctx: &QuadricContext) -> Result<Cycle> {
        let bad = || CalcError::BadSplit { left: alpha.arity, right: beta.arity, middle };
        if middle == 0 || alpha.arity < middle || beta.arity < middle {
            return Err(bad());
        }
        let a = alpha.arity - middle;
        let c = beta.arity - middle;
        if a + c == 0 {
            return Err(bad());
        }
        let left = alpha.external(&Cycle::unit(c));
        let right = Cycle::unit(a).external(beta);
        let middle_slots: Vec<usize> = (a..a + middle).collect();
        left.mul(&right, ctx)?.projection_pushforward(&middle_slots)
    }

    /// `self == other` modulo the span of external products of hyperplane
    /// powers.
    pub fn equal_mod_nonessential(&self, other: &Cycle, ctx: &QuadricContext) -> Result<bool> {
        let diff = self.add(other)?;
        diff.validate(ctx)?;
        if diff.is_zero() {
            return Ok(true);
        }
        // Any nonessential product meeting the difference has exponents read
        // off one of its monomials.
        let exponent = |b: BasisClass| -> Option<u32> {
            match b {
                BasisClass::H(k) => Some(k),
                BasisClass::L(j) | BasisClass::LPrime(j) if ctx.is_even() && j == ctx.d() => Some(j),
                _ => None,
            }
        };
        let tuples: BTreeSet<Vec<u32>> = diff
            .terms
            .iter()
            .filter_map(|m| m.factors().iter().map(|&b| exponent(b)).collect::<Option<Vec<u32>>>())
            .collect();
        let mut index: BTreeMap<Monomial, usize> = BTreeMap::new();
        let coord = |m: Monomial, index: &mut BTreeMap<Monomial, usize>| -> usize {
            let next = index.len();
            *index.entry(m).or_insert(next)
        };
        let mut span = EchelonBasis::new();
        for t in &tuples {
            let slots: Vec<Vec<BasisClass>> = t.iter().map(|&k| ctx.h_power(k)).collect();
            let row: SparseVec = expand(&slots).into_iter().map(|m| coord(m, &mut index)).collect();
            span.insert(row);
        }
        let target: SparseVec = diff.terms.iter().cloned().map(|m| coord(m, &mut index)).collect();
        Ok(span.contains(target))
    }
}

fn permute_monomial(m: &Monomial, s: &Permutation) -> Monomial {
    let mut out = m.0.clone();
    for (k, &b) in m.0.iter().enumerate() {
        out[s.apply(k)] = b;
    }
    Monomial(out)
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        write!(f, "{}", self.terms.iter().join(" + "))
    }
}
