//! Steenrod operations of cohomological type on `Ch(X_K^r)`.
//!
//! On a single split quadric, `S^l(h^k) = C(k,l) h^(k+l)` and
//! `S^l(l_j) = C(n+1-j,l) l_(j-l)`. On products the total operation acts
//! factor by factor. The second middle class `l'_d` follows the `l_d` rule.

use serde::{Deserialize, Serialize};

use crate::classes::{h_chain, rho, sym_of};
use crate::cycle::{Cycle, Monomial};
use crate::error::{CalcError, Result};
use crate::quadric::{BasisClass, QuadricContext};

/// `C(a, b) mod 2` by Lucas: odd iff the bits of `b` are a subset of those
/// of `a`.
pub fn binom_parity(a: u64, b: u64) -> bool {
    a & b == b
}

/// Where a Steenrod operation acts on `X^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SteenrodTarget {
    /// One factor (0-based), the identity elsewhere.
    Slot(usize),
    /// The degree-`l` part of the total operation on all factors.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SteenrodQuery {
    pub degree: u32,
    pub target: SteenrodTarget,
}

impl SteenrodQuery {
    pub fn slot(degree: u32, slot: usize) -> Self {
        SteenrodQuery { degree, target: SteenrodTarget::Slot(slot) }
    }

    pub fn all(degree: u32) -> Self {
        SteenrodQuery { degree, target: SteenrodTarget::All }
    }
}

/// `S^l(b)` as a mod-2 sum of basis classes.
pub fn steenrod_basis(b: BasisClass, l: u32, ctx: &QuadricContext) -> Result<Vec<BasisClass>> {
    ctx.validate(b)?;
    Ok(steenrod_valid(b, l, ctx))
}

fn steenrod_valid(b: BasisClass, l: u32, ctx: &QuadricContext) -> Vec<BasisClass> {
    match b {
        BasisClass::H(k) => {
            if binom_parity(k as u64, l as u64) {
                ctx.h_power(k + l)
            } else {
                Vec::new()
            }
        }
        BasisClass::L(j) | BasisClass::LPrime(j) => {
            if l > j || !binom_parity((ctx.n() + 1 - j) as u64, l as u64) {
                Vec::new()
            } else if l == 0 {
                vec![b]
            } else {
                vec![BasisClass::L(j - l)]
            }
        }
    }
}

/// Apply a Steenrod query to a cycle.
pub fn steenrod(x: &Cycle, q: SteenrodQuery, ctx: &QuadricContext) -> Result<Cycle> {
    x.validate(ctx)?;
    let mut out = Cycle::zero(x.arity());
    match q.target {
        SteenrodTarget::Slot(s) => {
            if s >= x.arity() {
                return Err(CalcError::SlotOutOfRange { slot: s, arity: x.arity() });
            }
            for m in x.monomials() {
                let slots: Vec<Vec<BasisClass>> = m
                    .factors()
                    .iter()
                    .enumerate()
                    .map(|(k, &b)| if k == s { steenrod_valid(b, q.degree, ctx) } else { vec![b] })
                    .collect();
                out = out.add(&Cycle::external_of_slots(&slots))?;
            }
        }
        SteenrodTarget::All => {
            for m in x.monomials() {
                let mut slots = Vec::with_capacity(m.arity());
                total_part(m, 0, q.degree, &mut slots, &mut out, ctx);
            }
        }
    }
    Ok(out)
}

/// Distribute `remaining` degrees over the factors of `m` from `slot` on.
fn total_part(
    m: &Monomial,
    slot: usize,
    remaining: u32,
    slots: &mut Vec<Vec<BasisClass>>,
    out: &mut Cycle,
    ctx: &QuadricContext,
) {
    if slot == m.arity() {
        if remaining == 0 {
            *out = out.add(&Cycle::external_of_slots(slots)).expect("arity preserved");
        }
        return;
    }
    let b = m.factors()[slot];
    for l in 0..=remaining.min(ctx.codim(b)) {
        let image = steenrod_valid(b, l, ctx);
        if image.is_empty() {
            continue;
        }
        slots.push(image);
        total_part(m, slot + 1, remaining - l, slots, out, ctx);
        slots.pop();
    }
}

/// Total Steenrod operation `S = sum_l S^l`.
pub fn total_steenrod(x: &Cycle, ctx: &QuadricContext) -> Result<Cycle> {
    let top = ctx.n() * x.arity() as u32;
    let mut out = Cycle::zero(x.arity());
    for l in 0..=top {
        out = out.add(&steenrod(x, SteenrodQuery::all(l), ctx)?)?;
    }
    Ok(out)
}

fn check_ijl(i: u32, j: u32, l: u32, ctx: &QuadricContext) -> Result<()> {
    if i < 2 || i > ctx.d() || l == 0 || l >= i || j < l || j > ctx.d() {
        return Err(CalcError::IndexOutOfRange(format!(
            "rho({i},{j},{l}) needs 1 <= l < i <= d and l <= j <= d (d = {})",
            ctx.d()
        )));
    }
    Ok(())
}

/// Pull back along `X^i -> X^(i+1)`, `(x_1, ..., x_i) -> (x_1, x_1, x_2, ..., x_i)`.
pub fn pull_first_diagonal(x: &Cycle, ctx: &QuadricContext) -> Result<Cycle> {
    let i = x.arity() - 1;
    let map: Vec<usize> = std::iter::once(0).chain(0..i).collect();
    x.diagonal_pullback(&map, i, ctx)
}

/// `rho_{i,j,l}`: pullback along the first diagonal of `(S^l x Id^i)(rho_{i,j})`.
pub fn rho_ijl(i: u32, j: u32, l: u32, ctx: &QuadricContext) -> Result<Cycle> {
    check_ijl(i, j, l, ctx)?;
    let r = rho(i, j, ctx)?;
    let lifted = steenrod(&r, SteenrodQuery::slot(l, 0), ctx)?;
    pull_first_diagonal(&lifted, ctx)
}

/// `rho_{i,j,l}` built directly from its three-sum expansion.
pub fn rho_ijl_closed_form(i: u32, j: u32, l: u32, ctx: &QuadricContext) -> Result<Cycle> {
    check_ijl(i, j, l, ctx)?;
    let n = ctx.n();
    let mut out = Cycle::zero(i as usize);
    let l_class = |idx: i64| -> Vec<BasisClass> { ctx.l_class(idx).into_iter().collect() };
    let lifted = |first: Vec<BasisClass>, rest: Cycle| Cycle::external_of_slots(&[first]).external(&rest);

    for k in (l..i).filter(|&k| binom_parity(k as u64, l as u64)) {
        for s in (0..i).filter(|&s| s != k) {
            let mut rest = h_chain(i, &[s, k], ctx);
            rest.push(vec![BasisClass::L(j)]);
            out = out.add(&lifted(ctx.h_power(k + l + s), sym_of(&rest)))?;
        }
        let rest = sym_of(&h_chain(i, &[k], ctx));
        out = out.add(&lifted(l_class(j as i64 - k as i64 - l as i64), rest))?;
    }
    if binom_parity((n + 1 - j) as u64, l as u64) {
        for s in 0..i {
            let rest = sym_of(&h_chain(i, &[s], ctx));
            out = out.add(&lifted(l_class(j as i64 - l as i64 - s as i64), rest))?;
        }
    }
    Ok(out)
}
