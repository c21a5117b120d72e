//! Named cycles on powers of the quadric: the symmetric cycles `rho_{i,j}`,
//! the rational delta cycles, the diagonal and the 1-primordial cycle.

use serde::{Deserialize, Serialize};

use crate::cycle::Cycle;
use crate::error::{CalcError, Result};
use crate::quadric::{BasisClass, QuadricContext};

/// Slots `h^k` for `k in 0..i`, skipping the exponents in `skip`.
pub fn h_chain(i: u32, skip: &[u32], ctx: &QuadricContext) -> Vec<Vec<BasisClass>> {
    (0..i).filter(|k| !skip.contains(k)).map(|k| ctx.h_power(k)).collect()
}

/// Symmetrization of the external product of the given slots.
pub fn sym_of(slots: &[Vec<BasisClass>]) -> Cycle {
    Cycle::external_of_slots(slots).sym()
}

/// `sym(1 x h x ... x h^(i-1))`, the image of `rho_{i,j}` on `h^j`.
pub fn sym_h_chain(i: u32, ctx: &QuadricContext) -> Cycle {
    sym_of(&h_chain(i, &[], ctx))
}

fn out_of_range(what: &str, ctx: &QuadricContext) -> CalcError {
    CalcError::IndexOutOfRange(format!("{what} (n = {}, d = {})", ctx.n(), ctx.d()))
}

/// `rho_{i,j} = sym(1 x h x ... x h^(i-1) x l_j)` on `X^(i+1)`.
pub fn rho(i: u32, j: u32, ctx: &QuadricContext) -> Result<Cycle> {
    if i > ctx.d() || j > ctx.d() {
        return Err(out_of_range(&format!("rho({i},{j})"), ctx));
    }
    let mut slots = h_chain(i, &[], ctx);
    slots.push(vec![BasisClass::L(j)]);
    Ok(sym_of(&slots))
}

/// The rational symmetric cycle
/// `rho_{i,j} + sum_{m=i}^{d} sym(prod_{k<i, k != j} h^k x h^m x l_m)`.
///
/// On even quadrics the `m = d` term uses the middle class chosen by the
/// context's delta convention.
pub fn delta(i: u32, j: u32, ctx: &QuadricContext) -> Result<Cycle> {
    if i == 0 || i > ctx.d() || j >= i {
        return Err(out_of_range(&format!("delta({i},{j})"), ctx));
    }
    let mut out = rho(i, j, ctx)?;
    for m in i..=ctx.d() {
        let mut slots = h_chain(i, &[j], ctx);
        slots.push(ctx.h_power(m));
        let l_m = if m == ctx.d() { ctx.delta_middle_class() } else { BasisClass::L(m) };
        slots.push(vec![l_m]);
        out = out.add(&sym_of(&slots))?;
    }
    Ok(out)
}

/// Class of the diagonal in `X^2`.
pub fn diagonal(ctx: &QuadricContext) -> Cycle {
    if ctx.d() == 0 {
        let (one, pt) = (vec![BasisClass::ONE], vec![BasisClass::POINT]);
        return Cycle::external_of_slots(&[one.clone(), pt.clone()])
            .add(&Cycle::external_of_slots(&[pt, one]))
            .expect("same arity");
    }
    let base = delta(1, 0, ctx).expect("delta(1,0) exists for d >= 1");
    if ctx.middle_square_nonzero() {
        let hd = ctx.h_power(ctx.d());
        let correction = Cycle::external_of_slots(&[hd.clone(), hd]);
        base.add(&correction).expect("same arity")
    } else {
        base
    }
}

/// Shape data of the 1-primordial cycle of an anisotropic quadric with
/// first Witt index `i1`: one coefficient for each `k` in
/// `i1 ..= d - i1 + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimordialSpec {
    i1: u32,
    coeffs: Vec<bool>,
}

impl PrimordialSpec {
    pub fn new(i1: u32, coeffs: Vec<bool>, ctx: &QuadricContext) -> Result<Self> {
        if i1 == 0 || i1 > ctx.d() {
            return Err(out_of_range(&format!("first Witt index {i1}"), ctx));
        }
        let expected = Self::range_len(i1, ctx);
        if coeffs.len() != expected {
            return Err(CalcError::IndexOutOfRange(format!(
                "primordial coefficients: expected {expected}, got {}",
                coeffs.len()
            )));
        }
        Ok(PrimordialSpec { i1, coeffs })
    }

    /// Number of free coefficients for first Witt index `i1`.
    pub fn range_len(i1: u32, ctx: &QuadricContext) -> usize {
        (ctx.d() + 2).saturating_sub(2 * i1) as usize
    }

    /// Every admissible coefficient vector for `i1`.
    pub fn all(i1: u32, ctx: &QuadricContext) -> Result<Vec<PrimordialSpec>> {
        let len = Self::range_len(i1, ctx);
        (0..1u64 << len)
            .map(|bits| {
                let coeffs = (0..len).map(|b| bits >> b & 1 == 1).collect();
                PrimordialSpec::new(i1, coeffs, ctx)
            })
            .collect()
    }

    pub fn i1(&self) -> u32 {
        self.i1
    }

    pub fn coeffs(&self) -> &[bool] {
        &self.coeffs
    }
}

/// `1 x l_{i1-1} + l_{i1-1} x 1 + sum_k a_k (h^k x l_{k+i1-1} + l_{k+i1-1} x h^k)`.
pub fn primordial(spec: &PrimordialSpec, ctx: &QuadricContext) -> Result<Cycle> {
    if spec.i1 == 0 || spec.i1 > ctx.d() || spec.coeffs.len() != PrimordialSpec::range_len(spec.i1, ctx) {
        return Err(out_of_range("primordial spec", ctx));
    }
    let base = vec![BasisClass::L(spec.i1 - 1)];
    let one = vec![BasisClass::ONE];
    let mut out =
        Cycle::external_of_slots(&[one.clone(), base.clone()]).add(&Cycle::external_of_slots(&[base, one]))?;
    for (offset, &a) in spec.coeffs.iter().enumerate() {
        if !a {
            continue;
        }
        let k = spec.i1 + offset as u32;
        let h = ctx.h_power(k);
        let l = vec![BasisClass::L(k + spec.i1 - 1)];
        out = out.add(&Cycle::external_of_slots(&[h.clone(), l.clone()]))?.add(&Cycle::external_of_slots(&[l, h]))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::Monomial;
    use crate::perm::Permutation;
    use crate::quadric::MiddleConvention;
    use BasisClass::*;

    fn ctx(n: u32) -> QuadricContext {
        QuadricContext::new(n).unwrap()
    }

    fn sum(arity: usize, ms: &[&[BasisClass]]) -> Cycle {
        Cycle::from_monomials(arity, ms.iter().map(|m| Monomial::new(m.to_vec()))).unwrap()
    }

    #[test]
    fn rho_examples() {
        let c = ctx(5);
        assert_eq!(rho(0, 2, &c).unwrap(), sum(1, &[&[L(2)]]));
        assert_eq!(rho(1, 1, &c).unwrap(), sum(2, &[&[H(0), L(1)], &[L(1), H(0)]]));
        let r20 = rho(2, 0, &c).unwrap();
        assert_eq!(r20.len(), 6);
        assert_eq!(r20.codims(&c).into_iter().collect::<Vec<_>>(), vec![5 + 1]);
        assert!(rho(3, 0, &c).is_err());
    }

    #[test]
    fn delta_examples() {
        let c = ctx(5);
        let d10 = delta(1, 0, &c).unwrap();
        let expected =
            sum(2, &[&[H(0), L(0)], &[L(0), H(0)], &[H(1), L(1)], &[L(1), H(1)], &[H(2), L(2)], &[L(2), H(2)]]);
        assert_eq!(d10, expected);
        let d20 = delta(2, 0, &c).unwrap();
        let expected =
            sym_of(&[vec![H(0)], vec![H(1)], vec![L(0)]]).add(&sym_of(&[vec![H(1)], vec![H(2)], vec![L(2)]])).unwrap();
        assert_eq!(d20, expected);
        assert!(delta(2, 2, &c).is_err());
        assert!(delta(0, 0, &c).is_err());
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(diagonal(&ctx(5)), delta(1, 0, &ctx(5)).unwrap());
        let c4 = ctx(4);
        let mid = vec![L(2), LPrime(2)];
        let expected = delta(1, 0, &c4).unwrap().add(&Cycle::external_of_slots(&[mid.clone(), mid])).unwrap();
        assert_eq!(diagonal(&c4), expected);
    }

    #[test]
    fn diagonal_is_identity() {
        for n in 1..=12 {
            for conv in [MiddleConvention::Ld, MiddleConvention::LdPrime] {
                let c = ctx(n).with_delta_middle(conv);
                let diag = diagonal(&c);
                for b in c.basis() {
                    let x = Cycle::basis(b);
                    assert_eq!(Cycle::corr_action(&diag, &x, &c).unwrap(), x, "n={n} {b}");
                }
            }
        }
    }

    #[test]
    fn primordial_examples() {
        let c = ctx(5);
        let p = primordial(&PrimordialSpec::new(2, vec![], &c).unwrap(), &c).unwrap();
        assert_eq!(p, sum(2, &[&[H(0), L(1)], &[L(1), H(0)]]));
        let p = primordial(&PrimordialSpec::new(1, vec![true, false], &c).unwrap(), &c).unwrap();
        assert_eq!(p, sum(2, &[&[H(0), L(0)], &[L(0), H(0)], &[H(1), L(1)], &[L(1), H(1)]]));
        assert!(PrimordialSpec::new(1, vec![true], &c).is_err());
        assert!(PrimordialSpec::new(3, vec![], &c).is_err());
        let swap = Permutation::new(vec![1, 0]).unwrap();
        for n in 2..=10 {
            let c = ctx(n);
            for i1 in 1..=c.d() {
                for spec in PrimordialSpec::all(i1, &c).unwrap() {
                    let p = primordial(&spec, &c).unwrap();
                    assert_eq!(p.permute(&swap).unwrap(), p);
                }
            }
        }
    }
}
