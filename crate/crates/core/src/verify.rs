//! Registered identity families, run over a range of quadric dimensions.
//!
//! Every suite produces [`Check`]s; a failing check carries the offending
//! cycle (the sum of both sides) or the error that prevented evaluation.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::classes::{delta, diagonal, h_chain, primordial, rho, sym_h_chain, sym_of, PrimordialSpec};
use crate::cycle::Cycle;
use crate::edi::{
    enumerate_admissible, propagate, propagate_with_order, rule_square_shift, EdiTable, Rule, WittContext,
    DEFAULT_MAX_N,
};
use crate::error::Result;
use crate::grassmannian::{nondecreasing_lists, ZProduct};
use crate::perm::Permutation;
use crate::quadric::{BasisClass, MiddleConvention, QuadricContext};
use crate::report::{Check, Report};
use crate::steenrod::{binom_parity, rho_ijl, rho_ijl_closed_form, steenrod, SteenrodQuery};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("dimension range {min}..={max} is empty or starts at 0")]
    BadRange { min: u32, max: u32 },
    #[error("n = {n} exceeds the bound {max}")]
    BoundExceeded { n: u32, max: u32 },
}

/// A named identity family.
pub struct Suite {
    pub name: &'static str,
    pub run: fn(u32, &mut Vec<Check>),
}

pub const SUITES: &[Suite] = &[
    Suite { name: "ring", run: suite_ring },
    Suite { name: "diagonal", run: suite_diagonal },
    Suite { name: "delta-recursion", run: suite_delta_recursion },
    Suite { name: "delta-alternating", run: suite_delta_alternating },
    Suite { name: "rho-action", run: suite_rho_action },
    Suite { name: "steenrod-axioms", run: suite_steenrod_axioms },
    Suite { name: "steenrod-closed-form", run: suite_steenrod_closed_form },
    Suite { name: "steenrod-collapse", run: suite_steenrod_collapse },
    Suite { name: "partial-symmetrization", run: suite_partial_symmetrization },
    Suite { name: "steenrod-shift", run: suite_steenrod_shift },
    Suite { name: "primordial-composition", run: suite_primordial_composition },
    Suite { name: "grassmannian-degree", run: suite_grassmannian_degree },
    Suite { name: "edi-closure", run: suite_edi_closure },
    Suite { name: "edi-crosscheck", run: suite_edi_crosscheck },
];

/// Run every suite whose name contains `filter` for each `n` in range.
/// One report per dimension, in increasing `n`; dimensions for which no
/// suite matched are omitted.
pub fn run_verify(n_min: u32, n_max: u32, filter: &str, max_n: u32) -> Result<Vec<Report>, VerifyError> {
    if n_min == 0 || n_min > n_max {
        return Err(VerifyError::BadRange { min: n_min, max: n_max });
    }
    if n_max > max_n {
        return Err(VerifyError::BoundExceeded { n: n_max, max: max_n });
    }
    let suites: Vec<&Suite> = SUITES.iter().filter(|s| s.name.contains(filter)).collect();
    if suites.is_empty() {
        return Ok(Vec::new());
    }
    let reports = std::thread::scope(|scope| {
        let handles: Vec<_> = (n_min..=n_max)
            .map(|n| {
                let suites = &suites;
                scope.spawn(move || {
                    let mut report = base_report(n);
                    for s in suites {
                        (s.run)(n, &mut report.checks);
                    }
                    report
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite panicked")).collect()
    });
    Ok(reports)
}

/// Report header for dimension `n` with the conventions the suites cover.
pub fn base_report(n: u32) -> Report {
    let conventions: Vec<&str> = if n.is_multiple_of(2) { vec!["ld", "ldprime"] } else { vec!["ld"] };
    Report::new(n).convention("orientation", "ld").convention("delta_middle", conventions)
}

fn ctx(n: u32) -> QuadricContext {
    QuadricContext::new(n).expect("suites run on positive n")
}

fn contexts(n: u32) -> Vec<QuadricContext> {
    let c = ctx(n);
    if c.is_even() {
        vec![c, c.with_delta_middle(MiddleConvention::LdPrime)]
    } else {
        vec![c]
    }
}

fn compare(check: Check, lhs: Result<Cycle>, rhs: Result<Cycle>) -> Check {
    match (lhs, rhs) {
        (Ok(a), Ok(b)) if a == b => check.passed(),
        (Ok(a), Ok(b)) => match a.add(&b) {
            Ok(diff) => check.failed(format!("difference {diff}")),
            Err(e) => check.failed(e.to_string()),
        },
        (Err(e), _) | (_, Err(e)) => check.failed(e.to_string()),
    }
}

fn truth(check: Check, ok: bool, witness: impl FnOnce() -> String) -> Check {
    if ok {
        check.passed()
    } else {
        check.failed(witness())
    }
}

fn basis_sum(classes: &[BasisClass]) -> String {
    if classes.is_empty() {
        "0".into()
    } else {
        classes.iter().map(BasisClass::to_string).collect::<Vec<_>>().join(" + ")
    }
}

fn suite_ring(n: u32, out: &mut Vec<Check>) {
    let c = ctx(n);
    let basis = c.basis();
    let products = |pairs: &mut dyn Iterator<Item = (BasisClass, BasisClass)>| -> Vec<BasisClass> {
        let mut acc = BTreeSet::new();
        for (x, y) in pairs {
            for p in c.mul_basis(x, y).expect("basis classes") {
                if !acc.insert(p) {
                    acc.remove(&p);
                }
            }
        }
        acc.into_iter().collect()
    };
    let mut comm = None;
    let mut assoc = None;
    let mut grading = None;
    for &a in &basis {
        for &b in &basis {
            let ab = c.mul_basis(a, b).expect("basis classes");
            if ab != c.mul_basis(b, a).expect("basis classes") {
                comm.get_or_insert(format!("{a} * {b}"));
            }
            if ab.iter().any(|&p| c.codim(p) != c.codim(a) + c.codim(b)) {
                grading.get_or_insert(format!("{a} * {b} = {}", basis_sum(&ab)));
            }
            for &z in &basis {
                let bz = c.mul_basis(b, z).expect("basis classes");
                let left = products(&mut ab.iter().map(|&p| (p, z)));
                let right = products(&mut bz.iter().map(|&q| (a, q)));
                if left != right {
                    assoc.get_or_insert(format!("({a} * {b}) * {z}"));
                }
            }
        }
        if c.mul_basis(a, BasisClass::ONE).expect("basis classes") != vec![a] {
            comm.get_or_insert(format!("1 * {a}"));
        }
    }
    let point_degree = c.basis().iter().filter(|&&b| QuadricContext::point_pushforward(b)).count() == 1;
    out.push(truth(Check::new("ring-commutative").param("n", n), comm.is_none(), || comm.clone().unwrap()));
    out.push(truth(Check::new("ring-associative").param("n", n), assoc.is_none(), || assoc.clone().unwrap()));
    out.push(truth(Check::new("ring-graded").param("n", n), grading.is_none(), || grading.clone().unwrap()));
    out.push(truth(Check::new("ring-point-degree").param("n", n), point_degree, || "no unique point class".into()));
}

fn suite_diagonal(n: u32, out: &mut Vec<Check>) {
    for c in contexts(n) {
        let diag = diagonal(&c);
        let mut bad = None;
        for b in c.basis() {
            let x = Cycle::basis(b);
            match Cycle::corr_action(&diag, &x, &c) {
                Ok(y) if y == x => {}
                Ok(y) => {
                    bad.get_or_insert(format!("{b} -> {y}"));
                }
                Err(e) => {
                    bad.get_or_insert(e.to_string());
                }
            }
        }
        let check = Check::new("diagonal-identity").param("n", n).param("delta_middle", c.delta_middle().to_string());
        out.push(truth(check, bad.is_none(), || bad.clone().unwrap()));
    }
}

fn suite_delta_recursion(n: u32, out: &mut Vec<Check>) {
    for c in contexts(n) {
        for i in 2..=c.d() {
            let sigma = Permutation::cyclic(i as usize + 1);
            for j in 0..=i - 2 {
                let rhs = delta(i - 1, j, &c).and_then(|prev| {
                    let lifted = prev.external(&Cycle::h_power(i - 1, &c));
                    lifted.subgroup_sum(&sigma)
                });
                let check = Check::new("delta-cyclic-recursion")
                    .param("n", n)
                    .param("i", i)
                    .param("j", j)
                    .param("delta_middle", c.delta_middle().to_string());
                out.push(compare(check, delta(i, j, &c), rhs));
            }
        }
    }
}

fn suite_delta_alternating(n: u32, out: &mut Vec<Check>) {
    for c in contexts(n) {
        for i in 1..=c.d() {
            let rhs = delta(1, 0, &c).and_then(|d10| {
                let prefix = Cycle::external_of_slots(&h_chain(i - 1, &[], &c));
                let base = if i == 1 { d10 } else { prefix.external(&d10) };
                let group: Vec<Permutation> = Permutation::alternating(i as usize + 1).collect();
                base.sum_over(&group)
            });
            let check = Check::new("delta-alternating-sum")
                .param("n", n)
                .param("i", i)
                .param("delta_middle", c.delta_middle().to_string());
            out.push(compare(check, delta(i, i - 1, &c), rhs));
        }
    }
}

fn suite_rho_action(n: u32, out: &mut Vec<Check>) {
    let c = ctx(n);
    for i in 1..=c.d() {
        for j in 0..=c.d() {
            let r = match rho(i, j, &c) {
                Ok(r) => r,
                Err(e) => {
                    out.push(Check::new("rho-action").param("n", n).param("i", i).param("j", j).failed(e.to_string()));
                    continue;
                }
            };
            for m in 0..c.d() {
                let expected = if m == j { sym_h_chain(i, &c) } else { Cycle::zero(i as usize) };
                let check = Check::new("rho-action").param("n", n).param("i", i).param("j", j).param("m", m);
                out.push(compare(check, Cycle::corr_action(&r, &Cycle::h_power(m, &c), &c), Ok(expected)));
            }
        }
    }
}

fn suite_steenrod_axioms(n: u32, out: &mut Vec<Check>) {
    let c = ctx(n);
    let basis = c.basis();
    let s = |x: &Cycle, l: u32| steenrod(x, SteenrodQuery::slot(l, 0), &c);
    for &b in &basis {
        let x = Cycle::basis(b);
        let codim = c.codim(b);
        out.push(compare(
            Check::new("steenrod-zero-is-identity").param("n", n).param("class", b.to_string()),
            s(&x, 0),
            Ok(x.clone()),
        ));
        let mut bad = None;
        for l in codim + 1..=n + 1 {
            match s(&x, l) {
                Ok(y) if y.is_zero() => {}
                Ok(y) => {
                    bad.get_or_insert(format!("S^{l}({b}) = {y}"));
                }
                Err(e) => {
                    bad.get_or_insert(e.to_string());
                }
            }
        }
        out.push(truth(
            Check::new("steenrod-vanishes-above-codimension").param("n", n).param("class", b.to_string()),
            bad.is_none(),
            || bad.clone().unwrap(),
        ));
        out.push(compare(
            Check::new("steenrod-top-is-square").param("n", n).param("class", b.to_string()),
            s(&x, codim),
            x.mul(&x, &c),
        ));
    }
    let mut bad = None;
    for &a in &basis {
        for &b in &basis {
            let (x, y) = (Cycle::basis(a), Cycle::basis(b));
            let prod = x.mul(&y, &c).expect("basis classes");
            for l in 0..=n {
                let lhs = s(&prod, l).expect("valid cycle");
                let mut rhs = Cycle::zero(1);
                for p in 0..=l {
                    let term = s(&x, p).and_then(|sx| sx.mul(&s(&y, l - p)?, &c)).expect("valid cycle");
                    rhs = rhs.add(&term).expect("same arity");
                }
                if lhs != rhs {
                    bad.get_or_insert(format!("S^{l}({a} * {b}): {lhs} vs {rhs}"));
                }
            }
        }
    }
    out.push(truth(Check::new("steenrod-cartan").param("n", n), bad.is_none(), || bad.clone().unwrap()));
}

fn suite_steenrod_closed_form(n: u32, out: &mut Vec<Check>) {
    let c = ctx(n);
    for i in 2..=c.d() {
        for l in 1..i {
            for j in l..=c.d() {
                let check = Check::new("steenrod-closed-form").param("n", n).param("i", i).param("j", j).param("l", l);
                out.push(compare(check, rho_ijl(i, j, l, &c), rho_ijl_closed_form(i, j, l, &c)));
            }
        }
    }
}

/// `l_{j-l} x sym(1 x h x ... x h^(i-1))`, zero when `j < l`.
fn lowered_times_chain(j: i64, i: u32, c: &QuadricContext) -> Cycle {
    let first: Vec<BasisClass> = c.l_class(j).into_iter().collect();
    Cycle::external_of_slots(&[first]).external(&sym_h_chain(i, c))
}

fn suite_steenrod_collapse(n: u32, out: &mut Vec<Check>) {
    let c = ctx(n);
    for i in 1..=c.d() {
        for j in 0..=c.d() {
            let r = rho(i, j, &c);
            for l in i..=c.d() {
                let rhs = if binom_parity((n + 1 - j) as u64, l as u64) {
                    lowered_times_chain(j as i64 - l as i64, i, &c)
                } else {
                    Cycle::zero(i as usize + 1)
                };
                let lhs = r.clone().and_then(|r| steenrod(&r, SteenrodQuery::slot(l, 0), &c));
                let check = Check::new("steenrod-collapse").param("n", n).param("i", i).param("j", j).param("l", l);
                out.push(compare(check, lhs, Ok(rhs)));
            }
            let sigma = Permutation::cyclic(i as usize + 1);
            let rebuilt = lowered_times_chain(j as i64, i, &c).subgroup_sum(&sigma);
            let check = Check::new("cyclic-rebuild").param("n", n).param("i", i).param("j", j);
            out.push(compare(check, rebuilt, rho(i, j, &c)));
        }
    }
}

/// Parameters `(i, l, m, a)` satisfying the lower Steenrod parity hypotheses.
fn lower_steenrod_parameters(n: u32) -> Vec<(u32, u32, u32, u32)> {
    let d = n / 2;
    let mut out = Vec::new();
    for i in 2..=d {
        for l in 1..i {
            for m in n - i - d..=n - i - l {
                if !binom_parity((m + i + 1) as u64, l as u64) {
                    continue;
                }
                for a in 0..=n - i - m - l {
                    let ok =
                        (l..i).filter(|k| (i..=d).contains(&(k + l + a))).all(|k| !binom_parity(k as u64, l as u64));
                    if ok {
                        out.push((i, l, m, a));
                    }
                }
            }
        }
    }
    out
}

fn suite_partial_symmetrization(n: u32, out: &mut Vec<Check>) {
    let c = ctx(n);
    for (i, l, m, a) in lower_steenrod_parameters(n) {
        let j = n - i - m;
        // cyclic shift of the last i slots of X^(i+1)
        let images: Vec<usize> = (0..=i as usize).map(|k| if k == 0 { 0 } else { k % i as usize + 1 }).collect();
        let sigma = Permutation::new(images).expect("cyclic shift");
        let partial = rho_ijl(i, j, l, &c).and_then(|r| r.external(&Cycle::unit(1)).subgroup_sum(&sigma));
        let mut expected = lowered_times_chain(j as i64 - l as i64, i, &c);
        for k in (l..i).filter(|&k| binom_parity(k as u64, l as u64)) {
            let mut rest = h_chain(i, &[k], &c);
            rest.push(vec![BasisClass::L(j)]);
            let term = Cycle::external_of_slots(&[c.h_power(k + l)]).external(&sym_of(&rest));
            expected = expected.add(&term).expect("same arity");
        }
        let check =
            Check::new("partial-symmetrization").param("n", n).param("i", i).param("l", l).param("m", m).param("a", a);
        out.push(compare(check, partial.clone(), Ok(expected)));

        let tau = Permutation::cyclic(i as usize + 1);
        let collapsed = partial.and_then(|p| {
            let weight = Cycle::h_power(a, &c).external(&Cycle::unit(i as usize));
            weight.mul(&p, &c)?.subgroup_sum(&tau)
        });
        let check = Check::new("steenrod-collapse-to-rho")
            .param("n", n)
            .param("i", i)
            .param("l", l)
            .param("m", m)
            .param("a", a);
        out.push(compare(check, collapsed, rho(i, j - l - a, &c)));
    }
}

fn suite_steenrod_shift(n: u32, out: &mut Vec<Check>) {
    let c = ctx(n);
    if c.d() < 2 {
        return;
    }
    for j in 2..=c.d() {
        let m = n - 2 - j;
        if m.is_multiple_of(2) {
            continue;
        }
        out.push(steenrod_shift_check(j, &c));
    }
}

fn steenrod_shift_check(j: u32, c: &QuadricContext) -> Check {
    let n = c.n();
    let rhs = rho_ijl(2, j, 1, c).and_then(|r| Cycle::unit(1).external(&Cycle::h_power(1, c)).mul(&r, c));
    let check = Check::new("steenrod-shift").param("n", n).param("j", j).param("m", n - 2 - j);
    compare(check, rho_ijl(2, j - 1, 1, c), rhs)
}

fn primordial_excluded(n: u32, i1: u32, gap: u32) -> bool {
    gap == i1 || (2 * i1..=n / 2 + 1).contains(&gap)
}

fn suite_primordial_composition(n: u32, out: &mut Vec<Check>) {
    for c in contexts(n) {
        for i1 in 2..=c.d() {
            let specs = PrimordialSpec::all(i1, &c).expect("valid first Witt index");
            for i in 1..i1 {
                let weight = Cycle::unit(1).external(&Cycle::h_power(i1 - i, &c));
                for j in (0..=c.d()).filter(|&j| !primordial_excluded(n, i1, j + i)) {
                    let beta = rho(i, j, &c).expect("valid rho");
                    let expected = rho(i - 1, j, &c).map(|r| Cycle::unit(1).external(&r));
                    let mut exact_fail = None;
                    let mut modulo_fail = None;
                    for spec in &specs {
                        let lhs = primordial(spec, &c)
                            .and_then(|p| weight.mul(&p, &c))
                            .and_then(|alpha| Cycle::corr_compose(&alpha, &beta, 1, &c));
                        let (lhs, rhs) = match (lhs, expected.clone()) {
                            (Ok(l), Ok(r)) => (l, r),
                            (Err(e), _) | (_, Err(e)) => {
                                exact_fail.get_or_insert(e.to_string());
                                modulo_fail.get_or_insert(e.to_string());
                                continue;
                            }
                        };
                        if lhs != rhs {
                            let diff = lhs.add(&rhs).expect("same arity");
                            exact_fail.get_or_insert(format!("coefficients {:?}: difference {diff}", spec.coeffs()));
                            if !lhs.equal_mod_nonessential(&rhs, &c).unwrap_or(false) {
                                modulo_fail
                                    .get_or_insert(format!("coefficients {:?}: difference {diff}", spec.coeffs()));
                            }
                        }
                    }
                    let check = Check::new("primordial-composition")
                        .param("n", n)
                        .param("i1", i1)
                        .param("i", i)
                        .param("j", j)
                        .param("delta_middle", c.delta_middle().to_string())
                        .param("coefficient_vectors", specs.len())
                        .param("equal_mod_nonessential", modulo_fail.is_none());
                    out.push(truth(check, exact_fail.is_none(), || exact_fail.clone().unwrap()));
                }
            }
        }
    }
}

fn suite_grassmannian_degree(n: u32, out: &mut Vec<Check>) {
    let c = ctx(n);
    let d = c.d();
    let mut bad = None;
    let mut positive = 0;
    for len in 0..=d as usize + 1 {
        for list in nondecreasing_lists(len, d) {
            let full = list == (0..=d).collect::<Vec<_>>();
            let p = ZProduct::new(list.clone(), &c).expect("list within bounds");
            positive += usize::from(p.degree(&c));
            if p.degree(&c) != full {
                bad.get_or_insert(format!("{list:?}"));
            }
        }
    }
    let ok = bad.is_none() && positive == 1;
    out.push(truth(Check::new("grassmannian-degree").param("n", n).param("d", d), ok, || {
        bad.clone().unwrap_or_else(|| format!("{positive} positive products"))
    }));
}

fn witt_contexts(n: u32) -> Vec<(String, WittContext)> {
    let mut out =
        vec![("generic".to_string(), WittContext::generic()), ("anisotropic".to_string(), WittContext::anisotropic())];
    for i1 in 1..=n / 2 + 1 {
        out.push((format!("i1={i1}"), WittContext::with_first_witt_index(n, i1).expect("in range")));
    }
    out
}

/// Twenty fixed, spread-out orderings of the rule catalog.
pub fn rule_orders() -> Vec<Vec<Rule>> {
    let all: Vec<Permutation> = Permutation::all(Rule::CATALOG.len()).collect();
    let step = all.len() / 20;
    (0..20)
        .map(|k| {
            let p = &all[k * step + k % step];
            (0..Rule::CATALOG.len()).map(|s| Rule::CATALOG[p.apply(s)]).collect()
        })
        .collect()
}

fn singletons(n: u32) -> Vec<EdiTable> {
    let empty = EdiTable::new(n).expect("positive n");
    (0..=empty.d())
        .flat_map(|level| empty.legal_range(level).map(move |m| (level, m)))
        .map(|(level, m)| EdiTable::with_members(n, [(level, m)]).expect("legal"))
        .collect()
}

fn closure_outcome(t: &EdiTable, w: &WittContext, order: &[Rule]) -> std::result::Result<EdiTable, String> {
    propagate_with_order(t, w, order).map(|c| c.table).map_err(|e| e.firing.to_string())
}

fn suite_edi_closure(n: u32, out: &mut Vec<Check>) {
    let orders = rule_orders();
    for (label, w) in witt_contexts(n) {
        let seeds = singletons(n);
        let (mut idem, mut order_dep, mut replay, mut monotone) = (None, None, None, None);
        for t in &seeds {
            let base = closure_outcome(t, &w, &Rule::CATALOG);
            if let Ok(closed) = &base {
                if closure_outcome(closed, &w, &Rule::CATALOG).as_ref() != Ok(closed) {
                    idem.get_or_insert(format!("seed {}", t.memberships().next().unwrap()));
                }
            }
            for order in &orders {
                if closure_outcome(t, &w, order).is_ok() != base.is_ok()
                    || (base.is_ok() && closure_outcome(t, &w, order) != base)
                {
                    order_dep.get_or_insert(format!("seed {} order {order:?}", t.memberships().next().unwrap()));
                }
            }
            let trail = match propagate(t, &w) {
                Ok(c) => c.trail,
                Err(e) => {
                    if !e.firing.recheck(n, &w) {
                        replay.get_or_insert(e.firing.to_string());
                    }
                    for other in &seeds {
                        let mut bigger = t.clone();
                        for mem in other.memberships() {
                            bigger.insert(mem.level, mem.m as i64).expect("legal");
                        }
                        if propagate(&bigger, &w).is_ok() {
                            monotone.get_or_insert(format!(
                                "{} then {}",
                                t.memberships().next().unwrap(),
                                other.memberships().next().unwrap()
                            ));
                        }
                    }
                    e.trail
                }
            };
            if let Some(f) = trail.iter().find(|f| !f.recheck(n, &w)) {
                replay.get_or_insert(f.to_string());
            }
        }
        let mut not_fixed = None;
        let mut count = 0u64;
        if n <= 10 {
            count = enumerate_admissible(n, &w, None, DEFAULT_MAX_N, |t| {
                if closure_outcome(t, &w, &Rule::CATALOG).as_ref() != Ok(t) {
                    not_fixed.get_or_insert(t.to_string());
                }
            })
            .expect("within bound");
        }
        let check = |name: &str| Check::new(name).param("n", n).param("witt", label.clone());
        out.push(truth(check("edi-idempotent"), idem.is_none(), || idem.clone().unwrap()));
        out.push(truth(check("edi-order-independent").param("orders", orders.len()), order_dep.is_none(), || {
            order_dep.clone().unwrap()
        }));
        out.push(truth(check("edi-trail-replay"), replay.is_none(), || replay.clone().unwrap()));
        out.push(truth(check("edi-contradiction-monotone"), monotone.is_none(), || monotone.clone().unwrap()));
        if n <= 10 {
            out.push(truth(check("edi-enumeration-fixed-points").param("tables", count), not_fixed.is_none(), || {
                not_fixed.clone().unwrap()
            }));
        }
    }
}

fn suite_edi_crosscheck(n: u32, out: &mut Vec<Check>) {
    let c = ctx(n);
    if c.d() < 2 {
        return;
    }
    let empty = EdiTable::new(n).expect("positive n");
    for m in empty.legal_range(2) {
        let t = EdiTable::with_members(n, [(2, m)]).expect("legal");
        for firing in rule_square_shift(&t) {
            let j = n - 2 - firing.m;
            let check = steenrod_shift_check(j, &c);
            out.push(Check { name: "edi-square-shift-identity".into(), ..check });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_filter_match_gives_no_reports() {
        assert!(run_verify(5, 10, "no-such-suite", DEFAULT_MAX_N).unwrap().is_empty());
        assert!(run_verify(5, 15, "", DEFAULT_MAX_N).is_err());
        assert!(run_verify(0, 3, "", DEFAULT_MAX_N).is_err());
    }

    #[test]
    fn orders_are_distinct_permutations() {
        let orders = rule_orders();
        let distinct: BTreeSet<Vec<Rule>> = orders.iter().cloned().collect();
        assert_eq!(distinct.len(), 20);
        for o in &orders {
            let set: BTreeSet<Rule> = o.iter().copied().collect();
            assert_eq!(set.len(), Rule::CATALOG.len());
        }
    }

    #[test]
    fn small_dimensions_pass() {
        for r in run_verify(1, 6, "", DEFAULT_MAX_N).unwrap() {
            if let Some(c) = r.failures().next() {
                panic!("{} {:?}: {:?}", c.name, c.params, c.witness);
            }
            assert!(!r.checks.is_empty());
        }
    }

    #[test]
    fn lower_steenrod_parameters_match_rule() {
        for n in 4..=12 {
            for (i, l, m, a) in lower_steenrod_parameters(n) {
                let t = EdiTable::with_members(n, [(i, m)]).unwrap();
                let fired = Rule::LowerSteenrod
                    .apply(&t, &WittContext::generic())
                    .into_iter()
                    .any(|f| f.l == Some(l) && f.a == Some(a));
                assert!(fired, "n={n} i={i} l={l} m={m} a={a}");
            }
        }
    }
}
