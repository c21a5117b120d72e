use proptest::prelude::*;
use quadcycles::edi::{propagate, EdiTable, WittContext};
use quadcycles::expr::{parse_expr, Expr, SlotSpec};
use quadcycles::steenrod::{steenrod, total_steenrod, SteenrodQuery};
use quadcycles::{Cycle, Monomial, Permutation, QuadricContext};

fn cycle_on(n: u32, arity: usize) -> impl Strategy<Value = Cycle> {
    let basis = QuadricContext::new(n).unwrap().basis();
    let len = basis.len();
    prop::collection::vec(prop::collection::vec(0..len, arity), 0..6).prop_map(move |terms| {
        let monomials = terms.into_iter().map(|t| Monomial::new(t.into_iter().map(|k| basis[k]).collect()));
        Cycle::from_monomials(arity, monomials).unwrap()
    })
}

fn permutation(r: usize) -> impl Strategy<Value = Permutation> {
    Just((0..r).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

fn setting() -> impl Strategy<Value = (u32, usize)> {
    (2u32..=10, 1usize..=3)
}

proptest! {
    #[test]
    fn permutation_is_a_ring_isomorphism(
        (n, a, b, s) in setting().prop_flat_map(|(n, r)| (Just(n), cycle_on(n, r), cycle_on(n, r), permutation(r)))
    ) {
        let c = QuadricContext::new(n).unwrap();
        let lhs = a.mul(&b, &c).unwrap().permute(&s).unwrap();
        let rhs = a.permute(&s).unwrap().mul(&b.permute(&s).unwrap(), &c).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum = a.add(&b).unwrap().permute(&s).unwrap();
        prop_assert_eq!(sum, a.permute(&s).unwrap().add(&b.permute(&s).unwrap()).unwrap());
    }

    #[test]
    fn product_is_commutative_and_associative(
        (n, a, b, z) in setting().prop_flat_map(|(n, r)| (Just(n), cycle_on(n, r), cycle_on(n, r), cycle_on(n, r)))
    ) {
        let c = QuadricContext::new(n).unwrap();
        prop_assert_eq!(a.mul(&b, &c).unwrap(), b.mul(&a, &c).unwrap());
        let left = a.mul(&b, &c).unwrap().mul(&z, &c).unwrap();
        let right = a.mul(&b.mul(&z, &c).unwrap(), &c).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn projection_formula(
        (n, x, y) in (2u32..=10, 2usize..=3).prop_flat_map(|(n, r)| (Just(n), cycle_on(n, r), cycle_on(n, r - 1)))
    ) {
        let c = QuadricContext::new(n).unwrap();
        let last = x.arity() - 1;
        let pulled = y.external(&Cycle::unit(1));
        let lhs = x.mul(&pulled, &c).unwrap().projection_pushforward(&[last]).unwrap();
        let rhs = x.projection_pushforward(&[last]).unwrap().mul(&y, &c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symmetrization_is_invariant(
        (x, s) in (1usize..=4).prop_flat_map(|r| (cycle_on(7, r), permutation(r)))
    ) {
        let sx = x.sym();
        prop_assert_eq!(sx.permute(&s).unwrap(), sx);
    }

    #[test]
    fn total_steenrod_is_multiplicative((n, a, b) in (2u32..=10).prop_flat_map(|n| (Just(n), cycle_on(n, 1), cycle_on(n, 1)))) {
        let c = QuadricContext::new(n).unwrap();
        let lhs = total_steenrod(&a.mul(&b, &c).unwrap(), &c).unwrap();
        let rhs = total_steenrod(&a, &c).unwrap().mul(&total_steenrod(&b, &c).unwrap(), &c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn steenrod_on_all_slots_is_cartan((n, x, l) in (2u32..=8).prop_flat_map(|n| (Just(n), cycle_on(n, 2), 0u32..=n))) {
        let c = QuadricContext::new(n).unwrap();
        let all = steenrod(&x, SteenrodQuery::all(l), &c).unwrap();
        let mut expected = Cycle::zero(2);
        for p in 0..=l {
            let first = steenrod(&x, SteenrodQuery::slot(p, 0), &c).unwrap();
            expected = expected.add(&steenrod(&first, SteenrodQuery::slot(l - p, 1), &c).unwrap()).unwrap();
        }
        prop_assert_eq!(all, expected);
    }
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..6).prop_map(Expr::HPow),
        (0u32..6).prop_map(Expr::L),
        (0u32..6).prop_map(Expr::LPrime),
        (0u32..4, 0u32..4).prop_map(|(i, j)| Expr::Rho(i, j)),
        (0u32..4, 0u32..4, 0u32..4).prop_map(|(i, j, l)| Expr::RhoIjl(i, j, l)),
        (0u32..4, 0u32..4).prop_map(|(i, j)| Expr::Delta(i, j)),
        Just(Expr::Diag),
        (1u32..4, prop::option::of(prop::collection::vec(any::<bool>(), 0..4)))
            .prop_map(|(i1, coeffs)| Expr::Primordial { i1, coeffs }),
        (1usize..4).prop_map(Expr::Zero),
    ];
    leaf.prop_recursive(4, 32, 3, |inner| {
        let boxed = inner.clone().prop_map(Box::new);
        let slots = prop::collection::vec(1usize..4, 1..4);
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Add),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::Mul),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Expr::External),
            boxed.clone().prop_map(Expr::Sym),
            (slots.clone(), boxed.clone()).prop_map(|(p, e)| Expr::SubgroupSum(p, e)),
            (0u32..4, prop::option::of(1usize..4), boxed.clone()).prop_map(|(l, s, expr)| Expr::Steenrod {
                l,
                target: s.map_or(SlotSpec::All, SlotSpec::Slot),
                expr,
            }),
            (slots.clone(), boxed.clone()).prop_map(|(m, e)| Expr::PullDiag(m, e)),
            (slots, boxed.clone()).prop_map(|(s, e)| Expr::PushForget(s, e)),
            (1usize..3, boxed.clone(), boxed.clone()).prop_map(|(b, x, y)| Expr::Compose(b, x, y)),
            (boxed.clone(), boxed.clone()).prop_map(|(x, y)| Expr::Act(x, y)),
            boxed.clone().prop_map(Expr::Deg),
            (boxed.clone(), boxed).prop_map(|(x, y)| Expr::EqModNoness(x, y)),
        ]
    })
}

proptest! {
    #[test]
    fn parse_inverts_print(e in expr_strategy()) {
        let printed = e.to_string();
        prop_assert_eq!(parse_expr(&printed).unwrap(), e);
    }

    #[test]
    fn evaluation_is_deterministic(e in expr_strategy()) {
        let c = QuadricContext::new(8).unwrap();
        prop_assert_eq!(e.eval(&c), e.eval(&c));
    }
}

fn table_on(n: u32) -> impl Strategy<Value = EdiTable> {
    let empty = EdiTable::new(n).unwrap();
    let nodes: Vec<(u32, u32)> = (0..=empty.d()).flat_map(|lv| empty.legal_range(lv).map(move |m| (lv, m))).collect();
    prop::sample::subsequence(nodes.clone(), 0..=nodes.len().min(4))
        .prop_map(move |ms| EdiTable::with_members(n, ms).unwrap())
}

fn witt(n: u32) -> impl Strategy<Value = WittContext> {
    prop_oneof![
        Just(WittContext::generic()),
        Just(WittContext::anisotropic()),
        (1..=n / 2 + 1).prop_map(move |i1| WittContext::with_first_witt_index(n, i1).unwrap()),
    ]
}

proptest! {
    #[test]
    fn closure_is_idempotent_and_inflationary((t, w) in (1u32..=12).prop_flat_map(|n| (table_on(n), witt(n)))) {
        if let Ok(c) = propagate(&t, &w) {
            prop_assert!(t.is_subset(&c.table));
            prop_assert_eq!(propagate(&c.table, &w).unwrap().table, c.table);
        }
    }

    #[test]
    fn contradictions_persist_in_supersets(
        (t, extra, w) in (1u32..=12).prop_flat_map(|n| (table_on(n), table_on(n), witt(n)))
    ) {
        if propagate(&t, &w).is_err() {
            let mut bigger = t.clone();
            for m in extra.memberships() {
                bigger.insert(m.level, m.m as i64).unwrap();
            }
            prop_assert!(propagate(&bigger, &w).is_err());
        }
    }
}
