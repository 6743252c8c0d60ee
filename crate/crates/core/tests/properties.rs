mod common;

use common::field;
use evocount::action::permutations;
use evocount::burnside::Partition;
use evocount::field::prime_power;
use evocount::{
    act, are_isomorphic, closed_form_count, compose, partitions, Budget, CaseKey, EvolutionAlgebra, FieldCtx,
    FieldElement, GroupElement, MatrixFq,
};
use num_bigint::BigUint;
use proptest::prelude::*;

const SMALL_Q: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

fn elem(ctx: &FieldCtx, code: u32) -> FieldElement {
    ctx.element(code % ctx.q()).unwrap()
}

fn nonzero(ctx: &FieldCtx, code: u32) -> FieldElement {
    ctx.element(1 + code % (ctx.q() - 1)).unwrap()
}

fn matrix(ctx: &FieldCtx, n: usize, codes: &[u32]) -> MatrixFq {
    let entries = codes.iter().take(n * n).map(|&c| elem(ctx, c)).collect();
    MatrixFq::new(ctx, n, n, entries).unwrap()
}

fn group_element(ctx: &FieldCtx, n: usize, perm: usize, codes: &[u32]) -> GroupElement {
    let perms = permutations(n);
    let t = codes.iter().take(n).map(|&c| nonzero(ctx, c)).collect();
    GroupElement::new(perms[perm % perms.len()].clone(), t).unwrap()
}

fn codes(len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(any::<u32>(), len)
}

fn prime_powers() -> impl Strategy<Value = u64> {
    let all: Vec<u64> = (2..5000).filter(|&q| prime_power(q).is_some()).collect();
    prop::sample::select(all)
}

proptest! {
    #[test]
    fn field_axioms(qi in 0..SMALL_Q.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let ctx = field(SMALL_Q[qi]);
        let (a, b, c) = (elem(&ctx, a), elem(&ctx, b), elem(&ctx, c));
        prop_assert_eq!(ctx.add(a, b), ctx.add(b, a));
        prop_assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
        prop_assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
        prop_assert_eq!(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)));
        prop_assert_eq!(ctx.add(a, ctx.neg(a)), ctx.zero());
        if !a.is_zero() {
            prop_assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), ctx.one());
            prop_assert_eq!(ctx.pow(a, ctx.q() as u64 - 1), ctx.one());
        }
    }

    #[test]
    fn determinant_is_multiplicative(qi in 0..SMALL_Q.len(), n in 1usize..=4, x in codes(16), y in codes(16)) {
        let ctx = field(SMALL_Q[qi]);
        let (a, b) = (matrix(&ctx, n, &x), matrix(&ctx, n, &y));
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.det().unwrap(), ctx.mul(a.det().unwrap(), b.det().unwrap()));
    }

    #[test]
    fn inverse_is_two_sided(qi in 0..SMALL_Q.len(), n in 1usize..=4, x in codes(16)) {
        let ctx = field(SMALL_Q[qi]);
        let a = matrix(&ctx, n, &x);
        match a.inverse() {
            Ok(inv) => {
                prop_assert_eq!(a.mul(&inv).unwrap(), MatrixFq::identity(&ctx, n));
                prop_assert_eq!(inv.mul(&a).unwrap(), MatrixFq::identity(&ctx, n));
            }
            Err(_) => prop_assert!(a.det().unwrap().is_zero()),
        }
    }

    #[test]
    fn action_is_a_left_action(
        qi in 0..SMALL_Q.len(), n in 1usize..=4, pg in any::<usize>(), ph in any::<usize>(),
        tg in codes(4), th in codes(4), x in codes(16),
    ) {
        let ctx = field(SMALL_Q[qi]);
        let (g, h) = (group_element(&ctx, n, pg, &tg), group_element(&ctx, n, ph, &th));
        let a = matrix(&ctx, n, &x);
        let gh = compose(&ctx, &g, &h).unwrap();
        prop_assert_eq!(act(&gh, &a).unwrap(), act(&g, &act(&h, &a).unwrap()).unwrap());
        prop_assert_eq!(act(&g.invert(&ctx), &act(&g, &a).unwrap()).unwrap(), a.clone());
        prop_assert_eq!(act(&g, &a).unwrap().det().unwrap().is_zero(), a.det().unwrap().is_zero());
    }

    #[test]
    fn product_is_commutative_and_bilinear(
        qi in 0..SMALL_Q.len(), n in 1usize..=4, x in codes(16), u in codes(4), v in codes(4), w in codes(4),
    ) {
        let ctx = field(SMALL_Q[qi]);
        let alg = EvolutionAlgebra::new(matrix(&ctx, n, &x)).unwrap();
        let vec = |c: &[u32]| c.iter().take(n).map(|&x| elem(&ctx, x)).collect::<Vec<_>>();
        let (u, v, w) = (vec(&u), vec(&v), vec(&w));
        prop_assert_eq!(alg.multiply(&u, &v).unwrap(), alg.multiply(&v, &u).unwrap());
        let vw: Vec<_> = v.iter().zip(&w).map(|(&a, &b)| ctx.add(a, b)).collect();
        let lhs = alg.multiply(&u, &vw).unwrap();
        let rhs: Vec<_> = alg.multiply(&u, &v).unwrap().into_iter()
            .zip(alg.multiply(&u, &w).unwrap())
            .map(|(a, b)| ctx.add(a, b))
            .collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn isomorphism_witnesses_are_valid(
        qi in 0..3usize, n in 1usize..=3, p in any::<usize>(), t in codes(3), x in codes(9),
    ) {
        let ctx = field([2u64, 3, 4][qi]);
        let a = matrix(&ctx, n, &x);
        prop_assume!(a.is_nonsingular());
        let g = group_element(&ctx, n, p, &t);
        let b = act(&g, &a).unwrap();
        let budget = Budget::default();
        let w = are_isomorphic(&a, &b, &budget).unwrap().expect("same orbit");
        prop_assert_eq!(act(&w, &b).unwrap(), a.clone());
        let back = are_isomorphic(&b, &a, &budget).unwrap().expect("symmetric");
        prop_assert_eq!(act(&back, &a).unwrap(), b);
        prop_assert!(are_isomorphic(&a, &a, &budget).unwrap().is_some());
    }

    #[test]
    fn closed_forms_are_integral_and_positive(q in prime_powers(), n in 2usize..=4) {
        let key = CaseKey::from_q(q).unwrap();
        let count = closed_form_count(n, &key).unwrap();
        prop_assert!(count > BigUint::from(0u32));
        if key.p == 2 {
            prop_assert_eq!(key.indicator(4), Some(false));
        }
    }
}

#[test]
fn class_sizes_sum_to_factorial() {
    for n in 1..=8 {
        let total: u64 = partitions(n).iter().map(Partition::c).sum();
        assert_eq!(total, (1..=n as u64).product::<u64>());
        for p in partitions(n) {
            assert_eq!(p.c() * p.d(), (1..=n as u64).product::<u64>());
        }
    }
}
