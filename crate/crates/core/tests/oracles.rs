mod common;

use common::{field, kernel_fixed_points, monic_irreducibles, naive_fixed_points};
use evocount::action::torus_elements;
use evocount::burnside::Partition;
use evocount::matrix::MatrixFq;
use evocount::{
    circulant_nonsingular, count_fixed_points, make_field, partitions, theorem31_filter, Budget, EvolutionAlgebra,
    FieldCtx,
};

#[test]
fn fixed_points_match_full_scan() {
    let budget = Budget::default();
    for (n, q) in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3)] {
        let ctx = field(q);
        for p in partitions(n) {
            for t in torus_elements(&ctx, n) {
                let naive = naive_fixed_points(&ctx, &p, &t);
                assert_eq!(
                    count_fixed_points(&ctx, &p, &t, &budget).unwrap(),
                    naive,
                    "n={n} q={q} {p} {t:?}"
                );
                if !theorem31_filter(&ctx, &p, &t).unwrap() {
                    assert_eq!(naive, 0, "filter rejected a t with fixed points: {p} {t:?}");
                }
            }
        }
    }
}

#[test]
fn fixed_points_match_kernel_enumeration_in_dimension_four() {
    let budget = Budget::default();
    for q in [2, 3, 4] {
        let ctx = field(q);
        for p in partitions(4) {
            for t in torus_elements(&ctx, 4) {
                let engine = count_fixed_points(&ctx, &p, &t, &budget).unwrap();
                if let Some(oracle) = kernel_fixed_points(&ctx, &p, &t, 5_000_000) {
                    assert_eq!(engine, oracle, "q={q} {p} {t:?}");
                }
            }
        }
    }
}

#[test]
fn one_three_partition_when_three_divides_q_minus_one() {
    // every admissible t has t_1 = 1 and t_2 t_3 t_4 = 1; the kernel oracle
    // gives (q-1)^4 (q^2+q) fixed points for each
    let budget = Budget::default();
    let p = Partition::new(vec![1, 3]).unwrap();
    for (q, per_t) in [(4u64, 1620u128), (7, 72576)] {
        let ctx = field(q);
        let mut sum = 0;
        for t in torus_elements(&ctx, 4) {
            let b = count_fixed_points(&ctx, &p, &t, &budget).unwrap();
            let oracle = kernel_fixed_points(&ctx, &p, &t, 50_000_000).unwrap();
            assert_eq!(b, oracle);
            if b > 0 {
                assert_eq!(b, per_t);
            }
            sum += b;
        }
        assert_eq!(sum, per_t * (q as u128 - 1).pow(2));
    }
}

#[test]
fn spec_fixed_point_examples() {
    let budget = Budget::default();
    let f2 = field(2);
    let one = f2.one();
    let id2 = Partition::new(vec![1, 1]).unwrap();
    assert_eq!(count_fixed_points(&f2, &id2, &[one, one], &budget).unwrap(), 6);
    let f3 = field(3);
    let two = f3.from_int(2);
    let swap = Partition::new(vec![2]).unwrap();
    assert_eq!(count_fixed_points(&f3, &swap, &[two, two], &budget).unwrap(), 4);
    assert!(!theorem31_filter(&f3, &swap, &[two, f3.one()]).unwrap());
}

#[test]
fn filter_for_one_three_reduces_to_two_equations() {
    // (t1-1)(t1^3-(t2t3t4)^2) = 0 and (t2t3t4-t1^6)(t2t3t4-1) = 0
    let p = Partition::new(vec![1, 3]).unwrap();
    for q in [4u64, 5, 7] {
        let ctx = field(q);
        for t in torus_elements(&ctx, 4) {
            let s = ctx.mul(ctx.mul(t[1], t[2]), t[3]);
            let one = ctx.one();
            let first = ctx.mul(ctx.sub(t[0], one), ctx.sub(ctx.pow(t[0], 3), ctx.square(s)));
            let second = ctx.mul(ctx.sub(s, ctx.pow(t[0], 6)), ctx.sub(s, one));
            let expected = first.is_zero() && second.is_zero();
            assert_eq!(theorem31_filter(&ctx, &p, &t).unwrap(), expected, "q={q} {t:?}");
        }
    }
}

#[test]
fn least_moduli() {
    assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
    assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
    for (p, m) in [(2u32, 2usize), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)] {
        let mut all = monic_irreducibles(p, m);
        all.sort_by(|a, b| a.iter().cmp(b.iter()));
        assert_eq!(
            make_field(p as u64, m as u32).unwrap().modulus(),
            all[0].as_slice(),
            "p={p} m={m}"
        );
    }
}

fn all_vectors(ctx: &FieldCtx, n: usize) -> Vec<Vec<evocount::FieldElement>> {
    let q = ctx.q() as u64;
    (0..q.pow(n as u32))
        .map(|mut i| {
            (0..n)
                .map(|_| {
                    let c = ctx.element((i % q) as u32).unwrap();
                    i /= q;
                    c
                })
                .collect()
        })
        .collect()
}

#[test]
fn circulant_gcd_matches_determinant() {
    for q in [2, 3, 4, 5] {
        let ctx = field(q);
        for n in [2usize, 3, 4] {
            if q.pow(n as u32) > 1000 {
                continue;
            }
            for a in all_vectors(&ctx, n) {
                let det = MatrixFq::circulant(&ctx, &a).det().unwrap();
                assert_eq!(circulant_nonsingular(&ctx, &a), !det.is_zero(), "q={q} {a:?}");
            }
        }
    }
}

#[test]
fn idempotency_is_nonsingularity() {
    for q in [2, 3, 4] {
        let ctx = field(q);
        let idx_count = q.pow(4);
        let mut idempotent = 0;
        for i in 0..idx_count {
            let a = MatrixFq::from_index(&ctx, 2, i);
            let alg = EvolutionAlgebra::new(a.clone()).unwrap();
            let ok = alg.is_idempotent().unwrap();
            assert_eq!(ok, !a.det().unwrap().is_zero());
            idempotent += ok as u64;
        }
        let qq = q;
        assert_eq!(idempotent, (qq * qq - 1) * (qq * qq - qq));
    }
}
