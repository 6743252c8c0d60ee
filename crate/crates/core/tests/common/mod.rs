//! Brute-force oracles shared by the integration tests. None of them use the
//! row decomposition or the solvability filter of the Burnside engine.

#![allow(dead_code)]

use evocount::burnside::Partition;
use evocount::field::prime_power;
use evocount::{act, enumerate_gl, gl_order, make_field, Budget, FieldCtx, FieldElement, GroupElement, MatrixFq};
use num_traits::ToPrimitive;

pub fn field(q: u64) -> FieldCtx {
    let (p, m) = prime_power(q).expect("prime power");
    make_field(p, m).unwrap()
}

pub fn element_group(p: &Partition, t: &[FieldElement]) -> GroupElement {
    GroupElement::new(p.permutation(), t.to_vec()).unwrap()
}

/// `#{A ∈ GL_n : act(μt, A) = A}` by scanning all of `GL_n`.
pub fn naive_fixed_points(ctx: &FieldCtx, p: &Partition, t: &[FieldElement]) -> u128 {
    let g = element_group(p, t);
    enumerate_gl(ctx, p.n(), &Budget::default())
        .unwrap()
        .filter(|a| act(&g, a).unwrap() == *a)
        .count() as u128
}

/// Basis of the fixed space `{A ∈ M_n : act(g, A) = A}`, computed as the
/// kernel of the linear map `A ↦ act(g, A) - A` on `F_q^{n²}`.
pub fn fixed_space(ctx: &FieldCtx, g: &GroupElement) -> Vec<Vec<FieldElement>> {
    let n = g.n();
    let nn = n * n;
    let mut sys = MatrixFq::zeros(ctx, nn, nn);
    for k in 0..nn {
        let mut e = MatrixFq::zeros(ctx, n, n);
        e.set(k / n, k % n, ctx.one());
        let img = act(g, &e).unwrap();
        for r in 0..nn {
            sys.set(r, k, ctx.sub(img.entries()[r], e.entries()[r]));
        }
    }
    sys.kernel()
}

/// Fixed points of `μt` by enumerating the fixed space, or `None` when it
/// has more than `limit` elements.
pub fn kernel_fixed_points(ctx: &FieldCtx, p: &Partition, t: &[FieldElement], limit: u64) -> Option<u128> {
    let n = p.n();
    let basis = fixed_space(ctx, &element_group(p, t));
    if basis.len() == n * n {
        return gl_order(ctx, n).to_u128();
    }
    let q = ctx.q() as u64;
    let total = q.checked_pow(basis.len() as u32).filter(|&s| s <= limit)?;
    let mut count = 0u128;
    let mut v = vec![ctx.zero(); n * n];
    for idx in 0..total {
        v.iter_mut().for_each(|x| *x = ctx.zero());
        let mut rest = idx;
        for b in &basis {
            let c = ctx.element((rest % q) as u32).unwrap();
            rest /= q;
            if c.is_zero() {
                continue;
            }
            for (vi, &bi) in v.iter_mut().zip(b) {
                *vi = ctx.add(*vi, ctx.mul(c, bi));
            }
        }
        if !MatrixFq::new(ctx, n, n, v.clone()).unwrap().det().unwrap().is_zero() {
            count += 1;
        }
    }
    Some(count)
}

/// Monic irreducible polynomials of degree `m` over `F_p`, coefficients from
/// the constant term up, found by trial division by every monic polynomial
/// of degree 1..=m/2.
pub fn monic_irreducibles(p: u32, m: usize) -> Vec<Vec<u32>> {
    fn monics(p: u32, d: usize) -> Vec<Vec<u32>> {
        (0..(p as u64).pow(d as u32))
            .map(|mut i| {
                let mut c: Vec<u32> = (0..d)
                    .map(|_| {
                        let x = (i % p as u64) as u32;
                        i /= p as u64;
                        x
                    })
                    .collect();
                c.push(1);
                c
            })
            .collect()
    }
    fn divides(d: &[u32], f: &[u32], p: u32) -> bool {
        let mut r = f.to_vec();
        let dd = d.len() - 1;
        while r.len() > dd {
            let c = *r.last().unwrap();
            let shift = r.len() - 1 - dd;
            for (k, &dk) in d.iter().enumerate() {
                r[shift + k] = (r[shift + k] + p * p - c * dk % p) % p;
            }
            r.pop();
        }
        r.iter().all(|&x| x == 0)
    }
    monics(p, m)
        .into_iter()
        .filter(|f| (1..=m / 2).all(|d| monics(p, d).iter().all(|g| !divides(g, f, p))))
        .collect()
}
