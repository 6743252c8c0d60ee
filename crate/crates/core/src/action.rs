//! The monomial group `G = S_n ⋉ T_n` and its action on `GL_n(F_q)`.
//!
//! An element `σt` sends `A` to `t⁻¹ σ⁻¹ A σ t²`, entrywise
//! `(σt · A)_{ij} = t_i⁻¹ a_{σ(i)σ(j)} t_j²`. Composition is arranged so
//! that `act(compose(g, h), A) = act(g, act(h, A))`.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::matrix::{decode_index, encode_index, enumerate_gl, gl_order, matrix_space_size, MatrixFq};
use crate::report::{CountReport, Method};

/// A pair `(σ, t)`; `sigma` holds 0-based images in one-line notation and
/// `t` the diagonal of the torus part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    sigma: Vec<usize>,
    t: Vec<FieldElement>,
}

impl GroupElement {
    pub fn new(sigma: Vec<usize>, t: Vec<FieldElement>) -> Result<Self> {
        let n = sigma.len();
        if t.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "permutation of {n} points with a torus part of length {}",
                t.len()
            )));
        }
        let mut seen = vec![false; n];
        for &s in &sigma {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return Err(Error::DimensionMismatch(format!("{sigma:?} is not a permutation")));
            }
        }
        if t.iter().any(|x| x.is_zero()) {
            return Err(Error::DimensionMismatch("torus entries must be nonzero".into()));
        }
        Ok(GroupElement { sigma, t })
    }

    pub fn identity(n: usize) -> Self {
        GroupElement {
            sigma: (0..n).collect(),
            t: vec![FieldElement::ONE; n],
        }
    }

    /// Pure torus element `(id, t)`.
    pub fn torus(t: Vec<FieldElement>) -> Result<Self> {
        Self::new((0..t.len()).collect(), t)
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn t(&self) -> &[FieldElement] {
        &self.t
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &s)| i == s) && self.t.iter().all(|&x| x == FieldElement::ONE)
    }

    /// `σ(t) = (t_{σ(1)}, …, t_{σ(n)})`, the twist of the semidirect product.
    pub fn twisted_torus(&self, t: &[FieldElement]) -> Vec<FieldElement> {
        self.sigma.iter().map(|&s| t[s]).collect()
    }

    pub fn invert(&self, ctx: &FieldCtx) -> GroupElement {
        let n = self.n();
        let mut sigma = vec![0; n];
        let mut t = vec![FieldElement::ONE; n];
        for (i, &s) in self.sigma.iter().enumerate() {
            sigma[s] = i;
            t[s] = ctx.inv_nonzero(self.t[i]);
        }
        GroupElement { sigma, t }
    }

    /// `|G| = n! (q-1)^n`.
    pub fn group_order(q: u64, n: usize) -> BigUint {
        let fact: BigUint = (1..=n as u64).product();
        fact * BigUint::from(q - 1).pow(n as u32)
    }

    pub(crate) fn prepared(&self, ctx: &FieldCtx) -> Prepared {
        Prepared {
            sigma: self.sigma.clone(),
            t_inv: self.t.iter().map(|&x| ctx.inv_nonzero(x)).collect(),
            t_sq: self.t.iter().map(|&x| ctx.square(x)).collect(),
        }
    }
}

/// A group element with `t⁻¹` and `t²` precomputed for repeated action.
#[derive(Clone, Debug)]
pub(crate) struct Prepared {
    sigma: Vec<usize>,
    t_inv: Vec<FieldElement>,
    t_sq: Vec<FieldElement>,
}

impl Prepared {
    #[inline]
    pub(crate) fn act_into(&self, ctx: &FieldCtx, src: &[FieldElement], dst: &mut [FieldElement]) {
        let n = self.sigma.len();
        for i in 0..n {
            let row = self.sigma[i] * n;
            for j in 0..n {
                let a = src[row + self.sigma[j]];
                dst[i * n + j] = ctx.mul(ctx.mul(self.t_inv[i], a), self.t_sq[j]);
            }
        }
    }
}

/// `g = σt` acting on `A` as `t⁻¹ σ⁻¹ A σ t²`.
///
/// Singular inputs are mapped by the same formula; use [`act_flagged`] to
/// learn whether the input was outside `GL_n`.
pub fn act(g: &GroupElement, a: &MatrixFq) -> Result<MatrixFq> {
    act_flagged(g, a).map(|(m, _)| m)
}

/// [`act`], also reporting whether `a` was singular.
pub fn act_flagged(g: &GroupElement, a: &MatrixFq) -> Result<(MatrixFq, bool)> {
    let n = g.n();
    if !a.is_square() || a.rows() != n {
        return Err(Error::DimensionMismatch(format!(
            "group element of degree {n} acting on a {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let ctx = a.ctx();
    let mut out = vec![FieldElement::ZERO; n * n];
    g.prepared(ctx).act_into(ctx, a.entries(), &mut out);
    Ok((MatrixFq::from_entries_unchecked(ctx, n, out), !a.is_nonsingular()))
}

/// The product `g ∘ h`, acting as `h` first and then `g`.
pub fn compose(ctx: &FieldCtx, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    if g.n() != h.n() {
        return Err(Error::DimensionMismatch(format!("degrees {} and {}", g.n(), h.n())));
    }
    // (g·(h·A))_{ij} = s_i⁻¹ u_{σ(i)}⁻¹ a_{τσ(i) τσ(j)} u_{σ(j)}² s_j²
    // with g = (σ, s), h = (τ, u).
    let sigma = g.sigma.iter().map(|&s| h.sigma[s]).collect();
    let t = g.sigma.iter().zip(&g.t).map(|(&s, &gt)| ctx.mul(gt, h.t[s])).collect();
    Ok(GroupElement { sigma, t })
}

/// All permutations of `0..n` in lexicographic one-line order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

/// All torus vectors in `(F_q^×)^n`, lexicographic in element codes.
pub fn torus_elements(ctx: &FieldCtx, n: usize) -> impl Iterator<Item = Vec<FieldElement>> + '_ {
    let base = (ctx.q() - 1) as u64;
    let count = base.pow(n as u32);
    (0..count).map(move |mut idx| {
        let mut t = vec![FieldElement::ONE; n];
        for slot in t.iter_mut().rev() {
            *slot = FieldElement::from_code((idx % base) as u32 + 1);
            idx /= base;
        }
        t
    })
}

/// Every element of `G`, permutations outermost.
pub fn group_elements(ctx: &FieldCtx, n: usize) -> impl Iterator<Item = GroupElement> + '_ {
    permutations(n).into_iter().flat_map(move |sigma| {
        torus_elements(ctx, n).map(move |t| GroupElement {
            sigma: sigma.clone(),
            t,
        })
    })
}

/// Generators of `G`: an adjacent transposition, an `n`-cycle, and a torus
/// generator on each coordinate.
pub fn generators(ctx: &FieldCtx, n: usize) -> Vec<GroupElement> {
    let mut gens = Vec::new();
    if n > 1 {
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        gens.push(GroupElement {
            sigma: swap,
            t: vec![FieldElement::ONE; n],
        });
        gens.push(GroupElement {
            sigma: (0..n).map(|i| (i + 1) % n).collect(),
            t: vec![FieldElement::ONE; n],
        });
    }
    if ctx.q() > 2 {
        for i in 0..n {
            let mut t = vec![FieldElement::ONE; n];
            t[i] = ctx.generator();
            gens.push(GroupElement {
                sigma: (0..n).collect(),
                t,
            });
        }
    }
    gens
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrbitStrategy {
    /// Apply every group element to each representative.
    #[default]
    FullGroup,
    /// Breadth-first closure under [`generators`].
    GeneratorClosure,
}

/// The `G`-orbits of `GL_n(F_q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    /// Least matrix of each orbit in enumeration order, ascending.
    pub representatives: Vec<MatrixFq>,
    pub orbit_sizes: Vec<u64>,
    /// Sum of the orbit sizes, `|GL_n(F_q)|`.
    pub total: u64,
}

impl OrbitPartition {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

/// Checks that an orbit scan of `GL_n(F_q)` is within budget.
pub fn orbit_scan_feasible(ctx: &FieldCtx, n: usize, budget: &Budget) -> Result<()> {
    let q = ctx.q() as u64;
    let space = matrix_space_size(q, n);
    let work = gl_order(ctx, n) * GroupElement::group_order(q, n);
    let limit = BigUint::from(budget.enumeration);
    if space.is_none_or(|s| s > budget.enumeration) || work > limit {
        return Err(Error::budget(
            format!(
                "orbit enumeration for n={n}, q={q} (feasible only while q^(n^2) and |GL_n|·n!(q-1)^n stay within the budget)"
            ),
            work.max(space.map_or_else(|| BigUint::from(q).pow((n * n) as u32), BigUint::from)),
            budget.enumeration,
        ));
    }
    Ok(())
}

/// Partitions `GL_n(F_q)` into `G`-orbits by a scan in canonical order.
pub fn enumerate_orbits(ctx: &FieldCtx, n: usize, budget: &Budget) -> Result<OrbitPartition> {
    enumerate_orbits_with(ctx, n, budget, OrbitStrategy::FullGroup)
}

pub fn enumerate_orbits_with(
    ctx: &FieldCtx,
    n: usize,
    budget: &Budget,
    strategy: OrbitStrategy,
) -> Result<OrbitPartition> {
    orbit_scan_feasible(ctx, n, budget)?;
    let q = ctx.q() as u64;
    let group: Vec<Prepared> = match strategy {
        OrbitStrategy::FullGroup => group_elements(ctx, n).map(|g| g.prepared(ctx)).collect(),
        OrbitStrategy::GeneratorClosure => generators(ctx, n).iter().map(|g| g.prepared(ctx)).collect(),
    };

    let mut visited: HashSet<u64> = HashSet::new();
    let mut representatives = Vec::new();
    let mut orbit_sizes = Vec::new();
    let mut total = 0u64;

    let mut gl = enumerate_gl(ctx, n, budget)?;
    let mut a = vec![FieldElement::ZERO; n * n];
    let mut img = vec![FieldElement::ZERO; n * n];
    while let Some(idx) = gl.next_into(&mut a) {
        if visited.contains(&idx) {
            continue;
        }
        let orbit = match strategy {
            OrbitStrategy::FullGroup => {
                let mut orbit = HashSet::new();
                for g in &group {
                    g.act_into(ctx, &a, &mut img);
                    orbit.insert(encode_index(q, &img));
                }
                orbit
            }
            OrbitStrategy::GeneratorClosure => {
                let mut orbit = HashSet::from([idx]);
                let mut queue = VecDeque::from([idx]);
                let mut cur = vec![FieldElement::ZERO; n * n];
                while let Some(x) = queue.pop_front() {
                    decode_index(q, x, &mut cur);
                    for g in &group {
                        g.act_into(ctx, &cur, &mut img);
                        let y = encode_index(q, &img);
                        if orbit.insert(y) {
                            queue.push_back(y);
                        }
                    }
                }
                orbit
            }
        };
        debug_assert!(orbit.contains(&idx));
        let size = orbit.len() as u64;
        visited.extend(orbit);
        representatives.push(MatrixFq::from_entries_unchecked(ctx, n, a.clone()));
        orbit_sizes.push(size);
        total += size;
    }

    let expected = gl_order(ctx, n).to_u64().ok_or(Error::Overflow("orbit total"))?;
    if total != expected {
        return Err(Error::InternalConsistency(format!(
            "orbit sizes sum to {total}, expected |GL_{n}(F_{q})| = {expected}"
        )));
    }
    Ok(OrbitPartition {
        representatives,
        orbit_sizes,
        total,
    })
}

/// `N(n, F_q)` as the number of orbits found by [`enumerate_orbits`].
pub fn orbit_report(ctx: &FieldCtx, n: usize, budget: &Budget) -> Result<CountReport> {
    let start = std::time::Instant::now();
    let orbits = enumerate_orbits(ctx, n, budget)?;
    Ok(CountReport {
        n,
        q: ctx.q() as u64,
        p: ctx.p() as u64,
        m: ctx.m(),
        method: Method::Orbit,
        count: BigUint::from(orbits.count()),
        contributions: Vec::new(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
