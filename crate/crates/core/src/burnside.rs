//! Orbit counting by Burnside's lemma with structured fixed-point counts.
//!
//! `N = Σ_μ B(μ) / (q-1)^n` with `B(μ) = Σ_t b(μ,t) / d(μ)`, where `b(μ,t)`
//! counts the `A ∈ GL_n` fixed by `μt` for the canonical permutation of
//! cycle type `μ`.
//!
//! A fixed `A` satisfies `x_i = t_i⁻¹ M x_{μ(i)}` for its rows `x_i`, where
//! `(My)_j = t_j² y_{μ(j)}`. Around a cycle of length `ℓ` this determines
//! every row from the first one, `v`, and forces `v ∈ ker(P·I - M^ℓ)` with
//! `P` the product of the `t_i` on the cycle. What remains is to count the
//! choices of one `v` per cycle that make the assembled rows independent.

use std::collections::HashMap;
use std::fmt;
use std::time::Instant;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::matrix::{gl_order_q, MatrixFq};
use crate::report::{CountReport, Method, PartitionContribution};
use crate::span::Span;

/// A cycle type `μ_1 ≤ … ≤ μ_r` of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Parts in any order; they are stored nondecreasing.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::DimensionMismatch(format!("{parts:?} is not a partition")));
        }
        parts.sort_unstable();
        Ok(Partition { parts })
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `m_k`, the number of parts equal to `k`.
    pub fn multiplicity(&self, k: usize) -> usize {
        self.parts.iter().filter(|&&x| x == k).count()
    }

    /// `(k, m_k)` for each distinct part `k`, ascending.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &k in &self.parts {
            match out.last_mut() {
                Some((last, m)) if *last == k => *m += 1,
                _ => out.push((k, 1)),
            }
        }
        out
    }

    /// Centralizer order `∏ m_k! k^{m_k}`.
    pub fn d(&self) -> u64 {
        self.multiplicities()
            .iter()
            .map(|&(k, m)| (1..=m as u64).product::<u64>() * (k as u64).pow(m as u32))
            .product()
    }

    /// Class size `n!/d(μ)`.
    pub fn c(&self) -> u64 {
        (1..=self.n() as u64).product::<u64>() / self.d()
    }

    /// `k_i = Σ_{s<i} μ_s`.
    pub fn offsets(&self) -> Vec<usize> {
        self.parts
            .iter()
            .scan(0, |acc, &p| {
                let k = *acc;
                *acc += p;
                Some(k)
            })
            .collect()
    }

    /// Number of parts equal to 1.
    pub fn fixed_points(&self) -> usize {
        self.multiplicity(1)
    }

    /// The canonical permutation, 0-based one-line notation: each part is the
    /// consecutive cycle `(k+1, …, k+μ_i)`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut sigma = Vec::with_capacity(self.n());
        for (&len, k) in self.parts.iter().zip(self.offsets()) {
            for s in 0..len {
                sigma.push(if s + 1 == len { k } else { k + s + 1 });
            }
        }
        sigma
    }

    /// Cycles of the canonical permutation in 1-based notation, omitting
    /// fixed points, e.g. `(34)(567)`.
    pub fn cycle_notation(&self) -> String {
        let mut out = String::new();
        for (&len, k) in self.parts.iter().zip(self.offsets()) {
            if len > 1 {
                out.push('(');
                for s in 1..=len {
                    out.push_str(&(k + s).to_string());
                }
                out.push(')');
            }
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All partitions of `n`, lexicographic on their nondecreasing parts.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for first in min..=rest {
            if first != rest && rest - first < first {
                continue;
            }
            cur.push(first);
            rec(rest - first, first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, 1, &mut Vec::new(), &mut out);
    }
    out
}

/// `M = t²μ⁻¹` as a matrix: `M_{j,μ(j)} = t_j²`.
fn twisted_matrix(ctx: &FieldCtx, sigma: &[usize], t: &[FieldElement]) -> MatrixFq {
    let n = sigma.len();
    let mut m = MatrixFq::zeros(ctx, n, n);
    for j in 0..n {
        m.set(j, sigma[j], ctx.square(t[j]));
    }
    m
}

fn check_torus(ctx: &FieldCtx, p: &Partition, t: &[FieldElement]) -> Result<()> {
    if t.len() != p.n() {
        return Err(Error::DimensionMismatch(format!(
            "torus vector of length {} for a partition of {}",
            t.len(),
            p.n()
        )));
    }
    for &x in t {
        ctx.element(x.code())?;
        if x.is_zero() {
            return Err(Error::DimensionMismatch("torus entries must be nonzero".into()));
        }
    }
    Ok(())
}

/// The solvability test for the fixed-point system of `μt`.
///
/// For each part `μ_i = 1` at position `i`:
/// `∏_{j≤r'} (t_i - t_j²) · ∏_{j>r'} (t_i^{μ_j} - ∏_s t²_{k_j+s}) = 0`, where
/// `r'` is the number of parts equal to 1; for each part `μ_i > 1`:
/// `det(∏_s t_{k_i+s} · I - M^{μ_i}) = 0`. A rejected `t` fixes no matrix.
pub fn theorem31_filter(ctx: &FieldCtx, p: &Partition, t: &[FieldElement]) -> Result<bool> {
    check_torus(ctx, p, t)?;
    let r1 = p.fixed_points();
    let offsets = p.offsets();
    let sq: Vec<FieldElement> = t.iter().map(|&x| ctx.square(x)).collect();
    let cycle_sq: Vec<FieldElement> = p
        .parts
        .iter()
        .zip(&offsets)
        .map(|(&len, &k)| sq[k..k + len].iter().fold(FieldElement::ONE, |a, &b| ctx.mul(a, b)))
        .collect();

    for i in 0..r1 {
        let ti = t[offsets[i]];
        let mut prod = FieldElement::ONE;
        for j in 0..p.parts.len() {
            let term = if j < r1 {
                ctx.sub(ti, sq[offsets[j]])
            } else {
                ctx.sub(ctx.pow(ti, p.parts[j] as u64), cycle_sq[j])
            };
            prod = ctx.mul(prod, term);
        }
        if !prod.is_zero() {
            return Ok(false);
        }
    }

    let m = twisted_matrix(ctx, &p.permutation(), t);
    for (i, &len) in p.parts.iter().enumerate().skip(r1) {
        let k = offsets[i];
        let prod = t[k..k + len].iter().fold(FieldElement::ONE, |a, &b| ctx.mul(a, b));
        let lhs = MatrixFq::identity(ctx, p.n()).scale(prod);
        if !lhs.sub(&m.pow(len as u64)?)?.det()?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One cycle of the fixed-point system: its admissible first rows, one per
/// projective point, each expanded into the full block of `len` rows.
struct CycleRows {
    dim: usize,
    blocks: Vec<Vec<FieldElement>>,
}

fn cycle_rows(
    ctx: &FieldCtx,
    m: &MatrixFq,
    t: &[FieldElement],
    k: usize,
    len: usize,
) -> Result<(Vec<Vec<FieldElement>>, CycleRows)> {
    let n = t.len();
    let prod = t[k..k + len].iter().fold(FieldElement::ONE, |a, &b| ctx.mul(a, b));
    let system = MatrixFq::identity(ctx, n).scale(prod).sub(&m.pow(len as u64)?)?;
    let basis = system.kernel();
    let dim = basis.len();

    // rows of the block for first row v: x_k = v and, walking the cycle
    // backwards, x_{k+s} = t_{k+s}⁻¹ M x_{k+s+1 mod len}
    let mut blocks = Vec::new();
    let q = ctx.q() as u64;
    for lead in 0..dim {
        let tail = dim - lead - 1;
        for idx in 0..q.pow(tail as u32) {
            let mut coeffs = vec![FieldElement::ZERO; dim];
            coeffs[lead] = FieldElement::ONE;
            let mut rest = idx;
            for c in coeffs[lead + 1..].iter_mut().rev() {
                *c = FieldElement::from_code((rest % q) as u32);
                rest /= q;
            }
            let mut v = vec![FieldElement::ZERO; n];
            for (c, b) in coeffs.iter().zip(&basis) {
                if c.is_zero() {
                    continue;
                }
                for (vj, &bj) in v.iter_mut().zip(b) {
                    *vj = ctx.add(*vj, ctx.mul(*c, bj));
                }
            }
            let mut rows = vec![FieldElement::ZERO; len * n];
            rows[..n].copy_from_slice(&v);
            let mut cur = v;
            for s in (1..len).rev() {
                let next = m.apply(&cur)?;
                let inv = ctx.inv_nonzero(t[k + s]);
                cur = next.into_iter().map(|x| ctx.mul(inv, x)).collect();
                rows[s * n..(s + 1) * n].copy_from_slice(&cur);
            }
            blocks.push(rows);
        }
    }
    Ok((basis, CycleRows { dim, blocks }))
}

fn is_unit_vector(v: &[FieldElement]) -> Option<usize> {
    let mut hit = None;
    for (j, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if hit.is_some() || *x != FieldElement::ONE {
            return None;
        }
        hit = Some(j);
    }
    hit
}

/// Count for rows confined to coordinate subspaces, when the supports split
/// into blocks with full support inside each block.
fn coordinate_count(q: u64, supports: &[Vec<usize>]) -> Option<u128> {
    let n = supports.len();
    // union rows that share a column
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (i, cols) in supports.iter().enumerate() {
        for &c in cols {
            match owner[c] {
                None => owner[c] = Some(i),
                Some(o) => {
                    let (a, b) = (find(&mut parent, o), find(&mut parent, i));
                    parent[a] = b;
                }
            }
        }
    }
    if owner.iter().any(Option::is_none) {
        return Some(0);
    }
    let mut blocks: HashMap<usize, (Vec<usize>, Vec<usize>)> = HashMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        blocks.entry(r).or_default().0.push(i);
    }
    for (c, o) in owner.iter().enumerate() {
        let r = find(&mut parent, o.unwrap());
        blocks.get_mut(&r).unwrap().1.push(c);
    }
    let mut total: u128 = 1;
    for (rows, cols) in blocks.values() {
        if rows.len() != cols.len() {
            return Some(0);
        }
        if rows.iter().any(|&i| supports[i].len() != cols.len()) {
            return None;
        }
        total = total.checked_mul(gl_order_q(q, cols.len()).to_u128()?)?;
    }
    Some(total)
}

/// `b(μ,t)`, the number of `A ∈ GL_n(F_q)` fixed by `μt`.
pub fn count_fixed_points(ctx: &FieldCtx, p: &Partition, t: &[FieldElement], budget: &Budget) -> Result<u128> {
    if !theorem31_filter(ctx, p, t)? {
        return Ok(0);
    }
    count_solutions(ctx, p, t, budget)
}

fn count_solutions(ctx: &FieldCtx, p: &Partition, t: &[FieldElement], budget: &Budget) -> Result<u128> {
    let n = p.n();
    let q = ctx.q() as u64;
    let m = twisted_matrix(ctx, &p.permutation(), t);
    let mut cycles = Vec::with_capacity(p.parts.len());
    let mut bases = Vec::with_capacity(p.parts.len());
    for (&len, k) in p.parts.iter().zip(p.offsets()) {
        let (basis, rows) = cycle_rows(ctx, &m, t, k, len)?;
        if rows.dim == 0 {
            return Ok(0);
        }
        bases.push(basis);
        cycles.push((len, rows));
    }
    let overflow = || Error::Overflow("fixed-point count");

    if p.fixed_points() == n {
        if bases.iter().all(|b| b.len() == n) {
            return gl_order_q(q, n).to_u128().ok_or_else(overflow);
        }
        let supports: Option<Vec<Vec<usize>>> = bases
            .iter()
            .map(|b| b.iter().map(|v| is_unit_vector(v)).collect())
            .collect();
        if let Some(supports) = supports {
            if let Some(count) = coordinate_count(q, &supports) {
                return Ok(count);
            }
        }
    }

    let slots: usize = cycles.iter().map(|(_, c)| c.dim).sum();
    if slots > budget.fixed_point_slots {
        return Err(Error::budget(
            format!("fixed-point count for {p} (free row dimensions summing to {slots})"),
            format!("{slots} slots"),
            format!("{} slots", budget.fixed_point_slots),
        ));
    }

    // Each first row may be rescaled freely, so only projective points are
    // enumerated and every placement contributes a factor q-1.
    cycles.sort_by_key(|(_, c)| c.dim);
    let scale = (q - 1) as u128;
    let mut scratch = Vec::new();
    let mut states: HashMap<Span, u128> = HashMap::from([(Span::empty(n), 1)]);
    let (last, init) = cycles.split_last().unwrap();
    for (_, cyc) in init {
        let mut next: HashMap<Span, u128> = HashMap::new();
        for (span, &cnt) in &states {
            let weight = cnt.checked_mul(scale).ok_or_else(overflow)?;
            for block in &cyc.blocks {
                if let Some(s) = span.extend(ctx, block, &mut scratch) {
                    let slot = next.entry(s).or_insert(0);
                    *slot = slot.checked_add(weight).ok_or_else(overflow)?;
                }
            }
        }
        if next.is_empty() {
            return Ok(0);
        }
        states = next;
    }
    let mut total: u128 = 0;
    for (span, &cnt) in &states {
        let good = last
            .1
            .blocks
            .iter()
            .filter(|b| span.independent(ctx, b, &mut scratch))
            .count() as u128;
        let add = cnt
            .checked_mul(scale)
            .and_then(|x| x.checked_mul(good))
            .ok_or_else(overflow)?;
        total = total.checked_add(add).ok_or_else(overflow)?;
    }
    Ok(total)
}

/// A single `(μ, t)` fixed-point computation.
#[derive(Clone, Debug)]
pub struct FixedPointJob {
    pub partition: Partition,
    pub t: Vec<FieldElement>,
    pub permutation: Vec<usize>,
    pub b: Option<u128>,
}

impl FixedPointJob {
    pub fn new(partition: Partition, t: Vec<FieldElement>) -> Self {
        let permutation = partition.permutation();
        FixedPointJob {
            partition,
            t,
            permutation,
            b: None,
        }
    }

    pub fn run(&mut self, ctx: &FieldCtx, budget: &Budget) -> Result<u128> {
        let b = count_fixed_points(ctx, &self.partition, &self.t, budget)?;
        self.b = Some(b);
        Ok(b)
    }
}

fn decode_torus(q: u64, n: usize, mut idx: u64) -> Vec<FieldElement> {
    let base = q - 1;
    let mut t = vec![FieldElement::ONE; n];
    for slot in t.iter_mut().rev() {
        *slot = FieldElement::from_code((idx % base) as u32 + 1);
        idx /= base;
    }
    t
}

fn torus_size(q: u64, n: usize, budget: &Budget) -> Result<u64> {
    let size = (q - 1).checked_pow(n as u32);
    match size {
        Some(s) if s <= budget.enumeration => Ok(s),
        _ => Err(Error::budget(
            format!("Burnside torus scan for n={n}, q={q}"),
            BigUint::from(q - 1).pow(n as u32),
            budget.enumeration,
        )),
    }
}

/// `Σ_{t ∈ T_n} b(μ,t)`.
pub fn fixed_point_sum(ctx: &FieldCtx, p: &Partition, budget: &Budget) -> Result<BigUint> {
    let q = ctx.q() as u64;
    let n = p.n();
    let size = torus_size(q, n, budget)?;
    let total = (0..size)
        .into_par_iter()
        .map(|idx| count_fixed_points(ctx, p, &decode_torus(q, n, idx), budget))
        .try_reduce(
            || 0u128,
            |a, b| a.checked_add(b).ok_or(Error::Overflow("fixed-point sum")),
        )?;
    Ok(BigUint::from(total))
}

/// `B(μ) = Σ_t b(μ,t) / d(μ)`, checked to be exact.
pub fn partition_contribution(ctx: &FieldCtx, p: &Partition, budget: &Budget) -> Result<BigUint> {
    let sum = fixed_point_sum(ctx, p, budget)?;
    let (b, rem) = sum.div_rem(&BigUint::from(p.d()));
    if !rem.is_zero() {
        return Err(Error::InternalConsistency(format!(
            "fixed-point sum {sum} for {p} over F_{} is not divisible by d = {}",
            ctx.q(),
            p.d()
        )));
    }
    Ok(b)
}

/// `N(n, F_q)` by Burnside's lemma.
pub fn count_classes_burnside(ctx: &FieldCtx, n: usize, budget: &Budget) -> Result<CountReport> {
    if n == 0 {
        return Err(Error::DimensionMismatch("dimension must be at least 1".into()));
    }
    let start = Instant::now();
    let q = ctx.q() as u64;
    torus_size(q, n, budget)?;
    let mut contributions = Vec::new();
    let mut sum = BigUint::zero();
    for p in partitions(n) {
        let b = partition_contribution(ctx, &p, budget)?;
        sum += &b;
        contributions.push(PartitionContribution {
            partition: p.parts.clone(),
            value: b,
        });
    }
    let (count, rem) = sum.div_rem(&BigUint::from(q - 1).pow(n as u32));
    if !rem.is_zero() {
        return Err(Error::InternalConsistency(format!(
            "Σ B(μ) = {sum} is not divisible by (q-1)^n for n={n}, q={q}"
        )));
    }
    Ok(CountReport {
        n,
        q,
        p: ctx.p() as u64,
        m: ctx.m(),
        method: Method::Burnside,
        count,
        contributions,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}
