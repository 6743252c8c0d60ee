//! Dense matrices over `F_q`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixFq {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
    ctx: FieldCtx,
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixFq(F_{}, [", self.ctx.q())?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            let row: Vec<u32> = self.row(i).iter().map(|e| e.code()).collect();
            write!(f, "{row:?}")?;
        }
        write!(f, "])")
    }
}

impl MatrixFq {
    pub fn new(ctx: &FieldCtx, rows: usize, cols: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        for e in &entries {
            ctx.element(e.code())?;
        }
        Ok(MatrixFq {
            rows,
            cols,
            entries,
            ctx: ctx.clone(),
        })
    }

    /// Square matrix from row-major element codes.
    pub fn from_codes(ctx: &FieldCtx, n: usize, codes: &[u32]) -> Result<Self> {
        let entries = codes.iter().map(|&c| ctx.element(c)).collect::<Result<Vec<_>>>()?;
        MatrixFq::new(ctx, n, n, entries)
    }

    pub(crate) fn from_entries_unchecked(ctx: &FieldCtx, n: usize, entries: Vec<FieldElement>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        MatrixFq {
            rows: n,
            cols: n,
            entries,
            ctx: ctx.clone(),
        }
    }

    pub fn zeros(ctx: &FieldCtx, rows: usize, cols: usize) -> Self {
        MatrixFq {
            rows,
            cols,
            entries: vec![FieldElement::ZERO; rows * cols],
            ctx: ctx.clone(),
        }
    }

    pub fn identity(ctx: &FieldCtx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.entries[i * n + i] = FieldElement::ONE;
        }
        m
    }

    /// Diagonal matrix with the given diagonal.
    pub fn diagonal(ctx: &FieldCtx, diag: &[FieldElement]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(ctx, n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    /// Circulant matrix whose first row is `a`, each later row shifted one
    /// place to the right.
    pub fn circulant(ctx: &FieldCtx, a: &[FieldElement]) -> Self {
        let n = a.len();
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            for j in 0..n {
                m.entries[i * n + j] = a[(j + n - i) % n];
            }
        }
        m
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn codes(&self) -> Vec<u32> {
        self.entries.iter().map(|e| e.code()).collect()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, rhs: &MatrixFq) -> Result<MatrixFq> {
        if self.ctx != rhs.ctx {
            return Err(Error::MixedContexts);
        }
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let ctx = &self.ctx;
        let mut out = Self::zeros(ctx, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let cur = out.entries[i * rhs.cols + j];
                    out.entries[i * rhs.cols + j] = ctx.add(cur, ctx.mul(a, rhs.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        let ctx = &self.ctx;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(FieldElement::ZERO, |acc, (&a, &b)| ctx.add(acc, ctx.mul(a, b)))
            })
            .collect())
    }

    pub fn pow(&self, mut e: u64) -> Result<MatrixFq> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let mut base = self.clone();
        let mut acc = Self::identity(&self.ctx, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: FieldElement) -> MatrixFq {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = self.ctx.mul(*e, c);
        }
        out
    }

    pub fn sub(&self, rhs: &MatrixFq) -> Result<MatrixFq> {
        if self.ctx != rhs.ctx {
            return Err(Error::MixedContexts);
        }
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch("difference of unequal shapes".into()));
        }
        let mut out = self.clone();
        for (e, &r) in out.entries.iter_mut().zip(&rhs.entries) {
            *e = self.ctx.sub(*e, r);
        }
        Ok(out)
    }

    pub fn det(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let mut buf = self.entries.clone();
        Ok(det_in_place(&self.ctx, self.rows, &mut buf))
    }

    pub fn rank(&self) -> usize {
        let mut buf = self.entries.clone();
        rref_in_place(&self.ctx, self.rows, self.cols, &mut buf).len()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.is_square() && !det_in_place(&self.ctx, self.rows, &mut self.entries.clone()).is_zero()
    }

    pub fn inverse(&self) -> Result<MatrixFq> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = vec![FieldElement::ZERO; n * 2 * n];
        for i in 0..n {
            aug[i * 2 * n..i * 2 * n + n].copy_from_slice(self.row(i));
            aug[i * 2 * n + n + i] = FieldElement::ONE;
        }
        let pivots = rref_in_place(&self.ctx, n, 2 * n, &mut aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let entries = (0..n)
            .flat_map(|i| aug[i * 2 * n + n..(i + 1) * 2 * n].to_vec())
            .collect();
        Ok(MatrixFq::from_entries_unchecked(&self.ctx, n, entries))
    }

    /// Basis of the right kernel `{v : self · v = 0}`, one vector per free
    /// column of the reduced row echelon form.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let mut buf = self.entries.clone();
        kernel_in_place(&self.ctx, self.rows, self.cols, &mut buf)
    }

    /// Position of this square matrix in row-major lexicographic order over
    /// entry codes (first entry most significant).
    pub fn index(&self) -> u64 {
        encode_index(self.ctx.q() as u64, &self.entries)
    }

    pub fn from_index(ctx: &FieldCtx, n: usize, index: u64) -> Self {
        let mut entries = vec![FieldElement::ZERO; n * n];
        decode_index(ctx.q() as u64, index, &mut entries);
        MatrixFq::from_entries_unchecked(ctx, n, entries)
    }
}

pub(crate) fn encode_index(q: u64, entries: &[FieldElement]) -> u64 {
    entries.iter().fold(0u64, |acc, e| acc * q + e.code() as u64)
}

pub(crate) fn decode_index(q: u64, mut index: u64, out: &mut [FieldElement]) {
    for slot in out.iter_mut().rev() {
        *slot = FieldElement::from_code((index % q) as u32);
        index /= q;
    }
}

/// Determinant by Gaussian elimination, destroying `buf`.
pub(crate) fn det_in_place(ctx: &FieldCtx, n: usize, buf: &mut [FieldElement]) -> FieldElement {
    let mut det = FieldElement::ONE;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !buf[r * n + col].is_zero()) else {
            return FieldElement::ZERO;
        };
        if pivot != col {
            for k in 0..n {
                buf.swap(pivot * n + k, col * n + k);
            }
            det = ctx.neg(det);
        }
        let pv = buf[col * n + col];
        det = ctx.mul(det, pv);
        let inv = ctx.inv_nonzero(pv);
        for r in col + 1..n {
            let f = buf[r * n + col];
            if f.is_zero() {
                continue;
            }
            let f = ctx.mul(f, inv);
            for k in col..n {
                let v = ctx.sub(buf[r * n + k], ctx.mul(f, buf[col * n + k]));
                buf[r * n + k] = v;
            }
        }
    }
    det
}

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref_in_place(ctx: &FieldCtx, rows: usize, cols: usize, buf: &mut [FieldElement]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !buf[r * cols + col].is_zero()) else {
            continue;
        };
        if pivot != rank {
            for k in 0..cols {
                buf.swap(pivot * cols + k, rank * cols + k);
            }
        }
        let inv = ctx.inv_nonzero(buf[rank * cols + col]);
        for k in 0..cols {
            buf[rank * cols + k] = ctx.mul(buf[rank * cols + k], inv);
        }
        for r in 0..rows {
            if r == rank {
                continue;
            }
            let f = buf[r * cols + col];
            if f.is_zero() {
                continue;
            }
            for k in 0..cols {
                let v = ctx.sub(buf[r * cols + k], ctx.mul(f, buf[rank * cols + k]));
                buf[r * cols + k] = v;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    pivots
}

pub(crate) fn kernel_in_place(
    ctx: &FieldCtx,
    rows: usize,
    cols: usize,
    buf: &mut [FieldElement],
) -> Vec<Vec<FieldElement>> {
    let pivots = rref_in_place(ctx, rows, cols, buf);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![FieldElement::ZERO; cols];
            v[f] = FieldElement::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = ctx.neg(buf[r * cols + f]);
            }
            v
        })
        .collect()
}

/// `|GL_n(F_q)| = ∏_{i<n} (q^n - q^i)`.
pub fn gl_order(ctx: &FieldCtx, n: usize) -> BigUint {
    gl_order_q(ctx.q() as u64, n)
}

pub fn gl_order_q(q: u64, n: usize) -> BigUint {
    let q = BigUint::from(q);
    let qn = q.pow(n as u32);
    let mut acc = BigUint::one();
    let mut qi = BigUint::one();
    for _ in 0..n {
        acc *= &qn - &qi;
        qi *= &q;
    }
    acc
}

/// `q^(n²)`, or `None` if it does not fit in 64 bits.
pub(crate) fn matrix_space_size(q: u64, n: usize) -> Option<u64> {
    q.checked_pow((n * n) as u32)
}

/// Every nonsingular `n × n` matrix in row-major lexicographic order.
pub fn enumerate_gl(ctx: &FieldCtx, n: usize, budget: &Budget) -> Result<GlIter> {
    let total = match matrix_space_size(ctx.q() as u64, n) {
        Some(t) if t <= budget.enumeration => t,
        other => {
            let required = other.map_or_else(
                || BigUint::from(ctx.q()).pow((n * n) as u32).to_string(),
                |t| t.to_string(),
            );
            return Err(Error::budget(
                format!("enumerating M_{n}(F_{})", ctx.q()),
                required,
                budget.enumeration,
            ));
        }
    };
    Ok(GlIter {
        ctx: ctx.clone(),
        n,
        next: 0,
        end: total,
        scratch: vec![FieldElement::ZERO; n * n],
    })
}

pub struct GlIter {
    ctx: FieldCtx,
    n: usize,
    next: u64,
    end: u64,
    scratch: Vec<FieldElement>,
}

impl GlIter {
    /// Advances to the next nonsingular matrix, returning its index and
    /// leaving its entries in `out`.
    pub(crate) fn next_into(&mut self, out: &mut [FieldElement]) -> Option<u64> {
        let q = self.ctx.q() as u64;
        while self.next < self.end {
            let idx = self.next;
            self.next += 1;
            decode_index(q, idx, out);
            self.scratch.copy_from_slice(out);
            if !det_in_place(&self.ctx, self.n, &mut self.scratch).is_zero() {
                return Some(idx);
            }
        }
        None
    }
}

impl Iterator for GlIter {
    type Item = MatrixFq;

    fn next(&mut self) -> Option<MatrixFq> {
        let mut out = vec![FieldElement::ZERO; self.n * self.n];
        self.next_into(&mut out)?;
        Some(MatrixFq::from_entries_unchecked(&self.ctx, self.n, out))
    }
}

/// Nonsingularity of the circulant with first row `a`, decided by
/// `gcd(a_0 + a_1 y + … + a_{n-1} y^{n-1}, y^n - 1) = 1`.
pub fn circulant_nonsingular(ctx: &FieldCtx, a: &[FieldElement]) -> bool {
    let f = Poly::new(a.to_vec());
    if f.is_zero() {
        return false;
    }
    Poly::gcd(ctx, &f, &Poly::x_pow_minus_one(ctx, a.len())).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn m(ctx: &FieldCtx, n: usize, codes: &[u32]) -> MatrixFq {
        MatrixFq::from_codes(ctx, n, codes).unwrap()
    }

    #[test]
    fn det_examples() {
        for (p, k) in [(2, 1), (3, 2), (5, 1)] {
            let f = make_field(p, k).unwrap();
            for n in 1..5 {
                assert_eq!(MatrixFq::identity(&f, n).det().unwrap(), FieldElement::ONE);
            }
        }
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(m(&f2, 2, &[1, 1, 1, 1]).det().unwrap(), FieldElement::ZERO);
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(m(&f5, 2, &[1, 2, 3, 4]).det().unwrap().code(), 3);
        let rect = MatrixFq::zeros(&f5, 2, 3);
        assert!(matches!(rect.det(), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn det_is_multiplicative_on_gl2_f2() {
        let f2 = make_field(2, 1).unwrap();
        let all: Vec<MatrixFq> = (0..16).map(|i| MatrixFq::from_index(&f2, 2, i)).collect();
        for a in &all {
            for b in &all {
                let ab = a.mul(b).unwrap();
                assert_eq!(ab.det().unwrap(), f2.mul(a.det().unwrap(), b.det().unwrap()));
            }
        }
    }

    #[test]
    fn gl_counts() {
        let budget = Budget::default();
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(enumerate_gl(&f2, 2, &budget).unwrap().count(), 6);
        assert_eq!(enumerate_gl(&f2, 3, &budget).unwrap().count(), 168);
        assert_eq!(enumerate_gl(&f2, 4, &budget).unwrap().count(), 20160);
        for (p, k) in [(2, 1), (3, 1), (2, 2)] {
            let f = make_field(p, k).unwrap();
            for n in 1..=3 {
                let count = enumerate_gl(&f, n, &budget).unwrap().count();
                assert_eq!(BigUint::from(count), gl_order(&f, n));
            }
        }
    }

    #[test]
    fn gl_order_examples() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(gl_order(&f5, 4), BigUint::from(624u64 * 620 * 600 * 500));
        assert_eq!(gl_order_q(2, 2), BigUint::from(6u32));
        assert_eq!(gl_order_q(3, 3), BigUint::from(11232u32));
    }

    #[test]
    fn enumeration_is_lexicographic_and_budgeted() {
        let f3 = make_field(3, 1).unwrap();
        let idx: Vec<u64> = enumerate_gl(&f3, 2, &Budget::default())
            .unwrap()
            .map(|a| a.index())
            .collect();
        assert!(idx.windows(2).all(|w| w[0] < w[1]));
        let first = MatrixFq::from_index(&f3, 2, idx[0]);
        assert_eq!(first.codes(), vec![0, 1, 1, 0]);

        let err = enumerate_gl(&f3, 3, &Budget::with_enumeration(1000)).err().unwrap();
        match err {
            Error::BudgetExceeded { required, .. } => assert_eq!(required, "19683"),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f9 = make_field(3, 2).unwrap();
        let mut seen = 0;
        for idx in (0..9u64.pow(4)).step_by(7) {
            let a = MatrixFq::from_index(&f9, 2, idx);
            match a.inverse() {
                Ok(inv) => {
                    assert_eq!(a.mul(&inv).unwrap(), MatrixFq::identity(&f9, 2));
                    seen += 1;
                }
                Err(Error::Singular) => assert_eq!(a.det().unwrap(), FieldElement::ZERO),
                Err(e) => panic!("{e}"),
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let f3 = make_field(3, 1).unwrap();
        let a = MatrixFq::new(
            &f3,
            2,
            4,
            [1, 2, 0, 1, 2, 1, 0, 2].iter().map(|&c| f3.from_int(c)).collect(),
        )
        .unwrap();
        let ker = a.kernel();
        assert_eq!(ker.len(), 4 - a.rank());
        for v in ker {
            assert!(a.apply(&v).unwrap().iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn circulant_examples() {
        for (p, k) in [(2, 1), (3, 1), (5, 1), (2, 2)] {
            let f = make_field(p, k).unwrap();
            let one_zero_zero = [FieldElement::ONE, FieldElement::ZERO, FieldElement::ZERO];
            assert!(circulant_nonsingular(&f, &one_zero_zero));
        }
        let f2 = make_field(2, 1).unwrap();
        let ones = [FieldElement::ONE; 3];
        assert!(!circulant_nonsingular(&f2, &ones));
        let a = [FieldElement::ONE, FieldElement::ONE, FieldElement::ZERO];
        assert!(!circulant_nonsingular(&f2, &a));
        assert_eq!(MatrixFq::circulant(&f2, &a).det().unwrap(), FieldElement::ZERO);
    }
}
