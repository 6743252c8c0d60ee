//! Row spaces in canonical reduced echelon form.

use crate::field::{FieldCtx, FieldElement};
use crate::matrix::rref_in_place;

/// A subspace of `F_q^n` stored as its reduced row echelon basis, which is
/// unique and therefore usable as a hash key.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Span {
    n: usize,
    rows: Vec<FieldElement>,
}

impl Span {
    pub(crate) fn empty(n: usize) -> Self {
        Span { n, rows: Vec::new() }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len() / self.n.max(1)
    }

    /// The span of `self` and `extra` (row-major, `n` columns), provided the
    /// rank grows by the number of new rows.
    pub(crate) fn extend(
        &self,
        ctx: &FieldCtx,
        extra: &[FieldElement],
        scratch: &mut Vec<FieldElement>,
    ) -> Option<Span> {
        let added = extra.len() / self.n;
        let total = self.dim() + added;
        if total > self.n {
            return None;
        }
        scratch.clear();
        scratch.extend_from_slice(&self.rows);
        scratch.extend_from_slice(extra);
        let rank = rref_in_place(ctx, total, self.n, scratch).len();
        (rank == total).then(|| Span {
            n: self.n,
            rows: scratch[..total * self.n].to_vec(),
        })
    }

    /// [`Span::extend`] without materializing the result.
    pub(crate) fn independent(&self, ctx: &FieldCtx, extra: &[FieldElement], scratch: &mut Vec<FieldElement>) -> bool {
        let total = self.dim() + extra.len() / self.n;
        if total > self.n {
            return false;
        }
        scratch.clear();
        scratch.extend_from_slice(&self.rows);
        scratch.extend_from_slice(extra);
        rref_in_place(ctx, total, self.n, scratch).len() == total
    }
}
