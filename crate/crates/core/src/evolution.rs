//! Evolution algebras given by a structure matrix.

use crate::action::{group_elements, GroupElement};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};
use crate::matrix::{encode_index, rref_in_place, MatrixFq};

/// The algebra with natural basis `e_1, …, e_n`, `e_i e_j = 0` for `i ≠ j`
/// and `e_i² = Σ_k a_{ki} e_k`, so column `i` of the structure matrix holds
/// the coordinates of `e_i²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvolutionAlgebra {
    structure: MatrixFq,
}

impl EvolutionAlgebra {
    pub fn new(structure: MatrixFq) -> Result<Self> {
        if !structure.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "structure matrix must be square, got {}x{}",
                structure.rows(),
                structure.cols()
            )));
        }
        Ok(EvolutionAlgebra { structure })
    }

    pub fn n(&self) -> usize {
        self.structure.rows()
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.structure.ctx()
    }

    pub fn structure(&self) -> &MatrixFq {
        &self.structure
    }

    /// Coordinates of `e_i²`.
    pub fn square_of_basis(&self, i: usize) -> Vec<FieldElement> {
        self.structure.column(i)
    }

    /// `(Σ u_i e_i)(Σ v_j e_j) = Σ_i u_i v_i e_i²`.
    pub fn multiply(&self, u: &[FieldElement], v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let n = self.n();
        if u.len() != n || v.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "vectors of length {} and {} in an algebra of dimension {n}",
                u.len(),
                v.len()
            )));
        }
        let ctx = self.ctx();
        let weights: Vec<FieldElement> = u.iter().zip(v).map(|(&a, &b)| ctx.mul(a, b)).collect();
        self.structure.apply(&weights)
    }

    /// Whether `e_1², …, e_n²` span the algebra.
    ///
    /// Both the span rank and the determinant are computed; disagreement is
    /// reported as an internal error.
    pub fn is_idempotent(&self) -> Result<bool> {
        let n = self.n();
        let ctx = self.ctx();
        let mut squares = Vec::with_capacity(n * n);
        for i in 0..n {
            squares.extend(self.square_of_basis(i));
        }
        let full_span = rref_in_place(ctx, n, n, &mut squares).len() == n;
        let nonsingular = !self.structure.det()?.is_zero();
        if full_span != nonsingular {
            return Err(Error::InternalConsistency(format!(
                "span of the basis squares has full rank = {full_span} but det != 0 is {nonsingular}"
            )));
        }
        Ok(full_span)
    }
}

/// Searches `G` for `g` with `act(g, b) = a`.
///
/// Permutations are tried in lexicographic one-line order and torus parts in
/// lexicographic code order; the first witness is returned.
pub fn are_isomorphic(a: &MatrixFq, b: &MatrixFq, budget: &Budget) -> Result<Option<GroupElement>> {
    let n = a.rows();
    if !a.is_square() || !b.is_square() || b.rows() != n {
        return Err(Error::DimensionMismatch(
            "structure matrices of different shapes".into(),
        ));
    }
    if a.ctx() != b.ctx() {
        return Err(Error::MixedContexts);
    }
    if !a.is_nonsingular() || !b.is_nonsingular() {
        return Err(Error::Singular);
    }
    let ctx = a.ctx();
    let q = ctx.q() as u64;
    let order = GroupElement::group_order(q, n);
    if order > budget.enumeration.into() {
        return Err(Error::budget(
            format!("isomorphism search for n={n}, q={q}"),
            order,
            budget.enumeration,
        ));
    }
    let target = a.index();
    let mut img = vec![FieldElement::ZERO; n * n];
    for g in group_elements(ctx, n) {
        g.prepared(ctx).act_into(ctx, b.entries(), &mut img);
        if encode_index(q, &img) == target {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{act, compose, enumerate_orbits};
    use crate::field::make_field;

    #[test]
    fn products() {
        let f2 = make_field(2, 1).unwrap();
        let alg = EvolutionAlgebra::new(MatrixFq::from_codes(&f2, 2, &[1, 1, 0, 1]).unwrap()).unwrap();
        let e1 = [FieldElement::ONE, FieldElement::ZERO];
        let e2 = [FieldElement::ZERO, FieldElement::ONE];
        assert_eq!(alg.multiply(&e1, &e2).unwrap(), vec![FieldElement::ZERO; 2]);
        assert_eq!(
            alg.multiply(&e2, &e2).unwrap(),
            vec![FieldElement::ONE, FieldElement::ONE]
        );
        let id = EvolutionAlgebra::new(MatrixFq::identity(&f2, 2)).unwrap();
        assert_eq!(id.multiply(&e1, &e1).unwrap(), e1.to_vec());
        assert!(alg.multiply(&e1, &[FieldElement::ONE]).is_err());
    }

    #[test]
    fn idempotency() {
        let f2 = make_field(2, 1).unwrap();
        assert!(EvolutionAlgebra::new(MatrixFq::identity(&f2, 2))
            .unwrap()
            .is_idempotent()
            .unwrap());
        let f3 = make_field(3, 1).unwrap();
        let ones = MatrixFq::from_codes(&f3, 2, &[1, 1, 1, 1]).unwrap();
        assert!(!EvolutionAlgebra::new(ones).unwrap().is_idempotent().unwrap());
        let count = (0..16u64)
            .filter(|&i| {
                EvolutionAlgebra::new(MatrixFq::from_index(&f2, 2, i))
                    .unwrap()
                    .is_idempotent()
                    .unwrap()
            })
            .count();
        assert_eq!(count, 6);
    }

    #[test]
    fn witnesses() {
        let budget = Budget::default();
        let f2 = make_field(2, 1).unwrap();
        let a = MatrixFq::identity(&f2, 2);
        let w = are_isomorphic(&a, &a, &budget).unwrap().unwrap();
        assert!(w.is_identity());
        // I and the swap matrix are not related by any relabeling
        let s = MatrixFq::from_codes(&f2, 2, &[0, 1, 1, 0]).unwrap();
        assert_eq!(are_isomorphic(&a, &s, &budget).unwrap(), None);
        let u = MatrixFq::from_codes(&f2, 2, &[1, 1, 0, 1]).unwrap();
        let l = MatrixFq::from_codes(&f2, 2, &[1, 0, 1, 1]).unwrap();
        let g = are_isomorphic(&u, &l, &budget).unwrap().unwrap();
        assert_eq!(act(&g, &l).unwrap(), u);
    }

    #[test]
    fn witnesses_agree_with_orbits() {
        let budget = Budget::default();
        let f3 = make_field(3, 1).unwrap();
        let orbits = enumerate_orbits(&f3, 2, &budget).unwrap();
        let gl: Vec<MatrixFq> = crate::matrix::enumerate_gl(&f3, 2, &budget).unwrap().collect();
        let orbit_of = |m: &MatrixFq| {
            orbits
                .representatives
                .iter()
                .position(|r| are_isomorphic(r, m, &budget).unwrap().is_some())
                .unwrap()
        };
        for a in gl.iter().step_by(3) {
            for b in gl.iter().step_by(5) {
                let w = are_isomorphic(a, b, &budget).unwrap();
                assert_eq!(w.is_some(), orbit_of(a) == orbit_of(b));
                if let Some(g) = w {
                    assert_eq!(act(&g, b).unwrap(), *a);
                    let back = g.invert(&f3);
                    assert_eq!(act(&back, a).unwrap(), *b);
                    assert!(compose(&f3, &g, &back).unwrap().is_identity());
                }
            }
        }
    }
}
