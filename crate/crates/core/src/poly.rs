//! Dense univariate polynomials over `F_q`, just enough for gcd tests.

use crate::field::{FieldCtx, FieldElement};

/// Coefficients from the constant term up, with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// `y^n - 1`.
    pub fn x_pow_minus_one(ctx: &FieldCtx, n: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; n + 1];
        coeffs[0] = ctx.neg(FieldElement::ONE);
        coeffs[n] = FieldElement::ONE;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, ctx: &FieldCtx, x: FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| ctx.add(ctx.mul(acc, x), c))
    }

    /// Remainder of division by a nonzero `d`.
    pub fn rem(&self, ctx: &FieldCtx, d: &Poly) -> Poly {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = ctx.inv_nonzero(d.coeffs[dd]);
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let top = r.len() - 1;
            let c = ctx.mul(r[top], lead_inv);
            if !c.is_zero() {
                for k in 0..=dd {
                    let at = top - dd + k;
                    r[at] = ctx.sub(r[at], ctx.mul(c, d.coeffs[k]));
                }
            }
            r.pop();
        }
        Poly::new(r)
    }

    pub fn monic(&self, ctx: &FieldCtx) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => {
                let inv = ctx.inv_nonzero(lead);
                Poly::new(self.coeffs.iter().map(|&c| ctx.mul(c, inv)).collect())
            }
        }
    }

    /// Monic greatest common divisor by the Euclidean algorithm.
    pub fn gcd(ctx: &FieldCtx, a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(ctx, &b);
            a = b;
            b = r;
        }
        a.monic(ctx)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [FieldElement::ONE]
    }
}
