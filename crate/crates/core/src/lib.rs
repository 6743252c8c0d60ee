//! Exact counting of isomorphism classes of idempotent evolution algebras
//! over finite fields.
//!
//! An `n`-dimensional evolution algebra over `F_q` is fixed by its structure
//! matrix `A`; it is idempotent exactly when `A` is nonsingular, and two such
//! algebras are isomorphic exactly when their structure matrices lie in the
//! same orbit of the monomial group `S_n ⋉ T_n` acting by
//! `A ↦ t⁻¹ σ⁻¹ A σ t²`. The number of classes is therefore the number of
//! orbits of that action on `GL_n(F_q)`.
//!
//! Three independent routes compute it:
//!
//! * [`action::enumerate_orbits`] partitions `GL_n(F_q)` directly,
//! * [`burnside::count_classes_burnside`] sums structured fixed-point counts
//!   over cycle types and torus elements,
//! * [`closed_form`] evaluates the tabulated formulas for `n = 2, 3, 4`.

pub mod action;
pub mod budget;
pub mod burnside;
pub mod closed_form;
mod error;
pub mod evolution;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod report;
mod span;

pub use action::{act, compose, enumerate_orbits, orbit_report, GroupElement, OrbitPartition, OrbitStrategy};
pub use budget::Budget;
pub use burnside::{count_classes_burnside, count_fixed_points, partitions, theorem31_filter, Partition};
pub use closed_form::{bmu_closed_form, closed_form_count, formula_report, n2_count, n3_count, n4_count, CaseKey};
pub use error::{Error, Result};
pub use evolution::{are_isomorphic, EvolutionAlgebra};
pub use field::{factor_indicator, make_field, roots_of_unity, FieldCtx, FieldElement};
pub use matrix::{circulant_nonsingular, enumerate_gl, gl_order, MatrixFq};
pub use report::{CountReport, Method, PartitionContribution};

/// Runs one concrete method. [`Method::All`] is rejected; run the three
/// concrete methods separately instead.
pub fn count_with(ctx: &FieldCtx, n: usize, method: Method, budget: &Budget) -> Result<CountReport> {
    if n == 0 {
        return Err(Error::DimensionMismatch("dimension must be at least 1".into()));
    }
    match method {
        Method::Formula => formula_report(n, &CaseKey::from_ctx(ctx)),
        Method::Burnside => count_classes_burnside(ctx, n, budget),
        Method::Orbit => orbit_report(ctx, n, budget),
        Method::All => Err(Error::Unsupported("`all` is not a single method".into())),
    }
}
