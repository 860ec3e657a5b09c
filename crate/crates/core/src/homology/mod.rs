//! Integer linear algebra and simplicial cohomology.

mod cochain;
mod group;
mod matrix;
mod rank;
mod snf;

pub use cochain::{
    coboundary_matrix, cohomology, cohomology_groups, relative_cohomology, relative_cohomology_groups, CellComplex,
};
pub use group::FgAbelianGroup;
pub(crate) use group::serialize_optional_coefficient;
pub use matrix::SparseMatrix;
pub use rank::rank;
pub use snf::{invariant_factors, smith_normal_form, SnfResult};

use crate::simplicial::SimplicialComplex;
use crate::Rational;

/// Betti numbers `b_0..b_dim` over `Q`, computed by field elimination
/// independently of the Smith normal form.
pub fn rational_betti_numbers(k: &SimplicialComplex) -> Vec<usize> {
    let dim = k.dim();
    if dim < 0 {
        return Vec::new();
    }
    let ranks: Vec<usize> = (0..dim)
        .map(|n| {
            let m = coboundary_matrix(k, n, false);
            let q = SparseMatrix::from_triplets(
                m.rows(),
                m.cols(),
                m.entries().map(|(r, c, v)| (r, c, Rational::from_integer(v.clone()))).collect::<Vec<_>>(),
            );
            rank(&q)
        })
        .collect();
    (0..=dim as usize)
        .map(|n| {
            let out = ranks.get(n).copied().unwrap_or(0);
            let inc = if n > 0 { ranks[n - 1] } else { 0 };
            k.face_count(n) - out - inc
        })
        .collect()
}
