//! Integral cochain complexes of finite cell complexes and their cohomology.

use log::debug;
use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;

use super::group::FgAbelianGroup;
use super::matrix::SparseMatrix;
use super::snf::{smith_normal_form, SnfResult};
use crate::error::Result;
use crate::simplicial::{DeltaComplex, SimplicialComplex};
use crate::IntegerMatrix;

/// A finite complex of simplicial cells with an incidence-sign convention.
pub trait CellComplex: Sync {
    /// Top dimension; −1 when empty.
    fn top_dim(&self) -> isize;

    fn cells(&self, d: usize) -> usize;

    /// Signed boundary of the `d`-cell `cell` (`d >= 1`) as `(face, sign)`
    /// pairs; a face may occur more than once.
    fn boundary(&self, d: usize, cell: usize) -> Vec<(usize, i64)>;
}

impl CellComplex for SimplicialComplex {
    fn top_dim(&self) -> isize {
        self.dim()
    }

    fn cells(&self, d: usize) -> usize {
        self.face_count(d)
    }

    fn boundary(&self, d: usize, cell: usize) -> Vec<(usize, i64)> {
        let s = &self.faces(d)[cell];
        (0..=d)
            .map(|i| {
                let face = self.position(&s.facet(i)).expect("faces of a face are faces");
                (face, if i % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    }
}

impl CellComplex for DeltaComplex {
    fn top_dim(&self) -> isize {
        self.dim()
    }

    fn cells(&self, d: usize) -> usize {
        self.cell_count(d)
    }

    fn boundary(&self, d: usize, cell: usize) -> Vec<(usize, i64)> {
        self.faces_of(d, cell).iter().enumerate().map(|(i, &f)| (f, if i % 2 == 0 { 1 } else { -1 })).collect()
    }
}

/// The coboundary `δ^n : C^n → C^{n+1}` as a `|C^{n+1}| × |C^n|` matrix. With
/// `augmented`, `δ^{-1}` is the column of ones coming from the augmentation
/// `C^{-1} = Z`.
pub fn coboundary_matrix<C: CellComplex + ?Sized>(k: &C, n: isize, augmented: bool) -> IntegerMatrix {
    if n < -1 {
        return SparseMatrix::zeros(0, 0);
    }
    if n == -1 {
        let rows = k.cells(0);
        let cols = usize::from(augmented);
        return SparseMatrix::from_triplets(rows, cols, (0..rows * cols).map(|r| (r, 0, BigInt::from(1))));
    }
    let n = n as usize;
    let rows = k.cells(n + 1);
    let cols = k.cells(n);
    let triplets: Vec<(usize, usize, BigInt)> = (0..rows)
        .flat_map(|r| k.boundary(n + 1, r).into_iter().map(move |(c, s)| (r, c, BigInt::from(s))))
        .collect();
    SparseMatrix::from_triplets(rows, cols, triplets)
}

/// The cochain complex `C^{-1} → C^0 → ... → C^{dim}` with `C^{-1}` either `Z`
/// (reduced) or `0`, optionally restricted to cochains vanishing on a
/// subcomplex.
struct Cochains {
    /// `counts[i]` is the rank of `C^{i-1}`.
    counts: Vec<usize>,
    /// `deltas[i]` is `δ^{i-1} : C^{i-1} → C^i`.
    deltas: Vec<IntegerMatrix>,
}

impl Cochains {
    fn absolute<C: CellComplex + ?Sized>(k: &C, reduced: bool) -> Self {
        let dim = k.top_dim();
        let mut counts = vec![usize::from(reduced)];
        let mut deltas = Vec::new();
        for n in 0..=dim {
            counts.push(k.cells(n as usize));
            deltas.push(coboundary_matrix(k, n - 1, reduced));
        }
        Cochains { counts, deltas }
    }

    /// Cochains on the cells of `k` not flagged in `excluded[d]`.
    fn relative<C: CellComplex + ?Sized>(k: &C, excluded: &[Vec<bool>]) -> Self {
        let dim = k.top_dim();
        let kept: Vec<Vec<usize>> = (0..=dim)
            .map(|d| {
                let d = d as usize;
                (0..k.cells(d)).filter(|&c| !excluded.get(d).is_some_and(|e| e[c])).collect()
            })
            .collect();
        let mut counts = vec![0];
        let mut deltas = Vec::new();
        for n in 0..=dim {
            let d = n as usize;
            counts.push(kept[d].len());
            if d == 0 {
                deltas.push(SparseMatrix::zeros(kept[0].len(), 0));
            } else {
                deltas.push(coboundary_matrix(k, n - 1, false).select(&kept[d], &kept[d - 1]));
            }
        }
        Cochains { counts, deltas }
    }

    fn group(&self, i: usize, lower: Option<&SnfResult<BigInt>>, upper_rank: usize) -> FgAbelianGroup {
        let lower_rank = lower.map_or(0, |s| s.rank);
        let free = self.counts[i] - upper_rank - lower_rank;
        let torsion = lower
            .into_iter()
            .flat_map(|s| s.torsion())
            .map(|d| d.magnitude().clone())
            .collect::<Vec<BigUint>>();
        FgAbelianGroup::new(free, torsion)
    }

    /// Cohomology in degree `n`.
    fn degree(&self, n: isize) -> FgAbelianGroup {
        let i = n + 1;
        if i < 0 || i as usize >= self.counts.len() {
            return FgAbelianGroup::trivial();
        }
        let i = i as usize;
        let (lower, upper) = rayon::join(
            || (i >= 1).then(|| smith_normal_form(&self.deltas[i - 1])),
            || self.deltas.get(i).map_or(0, |m| smith_normal_form(m).rank),
        );
        self.group(i, lower.as_ref(), upper)
    }

    /// Cohomology in degrees `0..=dim`.
    fn all(&self) -> Vec<FgAbelianGroup> {
        let snfs: Vec<SnfResult<BigInt>> = self.deltas.par_iter().map(smith_normal_form).collect();
        (1..self.counts.len())
            .map(|i| self.group(i, Some(&snfs[i - 1]), snfs.get(i).map_or(0, |s| s.rank)))
            .collect()
    }
}

/// `H^n(k; Z)`, or reduced `H̄^n(k; Z)`. Degrees outside `[-1, dim]` give the
/// trivial group; `H̄^{-1}(∅) = Z`.
pub fn cohomology<C: CellComplex + ?Sized>(k: &C, n: isize, reduced: bool) -> FgAbelianGroup {
    debug!("cohomology degree {n} (reduced: {reduced}) of a {}-dimensional complex", k.top_dim());
    Cochains::absolute(k, reduced).degree(n)
}

/// All cohomology groups in degrees `0..=dim`; empty for the empty complex.
pub fn cohomology_groups<C: CellComplex + ?Sized>(k: &C, reduced: bool) -> Vec<FgAbelianGroup> {
    Cochains::absolute(k, reduced).all()
}

fn excluded_cells(k: &SimplicialComplex, a: &SimplicialComplex) -> Result<Vec<Vec<bool>>> {
    a.check_subcomplex_of(k)?;
    let dim = k.dim();
    let mut excluded: Vec<Vec<bool>> = (0..=dim).map(|d| vec![false; k.face_count(d as usize)]).collect();
    for (d, faces) in (0..=a.dim()).map(|d| (d as usize, a.faces(d as usize))) {
        for s in faces {
            let simplex = k.simplex_from_names(&a.simplex_names(s)).expect("checked subcomplex");
            excluded[d][k.position(&simplex).expect("checked subcomplex")] = true;
        }
    }
    Ok(excluded)
}

/// `H^n(k, a; Z)`: cohomology of the cochains of `k` vanishing on `a`.
pub fn relative_cohomology(k: &SimplicialComplex, a: &SimplicialComplex, n: isize) -> Result<FgAbelianGroup> {
    Ok(Cochains::relative(k, &excluded_cells(k, a)?).degree(n))
}

/// All relative groups `H^n(k, a)` in degrees `0..=dim k`.
pub fn relative_cohomology_groups(k: &SimplicialComplex, a: &SimplicialComplex) -> Result<Vec<FgAbelianGroup>> {
    Ok(Cochains::relative(k, &excluded_cells(k, a)?).all())
}
