use super::matrix::SparseMatrix;
use crate::scalar::Field;

/// Rank over a field by sparse Gaussian elimination.
pub fn rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    // pivot rows keyed by leading column
    let mut pivots: Vec<Option<Vec<(usize, F)>>> = vec![None; m.cols()];
    let mut rank = 0;
    for r in 0..m.rows() {
        let mut row: Vec<(usize, F)> = m.row(r).to_vec();
        while let Some((lead, value)) = row.first().cloned() {
            match &pivots[lead] {
                Some(p) => {
                    let factor = value / p[0].1.clone();
                    row = axpy(&row, p, &factor);
                }
                None => {
                    pivots[lead] = Some(row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// `a - factor * b` on sorted sparse rows.
fn axpy<F: Field>(a: &[(usize, F)], b: &[(usize, F)], factor: &F) -> Vec<(usize, F)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, F::zero() - factor.clone() * b[j].1.clone()));
            j += 1;
        } else {
            let v = a[i].1.clone() - factor.clone() * b[j].1.clone();
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
