use std::fmt;

use num_traits::Zero;

/// A sparse matrix stored by rows; each row is a list of `(column, value)`
/// pairs with strictly increasing columns and no stored zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, R)>>,
}

impl<R: Clone + Zero + PartialEq> SparseMatrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    /// Builds a matrix from `(row, col, value)` triplets; repeated positions
    /// are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, R)>) -> Self {
        let mut data: Vec<Vec<(usize, R)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside a {rows}x{cols} matrix");
            data[r].push((c, v));
        }
        for row in &mut data {
            row.sort_by_key(|(c, _)| *c);
            let mut merged: Vec<(usize, R)> = Vec::with_capacity(row.len());
            for (c, v) in row.drain(..) {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv = lv.clone() + v,
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            *row = merged;
        }
        SparseMatrix { rows, cols, data }
    }

    pub fn from_dense(rows: &[Vec<R>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let triplets = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, v)| (r, c, v.clone())))
            .filter(|(_, _, v)| !v.is_zero());
        Self::from_triplets(rows.len(), cols, triplets)
    }

    pub fn identity(n: usize) -> Self
    where
        R: num_traits::One,
    {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, R::one())))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(usize, R)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> R {
        match self.data[r].binary_search_by_key(&c, |(col, _)| *col) {
            Ok(i) => self.data[r][i].1.clone(),
            Err(_) => R::zero(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &R)> + '_ {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.entries().map(|(r, c, v)| (c, r, v.clone())))
    }

    pub fn to_dense(&self) -> Vec<Vec<R>> {
        let mut out = vec![vec![R::zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            out[r][c] = v.clone();
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &SparseMatrix<R>) -> SparseMatrix<R>
    where
        R: std::ops::Mul<Output = R>,
    {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let triplets = self.data.iter().enumerate().flat_map(|(r, row)| {
            row.iter().flat_map(move |(k, a)| other.data[*k].iter().map(move |(c, b)| (r, *c, a.clone() * b.clone())))
        });
        Self::from_triplets(self.rows, other.cols, triplets.collect::<Vec<_>>())
    }

    /// The submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut col_map = vec![usize::MAX; self.cols];
        for (new, &old) in cols.iter().enumerate() {
            col_map[old] = new;
        }
        let triplets = rows.iter().enumerate().flat_map(|(nr, &r)| {
            let col_map = &col_map;
            self.data[r].iter().filter(move |(c, _)| col_map[*c] != usize::MAX).map(move |(c, v)| (nr, col_map[*c], v.clone()))
        });
        Self::from_triplets(rows.len(), cols.len(), triplets.collect::<Vec<_>>())
    }

    pub(crate) fn into_rows(self) -> Vec<Vec<(usize, R)>> {
        self.data
    }
}

impl<R: fmt::Display + Clone + Zero + PartialEq> fmt::Debug for SparseMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} ({} nonzeros)", self.rows, self.cols, self.nnz())?;
        if self.rows * self.cols <= 400 {
            for r in 0..self.rows {
                let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
                writeln!(f, "  [{}]", row.join(" "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_merge_and_drop_zeros() {
        let m = SparseMatrix::<i64>::from_triplets(2, 2, [(0, 0, 1), (0, 0, -1), (1, 1, 2), (1, 0, 3)]);
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.get(1, 0), 3);
        assert_eq!(m.get(0, 0), 0);
        assert_eq!(m.transpose().get(0, 1), 3);
    }

    #[test]
    fn product_and_select() {
        let a = SparseMatrix::<i64>::from_dense(&[vec![1, 2], vec![0, 1]]);
        let b = SparseMatrix::<i64>::from_dense(&[vec![1, -2], vec![0, 1]]);
        assert_eq!(a.mul(&b), SparseMatrix::identity(2));
        assert_eq!(a.select(&[0], &[1]).to_dense(), vec![vec![2]]);
    }
}
