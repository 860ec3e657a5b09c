//! Sparse Smith normal form.
//!
//! The matrix is diagonalised by unimodular row and column operations. Pivots
//! are taken column by column, shortest column first, preferring unit entries
//! in short rows (a Markowitz-style heuristic that keeps fill-in low on
//! coboundary matrices, where nearly every pivot is ±1). Non-unit pivots go
//! through Euclidean reduction until the pivot divides its row and column.
//! The resulting diagonal is finally normalised into a divisibility chain.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use log::trace;

use super::matrix::SparseMatrix;
use crate::scalar::EuclideanRing;

/// Invariant factors of a matrix: `divisors` are positive, nonzero and form a
/// divisibility chain `d_1 | d_2 | ...`; `rank` is their number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult<R> {
    pub divisors: Vec<R>,
    pub rank: usize,
}

impl<R: EuclideanRing> SnfResult<R> {
    /// Invariant factors greater than one (the torsion of the cokernel).
    pub fn torsion(&self) -> impl Iterator<Item = &R> {
        self.divisors.iter().filter(|d| !d.is_one())
    }
}

pub fn smith_normal_form<R: EuclideanRing>(m: &SparseMatrix<R>) -> SnfResult<R> {
    let mut work = Elimination::new(m.clone());
    work.run();
    let divisors = invariant_factors(work.diagonal);
    trace!("snf {}x{}: rank {}", m.rows(), m.cols(), divisors.len());
    SnfResult { rank: divisors.len(), divisors }
}

/// Turns a list of nonzero diagonal entries into the invariant factors of the
/// diagonal matrix they form.
pub fn invariant_factors<R: EuclideanRing>(diagonal: Vec<R>) -> Vec<R> {
    let (units, mut rest): (Vec<R>, Vec<R>) = diagonal.into_iter().map(|d| d.abs()).partition(|d| d.is_one());
    rest.sort();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            if rest[j].is_multiple_of(&rest[i]) {
                continue;
            }
            let g = rest[i].gcd(&rest[j]);
            let l = rest[i].lcm(&rest[j]);
            rest[i] = g;
            rest[j] = l;
        }
    }
    // gcd steps may produce new ones; the chain is ascending either way
    let mut out = units;
    out.extend(rest);
    out
}

struct Elimination<R> {
    rows: Vec<Vec<(usize, R)>>,
    cols: Vec<HashSet<usize>>,
    heap: BinaryHeap<Reverse<(usize, usize)>>,
    diagonal: Vec<R>,
}

impl<R: EuclideanRing> Elimination<R> {
    fn new(m: SparseMatrix<R>) -> Self {
        let ncols = m.cols();
        let rows = m.into_rows();
        let mut cols = vec![HashSet::new(); ncols];
        for (r, row) in rows.iter().enumerate() {
            for (c, _) in row {
                cols[*c].insert(r);
            }
        }
        let heap = cols.iter().enumerate().filter(|(_, s)| !s.is_empty()).map(|(c, s)| Reverse((s.len(), c))).collect();
        Elimination { rows, cols, heap, diagonal: Vec::new() }
    }

    fn run(&mut self) {
        while let Some(Reverse((count, c))) = self.heap.pop() {
            if count == 0 || self.cols[c].len() != count {
                continue;
            }
            self.reduce_column(c);
        }
    }

    fn entry(&self, r: usize, c: usize) -> &R {
        let row = &self.rows[r];
        let i = row.binary_search_by_key(&c, |(col, _)| *col).expect("column index tracks row contents");
        &row[i].1
    }

    /// Smallest magnitude in the column, ties broken by shortest row.
    fn pick_pivot(&self, c: usize) -> usize {
        self.cols[c]
            .iter()
            .map(|&r| (self.entry(r, c).abs(), self.rows[r].len(), r))
            .min()
            .expect("pivot column is nonempty")
            .2
    }

    fn reduce_column(&mut self, start: usize) {
        let mut c = start;
        loop {
            let r = self.pick_pivot(c);
            let v = self.entry(r, c).clone();
            let others: Vec<usize> = self.cols[c].iter().copied().filter(|&t| t != r).collect();
            if v.is_unit() {
                for t in others {
                    let q = self.entry(t, c).clone() * v.clone();
                    self.sub_multiple(t, r, &q);
                }
                self.remove_row(r);
                self.diagonal.push(R::one());
                return;
            }
            for t in others {
                let q = self.entry(t, c).div_floor(&v);
                if !q.is_zero() {
                    self.sub_multiple(t, r, &q);
                }
            }
            if self.cols[c].len() > 1 {
                continue;
            }
            let offender = self.rows[r].iter().find(|(c2, w)| *c2 != c && !w.is_multiple_of(&v)).map(|(c2, _)| *c2);
            match offender {
                None => {
                    self.remove_row(r);
                    self.diagonal.push(v.abs());
                    return;
                }
                Some(c2) => {
                    // column operation col_c2 -= q * col_c; column c holds only row r
                    let row = &mut self.rows[r];
                    let i = row.binary_search_by_key(&c2, |(col, _)| *col).expect("present");
                    let q = row[i].1.div_floor(&v);
                    row[i].1 = row[i].1.clone() - q * v.clone();
                    debug_assert!(!row[i].1.is_zero());
                    // column c keeps its entry in row r; queue it again
                    self.heap.push(Reverse((self.cols[c].len(), c)));
                    c = c2;
                }
            }
        }
    }

    /// `row_t -= q * row_s`.
    fn sub_multiple(&mut self, t: usize, s: usize, q: &R) {
        let src = std::mem::take(&mut self.rows[s]);
        let dst = std::mem::take(&mut self.rows[t]);
        let mut out = Vec::with_capacity(dst.len() + src.len());
        let mut touched = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < dst.len() || j < src.len() {
            let take_dst = j >= src.len() || (i < dst.len() && dst[i].0 < src[j].0);
            let take_src = i >= dst.len() || (j < src.len() && src[j].0 < dst[i].0);
            if take_dst {
                out.push(dst[i].clone());
                i += 1;
            } else if take_src {
                let (c, ref w) = src[j];
                out.push((c, -(q.clone() * w.clone())));
                self.cols[c].insert(t);
                touched.push(c);
                j += 1;
            } else {
                let c = dst[i].0;
                let v = dst[i].1.clone() - q.clone() * src[j].1.clone();
                if v.is_zero() {
                    self.cols[c].remove(&t);
                    touched.push(c);
                } else {
                    out.push((c, v));
                }
                i += 1;
                j += 1;
            }
        }
        self.rows[s] = src;
        self.rows[t] = out;
        for c in touched {
            let n = self.cols[c].len();
            if n > 0 {
                self.heap.push(Reverse((n, c)));
            }
        }
    }

    fn remove_row(&mut self, r: usize) {
        let row = std::mem::take(&mut self.rows[r]);
        for (c, _) in row {
            self.cols[c].remove(&r);
            let n = self.cols[c].len();
            if n > 0 {
                self.heap.push(Reverse((n, c)));
            }
        }
    }
}
