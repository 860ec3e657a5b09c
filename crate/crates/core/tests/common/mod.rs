//! Test-side oracles and fixtures. Nothing here calls into the crate's linear
//! algebra: faces, signs and ranks are recomputed from scratch.

#![allow(dead_code)]

pub mod structure;
pub mod trees;

use std::collections::BTreeSet;

use coxdim::SimplicialComplex;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn complex(faces: &[&[&str]]) -> SimplicialComplex {
    SimplicialComplex::from_faces(faces.iter().map(|f| f.to_vec())).unwrap()
}

/// Rank over `Q` by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(rows: &[Vec<BigInt>]) -> usize {
    bareiss(rows).0
}

/// Rank, and the determinant when the matrix is square.
pub fn bareiss(rows: &[Vec<BigInt>]) -> (usize, Option<BigInt>) {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    let mut sign = 1;
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else { continue };
        if p != rank {
            a.swap(p, rank);
            sign = -sign;
        }
        for r in rank + 1..m {
            for c in col + 1..n {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    let det = (m == n).then(|| if rank < n { BigInt::zero() } else { prev * sign });
    (rank, det)
}

/// Every nonempty face, grouped by dimension, recomputed from the maximal
/// faces as sorted vertex-name lists.
pub fn faces_by_dim(k: &SimplicialComplex) -> Vec<Vec<Vec<String>>> {
    let mut all: BTreeSet<Vec<String>> = BTreeSet::new();
    for m in k.maximal_faces() {
        let names = k.simplex_names(m);
        for mask in 1u32..(1 << names.len()) {
            let f: Vec<String> = (0..names.len()).filter(|i| mask >> i & 1 == 1).map(|i| names[i].clone()).collect();
            all.insert(f);
        }
    }
    let top = all.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![Vec::new(); top];
    for f in all {
        let mut f = f;
        f.sort();
        out[f.len() - 1].push(f);
    }
    out
}

/// The dense coboundary `C^n -> C^{n+1}` with the alternating sign convention.
pub fn dense_coboundary(faces: &[Vec<Vec<String>>], n: usize) -> Vec<Vec<BigInt>> {
    let (lower, upper) = (&faces[n], &faces[n + 1]);
    upper
        .iter()
        .map(|s| {
            let mut row = vec![BigInt::zero(); lower.len()];
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                let j = lower.iter().position(|g| *g == f).unwrap();
                row[j] = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
            }
            row
        })
        .collect()
}

/// Unreduced rational Betti numbers `b_0..b_dim`.
pub fn betti_oracle(k: &SimplicialComplex) -> Vec<usize> {
    let faces = faces_by_dim(k);
    let ranks: Vec<usize> = (0..faces.len().saturating_sub(1)).map(|n| bareiss_rank(&dense_coboundary(&faces, n))).collect();
    (0..faces.len())
        .map(|n| {
            let out = ranks.get(n).copied().unwrap_or(0);
            let inc = if n > 0 { ranks[n - 1] } else { 0 };
            faces[n].len() - out - inc
        })
        .collect()
}

/// Random complex on at most `max_vertices` vertices named `v0, v1, ...`.
pub fn random_complex(rng: &mut ChaCha8Rng, max_vertices: usize) -> SimplicialComplex {
    let n = rng.gen_range(1..=max_vertices);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let count = rng.gen_range(1..=2 * n);
    let mut faces: Vec<Vec<String>> = (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=n.min(4));
            names.choose_multiple(rng, size).cloned().collect()
        })
        .collect();
    // keep every vertex present so the vertex count is what we drew
    faces.extend(names.iter().map(|v| vec![v.clone()]));
    SimplicialComplex::from_faces(faces).unwrap()
}

pub fn boundary_of_simplex(n: usize) -> SimplicialComplex {
    let names: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
    SimplicialComplex::from_faces((0..=n).map(|skip| {
        names.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, v)| v.clone()).collect::<Vec<_>>()
    }))
    .unwrap()
}

pub fn projective_plane() -> SimplicialComplex {
    complex(&[
        &["1", "2", "3"],
        &["1", "3", "4"],
        &["1", "4", "5"],
        &["1", "5", "6"],
        &["1", "6", "2"],
        &["2", "3", "5"],
        &["3", "4", "6"],
        &["4", "5", "2"],
        &["5", "6", "3"],
        &["6", "2", "4"],
    ])
}

/// The 7-vertex torus.
pub fn torus() -> SimplicialComplex {
    let tri = |a: usize, b: usize, c: usize| vec![(a % 7).to_string(), (b % 7).to_string(), (c % 7).to_string()];
    SimplicialComplex::from_faces((0..7).flat_map(|i| [tri(i, i + 1, i + 3), tri(i, i + 2, i + 3)])).unwrap()
}

pub fn cycle(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_faces((0..n).map(|i| vec![format!("c{i}"), format!("c{}", (i + 1) % n)])).unwrap()
}

/// Named complexes plus seeded random ones, `count` in total.
pub fn corpus(count: usize) -> Vec<(String, SimplicialComplex)> {
    let mut out = vec![
        ("point".to_string(), complex(&[&["a"]])),
        ("two points".to_string(), complex(&[&["a"], &["b"]])),
        ("edge".to_string(), complex(&[&["a", "b"]])),
        ("triangle".to_string(), complex(&[&["a", "b", "c"]])),
        ("circle".to_string(), cycle(4)),
        ("pentagon".to_string(), cycle(5)),
        ("sphere".to_string(), boundary_of_simplex(3)),
        ("3-sphere".to_string(), boundary_of_simplex(4)),
        ("projective plane".to_string(), projective_plane()),
        ("torus".to_string(), torus()),
        ("wedge".to_string(), complex(&[&["a", "b"], &["b", "c"], &["a", "c"], &["c", "d"], &["d", "e"], &["c", "e"]])),
    ];
    let mut r = rng(0xC0FFEE);
    while out.len() < count {
        let k = random_complex(&mut r, 6);
        out.push((format!("random #{}", out.len()), k));
    }
    out.truncate(count);
    out
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn abs_big(v: &BigInt) -> BigInt {
    v.abs()
}
