use std::collections::HashMap;

use super::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// A Δ-complex: cells are simplices glued along face maps, so distinct cells
/// may share a vertex set and a cell may repeat a vertex.
///
/// `faces[k][c][i]` is the `(k-1)`-cell obtained by deleting vertex `i` of the
/// `k`-cell `c`. The face maps satisfy the simplicial identities
/// `d_i d_j = d_{j-1} d_i` for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaComplex {
    names: Vec<Vec<String>>,
    faces: Vec<Vec<Vec<usize>>>,
}

/// A cell of a barycentric subdivision, recorded as the cell of the parent
/// complex it lies in and the chain of faces (bitmasks over the parent
/// cell's vertices, strictly increasing, ending with the whole cell).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellChain {
    pub dim: usize,
    pub cell: usize,
    pub chain: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct DeltaSubdivision {
    pub complex: DeltaComplex,
    /// `provenance[k][c]` describes the new `k`-cell `c`.
    pub provenance: Vec<Vec<CellChain>>,
}

impl DeltaComplex {
    pub fn new(names: Vec<Vec<String>>, faces: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if names.len() != faces.len() {
            return Err(Error::Input("names and faces disagree on the number of dimensions".into()));
        }
        for (k, (n, f)) in names.iter().zip(&faces).enumerate() {
            if n.len() != f.len() {
                return Err(Error::Input(format!("dimension {k}: {} names for {} cells", n.len(), f.len())));
            }
            for (c, fs) in f.iter().enumerate() {
                let expected = if k == 0 { 0 } else { k + 1 };
                if fs.len() != expected {
                    return Err(Error::Input(format!("cell {} has {} faces, expected {expected}", n[c], fs.len())));
                }
                if k > 0 && fs.iter().any(|&x| x >= faces[k - 1].len()) {
                    return Err(Error::Input(format!("cell {} references a missing face", n[c])));
                }
            }
        }
        let dc = DeltaComplex { names, faces };
        dc.check_identities()?;
        Ok(dc)
    }

    fn check_identities(&self) -> Result<()> {
        for k in 2..self.faces.len() {
            for c in 0..self.faces[k].len() {
                for j in 0..=k {
                    for i in 0..j {
                        let lhs = self.faces[k - 1][self.faces[k][c][j]][i];
                        let rhs = self.faces[k - 1][self.faces[k][c][i]][j - 1];
                        if lhs != rhs {
                            return Err(Error::Input(format!(
                                "cell {} violates the face identity d{i}d{j} = d{}d{i}",
                                self.names[k][c],
                                j - 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Dimension; −1 when there are no cells.
    pub fn dim(&self) -> isize {
        (0..self.faces.len()).rev().find(|&k| !self.faces[k].is_empty()).map(|k| k as isize).unwrap_or(-1)
    }

    pub fn cell_count(&self, k: usize) -> usize {
        self.faces.get(k).map_or(0, Vec::len)
    }

    pub fn cell_name(&self, k: usize, c: usize) -> &str {
        &self.names[k][c]
    }

    pub fn find_cell(&self, k: usize, name: &str) -> Option<usize> {
        self.names.get(k)?.iter().position(|n| n == name)
    }

    /// The `(k-1)`-cell opposite vertex `i` of the `k`-cell `c`.
    pub fn face(&self, k: usize, c: usize, i: usize) -> usize {
        self.faces[k][c][i]
    }

    pub fn faces_of(&self, k: usize, c: usize) -> &[usize] {
        &self.faces[k][c]
    }

    /// The face of the `k`-cell `c` spanned by the vertex positions in `mask`.
    /// Returns `(dimension, cell)`.
    pub fn sub_face(&self, k: usize, c: usize, mask: u32) -> (usize, usize) {
        debug_assert!(mask != 0 && mask < (1 << (k + 1)));
        let mut dim = k;
        let mut cell = c;
        for j in (0..=k).rev() {
            if mask & (1 << j) == 0 {
                cell = self.faces[dim][cell][j];
                dim -= 1;
            }
        }
        (dim, cell)
    }

    /// The ordered vertices (0-cells) of a cell; may contain repeats.
    pub fn vertices_of(&self, k: usize, c: usize) -> Vec<usize> {
        (0..=k).map(|i| self.sub_face(k, c, 1 << i).1).collect()
    }

    /// Simplicial when no cell repeats a vertex and distinct cells of equal
    /// dimension have distinct vertex sets.
    pub fn is_simplicial(&self) -> bool {
        self.simplicial_vertex_sets().is_some()
    }

    fn simplicial_vertex_sets(&self) -> Option<Vec<Vec<Vec<u32>>>> {
        let mut out = Vec::with_capacity(self.faces.len());
        for k in 0..self.faces.len() {
            let mut seen = HashMap::new();
            let mut sets = Vec::with_capacity(self.faces[k].len());
            for c in 0..self.faces[k].len() {
                let mut vs: Vec<u32> = self.vertices_of(k, c).into_iter().map(|v| v as u32).collect();
                vs.sort_unstable();
                if vs.windows(2).any(|w| w[0] == w[1]) {
                    return None;
                }
                if seen.insert(vs.clone(), c).is_some() {
                    return None;
                }
                sets.push(vs);
            }
            out.push(sets);
        }
        Some(out)
    }

    /// The simplicial complex with the same cells, named after the 0-cells,
    /// if the Δ-structure is simplicial.
    pub fn to_simplicial(&self) -> Option<SimplicialComplex> {
        let sets = self.simplicial_vertex_sets()?;
        let names = self.names.first().cloned().unwrap_or_default();
        Some(SimplicialComplex::from_indexed(names, sets.into_iter().flatten()))
    }

    /// Builds the Δ-complex of a simplicial complex (cells ordered
    /// lexicographically, vertices in increasing order).
    pub fn from_simplicial(k: &SimplicialComplex) -> DeltaComplex {
        let dim = k.dim();
        let mut names = Vec::new();
        let mut faces = Vec::new();
        for d in 0..=dim.max(-1) {
            let d = d as usize;
            let cells = k.faces(d);
            names.push(cells.iter().map(|s| k.simplex_names(s).join(",")).collect());
            faces.push(
                cells
                    .iter()
                    .map(|s| {
                        if d == 0 {
                            Vec::new()
                        } else {
                            (0..=d).map(|i| k.position(&s.facet(i)).expect("closed under faces")).collect()
                        }
                    })
                    .collect(),
            );
        }
        DeltaComplex { names, faces }
    }

    /// Identifies cells: `rep[k][c]` is the representative of cell `c` in
    /// dimension `k`. Returns the quotient and, per dimension, the map from old
    /// cells to quotient cells. Fails if the identification is not compatible
    /// with the face maps.
    pub fn identify(&self, rep: &[Vec<usize>]) -> Result<(DeltaComplex, Vec<Vec<usize>>)> {
        let mut maps = Vec::with_capacity(self.faces.len());
        let mut names = Vec::with_capacity(self.faces.len());
        for k in 0..self.faces.len() {
            let mut map = vec![usize::MAX; self.faces[k].len()];
            let mut new_names = Vec::new();
            for c in 0..self.faces[k].len() {
                let r = rep[k][c];
                if rep[k][r] != r {
                    return Err(Error::Input(format!("representative of {} is not its own representative", self.names[k][c])));
                }
                if map[r] == usize::MAX {
                    map[r] = new_names.len();
                    new_names.push(self.names[k][r].clone());
                }
                map[c] = map[r];
            }
            maps.push(map);
            names.push(new_names);
        }
        let mut faces: Vec<Vec<Vec<usize>>> = names.iter().map(|n| vec![Vec::new(); n.len()]).collect();
        for k in 1..self.faces.len() {
            for c in 0..self.faces[k].len() {
                let image: Vec<usize> = self.faces[k][c].iter().map(|&f| maps[k - 1][f]).collect();
                if rep[k][c] == c {
                    faces[k][maps[k][c]] = image;
                }
            }
            for c in 0..self.faces[k].len() {
                let image: Vec<usize> = self.faces[k][c].iter().map(|&f| maps[k - 1][f]).collect();
                if faces[k][maps[k][c]] != image {
                    return Err(Error::Input(format!("identifying {} is incompatible with its faces", self.names[k][c])));
                }
            }
        }
        Ok((DeltaComplex::new(names, faces)?, maps))
    }

    /// First barycentric subdivision.
    ///
    /// A `k`-cell of the result is a chain `F_0 < ... < F_k` of faces of some
    /// cell `σ` of `self` with `F_k = σ`; its vertices are the barycentres of
    /// the `F_i` in that order. The last face is re-expressed inside the
    /// corresponding face cell of `σ`.
    pub fn barycentric_subdivision(&self) -> DeltaSubdivision {
        let mut provenance: Vec<Vec<CellChain>> = Vec::new();
        let mut ids: Vec<HashMap<CellChain, usize>> = Vec::new();
        for (n, cells) in self.faces.iter().enumerate() {
            let full = (1u32 << (n + 1)) - 1;
            for c in 0..cells.len() {
                let mut stack = vec![vec![full]];
                while let Some(desc) = stack.pop() {
                    let k = desc.len() - 1;
                    let smallest = *desc.last().expect("nonempty chain");
                    let mut chain = desc.clone();
                    chain.reverse();
                    let key = CellChain { dim: n, cell: c, chain };
                    if provenance.len() <= k {
                        provenance.resize_with(k + 1, Vec::new);
                        ids.resize_with(k + 1, HashMap::new);
                    }
                    ids[k].insert(key.clone(), provenance[k].len());
                    provenance[k].push(key);
                    // proper nonempty submasks of `smallest`
                    let mut sub = (smallest - 1) & smallest;
                    let mut subs = Vec::new();
                    while sub != 0 {
                        subs.push(sub);
                        sub = (sub - 1) & smallest;
                    }
                    for s in subs.into_iter().rev() {
                        let mut next = desc.clone();
                        next.push(s);
                        stack.push(next);
                    }
                }
            }
        }
        // deterministic ordering: sort keys within each dimension
        for k in 0..provenance.len() {
            provenance[k].sort_by(|a, b| (a.dim, a.cell, &a.chain).cmp(&(b.dim, b.cell, &b.chain)));
            ids[k] = provenance[k].iter().cloned().enumerate().map(|(i, key)| (key, i)).collect();
        }
        let mut names = Vec::with_capacity(provenance.len());
        let mut faces = Vec::with_capacity(provenance.len());
        for k in 0..provenance.len() {
            names.push(provenance[k].iter().map(|key| self.chain_name(key)).collect::<Vec<_>>());
            faces.push(
                provenance[k]
                    .iter()
                    .map(|key| if k == 0 { Vec::new() } else { (0..=k).map(|i| ids[k - 1][&self.chain_face(key, i)]).collect() })
                    .collect::<Vec<_>>(),
            );
        }
        DeltaSubdivision { complex: DeltaComplex { names, faces }, provenance }
    }

    /// Face `i` of the subdivision cell `key`, in canonical form.
    fn chain_face(&self, key: &CellChain, i: usize) -> CellChain {
        let k = key.chain.len() - 1;
        if i < k {
            let mut chain = key.chain.clone();
            chain.remove(i);
            return CellChain { dim: key.dim, cell: key.cell, chain };
        }
        let top = key.chain[k - 1];
        let (dim, cell) = self.sub_face(key.dim, key.cell, top);
        let positions: Vec<u32> = (0..=key.dim as u32).filter(|b| top & (1 << b) != 0).collect();
        let chain = key.chain[..k]
            .iter()
            .map(|&m| positions.iter().enumerate().filter(|(_, &b)| m & (1 << b) != 0).fold(0u32, |acc, (j, _)| acc | (1 << j)))
            .collect();
        CellChain { dim, cell, chain }
    }

    fn chain_name(&self, key: &CellChain) -> String {
        let parts: Vec<String> = key
            .chain
            .iter()
            .map(|&m| {
                (0..=key.dim as u32)
                    .filter(|b| m & (1 << b) != 0)
                    .map(|b| char::from_digit(b, 36).expect("dimension below 36"))
                    .collect()
            })
            .collect();
        format!("{}[{}]", self.names[key.dim][key.cell], parts.join("<"))
    }
}
