use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::graph::Graph;
use crate::error::{Error, Result};

/// A simplex as a strictly increasing list of vertex indices into the owning
/// complex. The empty simplex has dimension −1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    pub fn new(mut vertices: Vec<u32>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex(vertices)
    }

    pub fn empty() -> Self {
        Simplex(Vec::new())
    }

    pub(crate) fn from_sorted(vertices: Vec<u32>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    /// The codimension-one face obtained by deleting the vertex at `position`.
    pub fn facet(&self, position: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(position);
        Simplex(v)
    }

    /// All nonempty faces, including `self`.
    pub fn nonempty_faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        assert!(n < 32, "simplex too large to enumerate faces");
        (1u32..(1u32 << n)).map(move |mask| {
            Simplex((0..n).filter(|i| mask & (1 << i) != 0).map(|i| self.0[i]).collect())
        })
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Wire format: `{"maximal_faces": [["a","b","c"], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexJson {
    pub maximal_faces: Vec<Vec<String>>,
}

/// A finite abstract simplicial complex.
///
/// Stored as its vertex names (lexicographically sorted, which fixes the
/// orientation convention for cochains) and its maximal faces. The full face
/// lattice is materialised on first use and cached.
pub struct SimplicialComplex {
    names: Vec<String>,
    maximal: Vec<Simplex>,
    faces: OnceLock<Vec<Vec<Simplex>>>,
    index: OnceLock<Vec<HashMap<Simplex, usize>>>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        SimplicialComplex {
            names: self.names.clone(),
            maximal: self.maximal.clone(),
            faces: self.faces.clone(),
            index: OnceLock::new(),
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.maximal == other.maximal
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialComplex")
            .field("vertices", &self.names.len())
            .field("maximal_faces", &self.maximal.len())
            .field("dim", &self.dim())
            .finish()
    }
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::from_parts(Vec::new(), Vec::new())
    }

    /// Builds a complex from (not necessarily maximal) faces given by vertex names.
    pub fn from_faces<F, S>(faces: F) -> Result<Self>
    where
        F: IntoIterator<Item = Vec<S>>,
        S: Into<String>,
    {
        let faces: Vec<Vec<String>> = faces
            .into_iter()
            .map(|f| f.into_iter().map(Into::into).collect())
            .collect();
        for f in &faces {
            let distinct: HashSet<&String> = f.iter().collect();
            if distinct.len() != f.len() {
                return Err(Error::Input(format!("face {f:?} repeats a vertex")));
            }
            if f.is_empty() {
                return Err(Error::Input("empty face in face list".into()));
            }
        }
        let mut names: Vec<String> = faces.iter().flatten().cloned().collect();
        names.sort();
        names.dedup();
        let index: HashMap<&str, u32> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i as u32)).collect();
        let simplices = faces
            .iter()
            .map(|f| Simplex::new(f.iter().map(|n| index[n.as_str()]).collect()))
            .collect();
        Ok(Self::from_parts(names, simplices))
    }

    pub fn from_json(json: &ComplexJson) -> Result<Self> {
        Self::from_faces(json.maximal_faces.iter().cloned())
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            maximal_faces: self.maximal.iter().map(|s| self.simplex_names(s)).collect(),
        }
    }

    /// Builds a complex from arbitrary vertex names (unique, any order) and
    /// simplices indexed into that list. Every name becomes a vertex.
    pub(crate) fn from_indexed(names: Vec<String>, simplices: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut order: Vec<u32> = (0..names.len() as u32).collect();
        order.sort_by(|&a, &b| names[a as usize].cmp(&names[b as usize]));
        let mut rank = vec![0u32; names.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old as usize] = new as u32;
        }
        let mut names = names;
        let sorted: Vec<String> = order.iter().map(|&o| std::mem::take(&mut names[o as usize])).collect();
        debug_assert!(sorted.windows(2).all(|w| w[0] < w[1]), "vertex names must be unique");
        let simplices = simplices
            .into_iter()
            .map(|s| Simplex::new(s.into_iter().map(|v| rank[v as usize]).collect()))
            .collect();
        Self::from_parts(sorted, simplices)
    }

    /// `names` sorted and unique; `simplices` index into it. Isolated names are
    /// added as 0-simplices and the list is reduced to maximal faces.
    pub(crate) fn from_parts(names: Vec<String>, simplices: Vec<Simplex>) -> Self {
        let mut all = simplices;
        all.retain(|s| !s.is_empty());
        let mut covered = vec![false; names.len()];
        for s in &all {
            for &v in s.vertices() {
                covered[v as usize] = true;
            }
        }
        for (v, c) in covered.iter().enumerate() {
            if !c {
                all.push(Simplex::from_sorted(vec![v as u32]));
            }
        }
        let maximal = reduce_to_maximal(all, names.len());
        SimplicialComplex { names, maximal, faces: OnceLock::new(), index: OnceLock::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: u32) -> &str {
        &self.names[v as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok().map(|i| i as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn maximal_faces(&self) -> &[Simplex] {
        &self.maximal
    }

    /// Dimension; −1 for the empty complex.
    pub fn dim(&self) -> isize {
        self.maximal.iter().map(Simplex::dim).max().unwrap_or(-1)
    }

    pub fn simplex_names(&self, s: &Simplex) -> Vec<String> {
        s.vertices().iter().map(|&v| self.names[v as usize].clone()).collect()
    }

    fn face_lattice(&self) -> &Vec<Vec<Simplex>> {
        self.faces.get_or_init(|| {
            let dim = self.dim();
            if dim < 0 {
                return Vec::new();
            }
            let mut sets: Vec<HashSet<Simplex>> = vec![HashSet::new(); dim as usize + 1];
            for m in &self.maximal {
                for f in m.nonempty_faces() {
                    let d = f.dim() as usize;
                    sets[d].insert(f);
                }
            }
            sets.into_iter()
                .map(|s| {
                    let mut v: Vec<Simplex> = s.into_iter().collect();
                    v.sort_unstable();
                    v
                })
                .collect()
        })
    }

    fn face_index(&self) -> &Vec<HashMap<Simplex, usize>> {
        self.index.get_or_init(|| {
            self.face_lattice()
                .iter()
                .map(|faces| faces.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
                .collect()
        })
    }

    /// All `d`-dimensional faces in lexicographic order (empty if `d` exceeds the dimension).
    pub fn faces(&self, d: usize) -> &[Simplex] {
        self.face_lattice().get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn face_count(&self, d: usize) -> usize {
        self.faces(d).len()
    }

    /// Total number of nonempty simplices.
    pub fn simplex_count(&self) -> usize {
        self.face_lattice().iter().map(Vec::len).sum()
    }

    /// Position of a simplex within `faces(s.dim())`.
    pub fn position(&self, s: &Simplex) -> Option<usize> {
        if s.is_empty() {
            return None;
        }
        self.face_index().get(s.dim() as usize)?.get(s).copied()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        s.is_empty() || self.position(s).is_some()
    }

    /// Looks up a simplex by vertex names.
    pub fn simplex_from_names<S: AsRef<str>>(&self, names: &[S]) -> Option<Simplex> {
        let verts: Option<Vec<u32>> = names.iter().map(|n| self.index_of(n.as_ref())).collect();
        let s = Simplex::new(verts?);
        (s.len() == names.len() && self.contains(&s)).then_some(s)
    }

    /// Checks that every simplex of `self` (by vertex names) is a simplex of `other`.
    pub fn check_subcomplex_of(&self, other: &SimplicialComplex) -> Result<()> {
        for m in &self.maximal {
            let names = self.simplex_names(m);
            if other.simplex_from_names(&names).is_none() {
                return Err(Error::NotSubcomplex(names));
            }
        }
        Ok(())
    }

    pub fn one_skeleton(&self) -> Graph {
        Graph::from_sorted_parts(
            self.names.clone(),
            self.faces(1).iter().map(|e| (e.vertices()[0] as usize, e.vertices()[1] as usize)),
        )
    }

    /// Connected components as sorted name lists; the empty complex has none.
    pub fn connected_components(&self) -> Vec<Vec<String>> {
        self.one_skeleton().connected_components()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// The full subcomplex on the given vertex names.
    pub fn full_subcomplex<S: AsRef<str>>(&self, vertices: &[S]) -> Result<SimplicialComplex> {
        let mut keep = vec![false; self.vertex_count()];
        for v in vertices {
            let i = self.index_of(v.as_ref()).ok_or_else(|| Error::UnknownVertex(v.as_ref().to_string()))?;
            keep[i as usize] = true;
        }
        Ok(self.full_subcomplex_mask(&keep))
    }

    /// The full subcomplex on the vertices flagged in `keep` (indexed as in `self`).
    pub fn full_subcomplex_mask(&self, keep: &[bool]) -> SimplicialComplex {
        let mut remap = vec![u32::MAX; self.vertex_count()];
        let mut names = Vec::new();
        for (v, &k) in keep.iter().enumerate() {
            if k {
                remap[v] = names.len() as u32;
                names.push(self.names[v].clone());
            }
        }
        let simplices = self
            .maximal
            .iter()
            .map(|m| {
                Simplex::from_sorted(
                    m.vertices().iter().filter(|&&v| keep[v as usize]).map(|&v| remap[v as usize]).collect(),
                )
            })
            .collect();
        Self::from_parts(names, simplices)
    }

    /// The full subcomplex on the complement of `sigma`'s vertex set.
    pub fn complement(&self, sigma: &Simplex) -> SimplicialComplex {
        let mut keep = vec![true; self.vertex_count()];
        for &v in sigma.vertices() {
            keep[v as usize] = false;
        }
        self.full_subcomplex_mask(&keep)
    }

    /// The cone with the given apex.
    pub fn cone(&self, apex: &str) -> Result<SimplicialComplex> {
        if self.index_of(apex).is_some() {
            return Err(Error::ApexCollision(apex.to_string()));
        }
        let mut names = self.names.clone();
        names.push(apex.to_string());
        let a = (names.len() - 1) as u32;
        let simplices: Vec<Vec<u32>> = self
            .maximal
            .iter()
            .map(|m| {
                let mut v = m.vertices().to_vec();
                v.push(a);
                v
            })
            .chain(std::iter::once(vec![a]))
            .collect();
        Ok(Self::from_indexed(names, simplices))
    }

    /// The union of two complexes, identifying vertices by name.
    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut names: Vec<String> = self.names.iter().chain(other.names.iter()).cloned().collect();
        names.sort();
        names.dedup();
        let index: HashMap<&str, u32> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i as u32)).collect();
        let simplices = self
            .maximal
            .iter()
            .map(|m| (self, m))
            .chain(other.maximal.iter().map(|m| (other, m)))
            .map(|(c, m)| Simplex::new(m.vertices().iter().map(|&v| index[c.name(v)]).collect()))
            .collect();
        Self::from_parts(names, simplices)
    }

    /// Whether the complex equals the flag complex of its 1-skeleton.
    pub fn is_flag(&self) -> bool {
        let g = self.one_skeleton();
        let cliques: Vec<Simplex> =
            g.maximal_cliques().into_iter().map(|c| Simplex::from_sorted(c.into_iter().map(|v| v as u32).collect())).collect();
        cliques == self.maximal
    }

    /// First barycentric subdivision. Vertex `i` of the result is the
    /// barycentre of `provenance[i]`, a face of `self`; it is named
    /// `(v0,v1,...)` after that face's vertices.
    pub fn barycentric_subdivision(&self) -> Subdivision {
        let all: Vec<&Simplex> = self.face_lattice().iter().flatten().collect();
        let names: Vec<String> = all.iter().map(|f| format!("({})", self.simplex_names(f).join(","))).collect();
        let provisional: HashMap<&Simplex, u32> = all.iter().enumerate().map(|(i, f)| (*f, i as u32)).collect();
        let mut chains = Vec::new();
        for m in &self.maximal {
            for_each_permutation(m.vertices(), &mut |perm| {
                let mut prefix = Vec::with_capacity(perm.len());
                let chain: Vec<u32> = perm
                    .iter()
                    .map(|&v| {
                        prefix.push(v);
                        provisional[&Simplex::new(prefix.clone())]
                    })
                    .collect();
                chains.push(chain);
            });
        }
        let provenance_by_name: HashMap<String, Simplex> =
            names.iter().cloned().zip(all.iter().map(|f| (*f).clone())).collect();
        let complex = Self::from_indexed(names, chains);
        let provenance = complex.names.iter().map(|n| provenance_by_name[n].clone()).collect();
        Subdivision { complex, provenance }
    }
}

/// Result of a barycentric subdivision together with the face each new vertex
/// came from.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    pub provenance: Vec<Simplex>,
}

/// The flag (clique) complex of a graph.
pub fn flag_complex(g: &Graph) -> SimplicialComplex {
    let simplices =
        g.maximal_cliques().into_iter().map(|c| Simplex::from_sorted(c.into_iter().map(|v| v as u32).collect())).collect();
    SimplicialComplex::from_parts(g.names().to_vec(), simplices)
}

fn for_each_permutation(items: &[u32], f: &mut impl FnMut(&[u32])) {
    fn rec(items: &mut Vec<u32>, k: usize, f: &mut impl FnMut(&[u32])) {
        if k == items.len() {
            f(items);
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            rec(items, k + 1, f);
            items.swap(k, i);
        }
    }
    rec(&mut items.to_vec(), 0, f);
}

/// Keeps only the inclusion-maximal simplices, deduplicated and sorted.
fn reduce_to_maximal(mut simplices: Vec<Simplex>, vertex_count: usize) -> Vec<Simplex> {
    simplices.sort_unstable();
    simplices.dedup();
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
    for (i, s) in simplices.iter().enumerate() {
        for &v in s.vertices() {
            containing[v as usize].push(i);
        }
    }
    let maximal: Vec<Simplex> = simplices
        .iter()
        .filter(|s| {
            let pivot = s.vertices().iter().min_by_key(|&&v| containing[v as usize].len()).expect("nonempty");
            !containing[*pivot as usize].iter().any(|&j| simplices[j].len() > s.len() && s.is_face_of(&simplices[j]))
        })
        .cloned()
        .collect();
    maximal
}
