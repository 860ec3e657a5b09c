use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite simple graph with string-named vertices.
///
/// Vertices are stored in lexicographic order; all index-based accessors refer
/// to that order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    adjacency: Vec<Vec<usize>>,
}

/// Wire format: `{"vertices": ["a", ...], "edges": [["a","b"], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

impl Graph {
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let mut names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Input(format!("duplicate vertex `{}`", w[0])));
        }
        let index: HashMap<&str, usize> =
            names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut seen = BTreeSet::new();
        let mut adjacency = vec![Vec::new(); names.len()];
        for (a, b) in edges {
            let (a, b): (String, String) = (a.into(), b.into());
            let ia = *index.get(a.as_str()).ok_or_else(|| Error::UnknownVertex(a.clone()))?;
            let ib = *index.get(b.as_str()).ok_or_else(|| Error::UnknownVertex(b.clone()))?;
            if ia == ib {
                return Err(Error::Input(format!("loop at vertex `{a}`")));
            }
            let key = (ia.min(ib), ia.max(ib));
            if !seen.insert(key) {
                return Err(Error::Input(format!("parallel edge {a}-{b}")));
            }
            adjacency[ia].push(ib);
            adjacency[ib].push(ia);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        Ok(Graph { names, adjacency })
    }

    /// Builds a graph from already-sorted unique names and index edges.
    pub(crate) fn from_sorted_parts(names: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        debug_assert!(names.windows(2).all(|w| w[0] < w[1]));
        let mut adjacency = vec![Vec::new(); names.len()];
        for (a, b) in edges {
            debug_assert!(a != b);
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
            nbrs.dedup();
        }
        Graph { names, adjacency }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        Graph::new(
            json.vertices.iter().cloned(),
            json.edges.iter().map(|[a, b]| (a.clone(), b.clone())),
        )
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.names.clone(),
            edges: self
                .edges()
                .map(|(a, b)| [self.names[a].clone(), self.names[b].clone()])
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Edges as index pairs `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, nbrs)| nbrs.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }

    /// Connected components as sorted lists of vertex names; the empty graph has none.
    pub fn connected_components(&self) -> Vec<Vec<String>> {
        let removed = vec![false; self.vertex_count()];
        self.component_labels(&removed)
            .1
            .into_iter()
            .map(|comp| comp.into_iter().map(|v| self.names[v].clone()).collect())
            .collect()
    }

    /// Number of connected components of the induced subgraph on the vertices
    /// not marked as removed.
    pub fn component_count_without(&self, removed: &[bool]) -> usize {
        self.component_labels(removed).1.len()
    }

    fn component_labels(&self, removed: &[bool]) -> (Vec<usize>, Vec<Vec<usize>>) {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if removed[start] || label[start] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut comp = vec![start];
            label[start] = id;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if !removed[w] && label[w] == usize::MAX {
                        label[w] = id;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        (label, comps)
    }

    /// Maximal cliques (Bron–Kerbosch with pivoting), each sorted, overall sorted.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let all: Vec<usize> = (0..self.vertex_count()).collect();
        self.bron_kerbosch(&mut Vec::new(), all, Vec::new(), &mut out);
        for c in &mut out {
            c.sort_unstable();
        }
        out.sort();
        out
    }

    fn bron_kerbosch(&self, r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() {
            if x.is_empty() && !r.is_empty() {
                out.push(r.clone());
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| p.iter().filter(|&&v| self.is_adjacent(u, v)).count())
            .expect("p is nonempty");
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| !self.is_adjacent(pivot, v)).collect();
        let mut p = p;
        let mut x = x;
        for v in candidates {
            let np: Vec<usize> = p.iter().copied().filter(|&w| self.is_adjacent(v, w)).collect();
            let nx: Vec<usize> = x.iter().copied().filter(|&w| self.is_adjacent(v, w)).collect();
            r.push(v);
            self.bron_kerbosch(r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
}
