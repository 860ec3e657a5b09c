//! Quotient trees of free splittings and the dimension bounds they give for
//! `Out(G)` and `Aut(G)` when `G = G_1 * ... * G_r` has one-ended factors.
//!
//! A quotient tree has `r` special vertices (one per factor, labelled `1..r`)
//! and some unlabelled trivial vertices. Minimality forces every vertex of
//! degree one or two to be special, so trivial vertices have degree at least
//! three and there are at most `r - 2` of them.

use std::collections::HashMap;
use std::fmt;

use log::debug;
use rayon::prelude::*;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::product::{product_dimension_report, FactorProfile, Regime};

/// Vertices `0..r` are special (vertex `i` carries label `i + 1`), vertices
/// `r..r + trivial` are trivial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientTree {
    r: usize,
    trivial: usize,
    edges: Vec<(usize, usize)>,
}

impl QuotientTree {
    pub fn new(r: usize, trivial: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let t = QuotientTree { r, trivial, edges };
        t.validate()?;
        Ok(t.canonical())
    }

    fn validate(&self) -> Result<()> {
        let n = self.vertex_count();
        if self.r == 0 {
            return Err(Error::Input("a quotient tree needs at least one special vertex".into()));
        }
        if self.edges.len() + 1 != n {
            return Err(Error::Input(format!("{} edges on {n} vertices is not a tree", self.edges.len())));
        }
        if self.edges.iter().any(|&(a, b)| a >= n || b >= n || a == b) {
            return Err(Error::Input("edge endpoint out of range or loop".into()));
        }
        let adj = self.adjacency();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Input("quotient graph is not connected".into()));
        }
        if let Some(v) = (self.r..n).find(|&v| adj[v].len() < 3) {
            return Err(Error::Input(format!("trivial vertex {} has degree {} < 3", self.name(v), adj[v].len())));
        }
        Ok(())
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn trivial_count(&self) -> usize {
        self.trivial
    }

    pub fn vertex_count(&self) -> usize {
        self.r + self.trivial
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_special(&self, v: usize) -> bool {
        v < self.r
    }

    /// `"1".."r"` for special vertices, `"t0", "t1", ...` for trivial ones.
    pub fn name(&self, v: usize) -> String {
        if self.is_special(v) {
            (v + 1).to_string()
        } else {
            format!("t{}", v - self.r)
        }
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// `deg_1, ..., deg_r`.
    pub fn degree_vector(&self) -> Vec<usize> {
        let mut deg = vec![0; self.r];
        for &(a, b) in &self.edges {
            for v in [a, b] {
                if v < self.r {
                    deg[v] += 1;
                }
            }
        }
        deg
    }

    /// Canonical string for the tree rooted at special vertex 1. Two trees
    /// get the same code exactly when some bijection fixing every label and
    /// permuting trivial vertices carries one onto the other.
    pub fn canonical_code(&self) -> String {
        self.encode().0
    }

    /// The code, plus the trivial vertices in the order the code visits them.
    fn encode(&self) -> (String, Vec<usize>) {
        fn go(t: &QuotientTree, adj: &[Vec<usize>], v: usize, parent: usize) -> (String, Vec<usize>) {
            let mut kids: Vec<(String, Vec<usize>)> =
                adj[v].iter().filter(|&&w| w != parent).map(|&w| go(t, adj, w, v)).collect();
            kids.sort_by(|a, b| a.0.cmp(&b.0));
            let mut code = if t.is_special(v) { format!("({}", v + 1) } else { "(t".to_string() };
            let mut order = if t.is_special(v) { Vec::new() } else { vec![v] };
            for (c, o) in kids {
                code.push_str(&c);
                order.extend(o);
            }
            code.push(')');
            (code, order)
        }
        go(self, &self.adjacency(), 0, usize::MAX)
    }

    /// Renumbers trivial vertices in code order and sorts the edge list.
    fn canonical(&self) -> QuotientTree {
        let (_, order) = self.encode();
        let mut relabel: Vec<usize> = (0..self.vertex_count()).collect();
        for (i, &v) in order.iter().enumerate() {
            relabel[v] = self.r + i;
        }
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (a, b) = (relabel[a], relabel[b]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        QuotientTree { r: self.r, trivial: self.trivial, edges }
    }

    /// The trees with one more special vertex obtained by inserting label
    /// `r + 1`: as a leaf, by subdividing an edge, on a new trivial vertex
    /// subdividing an edge, or in place of a trivial vertex. Deleting label
    /// `r + 1` (and suppressing a trivial vertex left with degree two) undoes
    /// exactly one of these moves, so every valid tree has a unique parent.
    /// Labelled trees whose leaves are all special have no nontrivial
    /// automorphisms, so distinct moves on one parent give distinct trees and
    /// the generation never repeats itself.
    fn extensions(&self) -> Vec<QuotientTree> {
        let n = self.vertex_count();
        let new = self.r;
        // shift trivial vertices up by one to make room for the new special
        let shift = |v: usize| if v < self.r { v } else { v + 1 };
        let base: Vec<(usize, usize)> = self.edges.iter().map(|&(a, b)| (shift(a), shift(b))).collect();
        let grow = |trivial: usize, edges: Vec<(usize, usize)>| QuotientTree { r: self.r + 1, trivial, edges };
        let mut out = Vec::new();
        for v in 0..n {
            let mut e = base.clone();
            e.push((new, shift(v)));
            out.push(grow(self.trivial, e));
        }
        for (i, &(a, b)) in base.iter().enumerate() {
            let mut e = base.clone();
            e[i] = (a, new);
            e.push((new, b));
            out.push(grow(self.trivial, e));

            let fresh = self.r + 1 + self.trivial;
            let mut e = base.clone();
            e[i] = (a, fresh);
            e.push((fresh, b));
            e.push((fresh, new));
            out.push(grow(self.trivial + 1, e));
        }
        for v in self.r..n {
            // trivial vertex v becomes the new special vertex
            let old = v + 1;
            let fix = |w: usize| {
                if w == old {
                    new
                } else if w > old {
                    w - 1
                } else {
                    w
                }
            };
            let e = base.iter().map(|&(a, b)| (fix(a), fix(b))).collect();
            out.push(grow(self.trivial - 1, e));
        }
        out
    }
}

impl fmt::Display for QuotientTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|&(a, b)| format!("{}-{}", self.name(a), self.name(b))).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl Serialize for QuotientTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let edges: Vec<[String; 2]> = self.edges.iter().map(|&(a, b)| [self.name(a), self.name(b)]).collect();
        let mut s = serializer.serialize_struct("QuotientTree", 4)?;
        s.serialize_field("r", &self.r)?;
        s.serialize_field("trivial", &self.trivial)?;
        s.serialize_field("edges", &edges)?;
        s.serialize_field("code", &self.canonical_code())?;
        s.end()
    }
}

fn check_r(r: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::Input(format!("need at least two factors, got {r}")));
    }
    Ok(())
}

/// Trees with `r` special vertices in generation order, trivial vertices not
/// yet renumbered.
fn level(r: usize) -> Vec<QuotientTree> {
    let mut level = vec![QuotientTree { r: 1, trivial: 0, edges: Vec::new() }];
    for k in 2..=r {
        level = level.par_iter().flat_map_iter(|t| t.extensions()).collect();
        debug!("{} quotient trees with {k} special vertices", level.len());
    }
    level
}

/// Every quotient tree with `r` special vertices exactly once, without
/// holding the last level in memory.
fn stream(r: usize) -> impl IndexedParallelIterator<Item = Vec<QuotientTree>> {
    level(r - 1).into_par_iter().map(|t| t.extensions())
}

/// All quotient trees with `r` special vertices up to isomorphism, in
/// canonical form and sorted by canonical code.
pub fn enumerate_trees(r: usize) -> Result<Vec<QuotientTree>> {
    check_r(r)?;
    let mut keyed: Vec<(String, QuotientTree)> = level(r)
        .into_par_iter()
        .map(|t| {
            debug_assert!(t.validate().is_ok());
            let t = t.canonical();
            (t.canonical_code(), t)
        })
        .collect();
    keyed.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
    if keyed.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::Internal(format!("duplicate quotient tree for r = {r}")));
    }
    Ok(keyed.into_iter().map(|(_, t)| t).collect())
}

/// Number of quotient trees with `r` special vertices.
pub fn count_trees(r: usize) -> Result<usize> {
    check_r(r)?;
    Ok(stream(r).map(|batch| batch.len()).sum())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpineCellBound {
    pub degree_vector: Vec<usize>,
    pub edge_count: usize,
    /// Edges between trivial vertices.
    pub forest_edges: usize,
    /// Components of the forest spanned by trivial vertices.
    pub forest_components: usize,
    /// `|E| - r + 1`, an upper bound for the dimension of spine cells in the
    /// open simplex of the tree.
    pub max_cell_dim: usize,
}

pub fn cell_bound(t: &QuotientTree) -> Result<SpineCellBound> {
    let r = t.r();
    let forest: Vec<(usize, usize)> =
        t.edges().iter().copied().filter(|&(a, b)| !t.is_special(a) && !t.is_special(b)).collect();
    // a forest on the trivial vertices has (vertices - edges) components
    let forest_components = t.trivial_count() - forest.len();
    let edge_count = t.edges().len();
    if edge_count != forest.len() + forest_components + r - 1 {
        return Err(Error::Internal(format!("tree contraction identity fails for {t}")));
    }
    let max_cell_dim = edge_count + 1 - r;
    if max_cell_dim != forest.len() + forest_components {
        return Err(Error::Internal(format!("cell dimension cross-check fails for {t}")));
    }
    Ok(SpineCellBound {
        degree_vector: t.degree_vector(),
        edge_count,
        forest_edges: forest.len(),
        forest_components,
        max_cell_dim,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeCheck {
    pub tree: QuotientTree,
    pub degree_sum: usize,
    pub max_cell_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabBoundReport {
    pub r: usize,
    pub trees: usize,
    /// `2r - 2`.
    pub bound: usize,
    pub violations: Vec<TreeCheck>,
    pub equality_cases: usize,
}

impl StabBoundReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `Σ deg_i + (|E| - r + 1) ≤ 2r - 2` on every quotient tree.
pub fn verify_stab_bound(r: usize) -> Result<StabBoundReport> {
    check_r(r)?;
    let bound = 2 * r - 2;
    let (trees, equality_cases, mut violations) = stream(r)
        .map(|batch| {
            let mut acc = (0, 0, Vec::new());
            for t in batch {
                let c = cell_bound(&t)?;
                let check = TreeCheck { degree_sum: c.degree_vector.iter().sum(), max_cell_dim: c.max_cell_dim, tree: t };
                let lhs = check.degree_sum + check.max_cell_dim;
                acc.0 += 1;
                if lhs == bound {
                    acc.1 += 1;
                } else if lhs > bound {
                    acc.2.push(TreeCheck { tree: check.tree.canonical(), ..check });
                }
            }
            Ok(acc)
        })
        .try_reduce(|| (0, 0, Vec::new()), |mut a, b| {
            a.0 += b.0;
            a.1 += b.1;
            a.2.extend(b.2);
            Ok(a)
        })?;
    violations.sort_by_cached_key(|c| c.tree.canonical_code());
    Ok(StabBoundReport { r, trees, bound, violations, equality_cases })
}

/// Dimension data of a tree stabiliser, which up to finite index is
/// `∏ G_i^{deg_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerShape {
    pub degree_vector: Vec<usize>,
    pub subgroup: String,
    pub regime: Regime,
    pub vcd_upper: usize,
    pub bredon_cd: usize,
}

pub fn stabilizer_shape(t: &QuotientTree, profiles: &[FactorProfile]) -> Result<StabilizerShape> {
    shape_for_degrees(&t.degree_vector(), profiles)
}

fn shape_for_degrees(degrees: &[usize], profiles: &[FactorProfile]) -> Result<StabilizerShape> {
    if degrees.len() != profiles.len() {
        return Err(Error::Input(format!("{} factor profiles for a tree with {} special vertices", profiles.len(), degrees.len())));
    }
    let factors: Vec<FactorProfile> = profiles
        .iter()
        .zip(degrees)
        .map(|(f, &deg)| FactorProfile::new(f.d, f.top_group.clone(), deg))
        .collect::<Result<_>>()?;
    let report = product_dimension_report(&factors)?;
    let subgroup = degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| if d == 1 { format!("G_{}", i + 1) } else { format!("G_{}^{d}", i + 1) })
        .collect::<Vec<_>>()
        .join(" x ");
    Ok(StabilizerShape {
        degree_vector: degrees.to_vec(),
        subgroup,
        regime: report.regime,
        vcd_upper: report.vcd_upper,
        bredon_cd: report.bredon_cd,
    })
}

/// The first `r` odd primes.
pub fn odd_primes(r: usize) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(r);
    let mut n = 3;
    while out.len() < r {
        if out.iter().take_while(|&&p| p * p <= n).all(|&p| n % p != 0) {
            out.push(n);
        }
        n += 2;
    }
    out
}

/// `r` factors of dimension 3 with top groups `Z/p` for the first `r` odd
/// primes: the profile of a free product of distinct `G_p`.
pub fn default_profiles(r: usize) -> Vec<FactorProfile> {
    odd_primes(r).into_iter().map(|p| FactorProfile::cyclic(3, p, 1).expect("valid profile")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutBounds {
    pub r: usize,
    pub trees: usize,
    pub vcd_upper: usize,
    pub bredon_cd_lower: usize,
    pub gap: isize,
    pub vcd_witness: QuotientTree,
    pub bredon_witness: QuotientTree,
}

/// Per degree vector: the largest cell dimension and the first tree
/// attaining it.
type DegreeTable = HashMap<Vec<usize>, (usize, QuotientTree)>;

fn merge_into(table: &mut DegreeTable, key: Vec<usize>, dim: usize, tree: QuotientTree) {
    match table.get_mut(&key) {
        Some(entry) if entry.0 >= dim => {}
        Some(entry) => *entry = (dim, tree),
        None => {
            table.insert(key, (dim, tree));
        }
    }
}

/// Bounds for `Out(G)`: the largest stabiliser bound plus cell dimension over
/// all quotient trees, and the largest stabiliser `cd`. Stabiliser data only
/// depends on the degree vector, so it is computed once per vector.
pub fn out_dimension_bounds(r: usize, profiles: Option<&[FactorProfile]>) -> Result<OutBounds> {
    check_r(r)?;
    let defaults;
    let profiles = match profiles {
        Some(p) => p,
        None => {
            defaults = default_profiles(r);
            &defaults
        }
    };
    if profiles.len() != r {
        return Err(Error::Input(format!("{} factor profiles for r = {r}", profiles.len())));
    }
    let (trees, table) = stream(r)
        .map(|batch| {
            let mut table = DegreeTable::new();
            let n = batch.len();
            for t in batch {
                let c = cell_bound(&t)?;
                merge_into(&mut table, c.degree_vector, c.max_cell_dim, t);
            }
            Ok((n, table))
        })
        .try_reduce(|| (0, DegreeTable::new()), |(n, mut a), (m, b)| {
            for (k, (dim, t)) in b {
                merge_into(&mut a, k, dim, t);
            }
            Ok((n + m, a))
        })?;
    let mut rows: Vec<(String, usize, usize, QuotientTree)> = table
        .into_par_iter()
        .map(|(v, (dim, t))| {
            let shape = shape_for_degrees(&v, profiles)?;
            let t = t.canonical();
            Ok((t.canonical_code(), shape.vcd_upper + dim, shape.bredon_cd, t))
        })
        .collect::<Result<_>>()?;
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    debug!("{trees} trees, {} distinct degree vectors", rows.len());
    // ties go to the first tree in canonical order
    let vi = (0..rows.len()).rev().max_by_key(|&i| rows[i].1).expect("r >= 2 has trees");
    let ci = (0..rows.len()).rev().max_by_key(|&i| rows[i].2).expect("r >= 2 has trees");
    let (vcd_upper, bredon_cd_lower) = (rows[vi].1, rows[ci].2);
    Ok(OutBounds {
        r,
        trees,
        vcd_upper,
        bredon_cd_lower,
        gap: bredon_cd_lower as isize - vcd_upper as isize,
        vcd_witness: rows[vi].3.clone(),
        bredon_witness: rows[ci].3.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutBounds {
    pub factors: usize,
    pub vcd_upper: usize,
    pub cd_lower: usize,
}

/// `vcd(Aut G) ≤ vcd(G) + vcd(Out G) ≤ 3 + 5r - 5` and `cd(Aut G) ≥ 6r - 6`
/// for a free product of `r` factors of the `G_p` type.
pub fn aut_dimension_bounds(factors: usize) -> Result<AutBounds> {
    if factors < 2 {
        return Err(Error::Input(format!("need at least two factors, got {factors}")));
    }
    Ok(AutBounds { factors, vcd_upper: 3 + 5 * factors - 5, cd_lower: 6 * factors - 6 })
}
