//! Properties of the right-angled Coxeter group `W` read off its defining
//! graph and nerve `L`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use log::{debug, info};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::homology::{cohomology, cohomology_groups, FgAbelianGroup};
use crate::simplicial::{Graph, Simplex, SimplicialComplex};

/// Complement scans over more simplices than this are refused.
pub const COMPLEMENT_SCAN_LIMIT: usize = 50_000;

/// An induced 4-cycle `a - b - c - d - a`, if any.
pub fn find_induced_square(g: &Graph) -> Option<[usize; 4]> {
    let n = g.vertex_count();
    for a in 0..n {
        let nb = g.neighbors(a);
        for (i, &b) in nb.iter().enumerate() {
            for &d in &nb[i + 1..] {
                if g.is_adjacent(b, d) {
                    continue;
                }
                for &c in g.neighbors(b) {
                    if c != a && !g.is_adjacent(a, c) && g.is_adjacent(c, d) {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

/// Number of induced 4-cycles (as vertex sets).
pub fn induced_square_count(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut count = 0;
    // each square is seen once from each of its two diagonals (a, c) with a < c
    for a in 0..n {
        for c in a + 1..n {
            if g.is_adjacent(a, c) {
                continue;
            }
            let common: Vec<usize> = g.neighbors(a).iter().copied().filter(|&v| g.is_adjacent(v, c)).collect();
            for (i, &b) in common.iter().enumerate() {
                count += common[i + 1..].iter().filter(|&&d| !g.is_adjacent(b, d)).count();
            }
        }
    }
    count / 2
}

/// Every 4-cycle has a chord.
pub fn check_hyperbolic(g: &Graph) -> bool {
    find_induced_square(g).is_none()
}

/// Complex-side formulation: no four vertices span a full subcomplex that is
/// an empty square (four edges, no diagonal).
pub fn has_empty_square(l: &SimplicialComplex) -> bool {
    let edges = l.faces(1);
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            let mut vs: Vec<u32> = e.vertices().iter().chain(f.vertices()).copied().collect();
            vs.sort_unstable();
            vs.dedup();
            if vs.len() != 4 {
                continue;
            }
            let mut keep = vec![false; l.vertex_count()];
            for &v in &vs {
                keep[v as usize] = true;
            }
            let sub = l.full_subcomplex_mask(&keep);
            if sub.dim() == 1 && sub.face_count(1) == 4 {
                let g = sub.one_skeleton();
                if (0..4).all(|v| g.degree(v) == 2) {
                    return true;
                }
            }
        }
    }
    false
}

/// `L` is connected and the full subcomplex on the complement of every
/// simplex, the empty one included, is nonempty and connected.
pub fn check_one_ended(l: &SimplicialComplex) -> Result<bool> {
    if !l.is_flag() {
        return Err(Error::NotFlag);
    }
    let g = l.one_skeleton();
    let n = l.vertex_count();
    let separates = |s: &Simplex| {
        let mut removed = vec![false; n];
        for &v in s.vertices() {
            removed[v as usize] = true;
        }
        g.component_count_without(&removed) != 1
    };
    if separates(&Simplex::empty()) {
        return Ok(false);
    }
    let dim = l.dim().max(0) as usize;
    Ok(!(0..=dim).into_par_iter().any(|d| l.faces(d).par_iter().any(separates)))
}

/// Graph-side formulation of one-endedness: connected, not complete, and no
/// clique whose removal disconnects the graph.
pub fn no_separating_clique(g: &Graph) -> bool {
    let n = g.vertex_count();
    let connected = g.connected_components().len() == 1;
    let complete = g.edge_count() * 2 == n * n.saturating_sub(1);
    if !connected || complete {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    for clique in g.maximal_cliques() {
        let k = clique.len();
        for mask in 1u32..(1 << k) {
            let subset: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| clique[i]).collect();
            if !seen.insert(subset.clone()) {
                continue;
            }
            let rest: Vec<usize> = (0..n).filter(|v| !subset.contains(v)).collect();
            let names: Vec<&str> = rest.iter().map(|&v| g.name(v)).collect();
            let edges: Vec<(&str, &str)> = g
                .edges()
                .filter(|(a, b)| !subset.contains(a) && !subset.contains(b))
                .map(|(a, b)| (g.name(a), g.name(b)))
                .collect();
            let induced = Graph::new(names, edges).expect("induced subgraph of a valid graph");
            if induced.connected_components().len() != 1 {
                return false;
            }
        }
    }
    true
}

/// No vertex is adjacent to all others. A single vertex dominates vacuously.
pub fn check_no_dominating_vertex(g: &Graph) -> bool {
    let n = g.vertex_count();
    (0..n).all(|v| g.degree(v) + 1 != n)
}

/// For every vertex `s`, the graph induced on the complement of the closed
/// star `{s} ∪ N(s)` is nonempty and connected.
pub fn check_star_complements(g: &Graph) -> bool {
    let n = g.vertex_count();
    (0..n).all(|s| {
        let mut removed = vec![false; n];
        removed[s] = true;
        for &w in g.neighbors(s) {
            removed[w] = true;
        }
        g.component_count_without(&removed) == 1
    })
}

/// Every nonempty non-maximal simplex lies in at least two maximal simplices.
pub fn check_maximal_cover(l: &SimplicialComplex) -> bool {
    let mut count: HashMap<Simplex, usize> = HashMap::new();
    for m in l.maximal_faces() {
        for f in m.nonempty_faces() {
            if f.len() < m.len() {
                *count.entry(f).or_default() += 1;
            }
        }
    }
    let maximal: std::collections::HashSet<&Simplex> = l.maximal_faces().iter().collect();
    count.iter().all(|(f, &c)| maximal.contains(f) || c >= 2)
}

/// Reduced cohomology of full subcomplexes `L ∖ σ`, cached by the removed
/// vertex set and shared between the vcd and group-ring scans.
pub struct ComplementScan<'a> {
    l: &'a SimplicialComplex,
    cache: Mutex<HashMap<Vec<u32>, Arc<Vec<FgAbelianGroup>>>>,
}

impl<'a> ComplementScan<'a> {
    pub fn new(l: &'a SimplicialComplex) -> Self {
        ComplementScan { l, cache: Mutex::new(HashMap::new()) }
    }

    /// `H̄^n(L ∖ σ)` for `n = -1 ..= dim(L ∖ σ)` (index `n + 1`).
    pub fn reduced(&self, sigma: &Simplex) -> Arc<Vec<FgAbelianGroup>> {
        let key = sigma.vertices().to_vec();
        if let Some(hit) = self.cache.lock().expect("cache lock").get(&key) {
            return Arc::clone(hit);
        }
        let complement = self.l.complement(sigma);
        let mut groups = vec![cohomology(&complement, -1, true)];
        groups.extend(cohomology_groups(&complement, true));
        let value = Arc::new(groups);
        self.cache.lock().expect("cache lock").insert(key, Arc::clone(&value));
        value
    }

    /// All simplices of `L`, the empty simplex first.
    fn simplices(&self) -> Vec<Simplex> {
        let mut all = vec![Simplex::empty()];
        for d in 0..=self.l.dim().max(-1) {
            all.extend(self.l.faces(d as usize).iter().cloned());
        }
        all
    }

    fn check_size(&self) -> Result<()> {
        let n = self.l.simplex_count() + 1;
        if n > COMPLEMENT_SCAN_LIMIT {
            return Err(Error::TooLarge { simplices: n, limit: COMPLEMENT_SCAN_LIMIT });
        }
        Ok(())
    }
}

/// Top degree `n` with `H̄^n` nonzero, as `n + 1`; `0` if all vanish.
fn top_nonvanishing_plus_one(groups: &[FgAbelianGroup]) -> usize {
    groups.iter().rposition(|g| !g.is_trivial()).unwrap_or(0)
}

/// `max { n + 1 : H̄^n(L ∖ σ) ≠ 0, σ a simplex of L or ∅ }`, with
/// `H̄^{-1}(∅) = Z`. When `H̄^d(L) ≠ 0` the answer is `d + 1` without a scan.
pub fn vcd_davis(l: &SimplicialComplex) -> Result<usize> {
    vcd_with(&ComplementScan::new(l))
}

fn vcd_with(scan: &ComplementScan<'_>) -> Result<usize> {
    let l = scan.l;
    if !l.is_flag() {
        return Err(Error::NotFlag);
    }
    let d = l.dim();
    if d >= 0 && !cohomology(l, d, true).is_trivial() {
        debug!("vcd fast path: top reduced cohomology is nonzero");
        return Ok(d as usize + 1);
    }
    scan.check_size()?;
    let simplices = scan.simplices();
    Ok(simplices.par_iter().map(|s| top_nonvanishing_plus_one(&scan.reduced(s))).max().unwrap_or(0))
}

/// `H^{d+1}(W; Z[W])` when `H̄^d(L ∖ σ) = 0` for every nonempty simplex σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopGroupRing {
    Group(FgAbelianGroup),
    HypothesisFailed,
}

impl Serialize for TopGroupRing {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TopGroupRing::Group(g) => g.serialize(serializer),
            TopGroupRing::HypothesisFailed => serializer.serialize_str("hypothesis-failed"),
        }
    }
}

impl std::fmt::Display for TopGroupRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TopGroupRing::Group(g) => write!(f, "{g}"),
            TopGroupRing::HypothesisFailed => write!(f, "hypothesis-failed"),
        }
    }
}

pub fn top_group_ring_cohomology(l: &SimplicialComplex) -> Result<TopGroupRing> {
    top_group_ring_with(&ComplementScan::new(l))
}

fn top_group_ring_with(scan: &ComplementScan<'_>) -> Result<TopGroupRing> {
    let l = scan.l;
    if !l.is_flag() {
        return Err(Error::NotFlag);
    }
    scan.check_size()?;
    let d = l.dim();
    let index = (d + 1) as usize;
    let simplices = scan.simplices();
    let failed = simplices[1..].par_iter().any(|s| scan.reduced(s).get(index).is_some_and(|g| !g.is_trivial()));
    if failed {
        return Ok(TopGroupRing::HypothesisFailed);
    }
    Ok(TopGroupRing::Group(cohomology(l, d, true)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RacgCertificate {
    pub vertices: usize,
    pub simplices: usize,
    pub flag: bool,
    pub connected: bool,
    pub hyperbolic: bool,
    pub one_ended: bool,
    pub no_dominating_vertex: bool,
    pub star_complements_connected: bool,
    pub maximal_cover: bool,
    pub dimension: isize,
    pub top_reduced_cohomology: FgAbelianGroup,
    pub vcd: usize,
    pub top_group_ring_cohomology: TopGroupRing,
    pub dimension_rigid: bool,
}

impl RacgCertificate {
    /// The rigidity conjunction evaluated on the recorded fields.
    pub fn rigidity_holds(&self) -> bool {
        self.flag
            && self.connected
            && self.no_dominating_vertex
            && self.star_complements_connected
            && self.maximal_cover
            && !self.top_reduced_cohomology.is_trivial()
    }
}

/// Runs every checker on a flag complex.
pub fn rigidity_certificate(l: &SimplicialComplex) -> Result<RacgCertificate> {
    if !l.is_flag() {
        return Err(Error::NotFlag);
    }
    let g = l.one_skeleton();
    let scan = ComplementScan::new(l);
    let d = l.dim();
    let top = cohomology(l, d, true);
    let vcd = vcd_with(&scan)?;
    let top_group_ring = top_group_ring_with(&scan)?;
    let mut cert = RacgCertificate {
        vertices: l.vertex_count(),
        simplices: l.simplex_count(),
        flag: true,
        connected: l.is_connected(),
        hyperbolic: check_hyperbolic(&g),
        one_ended: check_one_ended(l)?,
        no_dominating_vertex: check_no_dominating_vertex(&g),
        star_complements_connected: check_star_complements(&g),
        maximal_cover: check_maximal_cover(l),
        dimension: d,
        top_reduced_cohomology: top,
        vcd,
        top_group_ring_cohomology: top_group_ring,
        dimension_rigid: false,
    };
    cert.dimension_rigid = cert.rigidity_holds();
    info!("certificate: rigid={} hyperbolic={} vcd={}", cert.dimension_rigid, cert.hyperbolic, cert.vcd);
    Ok(cert)
}
