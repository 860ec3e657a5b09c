//! The `Z_p`-equivariant nerve `L_p` and the cohomological claims about it.
//!
//! `P` is the cone over a `p`-gon `A` with the rotation action; `Z` is `P` with
//! the boundary cells identified along rotation orbits. `Z` is a Δ-complex
//! (the identified boundary is a single loop), so it is subdivided at the
//! Δ-level until it becomes simplicial and then further as a simplicial
//! complex. The group action is carried along every subdivision.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use log::info;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{cohomology, cohomology_groups, relative_cohomology, CellComplex, FgAbelianGroup};
use crate::racg::{induced_square_count, rigidity_certificate, RacgCertificate, TopGroupRing};
use crate::simplicial::{CellChain, DeltaComplex, Simplex, SimplicialComplex};

/// Name of the cone point shared by `K` and `K_sing`.
pub const APEX: &str = "apex";

pub fn check_odd_prime(p: u64) -> Result<()> {
    let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    if prime && p % 2 == 1 {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}

fn permutation_order(perm: &[usize]) -> u64 {
    let mut seen = vec![false; perm.len()];
    let mut order = 1u64;
    for start in 0..perm.len() {
        let mut len = 0u64;
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            v = perm[v];
            len += 1;
        }
        if len > 0 {
            order = num_integer::lcm(order, len);
        }
    }
    order
}

fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter().all(|&x| x < perm.len() && !std::mem::replace(&mut seen[x], true))
}

/// A Δ-complex with a cyclic action: `action[k][c]` is the image of the
/// `k`-cell `c` under the generator. The action commutes with the face maps,
/// so it preserves the vertex order of every cell.
#[derive(Clone, Debug)]
pub struct EquivariantDelta {
    pub complex: DeltaComplex,
    order: u64,
    action: Vec<Vec<usize>>,
}

impl EquivariantDelta {
    pub fn new(complex: DeltaComplex, order: u64, action: Vec<Vec<usize>>) -> Result<Self> {
        let dims = (complex.dim() + 1) as usize;
        if action.len() != dims {
            return Err(Error::InvalidAction(format!("action given on {} dimensions, complex has {dims}", action.len())));
        }
        for (k, perm) in action.iter().enumerate() {
            if perm.len() != complex.cell_count(k) || !is_permutation(perm) {
                return Err(Error::InvalidAction(format!("not a permutation of the {k}-cells")));
            }
            if k > 0 {
                for c in 0..perm.len() {
                    let moved: Vec<usize> = complex.faces_of(k, c).iter().map(|&f| action[k - 1][f]).collect();
                    if moved != complex.faces_of(k, perm[c]) {
                        return Err(Error::InvalidAction(format!(
                            "generator does not commute with the faces of {}",
                            complex.cell_name(k, c)
                        )));
                    }
                }
            }
        }
        let actual = action.iter().map(|p| permutation_order(p)).fold(1, num_integer::lcm);
        if actual != order {
            return Err(Error::InvalidAction(format!("generator has order {actual}, expected {order}")));
        }
        Ok(EquivariantDelta { complex, order, action })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn action(&self, k: usize) -> &[usize] {
        &self.action[k]
    }

    pub fn subdivide(&self) -> EquivariantDelta {
        let sd = self.complex.barycentric_subdivision();
        let action = sd
            .provenance
            .iter()
            .map(|cells| {
                let index: HashMap<&CellChain, usize> = cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
                cells
                    .iter()
                    .map(|c| {
                        let image = CellChain { dim: c.dim, cell: self.action[c.dim][c.cell], chain: c.chain.clone() };
                        index[&image]
                    })
                    .collect()
            })
            .collect();
        EquivariantDelta::new(sd.complex, self.order, action).expect("subdivision preserves a valid action")
    }

    /// The simplicial complex with the induced vertex permutation, if the
    /// Δ-structure is simplicial.
    pub fn to_simplicial(&self) -> Option<EquivariantComplex> {
        let complex = self.complex.to_simplicial()?;
        let generator = (0..complex.vertex_count() as u32)
            .map(|v| {
                let cell = self.complex.find_cell(0, complex.name(v)).expect("vertices are 0-cells");
                let image = self.complex.cell_name(0, self.action[0][cell]);
                complex.index_of(image).expect("image is a vertex")
            })
            .collect();
        Some(EquivariantComplex::new(complex, self.order, generator).expect("simplicial action stays valid"))
    }
}

/// A simplicial complex with a cyclic group acting by a vertex permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantComplex {
    pub complex: SimplicialComplex,
    order: u64,
    generator: Vec<u32>,
}

impl EquivariantComplex {
    /// Validates that `generator` permutes the vertices, maps simplices to
    /// simplices and has exactly the given order.
    pub fn new(complex: SimplicialComplex, order: u64, generator: Vec<u32>) -> Result<Self> {
        let perm: Vec<usize> = generator.iter().map(|&v| v as usize).collect();
        if perm.len() != complex.vertex_count() || !is_permutation(&perm) {
            return Err(Error::InvalidAction("generator is not a permutation of the vertices".into()));
        }
        let actual = permutation_order(&perm);
        if actual != order {
            return Err(Error::InvalidAction(format!("generator has order {actual}, expected {order}")));
        }
        let ec = EquivariantComplex { complex, order, generator };
        for m in ec.complex.maximal_faces() {
            if !ec.complex.contains(&ec.image(m)) {
                return Err(Error::InvalidAction(format!("image of {:?} is not a simplex", ec.complex.simplex_names(m))));
            }
        }
        Ok(ec)
    }

    pub fn trivial(complex: SimplicialComplex) -> Self {
        let generator = (0..complex.vertex_count() as u32).collect();
        EquivariantComplex { complex, order: 1, generator }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generator(&self) -> &[u32] {
        &self.generator
    }

    pub fn image(&self, s: &Simplex) -> Simplex {
        Simplex::new(s.vertices().iter().map(|&v| self.generator[v as usize]).collect())
    }

    /// Barycentric subdivision with the action transported through the
    /// face-provenance map; also returns the provenance.
    pub fn subdivide(&self) -> (EquivariantComplex, Vec<Simplex>) {
        let sd = self.complex.barycentric_subdivision();
        let index: HashMap<&Simplex, u32> = sd.provenance.iter().enumerate().map(|(i, f)| (f, i as u32)).collect();
        let generator = sd.provenance.iter().map(|f| index[&self.image(f)]).collect();
        let ec = EquivariantComplex { complex: sd.complex, order: self.order, generator };
        (ec, sd.provenance)
    }

    pub fn fixed_vertices(&self) -> Vec<bool> {
        self.generator.iter().enumerate().map(|(v, &g)| v as u32 == g).collect()
    }
}

/// The subcomplex of simplices fixed pointwise by the generator. For a
/// prime-order action every nontrivial stabilizer is the whole group, so this
/// is the singular set once the action is regular.
pub fn fixed_subcomplex(ec: &EquivariantComplex) -> SimplicialComplex {
    ec.complex.full_subcomplex_mask(&ec.fixed_vertices())
}

/// The cone `P` over the `p`-gon, with cells `o`, `b_i`, boundary edges
/// `e_i = (b_i, b_{i+1})`, spokes `s_i = (o, b_i)` and triangles
/// `t_i = (o, b_i, b_{i+1})`, and the rotation `i ↦ i + 1`.
pub fn build_cone_polygon(p: u64) -> Result<EquivariantDelta> {
    if p < 3 {
        return Err(Error::Input(format!("a polygon needs at least 3 sides, got {p}")));
    }
    let n = p as usize;
    let next = |i: usize| (i + 1) % n;
    // 0-cells: o = 0, b_i = 1 + i; 1-cells: e_i = i, s_i = n + i; 2-cells: t_i = i
    let mut names = vec![vec!["o".to_string()], Vec::new(), Vec::new()];
    names[0].extend((0..n).map(|i| format!("b{i}")));
    names[1].extend((0..n).map(|i| format!("e{i}")));
    names[1].extend((0..n).map(|i| format!("s{i}")));
    names[2].extend((0..n).map(|i| format!("t{i}")));
    let b = |i: usize| 1 + i;
    let e = |i: usize| i;
    let s = |i: usize| n + i;
    let mut edges = Vec::with_capacity(2 * n);
    edges.extend((0..n).map(|i| vec![b(next(i)), b(i)]));
    edges.extend((0..n).map(|i| vec![b(i), 0]));
    let triangles = (0..n).map(|i| vec![e(i), s(next(i)), s(i)]).collect();
    let faces = vec![vec![Vec::new(); n + 1], edges, triangles];
    let complex = DeltaComplex::new(names, faces)?;
    let action = vec![
        std::iter::once(0).chain((0..n).map(|i| b(next(i)))).collect(),
        (0..n).map(|i| e(next(i))).chain((0..n).map(|i| s(next(i)))).collect(),
        (0..n).map(next).collect(),
    ];
    EquivariantDelta::new(complex, p, action)
}

/// `Z = P / ~`, identifying the cells of the boundary polygon that lie in a
/// common orbit. The boundary is recognised as the cells avoiding the cone
/// point and the orbits are read off the action.
pub fn build_quotient_z(p: u64) -> Result<EquivariantDelta> {
    check_odd_prime(p)?;
    let cone = build_cone_polygon(p)?;
    let c = &cone.complex;
    let apex = c.find_cell(0, "o").expect("cone point");
    let dims = (c.dim() + 1) as usize;
    let mut rep: Vec<Vec<usize>> = Vec::with_capacity(dims);
    for k in 0..dims {
        let action = cone.action(k);
        rep.push(
            (0..c.cell_count(k))
                .map(|cell| {
                    if c.vertices_of(k, cell).contains(&apex) {
                        return cell;
                    }
                    let mut orbit_min = cell;
                    let mut x = action[cell];
                    while x != cell {
                        orbit_min = orbit_min.min(x);
                        x = action[x];
                    }
                    orbit_min
                })
                .collect(),
        );
    }
    let (z, maps) = c.identify(&rep)?;
    let mut action = Vec::with_capacity(dims);
    for k in 0..dims {
        let mut image = vec![usize::MAX; z.cell_count(k)];
        for cell in 0..c.cell_count(k) {
            let target = maps[k][cone.action(k)[cell]];
            let slot = &mut image[maps[k][cell]];
            if *slot != usize::MAX && *slot != target {
                return Err(Error::InvalidAction("rotation does not descend to the quotient".into()));
            }
            *slot = target;
        }
        action.push(image);
    }
    EquivariantDelta::new(z, p, action)
}

/// Outcome of one subdivision step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubdivisionStage {
    pub subdivisions: usize,
    pub simplicial: bool,
    /// `None` while the complex is not yet simplicial.
    pub flag: Option<bool>,
    pub faces: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct LBuild {
    pub z: EquivariantDelta,
    pub l: EquivariantComplex,
    /// The first simplicial subdivision of `Z`.
    pub z_simplicial: EquivariantComplex,
    pub simplicial_after: usize,
    pub stages: Vec<SubdivisionStage>,
}

/// `k` equivariant barycentric subdivisions of `Z`, verified simplicial and
/// flag.
pub fn build_l(p: u64, k: usize) -> Result<LBuild> {
    if k == 0 {
        return Err(Error::Input("at least one subdivision is required".into()));
    }
    let z = build_quotient_z(p)?;
    let mut delta = z.clone();
    let mut simplicial: Option<(EquivariantComplex, usize)> = None;
    let mut current: Option<EquivariantComplex> = None;
    let mut stages = Vec::with_capacity(k);
    for j in 1..=k {
        current = match current {
            Some(ec) => Some(ec.subdivide().0),
            None => {
                delta = delta.subdivide();
                delta.to_simplicial()
            }
        };
        let stage = match &current {
            Some(ec) => {
                simplicial.get_or_insert_with(|| (ec.clone(), j));
                let faces = (0..=ec.complex.dim().max(0) as usize).map(|d| ec.complex.face_count(d)).collect();
                SubdivisionStage { subdivisions: j, simplicial: true, flag: Some(ec.complex.is_flag()), faces }
            }
            None => {
                let faces = (0..=delta.complex.dim().max(0) as usize).map(|d| delta.complex.cell_count(d)).collect();
                SubdivisionStage { subdivisions: j, simplicial: false, flag: None, faces }
            }
        };
        info!("p={p}: subdivision {j}: simplicial={} flag={:?}", stage.simplicial, stage.flag);
        stages.push(stage);
    }
    let (l, (z_simplicial, simplicial_after)) = match (current, simplicial) {
        (Some(l), Some(s)) => (l, s),
        _ => return Err(Error::InsufficientSubdivision { check: "simplicial".into(), subdivisions: k }),
    };
    if stages.last().and_then(|s| s.flag) != Some(true) {
        return Err(Error::InsufficientSubdivision { check: "flag".into(), subdivisions: k });
    }
    Ok(LBuild { z, l, z_simplicial, simplicial_after, stages })
}

/// `L'`, `L'_sing`, `K = C(L')` and `K_sing = L' ∪ C(L'_sing)` with a common
/// apex, so that `K_sing` is a subcomplex of `K`.
#[derive(Clone, Debug)]
pub struct KSing {
    pub l_prime: SimplicialComplex,
    pub l_prime_sing: SimplicialComplex,
    pub k: SimplicialComplex,
    pub k_sing: SimplicialComplex,
}

pub fn build_k_sing(l: &SimplicialComplex, l_sing: &SimplicialComplex) -> Result<KSing> {
    l_sing.check_subcomplex_of(l)?;
    let sd = l.barycentric_subdivision();
    // a vertex of L' is singular when the face it subdivides lies in L_sing
    let singular: Vec<bool> =
        sd.provenance.iter().map(|f| l_sing.simplex_from_names(&l.simplex_names(f)).is_some()).collect();
    let l_prime = sd.complex;
    let l_prime_sing = l_prime.full_subcomplex_mask(&singular);
    let k = l_prime.cone(APEX)?;
    let k_sing = l_prime.union(&l_prime_sing.cone(APEX)?);
    debug_assert!(k_sing.check_subcomplex_of(&k).is_ok());
    Ok(KSing { l_prime, l_prime_sing, k, k_sing })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GpClaims {
    /// `H^1(Z) = 0` and `H^2(Z) = Z_p`.
    pub quotient_cohomology: bool,
    /// `H̄^*(L)` agrees with `H̄^*(Z)` in every degree.
    pub subdivision_invariance: bool,
    /// The six graph/complex conditions: flag, hyperbolic, one-ended, no
    /// dominating vertex, connected star complements, maximal cover.
    pub graph_conditions: bool,
    pub dimension_rigid: bool,
    /// `H̄^2(L) = Z_p` and `H^3(W; Z[W]) = Z_p`.
    pub top_cohomology: bool,
    pub vcd_three: bool,
    /// `H^1(L) = 0`, `H^0(L_sing) = Z^2`, `H^1(L_sing) = Z`.
    pub singular_locus: bool,
    /// `rank H^2(K_sing) >= rank H^1(L_sing) - rank H^1(L)` and `rank H^2(K_sing) >= 1`.
    pub mayer_vietoris: bool,
    /// `H̄^*(K) = 0` and `H^3(K, K_sing) = H^2(K_sing)`.
    pub relative_agreement: bool,
}

impl GpClaims {
    pub fn all(&self) -> bool {
        self.quotient_cohomology
            && self.subdivision_invariance
            && self.graph_conditions
            && self.dimension_rigid
            && self.top_cohomology
            && self.vcd_three
            && self.singular_locus
            && self.mayer_vietoris
            && self.relative_agreement
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GpSizes {
    pub z_cells: Vec<usize>,
    pub l_faces: Vec<usize>,
    pub l_sing_faces: Vec<usize>,
    pub k_faces: Vec<usize>,
    pub k_sing_faces: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GpReport {
    pub p: u64,
    pub subdivisions: usize,
    pub simplicial_after: usize,
    pub stages: Vec<SubdivisionStage>,
    pub sizes: GpSizes,
    pub certificate: RacgCertificate,
    /// Induced 4-cycles in the 1-skeleton of `L`.
    pub induced_squares: usize,
    pub h1_z: FgAbelianGroup,
    pub h2_z: FgAbelianGroup,
    pub h1_l: FgAbelianGroup,
    pub h2_l: FgAbelianGroup,
    pub h0_lsing: FgAbelianGroup,
    pub h1_lsing: FgAbelianGroup,
    pub h2_ksing: FgAbelianGroup,
    pub relative_h3: FgAbelianGroup,
    pub claims: GpClaims,
    pub verdict: bool,
}

fn face_counts(k: &SimplicialComplex) -> Vec<usize> {
    (0..=k.dim().max(0) as usize).map(|d| k.face_count(d)).collect()
}

/// Builds every object for the prime `p` with `k` subdivisions and checks each
/// claim. The verdict is the conjunction of all claims.
pub fn verify_gp(p: u64, k: usize) -> Result<GpReport> {
    check_odd_prime(p)?;
    let built = build_l(p, k)?;
    let l = &built.l.complex;
    let zp = FgAbelianGroup::cyclic(p);

    let z_reduced: Vec<FgAbelianGroup> = cohomology_groups(&built.z.complex, true);
    let h1_z = cohomology(&built.z.complex, 1, false);
    let h2_z = cohomology(&built.z.complex, 2, false);
    let l_reduced = cohomology_groups(l, true);
    let h1_l = cohomology(l, 1, false);
    let h2_l = cohomology(l, 2, false);

    let certificate = rigidity_certificate(l)?;
    let induced_squares = induced_square_count(&l.one_skeleton());

    let l_sing = fixed_subcomplex(&built.l);
    let h0_lsing = cohomology(&l_sing, 0, false);
    let h1_lsing = cohomology(&l_sing, 1, false);

    let ks = build_k_sing(l, &l_sing)?;
    let h2_ksing = cohomology(&ks.k_sing, 2, false);
    let relative_h3 = relative_cohomology(&ks.k, &ks.k_sing, 3)?;
    let k_acyclic = cohomology_groups(&ks.k, true).iter().all(FgAbelianGroup::is_trivial);

    let cert = &certificate;
    let claims = GpClaims {
        quotient_cohomology: h1_z.is_trivial() && h2_z == zp,
        subdivision_invariance: z_reduced == l_reduced,
        graph_conditions: cert.flag
            && cert.hyperbolic
            && cert.one_ended
            && cert.no_dominating_vertex
            && cert.star_complements_connected
            && cert.maximal_cover,
        dimension_rigid: cert.dimension_rigid,
        top_cohomology: cohomology(l, 2, true) == zp && cert.top_group_ring_cohomology == TopGroupRing::Group(zp.clone()),
        vcd_three: cert.vcd == 3,
        singular_locus: h1_l.is_trivial() && h0_lsing == FgAbelianGroup::free(2) && h1_lsing == FgAbelianGroup::free(1),
        mayer_vietoris: h2_ksing.rank() + h1_l.rank() >= h1_lsing.rank() && h2_ksing.rank() >= 1,
        relative_agreement: k_acyclic && relative_h3 == h2_ksing,
    };
    let verdict = claims.all();
    info!("p={p}: verdict {verdict}");
    Ok(GpReport {
        p,
        subdivisions: k,
        simplicial_after: built.simplicial_after,
        stages: built.stages.clone(),
        sizes: GpSizes {
            z_cells: (0..=built.z.complex.dim().max(0) as usize).map(|d| built.z.complex.cells(d)).collect(),
            l_faces: face_counts(l),
            l_sing_faces: face_counts(&l_sing),
            k_faces: face_counts(&ks.k),
            k_sing_faces: face_counts(&ks.k_sing),
        },
        certificate,
        induced_squares,
        h1_z,
        h2_z,
        h1_l,
        h2_l,
        h0_lsing,
        h1_lsing,
        h2_ksing,
        relative_h3,
        claims,
        verdict,
    })
}

/// Intermediate complexes that can be exported.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    /// The first simplicial subdivision of `Z`.
    Z,
    L,
    LSing,
    LPrime,
    K,
    KSing,
}

impl FromStr for Stage {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" => Ok(Stage::Z),
            "L" => Ok(Stage::L),
            "L_sing" => Ok(Stage::LSing),
            "L_prime" => Ok(Stage::LPrime),
            "K" => Ok(Stage::K),
            "K_sing" => Ok(Stage::KSing),
            other => Err(Error::Input(format!("unknown stage `{other}` (expected Z, L, L_sing, L_prime, K or K_sing)"))),
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Stage::Z => "Z",
            Stage::L => "L",
            Stage::LSing => "L_sing",
            Stage::LPrime => "L_prime",
            Stage::K => "K",
            Stage::KSing => "K_sing",
        };
        write!(f, "{s}")
    }
}

pub fn export_stage(p: u64, k: usize, stage: Stage) -> Result<SimplicialComplex> {
    let built = build_l(p, k)?;
    let l = built.l.complex.clone();
    let l_sing = fixed_subcomplex(&built.l);
    Ok(match stage {
        Stage::Z => built.z_simplicial.complex,
        Stage::L => l,
        Stage::LSing => l_sing,
        Stage::LPrime => build_k_sing(&l, &l_sing)?.l_prime,
        Stage::K => build_k_sing(&l, &l_sing)?.k,
        Stage::KSing => build_k_sing(&l, &l_sing)?.k_sing,
    })
}
