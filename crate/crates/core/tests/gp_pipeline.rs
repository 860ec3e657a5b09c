mod common;

use common::{complex, cycle};
use coxdim::gp::{
    build_k_sing, build_l, build_quotient_z, export_stage, fixed_subcomplex, verify_gp, EquivariantComplex, Stage,
};
use coxdim::homology::{cohomology, cohomology_groups, relative_cohomology};
use coxdim::racg::{check_hyperbolic, find_induced_square, induced_square_count};
use coxdim::{FgAbelianGroup, SimplicialComplex};

fn faces(k: &SimplicialComplex) -> Vec<usize> {
    (0..=k.dim().max(0) as usize).map(|d| k.face_count(d)).collect()
}

#[test]
fn quotient_cells_and_cohomology() {
    for p in [3u64, 5, 7] {
        let z = build_quotient_z(p).unwrap();
        let n = p as usize;
        // o and one boundary vertex; one boundary loop and p spokes; p triangles
        assert_eq!((z.complex.cell_count(0), z.complex.cell_count(1), z.complex.cell_count(2)), (2, n + 1, n));
        assert!(cohomology(&z.complex, 1, false).is_trivial());
        assert_eq!(cohomology(&z.complex, 2, false), FgAbelianGroup::cyclic(p));
    }
    assert!(build_quotient_z(9).is_err());
    assert!(build_quotient_z(2).is_err());
}

#[test]
fn subdivision_stages() {
    let built = build_l(3, 2).unwrap();
    assert!(!built.stages[0].simplicial);
    assert_eq!(built.stages[0].flag, None);
    assert!(built.stages[1].simplicial);
    assert_eq!(built.stages[1].flag, Some(true));
    assert_eq!(built.simplicial_after, 2);
    assert!(built.l.complex.is_flag());
    assert_eq!(built.l.order(), 3);
    assert!(build_l(3, 1).is_err());
    assert!(build_l(3, 0).is_err());
}

#[test]
fn subdivided_quotient_keeps_its_cohomology() {
    let built = build_l(3, 2).unwrap();
    let l = &built.l.complex;
    assert_eq!(cohomology_groups(l, true), cohomology_groups(&built.z.complex, true));
    assert_eq!(cohomology(l, 2, true), FgAbelianGroup::cyclic(3));
    assert!(cohomology(l, 1, false).is_trivial());
}

#[test]
fn action_is_simplicial_of_prime_order() {
    let built = build_l(5, 2).unwrap();
    let ec = &built.l;
    for d in 0..=ec.complex.dim() as usize {
        for s in ec.complex.faces(d) {
            assert!(ec.complex.contains(&ec.image(s)));
        }
    }
    let g = ec.generator();
    let mut v: Vec<u32> = (0..g.len() as u32).collect();
    for _ in 0..5 {
        v = v.iter().map(|&x| g[x as usize]).collect();
    }
    assert!(v.iter().enumerate().all(|(i, &x)| i as u32 == x));
    assert!(g.iter().enumerate().any(|(i, &x)| i as u32 != x));
}

#[test]
fn singular_locus_is_circle_and_point() {
    let built = build_l(3, 2).unwrap();
    let sing = fixed_subcomplex(&built.l);
    assert_eq!(cohomology(&sing, 0, false), FgAbelianGroup::free(2));
    assert_eq!(cohomology(&sing, 1, false), FgAbelianGroup::free(1));
    assert_eq!(sing.connected_components().len(), 2);
    sing.check_subcomplex_of(&built.l.complex).unwrap();
}

#[test]
fn fixed_set_commutes_with_subdivision() {
    let built = build_l(3, 2).unwrap();
    let (finer, _) = built.l.subdivide();
    let direct = fixed_subcomplex(&finer);
    let subdivided = fixed_subcomplex(&built.l).barycentric_subdivision().complex;
    assert_eq!(faces(&direct), faces(&subdivided));
    assert_eq!(cohomology_groups(&direct, false), cohomology_groups(&subdivided, false));
}

#[test]
fn trivial_action_fixes_everything() {
    for k in [cycle(5), complex(&[&["a", "b", "c"], &["c", "d"]])] {
        assert_eq!(fixed_subcomplex(&EquivariantComplex::trivial(k.clone())), k);
    }
}

#[test]
fn invalid_actions_are_rejected() {
    let c = cycle(4);
    // not a permutation
    assert!(EquivariantComplex::new(c.clone(), 2, vec![0, 0, 1, 2]).is_err());
    // rotation has order 4, not 2
    let idx = |n: &str| c.index_of(n).unwrap();
    let rot = vec![idx("c1"), idx("c2"), idx("c3"), idx("c0")];
    let mut generator = vec![0; 4];
    for (from, to) in ["c0", "c1", "c2", "c3"].iter().zip(rot) {
        generator[idx(from) as usize] = to;
    }
    assert!(EquivariantComplex::new(c.clone(), 2, generator.clone()).is_err());
    assert!(EquivariantComplex::new(c.clone(), 4, generator).is_ok());
    // swapping two adjacent vertices of a 4-cycle breaks an edge
    let mut swap: Vec<u32> = (0..4).collect();
    swap.swap(idx("c0") as usize, idx("c1") as usize);
    assert!(EquivariantComplex::new(c, 2, swap).is_err());
}

#[test]
fn k_and_k_sing() {
    let built = build_l(3, 2).unwrap();
    let l = &built.l.complex;
    let sing = fixed_subcomplex(&built.l);
    let ks = build_k_sing(l, &sing).unwrap();
    ks.k_sing.check_subcomplex_of(&ks.k).unwrap();
    assert!(cohomology_groups(&ks.k, true).iter().all(FgAbelianGroup::is_trivial));
    let h2 = cohomology(&ks.k_sing, 2, false);
    assert!(h2.rank() >= 1);
    assert_eq!(relative_cohomology(&ks.k, &ks.k_sing, 3).unwrap(), h2);
    assert_eq!(ks.l_prime.vertex_count(), l.simplex_count());
    let stranger = complex(&[&["nowhere"]]);
    assert!(build_k_sing(l, &stranger).is_err());
    // the cone over the empty complex is the apex alone
    let ks = build_k_sing(&cycle(4), &SimplicialComplex::empty()).unwrap();
    assert_eq!(ks.k_sing.vertex_count(), ks.l_prime.vertex_count() + 1);
    assert_eq!(ks.k_sing.connected_components().len(), 2);
}

#[test]
fn exported_stages() {
    let z = export_stage(3, 2, Stage::Z).unwrap();
    assert_eq!(cohomology(&z, 2, false), FgAbelianGroup::cyclic(3));
    let l = export_stage(3, 2, Stage::L).unwrap();
    assert!(l.is_flag());
    assert_eq!(export_stage(3, 2, Stage::LSing).unwrap().connected_components().len(), 2);
    assert_eq!("K_sing".parse::<Stage>().unwrap(), Stage::KSing);
    assert!("M".parse::<Stage>().is_err());
    for s in [Stage::Z, Stage::L, Stage::LSing, Stage::LPrime, Stage::K, Stage::KSing] {
        assert_eq!(s.to_string().parse::<Stage>().unwrap(), s);
    }
}

/// In any barycentric subdivision, an interior edge `uv` of two triangles
/// `uvw`, `uvx` gives the induced square `u - (uvw) - v - (uvx) - u`: the two
/// triangle barycentres are not adjacent and neither are `u` and `v`.
#[test]
fn shared_edge_forces_an_induced_square() {
    let two = complex(&[&["u", "v", "w"], &["u", "v", "x"]]);
    for k in 1..=3 {
        let mut s = two.clone();
        for _ in 0..k {
            s = s.barycentric_subdivision().complex;
        }
        let g = s.one_skeleton();
        assert!(!check_hyperbolic(&g), "sd^{k}");
        assert!(find_induced_square(&g).is_some());
    }
    let sd = two.barycentric_subdivision().complex;
    let g = sd.one_skeleton();
    let square = ["(u)", "(u,v,w)", "(v)", "(u,v,x)"];
    let idx: Vec<usize> = square.iter().map(|n| sd.index_of(n).unwrap() as usize).collect();
    for i in 0..4 {
        assert!(g.is_adjacent(idx[i], idx[(i + 1) % 4]));
    }
    assert!(!g.is_adjacent(idx[0], idx[2]) && !g.is_adjacent(idx[1], idx[3]));
    assert!(induced_square_count(&g) >= 1);
}

#[test]
fn verification_report_small() {
    let r = verify_gp(3, 2).unwrap();
    assert_eq!((r.h1_z.clone(), r.h2_z.clone()), (FgAbelianGroup::trivial(), FgAbelianGroup::cyclic(3)));
    assert!(r.claims.quotient_cohomology && r.claims.subdivision_invariance && r.claims.singular_locus);
    assert!(r.claims.top_cohomology && r.claims.relative_agreement && r.claims.mayer_vietoris);
    assert_eq!(r.sizes.z_cells, vec![2, 4, 3]);
    // the nerve of a surface subdivision always contains induced squares
    assert!(r.induced_squares > 0);
    assert!(!r.certificate.hyperbolic && !r.claims.graph_conditions && !r.verdict);
    assert_eq!(r.verdict, r.claims.all());
    assert!(verify_gp(4, 3).is_err());
}
