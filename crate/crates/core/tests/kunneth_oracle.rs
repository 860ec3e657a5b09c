mod common;

use common::rng;
use common::structure::{brute_force, primary, tensor_oracle, tor_oracle, Primary};
use coxdim::product::{
    free_product_gd, kunneth_step, product_dimension_report, tensor, tor1, BandEntry, BandedGradedGroup, FactorProfile,
    Regime,
};
use coxdim::FgAbelianGroup;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use proptest::prelude::*;
use rand::Rng;

fn group(rank: usize, orders: &[u64]) -> FgAbelianGroup {
    FgAbelianGroup::new(rank, orders.iter().map(|&n| BigUint::from(n)))
}

fn arb_group(max_factor: u64) -> impl Strategy<Value = FgAbelianGroup> {
    (0usize..3, proptest::collection::vec(1..=max_factor, 0..4)).prop_map(|(r, t)| group(r, &t))
}

#[test]
fn cyclic_pairs_up_to_200() {
    for n in 1..=200u64 {
        for m in 1..=200u64 {
            let (a, b) = (FgAbelianGroup::cyclic(n), FgAbelianGroup::cyclic(m));
            let g = FgAbelianGroup::cyclic(n.gcd(&m));
            let t = tensor(&a, &b);
            assert_eq!(t, g, "Z/{n} ⊗ Z/{m}");
            assert_eq!(tor1(&a, &b), g, "Tor(Z/{n}, Z/{m})");
            assert_eq!(primary(&t), tensor_oracle(&primary(&a), &primary(&b)));
        }
    }
}

#[test]
fn tensor_and_tor_examples() {
    assert!(tensor(&FgAbelianGroup::cyclic(3), &FgAbelianGroup::cyclic(5)).is_trivial());
    assert!(tor1(&FgAbelianGroup::cyclic(3), &FgAbelianGroup::cyclic(5)).is_trivial());
    assert_eq!(tensor(&FgAbelianGroup::free(1), &FgAbelianGroup::cyclic(5)), FgAbelianGroup::cyclic(5));
    for g in [group(2, &[4, 6]), group(0, &[9]), FgAbelianGroup::trivial()] {
        assert!(tor1(&FgAbelianGroup::free(1), &g).is_trivial());
    }
}

proptest! {
    #[test]
    fn tensor_and_tor_match_structure_theorem(a in arb_group(200), b in arb_group(200)) {
        prop_assert_eq!(primary(&tensor(&a, &b)), tensor_oracle(&primary(&a), &primary(&b)));
        prop_assert_eq!(primary(&tor1(&a, &b)), tor_oracle(&primary(&a), &primary(&b)));
    }

    #[test]
    fn commutative_and_distributive(a in arb_group(1000), b in arb_group(1000), c in arb_group(1000)) {
        prop_assert_eq!(tensor(&a, &b), tensor(&b, &a));
        prop_assert_eq!(tor1(&a, &b), tor1(&b, &a));
        let bc = b.direct_sum(&c);
        prop_assert_eq!(tensor(&a, &bc), tensor(&a, &b).direct_sum(&tensor(&a, &c)));
        prop_assert_eq!(tor1(&a, &bc), tor1(&a, &b).direct_sum(&tor1(&a, &c)));
    }
}

fn random_group(r: &mut impl Rng) -> FgAbelianGroup {
    if r.gen_bool(0.25) {
        return FgAbelianGroup::trivial();
    }
    let torsion: Vec<u64> = (0..r.gen_range(0..3)).map(|_| r.gen_range(2..13)).collect();
    group(r.gen_range(0..3), &torsion)
}

fn known_band(groups: &[FgAbelianGroup]) -> BandedGradedGroup {
    BandedGradedGroup::new(groups.iter().cloned().map(BandEntry::known).collect())
}

fn entry_primary(e: &BandEntry) -> Primary {
    match e {
        BandEntry::Zero => Primary::default(),
        BandEntry::Known { group } => primary(group),
        BandEntry::Unknown { .. } => panic!("fully known input produced an unknown entry"),
    }
}

#[test]
fn fully_known_bands_match_brute_force() {
    let mut r = rng(2024);
    for case in 0..100 {
        let a: Vec<FgAbelianGroup> = (0..r.gen_range(1..5)).map(|_| random_group(&mut r)).collect();
        let b: Vec<FgAbelianGroup> = (0..r.gen_range(1..5)).map(|_| random_group(&mut r)).collect();
        let ours = kunneth_step(&known_band(&a), &known_band(&b));
        let expected = brute_force(&a, &b);
        assert!(ours.is_fully_known(), "case {case}");
        for (n, want) in expected.iter().enumerate() {
            assert_eq!(&entry_primary(ours.entry(n)), want, "case {case}, degree {n}");
        }
        let top = expected.iter().rposition(|g| g.rank > 0 || !g.powers.is_empty());
        assert_eq!(ours.top_nonzero(), top, "case {case}");
    }
}

#[test]
fn kunneth_is_associative_on_known_bands() {
    // only cochain-realisable bands: degree 0 is a subgroup of a free group
    let mut r = rng(77);
    let realisable = |r: &mut rand_chacha::ChaCha8Rng| {
        let mut groups: Vec<FgAbelianGroup> = (0..r.gen_range(1..4)).map(|_| random_group(r)).collect();
        groups[0] = FgAbelianGroup::free(groups[0].rank());
        known_band(&groups)
    };
    for _ in 0..50 {
        let bands: Vec<BandedGradedGroup> = (0..3).map(|_| realisable(&mut r)).collect();
        let left = kunneth_step(&kunneth_step(&bands[0], &bands[1]), &bands[2]);
        let right = kunneth_step(&bands[0], &kunneth_step(&bands[1], &bands[2]));
        assert_eq!(left, right);
    }
}

/// Hiding entries behind annihilators must never produce a claim that the
/// fully known computation contradicts.
#[test]
fn unknown_entries_give_sound_answers() {
    let mut r = rng(4242);
    for case in 0..300 {
        let a: Vec<FgAbelianGroup> = (0..r.gen_range(1..5)).map(|_| random_group(&mut r)).collect();
        let b: Vec<FgAbelianGroup> = (0..r.gen_range(1..5)).map(|_| random_group(&mut r)).collect();
        let mut hide = |g: &FgAbelianGroup| -> BandEntry {
            if r.gen_bool(0.5) {
                return BandEntry::known(g.clone());
            }
            // any multiple of the exponent is a valid annihilator
            let killed_by = match g.exponent() {
                Some(e) if r.gen_bool(0.7) => Some(e * BigUint::from(r.gen_range(1u32..4))),
                _ if g.is_finite() && r.gen_bool(0.5) => None,
                Some(_) => None,
                None => None,
            };
            BandEntry::unknown(killed_by)
        };
        let masked_a = BandedGradedGroup::new(a.iter().map(&mut hide).collect());
        let masked_b = BandedGradedGroup::new(b.iter().map(&mut hide).collect());
        let full = kunneth_step(&known_band(&a), &known_band(&b));
        let partial = kunneth_step(&masked_a, &masked_b);
        for n in 0..=full.top() {
            let actual = match full.entry(n) {
                BandEntry::Zero => FgAbelianGroup::trivial(),
                BandEntry::Known { group } => group.clone(),
                BandEntry::Unknown { .. } => unreachable!(),
            };
            match partial.entry(n) {
                BandEntry::Zero => assert!(actual.is_trivial(), "case {case} degree {n}: certified zero, actual {actual}"),
                BandEntry::Known { group } => assert_eq!(group, &actual, "case {case} degree {n}"),
                BandEntry::Unknown { killed_by: Some(k) } => {
                    assert!(actual.is_killed_by(k), "case {case} degree {n}: {actual} not killed by {k}")
                }
                BandEntry::Unknown { killed_by: None } => {}
            }
        }
    }
}

#[test]
fn band_examples() {
    let z3 = BandedGradedGroup::factor(3, FgAbelianGroup::cyclic(3));
    let z5 = BandedGradedGroup::factor(3, FgAbelianGroup::cyclic(5));
    assert_eq!(kunneth_step(&z3, &z3).entry(6), &BandEntry::Known { group: FgAbelianGroup::cyclic(3) });
    let mixed = kunneth_step(&z3, &z5);
    assert!(mixed.entry(6).is_zero());
    assert!(matches!(mixed.entry(5), BandEntry::Unknown { .. }));
    let zero = BandedGradedGroup::new(vec![BandEntry::Zero; 4]);
    assert_eq!(kunneth_step(&z3, &zero).top_nonzero(), None);
    assert_eq!(BandedGradedGroup::new(vec![BandEntry::known(FgAbelianGroup::trivial())]).entry(0), &BandEntry::Zero);
}

fn profile(d: usize, exponent: u64, mult: usize) -> FactorProfile {
    FactorProfile::cyclic(d, exponent, mult).unwrap()
}

#[test]
fn product_report_examples() {
    let r = product_dimension_report(&[profile(3, 3, 1), profile(3, 5, 1)]).unwrap();
    assert_eq!((r.vcd_upper, r.bredon_cd, r.regime), (5, 6, Regime::Coprime));
    assert_eq!(r.vcd_exact, None);
    let r = product_dimension_report(&[profile(3, 3, 2)]).unwrap();
    assert_eq!((r.vcd_exact, r.top_group.clone()), (Some(6), Some(FgAbelianGroup::cyclic(3))));
    // r classes G_{p_i}^{n_i}
    let primes = [3u64, 5, 7, 11];
    let mults = [2usize, 1, 3, 1];
    let profiles: Vec<FactorProfile> = primes.iter().zip(mults).map(|(&p, n)| profile(3, p, n)).collect();
    let r = product_dimension_report(&profiles).unwrap();
    let total: usize = mults.iter().sum();
    assert_eq!((r.vcd_upper, r.bredon_cd), (3 * total - 4 + 1, 3 * total));
    assert!(r.band_threshold <= r.vcd_upper);
    assert!(product_dimension_report(&[]).is_err());
    assert!(FactorProfile::new(3, FgAbelianGroup::free(1), 1).is_err());
    assert!(FactorProfile::cyclic(0, 3, 1).is_err());
}

#[test]
fn free_product_examples() {
    assert_eq!(free_product_gd(&[3, 3]).unwrap(), 3);
    assert_eq!(free_product_gd(&[0, 0]).unwrap(), 1);
    assert_eq!(free_product_gd(&[5]).unwrap(), 5);
    assert!(free_product_gd(&[]).is_err());
}

proptest! {
    #[test]
    fn product_report_invariants(classes in proptest::collection::vec((1usize..4, 2u64..40, 1usize..3), 1..4)) {
        let profiles: Vec<FactorProfile> = classes.iter().map(|&(d, e, m)| profile(d, e, m)).collect();
        let r = product_dimension_report(&profiles).unwrap();
        let total: usize = classes.iter().map(|&(d, _, m)| d * m).sum();
        prop_assert_eq!(r.bredon_cd, total);
        prop_assert!(r.vcd_upper <= r.bredon_cd);
        prop_assert_eq!(r.vcd_exact.is_some(), r.regime == Regime::CommonDivisor);
        match r.regime {
            Regime::Coprime => {
                prop_assert_eq!(r.vcd_upper, total - classes.len() + 1);
                prop_assert!(r.band_threshold <= r.vcd_upper);
            }
            Regime::CommonDivisor => {
                let g = classes.iter().fold(0u64, |g, &(_, e, _)| g.gcd(&e));
                let top = r.top_group.clone().unwrap();
                prop_assert_eq!(top.exponent(), Some(BigUint::from(g)));
                prop_assert_eq!(r.band_threshold, total);
            }
            Regime::Mixed => prop_assert_eq!(r.vcd_upper, r.band_threshold),
        }
    }

    #[test]
    fn free_product_is_max_with_one(gds in proptest::collection::vec(0usize..10, 1..6)) {
        let g = free_product_gd(&gds).unwrap();
        prop_assert_eq!(g, gds.iter().copied().max().unwrap().max(1));
        let (head, tail) = gds.split_at(1);
        if !tail.is_empty() {
            let folded = free_product_gd(&[free_product_gd(head).unwrap(), free_product_gd(tail).unwrap()]).unwrap();
            prop_assert_eq!(folded, g);
        }
    }
}

#[test]
fn one_is_not_an_annihilator_of_unknowns() {
    assert_eq!(BandEntry::unknown(Some(BigUint::one())), BandEntry::Zero);
}
