//! Cross-module properties: the interplay of generated sets, orderings,
//! built maps and their certified symmetries.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wada_core::dessin::build_dessin_with_limit;
use wada_core::ordering::{
    find_compatible_ordering, is_frobenius_compatible, OrderedDifferenceSet, DEFAULT_SEARCH_BUDGET,
};
use wada_core::{
    check_automorphism, diffset, fixtures, generate_singer_set, space_params, DifferenceSet,
    VertexMap,
};

/// The cyclic translation group acts on every built dessin: each shift is an
/// automorphism, and every nonzero shift moves all vertices and all edges.
#[test]
fn translation_group_acts_freely_on_every_dessin() {
    for (order, l) in [
        (vec![1u64, 2, 4], 7u64),
        (fixtures::d5_mod_31(), 31),
        (fixtures::d5_sorted_mod_31(), 31),
        (fixtures::d4_mod_40(), 40),
    ] {
        let o = OrderedDifferenceSet::from_order(order, l).unwrap();
        let d = build_dessin_with_limit(&o, 1_500_000).unwrap();
        for a in 0..l {
            let report = check_automorphism(&d, &VertexMap::affine(1, a)).unwrap();
            assert!(report.is_automorphism, "shift by {a} mod {l}");
            if a == 0 {
                assert_eq!(report.fixed_edges, d.edge_count());
            } else {
                assert!(report.fixed_vertices.is_empty());
                assert_eq!(report.fixed_edges, 0);
                // On a Wada dessin every cell meets every vertex, so the
                // translation stabilizes each cell while moving its boundary.
                // Short cells only see one difference-coset of vertices and
                // genuinely migrate.
                if d.is_wada().wada {
                    assert!(report.cell_orbit_lengths.iter().all(|&len| len == 1));
                }
            }
        }
    }
}

/// Block-compatible orderings and the multiplier automorphism come in a
/// package: one holds iff the other does, across found orderings and random
/// shuffles alike.
#[test]
fn block_compatibility_matches_certification() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for (m, p, e) in [(2u32, 2u64, 1u32), (4, 2, 1), (2, 5, 1), (4, 3, 1)] {
        let params = space_params(m, p, e).unwrap();
        let set = generate_singer_set(&params).unwrap();
        let f = params.f as u64;

        let found = find_compatible_ordering(&set, params.p, f, true, DEFAULT_SEARCH_BUDGET)
            .unwrap()
            .expect("compatible ordering exists for these spaces");
        let d = build_dessin_with_limit(&found, 1_500_000).unwrap();
        let sigma = VertexMap::affine(params.p, 0);
        assert!(check_automorphism(&d, &sigma).unwrap().is_automorphism);

        // Random orderings: whenever the block checker rejects, the dessin
        // check must reject too, and vice versa.
        let mut elements = set.elements().to_vec();
        for _ in 0..10 {
            elements.shuffle(&mut rng);
            let o = OrderedDifferenceSet::new(set.clone(), elements.clone()).unwrap();
            let compatible = is_frobenius_compatible(&o, params.p, f)
                .unwrap()
                .is_frobenius();
            let d = build_dessin_with_limit(&o, 1_500_000).unwrap();
            let certified = check_automorphism(&d, &sigma).unwrap().is_automorphism;
            assert_eq!(compatible, certified, "P^{m}(F_{}) shuffle", params.n);
        }
    }
}

/// Shifting by a fixed vertex keeps the whole analysis pipeline consistent:
/// the shifted sets verify, stay multiplier-fixed, and share orbit lengths.
#[test]
fn shift_family_members_are_full_peers() {
    let params = space_params(3, 3, 1).unwrap();
    let set = generate_singer_set(&params).unwrap();
    let family = diffset::frobenius_shift_family(&set, 3).unwrap();
    assert_eq!(family.len(), 2);
    let mut all_lengths = Vec::new();
    for member in &family {
        assert_eq!(member.lambda(), set.lambda());
        let dec = diffset::frobenius_orbits(member, 3, 4).unwrap();
        let mut lengths = dec.lengths();
        lengths.sort_unstable();
        all_lengths.push(lengths);
    }
    assert_eq!(all_lengths[0], all_lengths[1]);
}

/// Equivalence transports the whole difference-set structure: lambda and
/// verification status survive any t*D + s with t a unit.
#[test]
fn equivalence_transports_structure() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let sets = [
        DifferenceSet::new(fixtures::d5_mod_31(), 31).unwrap(),
        DifferenceSet::new(fixtures::d5_mod_121(), 121).unwrap(),
    ];
    for set in &sets {
        let v = set.modulus();
        for _ in 0..25 {
            let t = loop {
                let t = 1 + rand::Rng::gen_range(&mut rng, 0..v - 1);
                if wada_core::util::gcd(t, v) == 1 {
                    break t;
                }
            };
            let s = rand::Rng::gen_range(&mut rng, 0..v);
            let image = diffset::transform(set, t, s).unwrap();
            assert_eq!(image.lambda(), set.lambda());
            let (wt, ws) = diffset::equivalent(set, &image).expect("witness exists");
            assert_eq!(diffset::transform(set, wt, ws).unwrap(), image);
        }
    }
}

/// The end-to-end pipeline on a composite-modulus space: generated set,
/// searched ordering, built map, certified group — all in one pass.
#[test]
fn pipeline_p4_f3_end_to_end() {
    let params = space_params(4, 3, 1).unwrap();
    let set = generate_singer_set(&params).unwrap();
    assert_eq!(set.len(), 40);
    let ordering = find_compatible_ordering(&set, 3, 5, true, DEFAULT_SEARCH_BUDGET)
        .unwrap()
        .expect("ordering exists");
    let d = build_dessin_with_limit(&ordering, 1_500_000).unwrap();
    assert_eq!(d.cells().len(), 40);
    assert!(d.is_wada().wada);
    assert!(d.is_uniform());
    let sig = d.signature();
    assert_eq!((sig.0, sig.1, sig.2), (40, 40, 121));
    // chi = 2l - ql + q for a Wada dessin.
    assert_eq!(d.euler_characteristic(), 2 * 121 - 40 * 121 + 40);

    let report = wada_core::frobenius_group_report(&d, 3, 5).unwrap();
    assert_eq!(report.block_count, Some(8));
    for power in &report.powers {
        assert_eq!(power.fixed_edges, 0);
        assert_eq!(power.cell_orbit_lengths.len(), 8);
        assert!(power.cell_orbit_lengths.iter().all(|&len| len == 5));
    }
}

/// Published ordering against generated ordering: equivalent sets with
/// compatible orderings produce dessins with identical numerical invariants.
#[test]
fn published_and_generated_orderings_agree_on_invariants() {
    let published = OrderedDifferenceSet::from_order(fixtures::d5_mod_31(), 31).unwrap();
    let d1 = build_dessin_with_limit(&published, 1_500_000).unwrap();

    let params = space_params(4, 2, 1).unwrap();
    let set = generate_singer_set(&params).unwrap();
    let found = find_compatible_ordering(&set, 2, 5, true, DEFAULT_SEARCH_BUDGET)
        .unwrap()
        .unwrap();
    let d2 = build_dessin_with_limit(&found, 1_500_000).unwrap();

    assert_eq!(d1.cells().len(), d2.cells().len());
    assert_eq!(d1.signature(), d2.signature());
    assert_eq!(d1.genus(), d2.genus());
    assert_eq!(d1.is_wada().wada, d2.is_wada().wada);
}
