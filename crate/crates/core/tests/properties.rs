use polyprod::bits::{self, Mask};
use polyprod::chain::{homology, simplicial_chain, ChainVariant};
use polyprod::duality::{all_certificates, dual_complex, dual_local_identity, involution_holds};
use polyprod::ideals::{hochster_sum, stanley_reisner, taylor_tor, MonomialIdeal, TorModule};
use polyprod::io::{format_complex, parse_complex};
use polyprod::total::{IndexPair, Universe};
use polyprod::{Coefficients, FieldKind, SimplicialComplex};
use proptest::prelude::*;

fn complex(max_m: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_m).prop_flat_map(|m| {
        let full = bits::full(m);
        (Just(m), prop::collection::vec(0..=full, 0..5), any::<bool>()).prop_map(move |(m, facets, void)| {
            if void && facets.is_empty() {
                SimplicialComplex::void(m)
            } else {
                SimplicialComplex::from_facets(m, &facets).unwrap()
            }
        })
    })
}

fn complex_with_pair(max_m: usize) -> impl Strategy<Value = (SimplicialComplex, IndexPair)> {
    complex(max_m).prop_flat_map(|k| {
        let m = k.ground_size();
        // each vertex goes to σ, ω or neither; ω is forced nonempty below
        (Just(k), prop::collection::vec(0u8..3, m), 0..m).prop_map(|(k, roles, forced)| {
            let mut sigma: Mask = 0;
            let mut omega: Mask = 1 << forced;
            for (i, &r) in roles.iter().enumerate() {
                if i == forced {
                    continue;
                }
                match r {
                    0 => sigma |= 1 << i,
                    1 => omega |= 1 << i,
                    _ => {}
                }
            }
            (k, IndexPair::new(sigma, omega).unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_is_an_involution(k in complex(6)) {
        prop_assert_eq!(dual_complex(&dual_complex(&k).unwrap()).unwrap(), k);
    }

    #[test]
    fn dual_faces_are_complements_of_nonfaces(k in complex(6)) {
        let m = k.ground_size();
        let d = dual_complex(&k).unwrap();
        for t in bits::submasks(bits::full(m)) {
            prop_assert_eq!(d.contains(t), !k.contains(bits::full(m) & !t));
        }
    }

    #[test]
    fn dual_swaps_union_and_intersection(k in complex(5), seed in any::<u64>()) {
        let m = k.ground_size();
        let facets: Vec<Mask> = (0..3).map(|i| (seed >> (i * 8)) as Mask & bits::full(m)).collect();
        let l = SimplicialComplex::from_facets(m, &facets).unwrap();
        let lhs = dual_complex(&k.union(&l).unwrap()).unwrap();
        let rhs = dual_complex(&k).unwrap().intersection(&dual_complex(&l).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn local_complexes_dualize((k, p) in complex_with_pair(6)) {
        prop_assert!(dual_local_identity(&k, p).unwrap().equal);
    }

    #[test]
    fn text_format_round_trips(k in complex(8)) {
        prop_assert_eq!(parse_complex(&format_complex(&k)).unwrap(), k);
    }

    #[test]
    fn euler_characteristic_matches_face_count(k in complex(7)) {
        let h = homology(&simplicial_chain(&k, ChainVariant::Reduced, Coefficients::Rationals));
        let from_homology: i64 = h.groups.iter().map(|g| if g.degree % 2 == 0 { 1 } else { -1 } * g.free_rank as i64).sum();
        // ∅ sits in degree −1
        let from_faces: i64 = k.faces().iter().map(|&f| if bits::size(f) % 2 == 1 { 1 } else { -1 }).sum();
        prop_assert_eq!(from_homology, from_faces);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn duality_certificates_match(k in complex(4)) {
        for c in all_certificates(&k, Coefficients::Integers, false).unwrap() {
            prop_assert!(c.matched, "block {}", c.pair);
        }
    }

    #[test]
    fn explicit_certificates_are_invertible(k in complex(4)) {
        for c in all_certificates(&k, Coefficients::Prime(3), true).unwrap() {
            prop_assert!(c.matched);
            prop_assert!(c.matrices.unwrap().iter().all(|m| m.invertible));
        }
    }

    #[test]
    fn certificates_are_involutive((k, p) in complex_with_pair(4)) {
        prop_assert!(involution_holds(&k, p, Coefficients::Integers).unwrap());
    }

    #[test]
    fn tor_ignores_generator_order(k in complex(4), r in prop::collection::vec(1u32..3, 4), rot in 0usize..8) {
        let m = k.ground_size();
        prop_assume!(!k.is_void() && !k.is_simplex_on(bits::full(m)));
        let ideal = stanley_reisner(&k, &r[..m]).unwrap();
        let mut gens = ideal.generators.clone();
        if !gens.is_empty() {
            let n = gens.len();
            gens.rotate_left(rot % n);
            gens.reverse();
        }
        let shuffled = MonomialIdeal::new(m, gens).unwrap();
        for module in [TorModule::Ideal, TorModule::Quotient] {
            prop_assert_eq!(
                taylor_tor(&ideal, module, FieldKind::Prime(2)).unwrap(),
                taylor_tor(&shuffled, module, FieldKind::Prime(2)).unwrap()
            );
        }
    }

    #[test]
    fn tor_equals_block_sum(k in complex(4), r in prop::collection::vec(1u32..3, 4)) {
        let m = k.ground_size();
        prop_assume!(!k.is_void() && !k.is_simplex_on(bits::full(m)));
        let ideal = stanley_reisner(&k, &r[..m]).unwrap();
        prop_assert_eq!(
            taylor_tor(&ideal, TorModule::Ideal, FieldKind::Rationals).unwrap(),
            hochster_sum(&k, &r[..m], FieldKind::Rationals)
        );
    }

    #[test]
    fn universes_partition_blocks(m in 1usize..6) {
        let all = Universe::All.pairs(m);
        let left = Universe::Left.pairs(m);
        let right = Universe::Right.pairs(m);
        prop_assert_eq!(all.len(), 3usize.pow(m as u32));
        prop_assert_eq!(left.len(), all.len() - 2usize.pow(m as u32));
        prop_assert_eq!(right.len(), 2usize.pow(m as u32));
    }
}
