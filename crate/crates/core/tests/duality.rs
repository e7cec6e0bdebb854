use rand::Rng;

use polyprod::bits;
use polyprod::duality::{
    all_certificates, composition_dual_identity, dual_complex, dual_local_identity, gamma_certificate,
    gamma_tensor_compat, involution_holds, is_scalar_unit,
};
use polyprod::polyhedral::{composition_complex, nested_join_identity};
use polyprod::random::{random_complex, random_pair, random_proper_complex, rng, SweepRng};
use polyprod::total::{IndexPair, Universe};
use polyprod::{Coefficients, FieldKind, PairSequence, SimplicialComplex};

fn factors(r: &mut SweepRng, m: usize) -> Vec<SimplicialComplex> {
    (0..m)
        .map(|_| {
            let n = r.gen_range(1..=3);
            random_proper_complex(r, n)
        })
        .collect()
}

#[test]
fn certificates_match_on_random_complexes_over_z() {
    let mut r = rng(5);
    for i in 0..60 {
        let m = 1 + i % 5;
        let k = random_complex(&mut r, m);
        for p in Universe::Left.pairs(m) {
            assert!(dual_local_identity(&k, p).unwrap().equal, "{:?} {p}", k.facets());
        }
        for c in all_certificates(&k, Coefficients::Integers, false).unwrap() {
            assert!(c.matched, "{:?} {}: {:?} vs {:?}", k.facets(), c.pair, c.left, c.right);
        }
    }
}

#[test]
fn explicit_maps_are_invertible_over_fields() {
    let mut r = rng(8);
    let mut nonzero = 0;
    for i in 0..40 {
        let m = 2 + i % 3;
        let k = random_complex(&mut r, m);
        for coeffs in [Coefficients::Rationals, Coefficients::Prime(2), Coefficients::Prime(3)] {
            for c in all_certificates(&k, coeffs, true).unwrap() {
                assert!(c.matched, "{:?} {} over {coeffs}", k.facets(), c.pair);
                nonzero += c.matrices.unwrap().len();
            }
        }
    }
    assert!(nonzero > 100, "{nonzero}");
}

#[test]
fn square_top_class_maps_to_two_edges() {
    let square = SimplicialComplex::from_facets(4, &[0b0011, 0b0110, 0b1100, 0b1001]).unwrap();
    let c = gamma_certificate(
        &square,
        IndexPair {
            sigma: 0,
            omega: 0b1111,
        },
        Coefficients::Rationals,
        true,
    )
    .unwrap();
    assert!(c.matched);
    let ms = c.matrices.unwrap();
    assert_eq!(ms.len(), 1);
    assert_eq!((ms[0].degree, ms[0].target_degree), (2, 1));
    assert!(is_scalar_unit(&ms[0].rows));
}

#[test]
fn nonface_sigma_blocks_vanish_on_both_sides() {
    let square = SimplicialComplex::from_facets(4, &[0b0011, 0b0110, 0b1100, 0b1001]).unwrap();
    let c = gamma_certificate(
        &square,
        IndexPair {
            sigma: 0b0101,
            omega: 0b0010,
        },
        Coefficients::Integers,
        false,
    )
    .unwrap();
    assert!(c.matched && c.left.is_zero() && c.right.is_zero());
}

#[test]
fn special_complexes_pair_with_their_duals() {
    for s in 1..16u32 {
        let candidates = [
            SimplicialComplex::boundary(4, s),
            SimplicialComplex::simplex(4, s),
            SimplicialComplex::empty(4),
            SimplicialComplex::void(4),
        ];
        for k in candidates {
            for c in all_certificates(&k, Coefficients::Integers, false).unwrap() {
                assert!(c.matched, "{:?} {}", k.facets(), c.pair);
            }
        }
    }
    let sphere = SimplicialComplex::boundary(4, 0b1111);
    assert_eq!(dual_complex(&sphere).unwrap(), SimplicialComplex::empty(4));
}

#[test]
fn certificates_are_involutive() {
    let mut r = rng(13);
    for i in 0..40 {
        let m = 1 + i % 4;
        let k = random_complex(&mut r, m);
        for p in Universe::Left.pairs(m) {
            assert!(
                involution_holds(&k, p, Coefficients::Integers).unwrap(),
                "{:?} {p}",
                k.facets()
            );
        }
    }
}

#[test]
fn composition_duals_agree() {
    let mut r = rng(17);
    for i in 0..100 {
        let m = 1 + i % 3;
        let k = random_complex(&mut r, m);
        let ls: Vec<SimplicialComplex> = factors(&mut r, m);
        let (left, right) = composition_dual_identity(&k, &ls).unwrap();
        assert_eq!(left, right, "{:?} {:?}", k.facets(), ls);
    }
}

#[test]
fn composition_dual_examples() {
    let s0 = SimplicialComplex::boundary(2, 0b11);
    let (left, right) = composition_dual_identity(&s0, &[s0.clone(), s0.clone()]).unwrap();
    assert_eq!(left, SimplicialComplex::empty(4));
    assert_eq!(right, left);
    let full = SimplicialComplex::simplex(2, 0b11);
    let (left, right) = composition_dual_identity(&full, &[s0.clone(), s0.clone()]).unwrap();
    assert!(left.is_void() && right.is_void());
    // {∅, {1}} on [2] is self-dual, and so is its composition with itself.
    let point = SimplicialComplex::from_facets(2, &[0b01]).unwrap();
    assert_eq!(dual_complex(&point).unwrap(), point);
    let z = composition_complex(&point, &[point.clone(), point.clone()]).unwrap();
    assert_eq!(dual_complex(&z).unwrap(), z);
}

#[test]
fn nested_joins_agree() {
    let mut r = rng(19);
    for i in 0..100 {
        let m = 1 + i % 3;
        let k = random_complex(&mut r, m);
        let mut outer = Vec::new();
        let mut inner = Vec::new();
        for _ in 0..m {
            let n = r.gen_range(1..=3);
            outer.push(random_pair(&mut r, n));
            inner.push(
                PairSequence::new(
                    (0..n)
                        .map(|_| {
                            let size = r.gen_range(1..=2);
                            random_pair(&mut r, size)
                        })
                        .collect(),
                )
                .unwrap(),
            );
        }
        let outer = PairSequence::new(outer).unwrap();
        let (left, right) = nested_join_identity(&k, &outer, &inner).unwrap();
        assert_eq!(left, right, "{:?}", k.facets());
    }
}

#[test]
fn gamma_is_compatible_with_composition() {
    let s0 = SimplicialComplex::boundary(2, 0b11);
    let rep = gamma_tensor_compat(&s0, &[s0.clone(), s0.clone()], FieldKind::Rationals).unwrap();
    assert!(rep.holds && rep.nonzero_blocks > 0);
    let z = composition_complex(&s0, &[s0.clone(), s0.clone()]).unwrap();
    let c = gamma_certificate(
        &z,
        IndexPair {
            sigma: 0,
            omega: bits::full(4),
        },
        Coefficients::Rationals,
        true,
    )
    .unwrap();
    let ms = c.matrices.unwrap();
    assert_eq!(ms.len(), 1);
    assert_eq!(ms[0].rows.len(), 1);
    assert!(is_scalar_unit(&ms[0].rows));

    let mut r = rng(23);
    for i in 0..30 {
        let m = 1 + i % 2;
        let k = random_complex(&mut r, m);
        let ls: Vec<SimplicialComplex> = factors(&mut r, m);
        for field in [FieldKind::Rationals, FieldKind::Prime(2)] {
            assert!(
                gamma_tensor_compat(&k, &ls, field).unwrap().holds,
                "{:?} {:?}",
                k.facets(),
                ls
            );
        }
    }
}
