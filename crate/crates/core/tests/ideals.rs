use rand::seq::SliceRandom;
use rand::Rng;

use polyprod::ideals::{
    composition_identity, composition_tor_formula, hochster_check, stanley_reisner, taylor_tor, MonomialIdeal,
    TorModule, TAYLOR_CAP,
};
use polyprod::random::{random_exponents, random_proper_complex, rng};
use polyprod::{FieldKind, SimplicialComplex};

fn random_face_complex(r: &mut polyprod::random::SweepRng, m: usize) -> SimplicialComplex {
    loop {
        let k = random_proper_complex(r, m);
        if !k.is_void() {
            return k;
        }
    }
}

#[test]
fn hochster_holds_on_random_complexes() {
    let mut r = rng(11);
    for i in 0..100 {
        let m = 2 + i % 4;
        let k = random_face_complex(&mut r, m);
        let ones = vec![1; m];
        let exps = random_exponents(&mut r, m, 3);
        for field in [FieldKind::Rationals, FieldKind::Prime(2)] {
            for e in [&ones, &exps] {
                let (left, right, ok) = hochster_check(&k, e, field).unwrap();
                assert!(ok, "{:?} r={e:?} over {field}: {:?} vs {:?}", k.facets(), left, right);
            }
        }
    }
}

#[test]
fn tor_ignores_generator_order() {
    let mut r = rng(3);
    for _ in 0..30 {
        let k = random_face_complex(&mut r, 5);
        let exps = random_exponents(&mut r, 5, 3);
        let ideal = stanley_reisner(&k, &exps).unwrap();
        let mut shuffled = ideal.generators.clone();
        shuffled.shuffle(&mut r);
        let other = MonomialIdeal::new(ideal.num_vars, shuffled).unwrap();
        for module in [TorModule::Ideal, TorModule::Quotient] {
            assert_eq!(
                taylor_tor(&ideal, module, FieldKind::Prime(2)).unwrap(),
                taylor_tor(&other, module, FieldKind::Prime(2)).unwrap()
            );
        }
    }
}

#[test]
fn ideal_and_quotient_tor_differ_by_one_step() {
    let square = SimplicialComplex::from_facets(4, &[0b0011, 0b0110, 0b1100, 0b1001]).unwrap();
    let ideal = stanley_reisner(&square, &[1, 2, 1, 2]).unwrap();
    let a = taylor_tor(&ideal, TorModule::Ideal, FieldKind::Rationals).unwrap();
    let b = taylor_tor(&ideal, TorModule::Quotient, FieldKind::Rationals).unwrap();
    for ((i, deg), d) in &a.entries {
        assert_eq!(b.entries[&(i + 1, deg.clone())], *d);
    }
    assert_eq!(b.entries.len(), a.entries.len() + 1);
}

#[test]
fn composition_ideals_match_face_ideals_of_the_dual_composition() {
    let mut r = rng(21);
    let mut tor_checked = 0;
    for i in 0..50 {
        let m = 1 + i % 3;
        let k = polyprod::random::random_complex(&mut r, m);
        let ns: Vec<usize> = (0..m).map(|_| r.gen_range(1..=3)).collect();
        let ls: Vec<SimplicialComplex> = ns.iter().map(|&n| random_face_complex(&mut r, n)).collect();
        let rs: Vec<Vec<u32>> = ns.iter().map(|&n| random_exponents(&mut r, n, 2)).collect();
        let (left, right) = composition_identity(&k, &ls, &rs).unwrap();
        assert!(left.same_generators(&right), "{:?} {:?}", k.facets(), ls);
        if left.generators.len() <= 14 {
            let tor = taylor_tor(&left, TorModule::Ideal, FieldKind::Prime(2)).unwrap();
            assert_eq!(
                tor.totals(),
                composition_tor_formula(&k, &ls, &rs, FieldKind::Prime(2)),
                "{:?} {:?}",
                k.facets(),
                ls
            );
            tor_checked += 1;
        }
    }
    assert!(tor_checked >= 30, "{tor_checked}");
}

#[test]
fn taylor_refuses_large_ideals() {
    let n = TAYLOR_CAP + 1;
    let gens: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect();
    let ideal = MonomialIdeal::new(n, gens).unwrap();
    assert!(matches!(
        taylor_tor(&ideal, TorModule::Ideal, FieldKind::Prime(2)),
        Err(polyprod::Error::Refused(_))
    ));
}
