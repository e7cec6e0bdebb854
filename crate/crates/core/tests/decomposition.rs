use polyprod::chain::{homology, simplicial_chain, ChainVariant, HomologySummary};
use polyprod::complex::all_complexes;
use polyprod::decomposition::{
    decompose, decompose_over, disk_pair_closed_form, join_total_homology, sphere_pair_closed_form, split_summary,
    Flavor,
};
use polyprod::io::{cone_pair, disk_pair, sphere_pair};
use polyprod::polyhedral::{composition_complex, polyhedral_join, polyhedral_product_complex};
use polyprod::random::{random_complex, random_pair, rng};
use polyprod::total::{total_homology, IndexPair, Universe};
use polyprod::{Coefficients, PairSequence, SimplicialComplex};
use rand::Rng;

const Z: Coefficients = Coefficients::Integers;

fn direct_product(k: &SimplicialComplex, pairs: &PairSequence) -> HomologySummary {
    homology(&simplicial_chain(
        &polyhedral_product_complex(k, pairs).unwrap(),
        ChainVariant::Plain,
        Z,
    ))
}

fn direct_join(k: &SimplicialComplex, pairs: &PairSequence) -> HomologySummary {
    homology(&simplicial_chain(
        &polyhedral_join(k, pairs).unwrap(),
        ChainVariant::Suspended,
        Z,
    ))
}

#[test]
fn disk1_products_match_decomposition() {
    let mut r = rng(11);
    for _ in 0..40 {
        let m = r.gen_range(2..=3);
        let k = random_complex(&mut r, m);
        let pairs = PairSequence::new(vec![disk_pair(1); m]).unwrap();
        let direct = direct_product(&k, &pairs);
        assert_eq!(decompose(&k, &pairs, Flavor::Product, Z).unwrap().total, direct);
        assert_eq!(disk_pair_closed_form(&k, 1, Z).unwrap().total, direct);
    }
}

#[test]
fn catalog_pairs_match_direct_models() {
    let mut r = rng(12);
    let l = SimplicialComplex::boundary(2, 0b11);
    let catalog = [disk_pair(1), disk_pair(2), cone_pair(&l).unwrap()];
    for _ in 0..20 {
        let m = r.gen_range(1..=2);
        let k = random_complex(&mut r, m);
        let entries: Vec<_> = (0..m).map(|_| catalog[r.gen_range(0..catalog.len())].clone()).collect();
        let pairs = PairSequence::new(entries).unwrap();
        assert_eq!(
            decompose(&k, &pairs, Flavor::Product, Z).unwrap().total,
            direct_product(&k, &pairs)
        );
        assert_eq!(
            decompose(&k, &pairs, Flavor::Join, Z).unwrap().total,
            direct_join(&k, &pairs)
        );
    }
}

#[test]
fn random_pairs_join_flavor() {
    let mut r = rng(13);
    let mut checked = 0;
    while checked < 40 {
        let m = r.gen_range(1..=2);
        let k = random_complex(&mut r, m);
        let entries: Vec<_> = (0..m)
            .map(|_| {
                let n = r.gen_range(1..=3);
                random_pair(&mut r, n)
            })
            .collect();
        let pairs = PairSequence::new(entries).unwrap();
        match decompose(&k, &pairs, Flavor::Join, Z) {
            Ok(d) => {
                assert_eq!(d.total, direct_join(&k, &pairs));
                checked += 1;
            }
            Err(polyprod::Error::Refused(_)) => continue,
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn widening_the_index_set_changes_nothing() {
    let l = SimplicialComplex::boundary(2, 0b11);
    for k in all_complexes(2).into_iter().skip(1) {
        let pairs = PairSequence::new(vec![disk_pair(2), cone_pair(&l).unwrap()]).unwrap();
        for flavor in [Flavor::Product, Flavor::Join] {
            let narrow = decompose(&k, &pairs, flavor, Z).unwrap();
            let wide = decompose_over(&k, &pairs, flavor, Z, &Universe::All).unwrap();
            assert_eq!(narrow.total, wide.total);
        }
        // θ onto for disks: the right universe suffices.
        let disks = PairSequence::new(vec![disk_pair(3), disk_pair(1)]).unwrap();
        let right = decompose_over(&k, &disks, Flavor::Product, Z, &Universe::Right).unwrap();
        assert_eq!(right.total, direct_product(&k, &disks));
    }
}

#[test]
fn contractible_join_factors_leave_one_block() {
    // (cone L, L) has H̃(cone L) = 0, so only (∅, [m]) survives.
    let l = SimplicialComplex::boundary(2, 0b11);
    for k in all_complexes(2).into_iter().skip(1) {
        let pairs = PairSequence::new(vec![cone_pair(&l).unwrap(); 2]).unwrap();
        let d = decompose(&k, &pairs, Flavor::Join, Z).unwrap();
        assert!(d.blocks.iter().all(|b| b.pair == IndexPair { sigma: 0, omega: 0b11 }));
    }
}

#[test]
fn sphere_closed_forms() {
    let mut r = rng(14);
    for _ in 0..10 {
        let m = r.gen_range(1..=2);
        let k = random_complex(&mut r, m);
        let pairs = PairSequence::new(vec![sphere_pair(2, 1); m]).unwrap();
        assert_eq!(
            sphere_pair_closed_form(&k, 2, 1, Flavor::Product, Z).unwrap().total,
            direct_product(&k, &pairs)
        );
        assert_eq!(
            sphere_pair_closed_form(&k, 2, 1, Flavor::Join, Z).unwrap().total,
            direct_join(&k, &pairs)
        );
    }
    let m = 3;
    let simplex = SimplicialComplex::simplex(m, 0b111);
    let d = sphere_pair_closed_form(&simplex, 2, 0, Flavor::Product, Z).unwrap();
    let betti: Vec<usize> = (0..=6).map(|i| d.total.free_rank(i)).collect();
    assert_eq!(betti, vec![1, 0, 3, 0, 3, 0, 1]);
}

#[test]
fn empty_complex_gives_tensor_of_subspaces() {
    let pairs = PairSequence::new(vec![disk_pair(2); 3]).unwrap();
    let d = disk_pair_closed_form(&SimplicialComplex::empty(3), 2, Z).unwrap();
    assert_eq!(d.total, direct_product(&SimplicialComplex::empty(3), &pairs));
    let betti: Vec<usize> = (0..=3).map(|i| d.total.free_rank(i)).collect();
    assert_eq!(betti, vec![1, 3, 3, 1]);
    let wide = disk_pair_closed_form(&SimplicialComplex::empty(3), 3, Z).unwrap();
    let betti: Vec<usize> = (0..=6).map(|i| wide.total.free_rank(i)).collect();
    assert_eq!(betti, vec![1, 0, 3, 0, 3, 0, 1]);
}

#[test]
fn suspended_disk_pair_parts() {
    let (x, a) = disk_pair(3);
    let s = split_summary(&x, &a, ChainVariant::Suspended, Z).unwrap();
    assert_eq!(s.n_part, HomologySummary::free(3, 1));
    assert!(s.i_part.is_zero() && s.e_part.is_zero());
}

#[test]
fn join_total_homology_matches_direct_blocks() {
    let mut r = rng(15);
    let mut checked = 0;
    while checked < 15 {
        let m = r.gen_range(1..=2);
        let k = random_complex(&mut r, m);
        let entries: Vec<_> = (0..m)
            .map(|_| {
                let n = r.gen_range(1..=2);
                random_pair(&mut r, n)
            })
            .collect();
        let pairs = PairSequence::new(entries).unwrap();
        let assembled = match join_total_homology(&k, &pairs, &Universe::All, Z) {
            Ok(h) => h,
            Err(polyprod::Error::Refused(_)) => continue,
            Err(e) => panic!("{e}"),
        };
        let z = polyhedral_join(&k, &pairs).unwrap();
        assert_eq!(assembled, total_homology(&z, &Universe::All, Z).unwrap());
        checked += 1;
    }
}

#[test]
fn composition_of_circles_full_block() {
    let l = SimplicialComplex::boundary(2, 0b11);
    let k = SimplicialComplex::boundary(2, 0b11);
    let pairs = PairSequence::composition(&[l.clone(), l]).unwrap();
    let h = join_total_homology(&k, &pairs, &Universe::All, Z).unwrap();
    let full = IndexPair {
        sigma: 0,
        omega: 0b1111,
    };
    // Z*(∂Δ^[2]; ∂Δ^[2], ∂Δ^[2]) = ∂Δ^[4], a 2-sphere.
    assert_eq!(h.get(&full), HomologySummary::free(3, 1));
    let z = composition_complex(
        &k,
        &[
            SimplicialComplex::boundary(2, 0b11),
            SimplicialComplex::boundary(2, 0b11),
        ],
    )
    .unwrap();
    assert_eq!(z, SimplicialComplex::boundary(4, 0b1111));
}
