//! Homology-split pairs and the block decompositions of polyhedral product and join homology.
//!
//! For a pair `(X, A)` with `θ: H(A) → H(X)` induced by inclusion, the three parts are
//! `e = coker θ`, `n = ker θ` and `i = coim θ`. The homology of a polyhedral object is the
//! sum over index pairs `(σ, ω)` of `H^{σ,ω}(K)` tensored with `e_k` (`k ∈ σ`), `n_k` (`k ∈ ω`)
//! and `i_k` (otherwise).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits;
use crate::chain::{homology, simplicial_chain, ChainComplex, ChainVariant, HomologySummary};
use crate::complex::SimplicialComplex;
use crate::error::{input, Error, Result};
use crate::field::{rank, show_rational, Coefficients, Field, Fp, Rationals};
use crate::hbasis::{FieldBasis, IntegerBasis};
use crate::polyhedral::PairSequence;
use crate::snf::smith_normal_form_big;
use crate::total::{local_suspended_chain, Atom, IndexPair, IndexedHomology, Universe};

/// Which polyhedral object a decomposition describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    /// `H_*` of the polyhedral product, from plain chains of the pairs.
    Product,
    /// `H_*` of the suspended reduced chains of the polyhedral join, i.e. `H̃_{*-1}`.
    Join,
}

impl Flavor {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "product" => Ok(Flavor::Product),
            "join" => Ok(Flavor::Join),
            _ => input(format!("unknown flavor `{s}` (use product or join)")),
        }
    }

    pub fn variant(self) -> ChainVariant {
        match self {
            Flavor::Product => ChainVariant::Plain,
            Flavor::Join => ChainVariant::Suspended,
        }
    }
}

/// `θ: H(A) → H(X)` and its coker / ker / coim parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPairSummary {
    pub coeffs: Coefficients,
    /// Per degree, rows indexed by the chosen basis of `H(X)`, columns by that of `H(A)`.
    pub theta: BTreeMap<i32, Vec<Vec<String>>>,
    pub e_part: HomologySummary,
    pub n_part: HomologySummary,
    pub i_part: HomologySummary,
    pub split: bool,
    pub support: Vec<Atom>,
}

impl SplitPairSummary {
    pub fn part(&self, a: Atom) -> &HomologySummary {
        match a {
            Atom::E => &self.e_part,
            Atom::N | Atom::NBar => &self.n_part,
            Atom::I => &self.i_part,
        }
    }

    pub fn supports(&self, a: Atom) -> bool {
        !self.part(a).is_zero()
    }

    fn finish(
        coeffs: Coefficients,
        theta: BTreeMap<i32, Vec<Vec<String>>>,
        ranks: Vec<(i32, usize, usize, usize)>,
        split: bool,
    ) -> Self {
        let mut e = Vec::new();
        let mut n = Vec::new();
        let mut i = Vec::new();
        for (d, ra, rx, r) in ranks {
            e.push(HomologySummary::free(d, rx - r));
            n.push(HomologySummary::free(d, ra - r));
            i.push(HomologySummary::free(d, r));
        }
        let sum = |v: Vec<HomologySummary>| v.iter().fold(HomologySummary::default(), |a, b| a.direct_sum(b));
        let (e_part, n_part, i_part) = (sum(e), sum(n), sum(i));
        let mut support = Vec::new();
        for (a, p) in [(Atom::I, &i_part), (Atom::N, &n_part), (Atom::E, &e_part)] {
            if !p.is_zero() {
                support.push(a);
            }
        }
        SplitPairSummary {
            coeffs,
            theta,
            e_part,
            n_part,
            i_part,
            split,
            support,
        }
    }
}

fn degree_range(a: &ChainComplex, x: &ChainComplex) -> std::ops::RangeInclusive<i32> {
    let lo = if a.total_rank() == 0 {
        x.lo
    } else if x.total_rank() == 0 {
        a.lo
    } else {
        a.lo.min(x.lo)
    };
    let hi = if a.total_rank() == 0 {
        x.hi()
    } else if x.total_rank() == 0 {
        a.hi()
    } else {
        a.hi().max(x.hi())
    };
    lo..=hi
}

/// Pushes a vector on the basis of `a` in degree `d` into the basis of `x`.
fn include<T: Clone>(a: &ChainComplex, x: &ChainComplex, d: i32, v: &[T], zero: T) -> Result<Vec<T>> {
    let idx = x.index_of(d);
    let mut out = vec![zero; x.dim(d)];
    for (j, label) in a.basis(d).iter().enumerate() {
        match idx.get(label) {
            Some(&i) => out[i] = v[j].clone(),
            None => return input("A is not a subcomplex of X"),
        }
    }
    Ok(out)
}

fn split_over_field<F: Field>(
    f: &F,
    a: &ChainComplex,
    x: &ChainComplex,
    coeffs: Coefficients,
) -> Result<SplitPairSummary> {
    let mut theta = BTreeMap::new();
    let mut ranks = Vec::new();
    if a.total_rank() + x.total_rank() > 0 {
        for d in degree_range(a, x) {
            let ha = FieldBasis::homology(f, a, d);
            let hx = FieldBasis::homology(f, x, d);
            if ha.dim == 0 && hx.dim == 0 {
                continue;
            }
            // Columns of θ are coordinates of the included A-representatives.
            let mut cols = Vec::new();
            for rep in ha.representatives() {
                let v = include(a, x, d, rep, f.zero())?;
                let c = hx
                    .coordinates(&v)
                    .ok_or_else(|| Error::Invariant("included cycle is not a cycle of X".into()))?;
                cols.push(c);
            }
            let r = rank(f, &cols, hx.dim);
            let rows: Vec<Vec<String>> = (0..hx.dim)
                .map(|i| cols.iter().map(|c| show_rational(&f.to_rational(&c[i]))).collect())
                .collect();
            theta.insert(d, rows);
            ranks.push((d, ha.dim, hx.dim, r));
        }
    }
    Ok(SplitPairSummary::finish(coeffs, theta, ranks, true))
}

fn split_over_integers(a: &ChainComplex, x: &ChainComplex) -> Result<SplitPairSummary> {
    let mut theta = BTreeMap::new();
    let mut ranks = Vec::new();
    let mut split = true;
    if a.total_rank() + x.total_rank() > 0 {
        for d in degree_range(a, x) {
            let ha = IntegerBasis::homology(a, d);
            let hx = IntegerBasis::homology(x, d);
            if !ha.torsion.is_empty() || !hx.torsion.is_empty() {
                split = false;
            }
            let (ra, rx) = (ha.free_rank(), hx.free_rank());
            if ra == 0 && rx == 0 {
                continue;
            }
            let mut m = vec![vec![BigInt::zero(); ra]; rx];
            for (j, rep) in ha.reps.iter().enumerate() {
                let v = include(a, x, d, rep, BigInt::zero())?;
                for (i, c) in hx.free_coords(&v).into_iter().enumerate() {
                    m[i][j] = c;
                }
            }
            let s = smith_normal_form_big(&m, ra);
            let r = s.rank();
            if s.factors.iter().any(|f| !f.is_zero() && !f.abs().is_one()) {
                split = false;
            }
            theta.insert(
                d,
                m.iter()
                    .map(|row| row.iter().map(|x| x.to_string()).collect())
                    .collect(),
            );
            ranks.push((d, ra, rx, r));
        }
    }
    Ok(SplitPairSummary::finish(Coefficients::Integers, theta, ranks, split))
}

/// `θ` for an inclusion of chain complexes whose labels in `a` are a subset of those in `x`.
pub fn split_of_inclusion(a: &ChainComplex, x: &ChainComplex, coeffs: Coefficients) -> Result<SplitPairSummary> {
    match coeffs {
        Coefficients::Integers => split_over_integers(a, x),
        Coefficients::Rationals => split_over_field(&Rationals, a, x, coeffs),
        Coefficients::Prime(p) => split_over_field(&Fp::new(p), a, x, coeffs),
    }
}

/// Split data of a simplicial pair `A ⊆ X` for one chain model.
pub fn split_summary(
    x: &SimplicialComplex,
    a: &SimplicialComplex,
    variant: ChainVariant,
    coeffs: Coefficients,
) -> Result<SplitPairSummary> {
    if x.ground_size() != a.ground_size() || !a.is_subcomplex_of(x) {
        return input("A must be a subcomplex of X on the same ground set");
    }
    split_of_inclusion(
        &simplicial_chain(a, variant, coeffs),
        &simplicial_chain(x, variant, coeffs),
        coeffs,
    )
}

/// One summand `H^{σ,ω}(K) ⊗ H_1 ⊗ … ⊗ H_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionBlock {
    pub pair: IndexPair,
    pub local: HomologySummary,
    pub summand: HomologySummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionResult {
    pub coeffs: Coefficients,
    /// Nonzero summands only, ascending by index pair.
    pub blocks: Vec<DecompositionBlock>,
    pub total: HomologySummary,
}

impl DecompositionResult {
    fn from_blocks(coeffs: Coefficients, mut blocks: Vec<DecompositionBlock>) -> Self {
        blocks.retain(|b| !b.summand.is_zero());
        blocks.sort_by_key(|b| b.pair);
        let total = blocks
            .iter()
            .fold(HomologySummary::default(), |acc, b| acc.direct_sum(&b.summand));
        DecompositionResult { coeffs, blocks, total }
    }
}

/// `H^{σ,ω}(K)` for one pair.
pub fn local_homology(k: &SimplicialComplex, p: IndexPair, coeffs: Coefficients) -> HomologySummary {
    homology(&local_suspended_chain(k, p, coeffs))
}

/// Convolution of free graded ranks.
fn ranks_product(parts: &[&HomologySummary]) -> BTreeMap<i32, usize> {
    let mut acc: BTreeMap<i32, usize> = BTreeMap::from([(0, 1)]);
    for p in parts {
        let mut next = BTreeMap::new();
        for (&d1, &r1) in &acc {
            for (&d2, &r2) in &p.ranks() {
                *next.entry(d1 + d2).or_insert(0) += r1 * r2;
            }
        }
        acc = next;
    }
    acc
}

fn atom_at(p: IndexPair, k: usize) -> Atom {
    if p.sigma & (1 << k) != 0 {
        Atom::E
    } else if p.omega & (1 << k) != 0 {
        Atom::N
    } else {
        Atom::I
    }
}

fn pair_summaries(pairs: &PairSequence, flavor: Flavor, coeffs: Coefficients) -> Result<Vec<SplitPairSummary>> {
    let mut out = Vec::new();
    for (k, (x, a)) in pairs.entries().iter().enumerate() {
        let s = split_summary(x, a, flavor.variant(), coeffs)?;
        if !s.split {
            return Err(Error::Refused(format!("pair {} is not homology split", k + 1)));
        }
        out.push(s);
    }
    Ok(out)
}

/// Index pairs whose atoms lie in every factor's support.
pub fn support_pairs(supports: &[SplitPairSummary]) -> Vec<IndexPair> {
    let m = supports.len();
    Universe::All
        .pairs(m)
        .into_iter()
        .filter(|&p| (0..m).all(|k| supports[k].supports(atom_at(p, k))))
        .collect()
}

fn assemble(
    k: &SimplicialComplex,
    parts: &[SplitPairSummary],
    index: Vec<IndexPair>,
    coeffs: Coefficients,
) -> DecompositionResult {
    let m = k.ground_size();
    let blocks: Vec<DecompositionBlock> = index
        .par_iter()
        .map(|&p| {
            let local = local_homology(k, p, coeffs);
            let factors: Vec<&HomologySummary> = (0..m).map(|j| parts[j].part(atom_at(p, j))).collect();
            let summand = local.tensor_free(&ranks_product(&factors));
            DecompositionBlock {
                pair: p,
                local,
                summand,
            }
        })
        .collect();
    DecompositionResult::from_blocks(coeffs, blocks)
}

fn check_sizes(k: &SimplicialComplex, pairs: &PairSequence) -> Result<()> {
    if k.ground_size() != pairs.len() {
        return input(format!(
            "K has {} vertices but {} pairs were given",
            k.ground_size(),
            pairs.len()
        ));
    }
    Ok(())
}

/// Decomposition over the product of the pairs' supports.
pub fn decompose(
    k: &SimplicialComplex,
    pairs: &PairSequence,
    flavor: Flavor,
    coeffs: Coefficients,
) -> Result<DecompositionResult> {
    check_sizes(k, pairs)?;
    let parts = pair_summaries(pairs, flavor, coeffs)?;
    let index = support_pairs(&parts);
    Ok(assemble(k, &parts, index, coeffs))
}

/// Decomposition summed over an explicit index universe instead of the supports.
pub fn decompose_over(
    k: &SimplicialComplex,
    pairs: &PairSequence,
    flavor: Flavor,
    coeffs: Coefficients,
    universe: &Universe,
) -> Result<DecompositionResult> {
    check_sizes(k, pairs)?;
    let parts = pair_summaries(pairs, flavor, coeffs)?;
    Ok(assemble(k, &parts, universe.pairs(k.ground_size()), coeffs))
}

/// `H_d(Z(K; D^n, S^{n-1})) = ⊕_{ω ⊆ [m]} H̃_{d-(n-1)|ω|-1}(K|_ω)`, with the unit block `ω = ∅` kept.
pub fn disk_pair_closed_form(k: &SimplicialComplex, n: usize, coeffs: Coefficients) -> Result<DecompositionResult> {
    if n == 0 {
        return input("disk dimension must be at least 1");
    }
    let blocks = Universe::Right
        .pairs(k.ground_size())
        .into_iter()
        .map(|p| {
            let local = local_homology(k, p, coeffs);
            let summand = local.shifted(((n - 1) * bits::size(p.omega)) as i32);
            DecompositionBlock {
                pair: p,
                local,
                summand,
            }
        })
        .collect();
    Ok(DecompositionResult::from_blocks(coeffs, blocks))
}

/// Sphere pairs `(S^r, S^p)`, `p < r`.
///
/// Product flavor: `⊕_{(σ,ω)} H̃_{d-r|σ|-p|ω|-1}(K_{σ,ω})`. Join flavor reports `H̃_{*-1}` of
/// the join: only `σ ⊔ ω = [m]` survives, shifted by `(r+1)|σ| + (p+1)|ω|`.
pub fn sphere_pair_closed_form(
    k: &SimplicialComplex,
    r: usize,
    p: usize,
    flavor: Flavor,
    coeffs: Coefficients,
) -> Result<DecompositionResult> {
    if p >= r {
        return input("sphere pair needs p < r");
    }
    let m = k.ground_size();
    let full = bits::full(m);
    let blocks = Universe::All
        .pairs(m)
        .into_iter()
        .filter(|q| flavor == Flavor::Product || q.sigma | q.omega == full)
        .map(|q| {
            let local = local_homology(k, q, coeffs);
            let (s, w) = (bits::size(q.sigma), bits::size(q.omega));
            let shift = match flavor {
                Flavor::Product => r * s + p * w,
                Flavor::Join => (r + 1) * s + (p + 1) * w,
            };
            DecompositionBlock {
                pair: q,
                summand: local.shifted(shift as i32),
                local,
            }
        })
        .collect();
    Ok(DecompositionResult::from_blocks(coeffs, blocks))
}

/// Split data of every block `(σ_k, ω_k)` of the total complexes of one pair.
fn dense_split(
    x: &SimplicialComplex,
    a: &SimplicialComplex,
    coeffs: Coefficients,
) -> Result<BTreeMap<IndexPair, SplitPairSummary>> {
    Universe::All
        .pairs(x.ground_size())
        .into_par_iter()
        .map(|p| {
            let ca = local_suspended_chain(a, p, coeffs);
            let cx = local_suspended_chain(x, p, coeffs);
            Ok((p, split_of_inclusion(&ca, &cx, coeffs)?))
        })
        .collect()
}

/// Total homology of `Z*(K; X, A)` on `[n]`, assembled blockwise from `H^{σ,ω}(K)` and the
/// dense split data of the pairs.
pub fn join_total_homology(
    k: &SimplicialComplex,
    pairs: &PairSequence,
    universe: &Universe,
    coeffs: Coefficients,
) -> Result<IndexedHomology> {
    check_sizes(k, pairs)?;
    let m = k.ground_size();
    let n = pairs.total_vertices();
    let dense: Vec<BTreeMap<IndexPair, SplitPairSummary>> = pairs
        .entries()
        .iter()
        .map(|(x, a)| dense_split(x, a, coeffs))
        .collect::<Result<_>>()?;
    let locals: BTreeMap<IndexPair, HomologySummary> = Universe::All
        .pairs(m)
        .into_par_iter()
        .map(|p| (p, local_homology(k, p, coeffs)))
        .filter(|(_, h)| !h.is_zero())
        .collect();
    let targets = universe.pairs(n);
    let results: Vec<Result<(IndexPair, HomologySummary)>> = targets
        .par_iter()
        .map(|&t| {
            let pieces: Vec<&SplitPairSummary> = (0..m)
                .map(|j| {
                    let q = IndexPair {
                        sigma: pairs.split(t.sigma, j),
                        omega: pairs.split(t.omega, j),
                    };
                    &dense[j][&q]
                })
                .collect();
            if let Some(j) = pieces.iter().position(|s| !s.split) {
                return Err(Error::Refused(format!(
                    "pair {} is not densely split at block {t}",
                    j + 1
                )));
            }
            let mut h = HomologySummary::default();
            for (p, local) in &locals {
                let factors: Vec<&HomologySummary> = (0..m).map(|j| pieces[j].part(atom_at(*p, j))).collect();
                h = h.direct_sum(&local.tensor_free(&ranks_product(&factors)));
            }
            Ok((t, h))
        })
        .collect();
    let mut entries = BTreeMap::new();
    for r in results {
        let (t, h) = r?;
        if !h.is_zero() {
            entries.insert(t, h);
        }
    }
    Ok(IndexedHomology {
        universe: universe.tag().to_string(),
        m: n,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::disk_pair;

    fn z() -> Coefficients {
        Coefficients::Integers
    }

    #[test]
    fn disk1_parts() {
        let (x, a) = disk_pair(1);
        let s = split_summary(&x, &a, ChainVariant::Plain, z()).unwrap();
        assert!(s.split);
        assert_eq!(s.i_part, HomologySummary::free(0, 1));
        assert_eq!(s.n_part, HomologySummary::free(0, 1));
        assert!(s.e_part.is_zero());
        assert_eq!(s.support, vec![Atom::I, Atom::N]);
    }

    #[test]
    fn identity_pair_is_all_coimage() {
        let x = SimplicialComplex::boundary(3, 0b111);
        let s = split_summary(&x, &x, ChainVariant::Plain, Coefficients::Prime(3)).unwrap();
        assert_eq!(
            s.i_part,
            homology(&simplicial_chain(&x, ChainVariant::Plain, Coefficients::Prime(3)))
        );
        assert!(s.n_part.is_zero() && s.e_part.is_zero());
    }

    #[test]
    fn suspended_sphere_pair() {
        let n = 3;
        let x = SimplicialComplex::simplex(n, bits::full(n));
        let a = SimplicialComplex::boundary(n, bits::full(n));
        let s = split_summary(&x, &a, ChainVariant::Suspended, z()).unwrap();
        assert_eq!(s.n_part, HomologySummary::free(n as i32 - 1, 1));
        assert!(s.i_part.is_zero() && s.e_part.is_zero());
    }

    #[test]
    fn torsion_pair_is_not_split() {
        let rp2 = crate::chain::tests::rp2();
        let s = split_summary(&rp2, &SimplicialComplex::empty(6), ChainVariant::Plain, z()).unwrap();
        assert!(!s.split);
    }

    #[test]
    fn degree_two_map_is_not_split() {
        // The rim of the 5-vertex Möbius band wraps twice around its core circle.
        let v = bits::from_vertices;
        let mobius = SimplicialComplex::from_facets(
            5,
            &[
                v(&[1, 2, 3]),
                v(&[2, 3, 4]),
                v(&[3, 4, 5]),
                v(&[4, 5, 1]),
                v(&[5, 1, 2]),
            ],
        )
        .unwrap();
        let rim =
            SimplicialComplex::from_facets(5, &[v(&[1, 3]), v(&[3, 5]), v(&[5, 2]), v(&[2, 4]), v(&[4, 1])]).unwrap();
        let s = split_summary(&mobius, &rim, ChainVariant::Plain, z()).unwrap();
        assert!(!s.split);
        let q = split_summary(&mobius, &rim, ChainVariant::Plain, Coefficients::Rationals).unwrap();
        assert!(q.split);
        assert_eq!(q.i_part.free_rank(1), 1);
    }

    #[test]
    fn circle_from_disk1() {
        let k = SimplicialComplex::boundary(2, 0b11);
        let pairs = PairSequence::new(vec![disk_pair(1), disk_pair(1)]).unwrap();
        let d = decompose(&k, &pairs, Flavor::Product, z()).unwrap();
        assert_eq!(
            d.total,
            HomologySummary::free(0, 1).direct_sum(&HomologySummary::free(1, 1))
        );
    }

    #[test]
    fn void_and_empty_complexes() {
        let pairs = PairSequence::new(vec![disk_pair(2), disk_pair(2)]).unwrap();
        let d = decompose(&SimplicialComplex::void(2), &pairs, Flavor::Product, z()).unwrap();
        assert!(d.total.is_zero());
        let e = decompose(&SimplicialComplex::empty(2), &pairs, Flavor::Product, z()).unwrap();
        // H(S^1) ⊗ H(S^1)
        let want = HomologySummary::from_groups([
            crate::chain::DegreeGroup {
                degree: 0,
                free_rank: 1,
                torsion: vec![],
            },
            crate::chain::DegreeGroup {
                degree: 1,
                free_rank: 2,
                torsion: vec![],
            },
            crate::chain::DegreeGroup {
                degree: 2,
                free_rank: 1,
                torsion: vec![],
            },
        ]);
        assert_eq!(e.total, want);
    }

    #[test]
    fn four_gon_disk2_closed_form() {
        let v = bits::from_vertices;
        let k = SimplicialComplex::from_facets(4, &[v(&[1, 2]), v(&[2, 3]), v(&[3, 4]), v(&[1, 4])]).unwrap();
        let d = disk_pair_closed_form(&k, 2, z()).unwrap();
        let betti: Vec<usize> = (0..7).map(|i| d.total.free_rank(i)).collect();
        assert_eq!(betti, vec![1, 0, 0, 2, 0, 0, 1]);
    }

    #[test]
    fn sphere_closed_form_on_a_point() {
        let k = SimplicialComplex::empty(1);
        let d = sphere_pair_closed_form(&k, 2, 0, Flavor::Product, z()).unwrap();
        let pairs: Vec<IndexPair> = d.blocks.iter().map(|b| b.pair).collect();
        assert_eq!(
            pairs,
            vec![IndexPair { sigma: 0, omega: 0 }, IndexPair { sigma: 0, omega: 1 }]
        );
        assert_eq!(d.total, HomologySummary::free(0, 2));
    }
}
