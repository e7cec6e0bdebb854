//! Products on total cohomology: cocycle bases per block, local products summed over
//! admissible destination blocks, coordinates in the destination bases.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bits::{self, Mask};
use crate::chain::ChainComplex;
use crate::complex::SimplicialComplex;
use crate::error::{invariant, Result};
use crate::field::FieldKind;
use crate::total::{local_suspended_chain, IndexPair, Universe};

use super::families::{forced, ProductFamily};
use super::linalg::{self, CohomologyBasis};
use super::local::product_term;
use super::table::{finish, BasisClass, Element, RingTable};

struct Block {
    pair: IndexPair,
    chain: ChainComplex,
    /// Per degree: cohomology basis, label index, first global class index.
    degrees: BTreeMap<i32, (CohomologyBasis, HashMap<u64, usize>, usize)>,
}

/// Total cohomology of `K` on a universe, with the product of a family.
pub struct TotalRing<'a> {
    k: &'a SimplicialComplex,
    family: &'a dyn ProductFamily,
    field: FieldKind,
    universe: String,
    blocks: Vec<Block>,
    by_pair: HashMap<IndexPair, usize>,
    basis: Vec<BasisClass>,
    /// Global class index → (block, degree, local index).
    owner: Vec<(usize, i32, usize)>,
}

impl<'a> TotalRing<'a> {
    /// Builds block bases. Right families only see pairs with `σ = ∅`.
    pub fn new(k: &'a SimplicialComplex, family: &'a dyn ProductFamily, universe: &Universe, field: FieldKind) -> Self {
        let m = k.ground_size();
        let pairs: Vec<IndexPair> = universe
            .pairs(m)
            .into_iter()
            .filter(|p| !family.is_right() || p.is_right())
            .collect();
        let built: Vec<Option<(IndexPair, ChainComplex, Vec<(i32, CohomologyBasis)>)>> = pairs
            .par_iter()
            .map(|&p| {
                if k.is_void() || !k.contains(p.sigma) {
                    return None;
                }
                let chain = local_suspended_chain(k, p, field.coefficients());
                if chain.total_rank() == 0 {
                    return None;
                }
                let hs: Vec<(i32, CohomologyBasis)> = (chain.lo..=chain.hi())
                    .map(|d| (d, CohomologyBasis::new(field, &chain, d)))
                    .filter(|(_, b)| b.dim() > 0)
                    .collect();
                if hs.is_empty() {
                    None
                } else {
                    Some((p, chain, hs))
                }
            })
            .collect();
        let mut blocks = Vec::new();
        let mut basis = Vec::new();
        let mut owner = Vec::new();
        let mut by_pair = HashMap::new();
        for (p, chain, hs) in built.into_iter().flatten() {
            let bi = blocks.len();
            let mut degrees = BTreeMap::new();
            for (d, b) in hs {
                let first = basis.len();
                let labels = chain.basis(d);
                for (r, rep) in b.representatives().into_iter().enumerate() {
                    let rep: Vec<(u64, BigRational)> = labels
                        .iter()
                        .zip(rep)
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(&l, x)| (l, x))
                        .collect();
                    basis.push(BasisClass {
                        pair: Some(p),
                        degree: d,
                        label: format!("{p}:{d}.{r}"),
                        rep,
                    });
                    owner.push((bi, d, r));
                }
                degrees.insert(d, (b, chain.index_of(d), first));
            }
            by_pair.insert(p, bi);
            blocks.push(Block {
                pair: p,
                chain,
                degrees,
            });
        }
        TotalRing {
            k,
            family,
            field,
            universe: universe.tag().to_string(),
            blocks,
            by_pair,
            basis,
            owner,
        }
    }

    pub fn basis(&self) -> &[BasisClass] {
        &self.basis
    }

    /// Index of the unit class `[∅]` in block `(∅, ∅)`, when present.
    pub fn unit_index(&self) -> Option<usize> {
        let b = *self.by_pair.get(&IndexPair { sigma: 0, omega: 0 })?;
        self.blocks[b].degrees.get(&0).map(|(_, _, first)| *first)
    }

    /// Coordinates of a cocycle of block `p` in degree `d`, given as (face mask, coefficient).
    pub fn coordinates(&self, p: IndexPair, d: i32, cochain: &[(Mask, BigRational)]) -> Result<Element> {
        let Some(&bi) = self.by_pair.get(&p) else {
            return Ok(Vec::new());
        };
        let block = &self.blocks[bi];
        let Some((b, index, first)) = block.degrees.get(&d) else {
            return Ok(Vec::new());
        };
        let mut v = vec![BigRational::zero(); block.chain.dim(d)];
        for (t, x) in cochain {
            let Some(&i) = index.get(&(*t as u64)) else {
                return invariant(format!("face {} is not a generator of block {p}", bits::show(*t)));
            };
            v[i] = &v[i] + x;
        }
        let v = linalg::normalized(self.field, v);
        let Some(c) = b.coordinates(&v) else {
            return invariant(format!("cochain on block {p} in degree {d} is not a cocycle"));
        };
        Ok(c.into_iter()
            .enumerate()
            .map(|(i, x)| (first + i, self.field.normalize(&x)))
            .filter(|(_, x)| !x.is_zero())
            .collect())
    }

    /// Product of two basis classes, summed over destination blocks.
    pub fn multiply(&self, a: usize, b: usize) -> Result<Element> {
        let (b1, s, _) = self.owner[a];
        let (b2, t, _) = self.owner[b];
        let (p1, p2) = (self.blocks[b1].pair, self.blocks[b2].pair);
        let mut acc: BTreeMap<usize, BigRational> = BTreeMap::new();
        for block in &self.blocks {
            let p = block.pair;
            if !self.family.admissible(self.k, p1, p2, p) {
                continue;
            }
            let d = s + t + bits::size(forced(p1, p2, p)) as i32;
            if !block.degrees.contains_key(&d) {
                continue;
            }
            let mut cochain: BTreeMap<Mask, BigRational> = BTreeMap::new();
            for (l, x) in &self.basis[a].rep {
                for (r, y) in &self.basis[b].rep {
                    if let Some((target, sign)) = product_term(self.k, self.family, p1, *l as Mask, p2, *r as Mask, p) {
                        let e = cochain.entry(target).or_insert_with(BigRational::zero);
                        *e = &*e + BigRational::from_integer(sign.into()) * x * y;
                    }
                }
            }
            if cochain.values().all(|x| self.field.normalize(x).is_zero()) {
                continue;
            }
            let cochain: Vec<(Mask, BigRational)> = cochain.into_iter().collect();
            for (i, x) in self.coordinates(p, d, &cochain)? {
                let e = acc.entry(i).or_insert_with(BigRational::zero);
                *e = self.field.normalize(&(&*e + x));
            }
        }
        Ok(finish(acc))
    }

    pub fn table(&self) -> Result<RingTable> {
        let n = self.basis.len();
        let rows: Vec<Result<Vec<((usize, usize), Element)>>> = (0..n)
            .into_par_iter()
            .map(|a| {
                let mut row = Vec::new();
                for b in 0..n {
                    let v = self.multiply(a, b)?;
                    if !v.is_empty() {
                        row.push(((a, b), v));
                    }
                }
                Ok(row)
            })
            .collect();
        let mut constants = BTreeMap::new();
        for r in rows {
            constants.extend(r?);
        }
        Ok(RingTable {
            field: self.field,
            family: self.family.name(),
            universe: self.universe.clone(),
            basis: self.basis.clone(),
            constants,
            unit: self.unit_index().map(|u| vec![(u, BigRational::one())]),
            degree_preserving: self.family.degree_preserving(),
        })
    }
}

/// Structure constants of the total cohomology algebra of `K` for one product family.
pub fn total_cohomology_ring(
    k: &SimplicialComplex,
    family: &dyn ProductFamily,
    universe: &Universe,
    field: FieldKind,
) -> Result<RingTable> {
    TotalRing::new(k, family, universe, field).table()
}
