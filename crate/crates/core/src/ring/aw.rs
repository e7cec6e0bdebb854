//! Cup product of simplicial cochains through the front/back face coproduct.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bits::{self, Mask};
use crate::chain::{simplicial_chain, ChainVariant};
use crate::complex::SimplicialComplex;
use crate::error::{input, invariant, Result};
use crate::field::FieldKind;

use super::linalg::{self, CohomologyBasis};
use super::table::{BasisClass, Element, RingTable};

/// Splits an ascending face with `p + q + 1` vertices into its front `p`-face and back `q`-face.
fn front_back(f: Mask, p: usize) -> (Mask, Mask) {
    let vs: Vec<usize> = bits::elements(f).collect();
    let front = vs[..=p].iter().fold(0, |a, &v| a | 1 << v);
    let back = vs[p..].iter().fold(0, |a, &v| a | 1 << v);
    (front, back)
}

/// Cohomology ring `H^*(L)` with the cup product, over a field.
pub fn aw_cup_product(l: &SimplicialComplex, field: FieldKind) -> Result<RingTable> {
    if l.is_void() {
        return input("the cup product needs a non-void complex");
    }
    let chain = simplicial_chain(l, ChainVariant::Plain, field.coefficients());
    let mut bases = BTreeMap::new();
    let mut basis = Vec::new();
    let mut first = BTreeMap::new();
    if chain.total_rank() > 0 {
        for d in chain.lo..=chain.hi() {
            let b = CohomologyBasis::new(field, &chain, d);
            first.insert(d, basis.len());
            for (r, rep) in b.representatives().into_iter().enumerate() {
                let rep: Vec<(u64, BigRational)> = chain
                    .basis(d)
                    .iter()
                    .zip(rep)
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(&l, x)| (l, x))
                    .collect();
                basis.push(BasisClass {
                    pair: None,
                    degree: d,
                    label: format!("{d}.{r}"),
                    rep,
                });
            }
            bases.insert(d, b);
        }
    }
    let coords = |d: i32, v: Vec<BigRational>| -> Result<Element> {
        let Some(b) = bases.get(&d) else { return Ok(Vec::new()) };
        if b.dim() == 0 {
            return Ok(Vec::new());
        }
        let v = linalg::normalized(field, v);
        let Some(c) = b.coordinates(&v) else {
            return invariant(format!("cup product is not a cocycle in degree {d}"));
        };
        let f0 = first[&d];
        Ok(c.into_iter()
            .enumerate()
            .map(|(i, x)| (f0 + i, field.normalize(&x)))
            .filter(|(_, x)| !x.is_zero())
            .collect())
    };
    let maps: Vec<HashMap<u64, BigRational>> = basis.iter().map(|c| c.rep.iter().cloned().collect()).collect();
    let n = basis.len();
    let rows: Vec<Result<Vec<((usize, usize), Element)>>> = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut row = Vec::new();
            let p = basis[a].degree;
            for b in 0..n {
                let q = basis[b].degree;
                let d = p + q;
                if bases.get(&d).is_none_or(|x| x.dim() == 0) {
                    continue;
                }
                let v: Vec<BigRational> = chain
                    .basis(d)
                    .iter()
                    .map(|&f| {
                        let (front, back) = front_back(f as Mask, p as usize);
                        match (maps[a].get(&(front as u64)), maps[b].get(&(back as u64))) {
                            (Some(x), Some(y)) => x * y,
                            _ => BigRational::zero(),
                        }
                    })
                    .collect();
                let e = coords(d, v)?;
                if !e.is_empty() {
                    row.push(((a, b), e));
                }
            }
            Ok(row)
        })
        .collect();
    let mut constants = BTreeMap::new();
    for r in rows {
        constants.extend(r?);
    }
    // The unit is the class of the cochain that is 1 on every vertex.
    let ones = vec![BigRational::one(); chain.dim(0)];
    let unit = if chain.dim(0) > 0 { Some(coords(0, ones)?) } else { None };
    Ok(RingTable {
        field,
        family: "alexander-whitney".into(),
        universe: "-".into(),
        basis,
        constants,
        unit,
        degree_preserving: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::tests::rp2;

    #[test]
    fn projective_plane_square_over_f2() {
        let t = aw_cup_product(&rp2(), FieldKind::Prime(2)).unwrap();
        assert_eq!(t.ranks(), BTreeMap::from([(0, 1), (1, 1), (2, 1)]));
        let x = t.indices_of_degree(1)[0];
        let top = t.indices_of_degree(2)[0];
        assert_eq!(t.product(x, x), &[(top, BigRational::one())]);
        assert!(t.laws().all());
    }

    #[test]
    fn circle_products_vanish() {
        let c = SimplicialComplex::boundary(3, 0b111);
        let t = aw_cup_product(&c, FieldKind::Rationals).unwrap();
        let x = t.indices_of_degree(1)[0];
        assert!(t.product(x, x).is_empty());
        assert!(t.is_unital());
    }

    #[test]
    fn torus_pairing_is_nondegenerate() {
        let a = SimplicialComplex::boundary(3, 0b111);
        let torus = SimplicialComplex::staircase_product(&a, &a).unwrap();
        for f in [FieldKind::Rationals, FieldKind::Prime(2)] {
            let t = aw_cup_product(&torus, f).unwrap();
            assert_eq!(t.multiplication_ranks()[&(1, 1)], 1);
            assert!(t.laws().all());
        }
    }
}
