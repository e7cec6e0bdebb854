//! The `m`-gon and its right universal algebra, checked class by class against closed
//! formulas for products of degree-one classes.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bits::{self, Mask};
use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::field::FieldKind;
use crate::total::{IndexPair, Universe};

use super::engine::TotalRing;
use super::families::family;
use super::table::{Element, RingTable};

/// Cycle on `[m]` with edges `{i, i+1}` mod `m`.
pub fn polygon(m: usize) -> SimplicialComplex {
    let edges: Vec<Mask> = (0..m).map(|i| (1 << i) | (1 << ((i + 1) % m))).collect();
    SimplicialComplex::from_facets(m, &edges).expect("polygon facets are valid")
}

/// Connected components of the cycle restricted to `ω`, each listed once, ordered by
/// smallest vertex.
pub fn cyclic_components(omega: Mask, m: usize) -> Vec<Mask> {
    let mut left = omega;
    let mut out = Vec::new();
    while left != 0 {
        let start = left.trailing_zeros() as usize;
        let mut comp = 1 << start;
        let mut frontier = vec![start];
        while let Some(v) = frontier.pop() {
            for w in [(v + 1) % m, (v + m - 1) % m] {
                if omega >> w & 1 == 1 && comp >> w & 1 == 0 {
                    comp |= 1 << w;
                    frontier.push(w);
                }
            }
        }
        left &= !comp;
        out.push(comp);
    }
    out
}

/// `i * j`: `1` if `j ≡ i + 1`, `−1` if `j ≡ i − 1` (mod `m`), else `0`. Vertices 0-based.
pub fn step_sign(i: usize, j: usize, m: usize) -> i64 {
    if j == (i + 1) % m {
        1
    } else if i == (j + 1) % m {
        -1
    } else {
        0
    }
}

/// `A * B = Σ_{i∈A, j∈B} i * j`.
pub fn set_sign(a: Mask, b: Mask, m: usize) -> i64 {
    bits::elements(a)
        .flat_map(|i| bits::elements(b).map(move |j| step_sign(i, j, m)))
        .sum()
}

/// Outcome of comparing one polygon table with the closed formulas.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolygonReport {
    pub m: usize,
    /// Products `h_{ω',i} · h_{ω'',j}` compared (all components `i`, `j`, all `ω'`, `ω''`).
    pub products: usize,
    /// Agreement with `(ω'_i * ω''_j) κ` on every product.
    pub component_agree: usize,
    /// Same, restricted to disjoint `ω'`, `ω''` covering `[m]`.
    pub cover_products: usize,
    pub cover_component_agree: usize,
    /// Agreement with `[ω'∪ω''=[m]] (ω'_i * (ω''_j ∖ ω')) κ`.
    pub corrected_agree: usize,
    /// A disagreeing pair for the component formula, as `(ω', i, ω'', j, predicted, computed)`.
    pub first_component_miss: Option<(Mask, usize, Mask, usize, i64, i64)>,
    pub kappa_products_vanish: bool,
    pub unit_acts_trivially: bool,
}

fn coefficient_of(e: &Element, kappa: &Element) -> Option<i64> {
    // `kappa` has a single entry in the one-dimensional top block.
    let (k, c) = kappa.first()?;
    if e.iter().any(|(i, _)| i != k) {
        return None;
    }
    let x = e
        .iter()
        .find(|(i, _)| i == k)
        .map(|(_, x)| x.clone())
        .unwrap_or_else(BigRational::zero);
    let q = x / c;
    q.is_integer().then(|| i64::try_from(q.to_integer()).ok()).flatten()
}

/// Builds the right universal table of the `m`-gon over `Q` and compares every product of
/// degree-one classes given by components, plus the products with `κ` and the unit.
pub fn polygon_report(m: usize) -> Result<(RingTable, PolygonReport)> {
    let k = polygon(m);
    let fam = family("right-universal")?;
    let ring = TotalRing::new(&k, fam.as_ref(), &Universe::Right, FieldKind::Rationals);
    let table = ring.table()?;
    let full = bits::full(m);
    let top = IndexPair { sigma: 0, omega: full };
    let kappa = ring.coordinates(top, 2, &[(0b11, BigRational::one())])?;
    let mut rep = PolygonReport {
        m,
        kappa_products_vanish: true,
        unit_acts_trivially: true,
        ..Default::default()
    };
    // Degree-one classes: one per component of each ω with at least two components.
    let mut h: Vec<(Mask, Vec<Mask>, Vec<Element>)> = Vec::new();
    for omega in 1..=full {
        let comps = cyclic_components(omega, m);
        if comps.len() < 2 {
            continue;
        }
        let p = IndexPair { sigma: 0, omega };
        let mut classes = Vec::new();
        for &c in &comps {
            let cochain: Vec<(Mask, BigRational)> = bits::elements(c).map(|u| (1 << u, BigRational::one())).collect();
            classes.push(ring.coordinates(p, 1, &cochain)?);
        }
        h.push((omega, comps, classes));
    }
    for (w1, c1, h1) in &h {
        for (w2, c2, h2) in &h {
            for (i, x) in h1.iter().enumerate() {
                for (j, y) in h2.iter().enumerate() {
                    let prod = table.mul(x, y);
                    rep.products += 1;
                    let computed = coefficient_of(&prod, &kappa);
                    let predicted = set_sign(c1[i], c2[j], m);
                    let corrected = if w1 | w2 == full {
                        set_sign(c1[i], c2[j] & !w1, m)
                    } else {
                        0
                    };
                    let cover = w1 & w2 == 0 && w1 | w2 == full;
                    if cover {
                        rep.cover_products += 1;
                    }
                    if computed == Some(predicted) {
                        rep.component_agree += 1;
                        if cover {
                            rep.cover_component_agree += 1;
                        }
                    } else if rep.first_component_miss.is_none() {
                        rep.first_component_miss = Some((*w1, i, *w2, j, predicted, computed.unwrap_or(i64::MIN)));
                    }
                    if computed == Some(corrected) {
                        rep.corrected_agree += 1;
                    }
                }
            }
            // h · κ and κ · h.
            for x in h1 {
                if !table.mul(x, &kappa).is_empty() || !table.mul(&kappa, x).is_empty() {
                    rep.kappa_products_vanish = false;
                }
            }
        }
    }
    if !table.mul(&kappa, &kappa).is_empty() {
        rep.kappa_products_vanish = false;
    }
    let unit = table.unit.clone().unwrap_or_default();
    for i in 0..table.dim() {
        let e = table.basis_element(i);
        if table.mul(&unit, &e) != e || table.mul(&e, &unit) != e {
            rep.unit_acts_trivially = false;
        }
    }
    Ok((table, rep))
}

/// Counts the ways of dropping one component per `ω` (the remaining components give a
/// basis of the degree-one classes) under which the component rule
/// `h_{ω',i} · h_{ω'',j} = (ω'_i * ω''_j) κ` holds for every kept pair. Returns
/// `(consistent, total)`; refuses when the search space exceeds `2^20`.
pub fn component_rule_labelings(m: usize) -> Result<(u64, u64)> {
    let k = polygon(m);
    let fam = family("right-universal")?;
    let ring = TotalRing::new(&k, fam.as_ref(), &Universe::Right, FieldKind::Rationals);
    let table = ring.table()?;
    let full = bits::full(m);
    let kappa = ring.coordinates(IndexPair { sigma: 0, omega: full }, 2, &[(0b11, BigRational::one())])?;
    let mut sets = Vec::new();
    for omega in 1..=full {
        let comps = cyclic_components(omega, m);
        if comps.len() < 2 {
            continue;
        }
        let p = IndexPair { sigma: 0, omega };
        let mut classes = Vec::new();
        for &c in &comps {
            let cochain: Vec<(Mask, BigRational)> = bits::elements(c).map(|u| (1 << u, BigRational::one())).collect();
            classes.push(ring.coordinates(p, 1, &cochain)?);
        }
        sets.push((comps, classes));
    }
    let total: u64 = sets
        .iter()
        .try_fold(1u64, |a, (c, _)| a.checked_mul(c.len() as u64))
        .unwrap_or(u64::MAX);
    if total > 1 << 20 {
        return crate::error::input(format!("{total} labelings of the {m}-gon is too many to search"));
    }
    // `ok[a][b][i][j]`: the component rule holds for components i of set a and j of set b.
    let ok: Vec<Vec<Vec<Vec<bool>>>> = sets
        .iter()
        .map(|(c1, h1)| {
            sets.iter()
                .map(|(c2, h2)| {
                    (0..c1.len())
                        .map(|i| {
                            (0..c2.len())
                                .map(|j| {
                                    let want = table
                                        .scale(&BigRational::from_integer(set_sign(c1[i], c2[j], m).into()), &kappa);
                                    table.mul(&h1[i], &h2[j]) == want
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let mut consistent = 0;
    for code in 0..total {
        let mut dropped = Vec::with_capacity(sets.len());
        let mut x = code;
        for (c, _) in &sets {
            dropped.push((x % c.len() as u64) as usize);
            x /= c.len() as u64;
        }
        let good = (0..sets.len()).all(|a| {
            (0..sets.len()).all(|b| {
                (0..sets[a].0.len()).filter(|&i| i != dropped[a]).all(|i| {
                    (0..sets[b].0.len())
                        .filter(|&j| j != dropped[b])
                        .all(|j| ok[a][b][i][j])
                })
            })
        });
        if good {
            consistent += 1;
        }
    }
    Ok((consistent, total))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components_wrap_around() {
        // {1,2,5} on the 5-gon is one arc through 5–1.
        assert_eq!(cyclic_components(0b10011, 5), vec![0b10011]);
        assert_eq!(cyclic_components(0b00101, 5), vec![0b00001, 0b00100]);
    }

    #[test]
    fn step_signs() {
        assert_eq!(step_sign(0, 1, 5), 1);
        assert_eq!(step_sign(1, 0, 5), -1);
        assert_eq!(step_sign(4, 0, 5), 1);
        assert_eq!(step_sign(0, 2, 5), 0);
    }
}
