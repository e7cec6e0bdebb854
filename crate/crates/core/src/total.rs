//! Total chain complexes indexed by disjoint pairs `(σ, ω)` and their (co)homology.
//!
//! Block `(σ, ω)` of the total complex of `K` has generators `t = t_{E, N̄, N, I}` with `E = σ`,
//! `N̄ ⊔ N = ω` and `σ ∪ N̄ ∈ K`, in degree `|N̄|`. Each block is isomorphic to the suspended
//! augmented chains of the local complex `K_{σ,ω}`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{self, Mask};
use crate::chain::{cohomology, homology, simplicial_chain, ChainComplex, ChainVariant, HomologySummary};
use crate::complex::SimplicialComplex;
use crate::error::{input, invariant, Result};
use crate::field::Coefficients;

/// A disjoint pair of subsets of `[m]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct IndexPair {
    pub sigma: Mask,
    pub omega: Mask,
}

impl IndexPair {
    pub fn new(sigma: Mask, omega: Mask) -> Result<Self> {
        if sigma & omega != 0 {
            return input(format!(
                "{} and {} are not disjoint",
                bits::show(sigma),
                bits::show(omega)
            ));
        }
        Ok(IndexPair { sigma, omega })
    }

    /// `σ' = [m] ∖ (σ ∪ ω)`.
    pub fn rest(&self, m: usize) -> Mask {
        bits::full(m) & !(self.sigma | self.omega)
    }

    pub fn is_right(&self) -> bool {
        self.sigma == 0
    }

    pub fn is_left(&self) -> bool {
        self.omega != 0
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", bits::show(self.sigma), bits::show(self.omega))
    }
}

/// Index universes: all pairs, `σ = ∅` pairs, `ω ≠ ∅` pairs, or an explicit list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Universe {
    All,
    Right,
    Left,
    Custom(Vec<IndexPair>),
}

impl Universe {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "xm" | "all" => Ok(Universe::All),
            "rm" | "right" => Ok(Universe::Right),
            "lm" | "left" => Ok(Universe::Left),
            _ => input(format!("unknown universe `{s}` (use xm, rm, lm)")),
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Universe::All => "xm",
            Universe::Right => "rm",
            Universe::Left => "lm",
            Universe::Custom(_) => "custom",
        }
    }

    pub fn contains(&self, p: &IndexPair) -> bool {
        match self {
            Universe::All => true,
            Universe::Right => p.is_right(),
            Universe::Left => p.is_left(),
            Universe::Custom(v) => v.contains(p),
        }
    }

    /// Members on `[m]`, ascending by `(σ, ω)`.
    pub fn pairs(&self, m: usize) -> Vec<IndexPair> {
        let full = bits::full(m);
        let mut out = Vec::new();
        match self {
            Universe::Custom(v) => {
                out = v.clone();
            }
            _ => {
                for sigma in 0..=full {
                    if matches!(self, Universe::Right) && sigma != 0 {
                        break;
                    }
                    for omega in bits::submasks(full & !sigma) {
                        let p = IndexPair { sigma, omega };
                        if self.contains(&p) {
                            out.push(p);
                        }
                    }
                    if sigma == full {
                        break;
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// One of the four atom symbols per vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Atom {
    /// 𝓲, degree 0
    I,
    /// 𝓷, degree 0
    N,
    /// 𝓷̄, degree 1, boundary 𝓷
    NBar,
    /// 𝓮, degree 0
    E,
}

impl Atom {
    pub fn degree(self) -> usize {
        (self == Atom::NBar) as usize
    }
}

/// Generator of the total complex: a partition `E ⊔ N̄ ⊔ N ⊔ I = [m]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TotalGenerator {
    pub e: Mask,
    pub nbar: Mask,
    pub n: Mask,
    pub i: Mask,
}

impl TotalGenerator {
    pub fn new(m: usize, p: IndexPair, tau: Mask) -> Self {
        TotalGenerator {
            e: p.sigma,
            nbar: tau,
            n: p.omega & !tau,
            i: p.rest(m),
        }
    }

    pub fn degree(&self) -> usize {
        bits::size(self.nbar)
    }

    pub fn pair(&self) -> IndexPair {
        IndexPair {
            sigma: self.e,
            omega: self.nbar | self.n,
        }
    }

    pub fn atom(&self, k: usize) -> Atom {
        let b = 1 << k;
        if self.e & b != 0 {
            Atom::E
        } else if self.nbar & b != 0 {
            Atom::NBar
        } else if self.n & b != 0 {
            Atom::N
        } else {
            Atom::I
        }
    }

    /// Membership in the total complex of `K`.
    pub fn in_complex(&self, k: &SimplicialComplex) -> bool {
        k.contains(self.e | self.nbar)
    }

    /// Boundary in the atom tensor product: one `𝓷̄ ↦ 𝓷` at a time, with the Koszul sign
    /// of the preceding factors.
    pub fn boundary(&self, m: usize) -> Vec<(TotalGenerator, i64)> {
        let mut out = Vec::new();
        let mut preceding_degree = 0usize;
        for k in 0..m {
            match self.atom(k) {
                Atom::NBar => {
                    let b = 1 << k;
                    let t = TotalGenerator {
                        nbar: self.nbar & !b,
                        n: self.n | b,
                        ..*self
                    };
                    out.push((t, if preceding_degree.is_multiple_of(2) { 1 } else { -1 }));
                    preceding_degree += 1;
                }
                a => preceding_degree += a.degree(),
            }
        }
        out
    }
}

/// Generators of block `p`: the faces `τ` of `K_{σ,ω}`, ascending by mask.
pub fn block_generators(k: &SimplicialComplex, p: IndexPair) -> Vec<Mask> {
    if k.is_void() || !k.contains(p.sigma) {
        return Vec::new();
    }
    let mut v: Vec<Mask> = bits::submasks(p.omega).filter(|&t| k.contains(p.sigma | t)).collect();
    v.sort_unstable();
    v
}

/// Block `p` built directly from the atom model. Labels are the `N̄` masks.
pub fn block_complex(k: &SimplicialComplex, p: IndexPair, coeffs: Coefficients) -> Result<ChainComplex> {
    let m = k.ground_size();
    let gens = block_generators(k, p);
    if gens.is_empty() {
        return Ok(ChainComplex::zero(coeffs));
    }
    let top = gens.iter().map(|&t| bits::size(t)).max().unwrap_or(0);
    let mut bases: Vec<Vec<u64>> = vec![Vec::new(); top + 1];
    for &t in &gens {
        bases[bits::size(t)].push(t as u64);
    }
    ChainComplex::from_rule(coeffs, 0, bases, |_, label| {
        let g = TotalGenerator::new(m, p, label as Mask);
        g.boundary(m)
            .into_iter()
            .map(|(t, s)| {
                debug_assert!(t.in_complex(k) && t.pair() == p);
                (t.nbar as u64, s)
            })
            .collect()
    })
}

/// Suspended augmented chains of `K_{σ,ω}`.
pub fn local_suspended_chain(k: &SimplicialComplex, p: IndexPair, coeffs: Coefficients) -> ChainComplex {
    simplicial_chain(&k.local_complex(p.sigma, p.omega), ChainVariant::Suspended, coeffs)
}

/// The bijection `τ ↦ t_{σ, τ, ω∖τ, σ'}` between bases of the suspended local chains and the
/// block, after checking that it commutes with the differentials.
pub fn local_iso_to_suspension(k: &SimplicialComplex, p: IndexPair) -> Result<Vec<(Mask, TotalGenerator)>> {
    let m = k.ground_size();
    let coeffs = Coefficients::Integers;
    let local = local_suspended_chain(k, p, coeffs);
    let block = block_complex(k, p, coeffs)?;
    // Both complexes use the same labels (face masks), so commuting with the differential
    // means identical labels per degree and identical boundary matrices.
    if local.total_rank() != block.total_rank() {
        return invariant(format!("block {p}: generator counts differ"));
    }
    if local.total_rank() > 0 {
        for d in local.lo.min(block.lo)..=local.hi().max(block.hi()) {
            if local.basis(d) != block.basis(d) || local.boundary(d) != block.boundary(d) {
                return invariant(format!("block {p}: suspension map is not a chain map in degree {d}"));
            }
        }
    }
    Ok(block_generators(k, p)
        .into_iter()
        .map(|t| (t, TotalGenerator::new(m, p, t)))
        .collect())
}

/// Per-block (co)homology on an index universe. Absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexedHomology {
    pub universe: String,
    pub m: usize,
    pub entries: BTreeMap<IndexPair, HomologySummary>,
}

impl IndexedHomology {
    pub fn get(&self, p: &IndexPair) -> HomologySummary {
        self.entries.get(p).cloned().unwrap_or_default()
    }

    /// Direct sum over all blocks.
    pub fn total(&self) -> HomologySummary {
        self.entries
            .values()
            .fold(HomologySummary::default(), |acc, h| acc.direct_sum(h))
    }
}

fn indexed(k: &SimplicialComplex, universe: &Universe, coeffs: Coefficients, co: bool) -> Result<IndexedHomology> {
    let m = k.ground_size();
    let pairs = universe.pairs(m);
    let spot = pairs.len() <= 256;
    let results: Vec<Result<(IndexPair, HomologySummary)>> = pairs
        .par_iter()
        .enumerate()
        .map(|(idx, &p)| {
            let c = local_suspended_chain(k, p, coeffs);
            let h = if co { cohomology(&c) } else { homology(&c) };
            if spot || idx % 17 == 0 {
                local_iso_to_suspension(k, p)?;
            }
            Ok((p, h))
        })
        .collect();
    let mut entries = BTreeMap::new();
    for r in results {
        let (p, h) = r?;
        if !h.is_zero() {
            entries.insert(p, h);
        }
    }
    Ok(IndexedHomology {
        universe: universe.tag().to_string(),
        m,
        entries,
    })
}

/// `H_*^{σ,ω}(K) ≅ H̃_{*-1}(K_{σ,ω})` for every pair in the universe.
pub fn total_homology(k: &SimplicialComplex, universe: &Universe, coeffs: Coefficients) -> Result<IndexedHomology> {
    indexed(k, universe, coeffs, false)
}

/// `H^*_{σ,ω}(K)` for every pair in the universe.
pub fn total_cohomology(k: &SimplicialComplex, universe: &Universe, coeffs: Coefficients) -> Result<IndexedHomology> {
    indexed(k, universe, coeffs, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::from_vertices as v;
    use crate::chain::DegreeGroup;

    #[test]
    fn void_complex_has_no_generators() {
        let k = SimplicialComplex::void(2);
        let h = total_homology(&k, &Universe::All, Coefficients::Integers).unwrap();
        assert!(h.entries.is_empty());
    }

    #[test]
    fn block_of_two_points() {
        let k = SimplicialComplex::boundary(2, 0b11);
        let p = IndexPair::new(0, 0b11).unwrap();
        assert_eq!(block_generators(&k, p), vec![0, 1, 2]);
        let c = block_complex(&k, p, Coefficients::Integers).unwrap();
        assert_eq!((c.dim(0), c.dim(1)), (1, 2));
    }

    #[test]
    fn full_simplex_has_four_to_the_m_generators() {
        let m = 3;
        let k = SimplicialComplex::simplex(m, bits::full(m));
        let count: usize = Universe::All
            .pairs(m)
            .iter()
            .map(|&p| block_generators(&k, p).len())
            .sum();
        assert_eq!(count, 4usize.pow(m as u32));
        assert_eq!(Universe::All.pairs(m).len(), 27);
        assert_eq!(Universe::Right.pairs(m).len(), 8);
        assert_eq!(Universe::Left.pairs(m).len(), 27 - 8);
    }

    #[test]
    fn suspension_iso_examples() {
        let k = SimplicialComplex::boundary(3, 0b111);
        let iso = local_iso_to_suspension(&k, IndexPair::new(0, 0b111).unwrap()).unwrap();
        assert_eq!(iso.len(), 7);
        let h = total_homology(&k, &Universe::All, Coefficients::Integers).unwrap();
        assert_eq!(h.get(&IndexPair::new(0, 0b111).unwrap()), HomologySummary::free(2, 1));
        let single = local_iso_to_suspension(&k, IndexPair::new(v(&[1]), 0).unwrap()).unwrap();
        assert_eq!(single.len(), 1);
        assert!(local_iso_to_suspension(&k, IndexPair::new(0b111, 0).unwrap())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn empty_complex_blocks() {
        let k = SimplicialComplex::empty(2);
        let h = total_homology(&k, &Universe::All, Coefficients::Integers).unwrap();
        for omega in 0..4u32 {
            assert_eq!(h.get(&IndexPair { sigma: 0, omega }), HomologySummary::free(0, 1));
        }
        assert_eq!(h.entries.len(), 4);
        assert_eq!(
            h.get(&IndexPair { sigma: 0, omega: 3 }).groups,
            vec![DegreeGroup {
                degree: 0,
                free_rank: 1,
                torsion: vec![]
            }]
        );
    }
}
