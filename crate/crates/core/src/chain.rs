//! Chain complexes with integer boundary entries, simplicial chain models, tensor products,
//! and homology/cohomology summaries.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::bits;
use crate::complex::SimplicialComplex;
use crate::error::{input, invariant, Result};
use crate::field::{rank, Coefficients, Field, Fp};
use crate::snf::invariant_factors;

/// Which simplicial chain model to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChainVariant {
    /// Faces of size ≥ 1, face `τ` in degree `|τ| - 1`.
    Plain,
    /// Augmented: `∅` in degree −1.
    Reduced,
    /// Augmented and shifted up by one: face `τ` in degree `|τ|`.
    Suspended,
}

impl ChainVariant {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(ChainVariant::Plain),
            "reduced" => Ok(ChainVariant::Reduced),
            "suspended" | "suspended-reduced" | "suspended_reduced" => Ok(ChainVariant::Suspended),
            _ => input(format!("unknown chain variant `{s}`")),
        }
    }
}

/// Column-sparse integer matrix; column `j` lists the nonzero entries of the image of basis `j`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    /// Dense row-major copy.
    pub fn dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0i64; self.cols.len()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                d[i as usize][j] += v;
            }
        }
        d
    }

    /// Dense row-major copy of the transpose.
    pub fn dense_transpose(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0i64; self.rows]; self.cols.len()];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                d[j][i as usize] += v;
            }
        }
        d
    }

    /// Dense rows reduced into a field.
    pub fn dense_in<F: Field>(&self, f: &F) -> Vec<Vec<F::E>> {
        let mut d = vec![vec![f.zero(); self.cols.len()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                d[i as usize][j] = f.add(&d[i as usize][j], &f.from_i64(v));
            }
        }
        d
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.rows, other.cols.len());
        for (j, col) in other.cols.iter().enumerate() {
            let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
            for &(k, v) in col {
                for &(i, w) in &self.cols[k as usize] {
                    *acc.entry(i).or_insert(0) += v * w;
                }
            }
            out.cols[j] = acc.into_iter().filter(|&(_, v)| v != 0).collect();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(|&(_, v)| v == 0))
    }
}

/// A bounded chain complex. Degree `d` lives at index `d - lo`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub coeffs: Coefficients,
    pub lo: i32,
    /// Opaque basis labels per degree (face masks, packed pairs, …).
    pub bases: Vec<Vec<u64>>,
    /// `boundaries[d - lo] : C_d → C_{d-1}`; the lowest one maps to the zero module.
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn zero(coeffs: Coefficients) -> Self {
        ChainComplex {
            coeffs,
            lo: 0,
            bases: Vec::new(),
            boundaries: Vec::new(),
        }
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.bases.len() as i32 - 1
    }

    pub fn dim(&self, d: i32) -> usize {
        if d < self.lo || d > self.hi() {
            0
        } else {
            self.bases[(d - self.lo) as usize].len()
        }
    }

    pub fn basis(&self, d: i32) -> &[u64] {
        if d < self.lo || d > self.hi() {
            &[]
        } else {
            &self.bases[(d - self.lo) as usize]
        }
    }

    /// `∂_d`, a zero matrix outside the stored range.
    pub fn boundary(&self, d: i32) -> SparseMatrix {
        if d < self.lo || d > self.hi() {
            SparseMatrix::zero(self.dim(d - 1), self.dim(d))
        } else {
            self.boundaries[(d - self.lo) as usize].clone()
        }
    }

    fn boundary_ref(&self, d: i32) -> Option<&SparseMatrix> {
        if d < self.lo || d > self.hi() {
            None
        } else {
            Some(&self.boundaries[(d - self.lo) as usize])
        }
    }

    /// Checks `∂ ∘ ∂ = 0` in every degree.
    pub fn check_dd(&self) -> Result<()> {
        for d in self.lo + 1..=self.hi() {
            let (Some(a), Some(b)) = (self.boundary_ref(d - 1), self.boundary_ref(d)) else {
                continue;
            };
            if !a.compose(b).is_zero() {
                return invariant(format!("d∘d ≠ 0 at degree {d}"));
            }
        }
        Ok(())
    }

    pub fn total_rank(&self) -> usize {
        self.bases.iter().map(|b| b.len()).sum()
    }

    /// Euler characteristic of the chain groups.
    pub fn euler(&self) -> i64 {
        (self.lo..=self.hi())
            .map(|d| if d.rem_euclid(2) == 0 { 1 } else { -1 } * self.dim(d) as i64)
            .sum()
    }

    /// Builds from per-degree labels and a boundary rule giving `(label, coefficient)` terms.
    pub fn from_rule(
        coeffs: Coefficients,
        lo: i32,
        bases: Vec<Vec<u64>>,
        mut rule: impl FnMut(i32, u64) -> Vec<(u64, i64)>,
    ) -> Result<Self> {
        let index: Vec<HashMap<u64, u32>> = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, &l)| (l, i as u32)).collect())
            .collect();
        let mut boundaries = Vec::with_capacity(bases.len());
        for (k, b) in bases.iter().enumerate() {
            let d = lo + k as i32;
            let rows = if k == 0 { 0 } else { bases[k - 1].len() };
            let mut m = SparseMatrix::zero(rows, b.len());
            for (j, &label) in b.iter().enumerate() {
                let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
                for (t, c) in rule(d, label) {
                    if k == 0 {
                        return invariant(format!("boundary of degree-{d} generator leaves the range"));
                    }
                    let Some(&i) = index[k - 1].get(&t) else {
                        return invariant(format!("boundary term {t} missing from degree {}", d - 1));
                    };
                    *acc.entry(i).or_insert(0) += c;
                }
                m.cols[j] = acc.into_iter().filter(|&(_, v)| v != 0).collect();
            }
            boundaries.push(m);
        }
        let c = ChainComplex {
            coeffs,
            lo,
            bases,
            boundaries,
        };
        c.check_dd()?;
        Ok(c)
    }

    /// Position of each label per degree.
    pub fn index_of(&self, d: i32) -> HashMap<u64, usize> {
        self.basis(d).iter().enumerate().map(|(i, &l)| (l, i)).collect()
    }
}

/// Simplicial chains of `K`. Labels are face masks; bases ascend numerically.
pub fn simplicial_chain(k: &SimplicialComplex, variant: ChainVariant, coeffs: Coefficients) -> ChainComplex {
    if k.is_void() {
        return ChainComplex::zero(coeffs);
    }
    let (lo, shift, keep_empty) = match variant {
        ChainVariant::Plain => (0, -1, false),
        ChainVariant::Reduced => (-1, -1, true),
        ChainVariant::Suspended => (0, 0, true),
    };
    let top = k
        .faces()
        .iter()
        .map(|&f| bits::size(f) as i32 + shift)
        .max()
        .unwrap_or(lo);
    if top < lo {
        return ChainComplex::zero(coeffs);
    }
    let mut bases: Vec<Vec<u64>> = vec![Vec::new(); (top - lo + 1) as usize];
    for &f in k.faces() {
        if f == 0 && !keep_empty {
            continue;
        }
        let d = bits::size(f) as i32 + shift;
        bases[(d - lo) as usize].push(f as u64);
    }
    ChainComplex::from_rule(coeffs, lo, bases, |_, label| face_boundary(label as u32, keep_empty))
        .expect("simplicial boundary is well formed")
}

/// `∂{v_0 < … < v_k} = Σ (−1)^j {…v̂_j…}`.
pub fn face_boundary(f: u32, keep_empty: bool) -> Vec<(u64, i64)> {
    let mut out = Vec::new();
    for (j, v) in bits::elements(f).enumerate() {
        let g = f & !(1 << v);
        if g == 0 && !keep_empty {
            continue;
        }
        out.push((g as u64, if j % 2 == 0 { 1 } else { -1 }));
    }
    out
}

/// `C ⊗ D` with `d(a⊗b) = da⊗b + (−1)^{|a|} a⊗db`. Labels pack the two basis positions.
pub fn tensor(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex> {
    if c.coeffs != d.coeffs {
        return input("tensor product of complexes with different coefficients");
    }
    if c.total_rank() == 0 || d.total_rank() == 0 {
        return Ok(ChainComplex::zero(c.coeffs));
    }
    let lo = c.lo + d.lo;
    let hi = c.hi() + d.hi();
    let mut bases: Vec<Vec<u64>> = vec![Vec::new(); (hi - lo + 1) as usize];
    // label = (degree_a offset, index_a, index_b) packed; degree of a recoverable from label.
    for p in c.lo..=c.hi() {
        for q in d.lo..=d.hi() {
            for i in 0..c.dim(p) {
                for j in 0..d.dim(q) {
                    bases[(p + q - lo) as usize].push(pack(p - c.lo, i, j));
                }
            }
        }
    }
    let cb: Vec<SparseMatrix> = (c.lo..=c.hi()).map(|p| c.boundary(p)).collect();
    let db: Vec<SparseMatrix> = (d.lo..=d.hi()).map(|q| d.boundary(q)).collect();
    ChainComplex::from_rule(c.coeffs, lo, bases, |deg, label| {
        let (pa, i, j) = unpack(label);
        let p = c.lo + pa as i32;
        let q = deg - p;
        let mut out = Vec::new();
        for &(r, v) in &cb[(p - c.lo) as usize].cols[i] {
            out.push((pack(p - 1 - c.lo, r as usize, j), v));
        }
        let sign = if p.rem_euclid(2) == 0 { 1 } else { -1 };
        for &(r, v) in &db[(q - d.lo) as usize].cols[j] {
            out.push((pack(p - c.lo, i, r as usize), sign * v));
        }
        out
    })
}

fn pack(pa: i32, i: usize, j: usize) -> u64 {
    ((pa as u64 & 0xFFFF) << 48) | ((i as u64 & 0xFF_FFFF) << 24) | (j as u64 & 0xFF_FFFF)
}

fn unpack(l: u64) -> (u64, usize, usize) {
    (l >> 48, ((l >> 24) & 0xFF_FFFF) as usize, (l & 0xFF_FFFF) as usize)
}

/// One nonzero homology group: free rank plus torsion coefficients (> 1, divisibility order).
/// Over a field `free_rank` is the Betti number and `torsion` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
pub struct DegreeGroup {
    pub degree: i32,
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

/// Nonzero groups only, ascending by degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct HomologySummary {
    pub groups: Vec<DegreeGroup>,
}

impl HomologySummary {
    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    /// Builds from arbitrary groups, merging equal degrees and dropping zeros.
    pub fn from_groups(gs: impl IntoIterator<Item = DegreeGroup>) -> Self {
        let mut map: BTreeMap<i32, (usize, Vec<u64>)> = BTreeMap::new();
        for g in gs {
            let e = map.entry(g.degree).or_default();
            e.0 += g.free_rank;
            e.1.extend(g.torsion);
        }
        let groups = map
            .into_iter()
            .filter_map(|(degree, (free_rank, t))| {
                let torsion = normalize_torsion(t);
                (free_rank > 0 || !torsion.is_empty()).then_some(DegreeGroup {
                    degree,
                    free_rank,
                    torsion,
                })
            })
            .collect();
        HomologySummary { groups }
    }

    /// A single free group `Z^r` (or `k^r`) in degree `d`.
    pub fn free(d: i32, r: usize) -> Self {
        Self::from_groups([DegreeGroup {
            degree: d,
            free_rank: r,
            torsion: vec![],
        }])
    }

    pub fn group(&self, d: i32) -> Option<&DegreeGroup> {
        self.groups.iter().find(|g| g.degree == d)
    }

    pub fn free_rank(&self, d: i32) -> usize {
        self.group(d).map_or(0, |g| g.free_rank)
    }

    /// Free ranks by degree.
    pub fn ranks(&self) -> BTreeMap<i32, usize> {
        self.groups
            .iter()
            .filter(|g| g.free_rank > 0)
            .map(|g| (g.degree, g.free_rank))
            .collect()
    }

    pub fn has_torsion(&self) -> bool {
        self.groups.iter().any(|g| !g.torsion.is_empty())
    }

    pub fn shifted(&self, k: i32) -> Self {
        HomologySummary {
            groups: self
                .groups
                .iter()
                .map(|g| DegreeGroup {
                    degree: g.degree + k,
                    ..g.clone()
                })
                .collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::from_groups(self.groups.iter().chain(other.groups.iter()).cloned())
    }

    /// Tensor with a free graded module given by ranks per degree.
    pub fn tensor_free(&self, ranks: &BTreeMap<i32, usize>) -> Self {
        let mut out = Vec::new();
        for g in &self.groups {
            for (&d, &r) in ranks {
                if r == 0 {
                    continue;
                }
                let torsion = g.torsion.iter().flat_map(|&t| std::iter::repeat_n(t, r)).collect();
                out.push(DegreeGroup {
                    degree: g.degree + d,
                    free_rank: g.free_rank * r,
                    torsion,
                });
            }
        }
        Self::from_groups(out)
    }

    pub fn total_free_rank(&self) -> usize {
        self.groups.iter().map(|g| g.free_rank).sum()
    }
}

/// Sorts cyclic orders into invariant-factor form (each divides the next).
pub fn normalize_torsion(t: Vec<u64>) -> Vec<u64> {
    let d = crate::snf::normalize_diagonal(t.into_iter().map(BigInt::from).collect());
    d.into_iter()
        .filter(|x| !x.is_one())
        .map(|x| x.to_u64().expect("torsion fits in u64"))
        .collect()
}

/// Rank and nontrivial invariant factors of one boundary matrix.
fn matrix_data(m: &SparseMatrix, coeffs: Coefficients, transpose: bool) -> (usize, Vec<u64>) {
    if m.rows == 0 || m.cols.is_empty() || m.is_zero() {
        return (0, Vec::new());
    }
    match coeffs {
        Coefficients::Integers | Coefficients::Rationals => {
            let (dense, ncols) = if transpose {
                (m.dense_transpose(), m.rows)
            } else {
                (m.dense(), m.ncols())
            };
            let f = invariant_factors(&dense, ncols);
            let tors = if coeffs == Coefficients::Integers {
                f.iter()
                    .filter(|x| !x.is_one())
                    .map(|x| x.to_u64().expect("torsion fits in u64"))
                    .collect()
            } else {
                Vec::new()
            };
            (f.len(), tors)
        }
        Coefficients::Prime(p) => {
            let r = if p == 2 {
                gf2_rank(m)
            } else {
                rank(&Fp::new(p), &m.dense_in(&Fp::new(p)), m.ncols())
            };
            (r, Vec::new())
        }
    }
}

/// Rank over F_2 with packed rows.
pub fn gf2_rank(m: &SparseMatrix) -> usize {
    let words = m.cols.len().div_ceil(64);
    let mut rows: Vec<Vec<u64>> = vec![vec![0u64; words]; m.rows];
    for (j, col) in m.cols.iter().enumerate() {
        for &(i, v) in col {
            if v.rem_euclid(2) == 1 {
                rows[i as usize][j / 64] ^= 1 << (j % 64);
            }
        }
    }
    let mut rank = 0;
    let mut r0 = 0;
    for c in 0..m.cols.len() {
        let (w, b) = (c / 64, 1u64 << (c % 64));
        let Some(p) = (r0..rows.len()).find(|&i| rows[i][w] & b != 0) else {
            continue;
        };
        rows.swap(r0, p);
        let pivot = rows[r0].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r0 && row[w] & b != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        r0 += 1;
        rank += 1;
    }
    rank
}

/// Homology of `C`: invariant factors over Z, Betti numbers over a field.
pub fn homology(c: &ChainComplex) -> HomologySummary {
    summarize(c, false)
}

/// Cohomology of `C` computed from transposed boundaries.
pub fn cohomology(c: &ChainComplex) -> HomologySummary {
    summarize(c, true)
}

fn summarize(c: &ChainComplex, co: bool) -> HomologySummary {
    if c.total_rank() == 0 {
        return HomologySummary::default();
    }
    // data[d - lo] describes ∂_d; one extra slot for ∂_{hi+1} = 0.
    let data: Vec<(usize, Vec<u64>)> = (c.lo..=c.hi() + 1)
        .map(|d| matrix_data(&c.boundary(d), c.coeffs, co))
        .collect();
    let at = |d: i32| -> &(usize, Vec<u64>) { &data[(d - c.lo) as usize] };
    let mut gs = Vec::new();
    for d in c.lo..=c.hi() {
        let n = c.dim(d);
        let r_out = at(d).0;
        let r_in = at(d + 1).0;
        let free_rank = n - r_out - r_in;
        // Homology torsion comes from ∂_{d+1}; cohomology torsion from δ^{d-1} = ∂_d^T.
        let torsion = if co { at(d).1.clone() } else { at(d + 1).1.clone() };
        gs.push(DegreeGroup {
            degree: d,
            free_rank,
            torsion,
        });
    }
    HomologySummary::from_groups(gs)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::bits::from_vertices as v;

    fn z() -> Coefficients {
        Coefficients::Integers
    }

    pub(crate) fn rp2() -> SimplicialComplex {
        let tris = [
            [1, 2, 3],
            [1, 3, 4],
            [1, 4, 5],
            [1, 5, 6],
            [1, 2, 6],
            [2, 3, 5],
            [2, 4, 5],
            [2, 4, 6],
            [3, 4, 6],
            [3, 5, 6],
        ];
        let facets: Vec<u32> = tris.iter().map(|t| v(t)).collect();
        SimplicialComplex::from_facets(6, &facets).unwrap()
    }

    #[test]
    fn circle_homology() {
        let k = SimplicialComplex::boundary(3, 0b111);
        let h = homology(&simplicial_chain(&k, ChainVariant::Plain, z()));
        assert_eq!(h, HomologySummary::free(0, 1).direct_sum(&HomologySummary::free(1, 1)));
        let s = homology(&simplicial_chain(&k, ChainVariant::Suspended, z()));
        assert_eq!(s, HomologySummary::free(2, 1));
    }

    #[test]
    fn projective_plane_has_two_torsion() {
        let h = homology(&simplicial_chain(&rp2(), ChainVariant::Plain, z()));
        assert_eq!(h.group(1).unwrap().torsion, vec![2]);
        assert_eq!(h.free_rank(1), 0);
        assert_eq!(h.free_rank(2), 0);
        let co = cohomology(&simplicial_chain(&rp2(), ChainVariant::Plain, z()));
        assert_eq!(co.group(2).unwrap().torsion, vec![2]);
        assert!(co.group(1).is_none());
        let f2 = homology(&simplicial_chain(&rp2(), ChainVariant::Plain, Coefficients::Prime(2)));
        assert_eq!((f2.free_rank(0), f2.free_rank(1), f2.free_rank(2)), (1, 1, 1));
    }

    #[test]
    fn empty_complex_reduced() {
        let h = homology(&simplicial_chain(
            &SimplicialComplex::empty(2),
            ChainVariant::Reduced,
            z(),
        ));
        assert_eq!(h, HomologySummary::free(-1, 1));
        let v = homology(&simplicial_chain(
            &SimplicialComplex::void(2),
            ChainVariant::Reduced,
            z(),
        ));
        assert!(v.is_zero());
    }

    #[test]
    fn square_over_f2() {
        let k = SimplicialComplex::from_facets(4, &[v(&[1, 2]), v(&[2, 3]), v(&[3, 4]), v(&[1, 4])]).unwrap();
        let h = homology(&simplicial_chain(&k, ChainVariant::Plain, Coefficients::Prime(2)));
        assert_eq!((h.free_rank(0), h.free_rank(1)), (1, 1));
    }

    #[test]
    fn tensor_of_suspended_points_matches_join() {
        let s0 = SimplicialComplex::boundary(2, 0b11);
        let c = simplicial_chain(&s0, ChainVariant::Suspended, z());
        let t = tensor(&c, &c).unwrap();
        let j = SimplicialComplex::join(&s0, &s0).unwrap();
        assert_eq!(
            homology(&t),
            homology(&simplicial_chain(&j, ChainVariant::Suspended, z()))
        );
        assert_eq!(homology(&t), HomologySummary::free(2, 1));
        assert!(tensor(&c, &ChainComplex::zero(z())).unwrap().total_rank() == 0);
    }
}
