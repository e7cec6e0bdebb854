//! Monomial ideals: face ideals with exponents, Tor over a field through the Taylor complex,
//! the Hochster comparison, and composition ideals.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bits::{self, Mask};
use crate::chain;
use crate::complex::SimplicialComplex;
use crate::error::{input, Error, Result};
use crate::field::FieldKind;
use crate::polyhedral::composition_complex;
use crate::ring::linalg;
use crate::total::{local_suspended_chain, IndexPair};

/// Largest generator count the Taylor complex accepts.
pub const TAYLOR_CAP: usize = 20;

pub type Exponents = Vec<u32>;

/// Monomial ideal of `k[x_1..x_n]` by a minimal generator list, in first-seen order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    pub num_vars: usize,
    pub generators: Vec<Exponents>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

impl MonomialIdeal {
    /// Drops duplicates and every generator divisible by another one.
    pub fn new(num_vars: usize, generators: Vec<Exponents>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != num_vars) {
            return input(format!("exponent vector {g:?} does not have {num_vars} entries"));
        }
        let mut kept: Vec<Exponents> = Vec::new();
        for (i, g) in generators.iter().enumerate() {
            let redundant = generators
                .iter()
                .enumerate()
                .any(|(j, h)| j != i && divides(h, g) && (h != g || j < i));
            if !redundant {
                kept.push(g.clone());
            }
        }
        Ok(MonomialIdeal {
            num_vars,
            generators: kept,
        })
    }

    pub fn zero(num_vars: usize) -> Self {
        MonomialIdeal {
            num_vars,
            generators: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Same generators as a set.
    pub fn same_generators(&self, other: &Self) -> bool {
        let mut a = self.generators.clone();
        let mut b = other.generators.clone();
        a.sort();
        b.sort();
        self.num_vars == other.num_vars && a == b
    }

    /// Text form, one generator per line as space-separated exponents.
    pub fn parse(text: &str) -> Result<Self> {
        let mut gens = Vec::new();
        for line in text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let g: Exponents = line
                .split_whitespace()
                .map(|x| x.parse().map_err(|_| Error::Input(format!("bad exponent `{x}`"))))
                .collect::<Result<_>>()?;
            gens.push(g);
        }
        let n = gens.first().map_or(0, |g| g.len());
        Self::new(n, gens)
    }
}

/// Face ideal with exponents. The void complex gives the unit ideal and the full simplex
/// the zero ideal.
fn face_ideal(k: &SimplicialComplex, r: &[u32]) -> MonomialIdeal {
    let m = k.ground_size();
    let gens = k
        .minimal_nonfaces()
        .into_iter()
        .map(|s| (0..m).map(|i| if s >> i & 1 == 1 { r[i] } else { 0 }).collect())
        .collect();
    MonomialIdeal {
        num_vars: m,
        generators: gens,
    }
}

/// `I_{(K; r)}`: generated by `∏_{i∈τ} x_i^{r_i}` over minimal non-faces `τ`.
pub fn stanley_reisner(k: &SimplicialComplex, r: &[u32]) -> Result<MonomialIdeal> {
    let m = k.ground_size();
    if k.is_void() || k.is_simplex_on(bits::full(m)) {
        return input("the face ideal needs K to be neither void nor the full simplex");
    }
    if r.len() != m || r.contains(&0) {
        return input(format!("need {m} positive exponents"));
    }
    Ok(face_ideal(k, r))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorModule {
    /// `Tor_i(I, k)`, equal to `Tor_{i+1}(R/I, k)`.
    Ideal,
    Quotient,
}

impl TorModule {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "ideal" => Ok(TorModule::Ideal),
            "quotient" => Ok(TorModule::Quotient),
            _ => input(format!("unknown module `{s}` (ideal, quotient)")),
        }
    }
}

/// Multigraded Betti numbers: `(i, multidegree) ↦ dim`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, Exponents), usize>,
}

impl BettiTable {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total dimension per homological degree.
    pub fn totals(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for ((i, _), d) in &self.entries {
            *out.entry(*i).or_insert(0) += d;
        }
        out
    }

    fn add(&mut self, i: usize, deg: Exponents, d: usize) {
        if d > 0 {
            *self.entries.entry((i, deg)).or_insert(0) += d;
        }
    }
}

fn sign(odd: bool) -> BigRational {
    if odd {
        -BigRational::one()
    } else {
        BigRational::one()
    }
}

/// Tor against the residue field from the Taylor resolution. Subsets of generators with the
/// same lcm form a subcomplex after tensoring with `k`, so each multidegree is handled alone.
pub fn taylor_tor(ideal: &MonomialIdeal, module: TorModule, field: FieldKind) -> Result<BettiTable> {
    let r = ideal.generators.len();
    if r > TAYLOR_CAP {
        return Err(Error::Refused(format!(
            "{r} generators exceeds the Taylor cap of {TAYLOR_CAP}"
        )));
    }
    let mut table = BettiTable::default();
    if module == TorModule::Quotient {
        table.add(0, vec![0; ideal.num_vars], 1);
    }
    if r == 0 {
        return Ok(table);
    }
    // lcm of every nonempty subset, interned.
    let mut ids: HashMap<Exponents, u32> = HashMap::new();
    let mut degs: Vec<Exponents> = Vec::new();
    let mut of = vec![u32::MAX; 1 << r];
    for s in 1u32..(1 << r) {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let l = if rest == 0 {
            ideal.generators[low].clone()
        } else {
            lcm(&degs[of[rest as usize] as usize], &ideal.generators[low])
        };
        let id = *ids.entry(l.clone()).or_insert_with(|| {
            degs.push(l);
            (degs.len() - 1) as u32
        });
        of[s as usize] = id;
    }
    let mut groups: Vec<Vec<Mask>> = vec![Vec::new(); degs.len()];
    for s in 1u32..(1 << r) {
        groups[of[s as usize] as usize].push(s);
    }
    let results: Vec<Vec<(usize, usize)>> = groups
        .par_iter()
        .enumerate()
        .map(|(g, subsets)| {
            let mut by_size: BTreeMap<usize, Vec<Mask>> = BTreeMap::new();
            for &s in subsets {
                by_size.entry(bits::size(s)).or_default().push(s);
            }
            let index: HashMap<Mask, usize> = by_size
                .values()
                .flat_map(|v| v.iter().enumerate().map(|(i, &s)| (s, i)))
                .collect();
            // Rank of d: size q → size q − 1 within the group.
            let rank_of = |q: usize| -> usize {
                let (Some(src), Some(dst)) = (by_size.get(&q), by_size.get(&(q - 1))) else {
                    return 0;
                };
                let rows: Vec<Vec<BigRational>> = src
                    .iter()
                    .map(|&s| {
                        let mut row = vec![BigRational::zero(); dst.len()];
                        for (pos, j) in bits::elements(s).enumerate() {
                            let t = s & !(1 << j);
                            if t != 0 && of[t as usize] as usize == g {
                                row[index[&t]] = sign(pos % 2 == 1);
                            }
                        }
                        row
                    })
                    .collect();
                linalg::rank(field, &rows, dst.len())
            };
            let mut out = Vec::new();
            for (&q, v) in &by_size {
                let d = v.len() - if q > 1 { rank_of(q) } else { 0 } - rank_of(q + 1);
                out.push((q, d));
            }
            out
        })
        .collect();
    for (g, res) in results.into_iter().enumerate() {
        for (q, d) in res {
            let i = match module {
                TorModule::Ideal => q - 1,
                TorModule::Quotient => q,
            };
            table.add(i, degs[g].clone(), d);
        }
    }
    Ok(table)
}

/// Field Betti numbers of block `(σ, ω)` of `K` by block degree.
fn block_ranks(k: &SimplicialComplex, p: IndexPair, field: FieldKind) -> BTreeMap<i32, usize> {
    if k.is_void() || !k.contains(p.sigma) {
        return BTreeMap::new();
    }
    let c = local_suspended_chain(k, p, field.coefficients());
    chain::homology(&c)
        .ranks()
        .into_iter()
        .filter(|(_, r)| *r > 0)
        .collect()
}

/// `⊕_{ω∉K} H^{|ω|−i−1}_{∅,ω}(K)` in multidegree `Σ_{j∈ω} r_j e_j`.
pub fn hochster_sum(k: &SimplicialComplex, r: &[u32], field: FieldKind) -> BettiTable {
    let m = k.ground_size();
    let mut table = BettiTable::default();
    for omega in 0..=bits::full(m) {
        if k.contains(omega) {
            continue;
        }
        let deg: Exponents = (0..m).map(|j| if omega >> j & 1 == 1 { r[j] } else { 0 }).collect();
        // Over a field, cohomology and homology of a block have equal ranks.
        for (d, rank) in block_ranks(k, IndexPair { sigma: 0, omega }, field) {
            let i = bits::size(omega) as i32 - d - 1;
            if i >= 0 {
                table.add(i as usize, deg.clone(), rank);
            }
        }
        if omega == bits::full(m) {
            break;
        }
    }
    table
}

/// Taylor Tor of `I_{(K;r)}` next to the Hochster sum, and whether they agree entrywise.
pub fn hochster_check(k: &SimplicialComplex, r: &[u32], field: FieldKind) -> Result<(BettiTable, BettiTable, bool)> {
    let ideal = stanley_reisner(k, r)?;
    let left = taylor_tor(&ideal, TorModule::Ideal, field)?;
    let right = hochster_sum(k, r, field);
    let ok = left == right;
    Ok((left, right, ok))
}

/// `Z^⊗(K; I_1, …, I_m)` in `k[x]` on `n_1 + … + n_m` variables: the sum over faces `τ` of
/// the products `∏_{k∉τ} I_k`.
pub fn composition_ideal(k: &SimplicialComplex, ideals: &[MonomialIdeal]) -> Result<MonomialIdeal> {
    let m = k.ground_size();
    if ideals.len() != m {
        return input(format!("complex on [{m}] needs {m} ideals, got {}", ideals.len()));
    }
    let offsets: Vec<usize> = ideals
        .iter()
        .scan(0, |acc, i| {
            let o = *acc;
            *acc += i.num_vars;
            Some(o)
        })
        .collect();
    let n: usize = ideals.iter().map(|i| i.num_vars).sum();
    if k.is_void() {
        return Ok(MonomialIdeal::zero(n));
    }
    let mut gens = Vec::new();
    for tau in k.facets() {
        let mut partial: Vec<Exponents> = vec![vec![0; n]];
        for (j, ideal) in ideals.iter().enumerate() {
            if tau >> j & 1 == 1 {
                continue;
            }
            let mut next = Vec::new();
            for p in &partial {
                for g in &ideal.generators {
                    let mut e = p.clone();
                    for (v, x) in g.iter().enumerate() {
                        e[offsets[j] + v] += x;
                    }
                    next.push(e);
                }
            }
            partial = next;
        }
        gens.extend(partial);
    }
    MonomialIdeal::new(n, gens)
}

/// Both sides of the composition identity: `Z^⊗(K; I_{(L_k;r_k)})` and
/// `I_{(Z*(K°; L); r)}`, with `K°` the dual relative to `[m]`.
pub fn composition_identity(
    k: &SimplicialComplex,
    ls: &[SimplicialComplex],
    rs: &[Vec<u32>],
) -> Result<(MonomialIdeal, MonomialIdeal)> {
    if ls.len() != k.ground_size() || rs.len() != ls.len() {
        return input("need one complex and one exponent vector per vertex of K");
    }
    let ideals: Vec<MonomialIdeal> = ls
        .iter()
        .zip(rs)
        .map(|(l, r)| stanley_reisner(l, r))
        .collect::<Result<_>>()?;
    let left = composition_ideal(k, &ideals)?;
    let dual = if k.ground_size() == 0 {
        k.clone()
    } else {
        k.alexander_dual(bits::full(k.ground_size()))?
    };
    let z = composition_complex(&dual, ls)?;
    let r: Vec<u32> = rs.iter().flatten().copied().collect();
    Ok((left, face_ideal(&z, &r)))
}

fn convolve(a: &BTreeMap<usize, usize>, b: &BTreeMap<usize, usize>) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for (i, x) in a {
        for (j, y) in b {
            *out.entry(i + j).or_insert(0) += x * y;
        }
    }
    out.retain(|_, v| *v > 0);
    out
}

/// Tor dimensions per homological degree predicted by
/// `⊕_{σ∈K} H^{σ,[m]∖σ}_*(K) ⊗ (⊗_{k∉σ} Tor(I_k, k))`, with each `Tor(I_{(L_k;r_k)})` taken
/// from the Hochster sum.
pub fn composition_tor_formula(
    k: &SimplicialComplex,
    ls: &[SimplicialComplex],
    rs: &[Vec<u32>],
    field: FieldKind,
) -> BTreeMap<usize, usize> {
    let m = k.ground_size();
    let tors: Vec<BTreeMap<usize, usize>> = ls
        .iter()
        .zip(rs)
        .map(|(l, r)| hochster_sum(l, r, field).totals())
        .collect();
    let mut out = BTreeMap::new();
    if k.is_void() {
        return out;
    }
    for &sigma in k.faces() {
        let p = IndexPair {
            sigma,
            omega: bits::full(m) & !sigma,
        };
        let mut acc: BTreeMap<usize, usize> = block_ranks(k, p, field)
            .into_iter()
            .filter(|(d, _)| *d >= 0)
            .map(|(d, r)| (d as usize, r))
            .collect();
        for (j, t) in tors.iter().enumerate() {
            if sigma >> j & 1 == 0 {
                acc = convolve(&acc, t);
            }
        }
        for (d, x) in acc {
            *out.entry(d).or_insert(0) += x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(i: &MonomialIdeal) -> Vec<Exponents> {
        let mut g = i.generators.clone();
        g.sort();
        g
    }

    #[test]
    fn face_ideals_of_small_complexes() {
        let s0 = SimplicialComplex::boundary(2, 0b11);
        assert_eq!(gens(&stanley_reisner(&s0, &[1, 1]).unwrap()), vec![vec![1, 1]]);
        assert_eq!(gens(&stanley_reisner(&s0, &[2, 3]).unwrap()), vec![vec![2, 3]]);
        let square = SimplicialComplex::from_facets(4, &[0b0011, 0b0110, 0b1100, 0b1001]).unwrap();
        assert_eq!(
            gens(&stanley_reisner(&square, &[1; 4]).unwrap()),
            vec![vec![0, 1, 0, 1], vec![1, 0, 1, 0]]
        );
        assert!(stanley_reisner(&SimplicialComplex::void(2), &[1, 1]).is_err());
        assert!(stanley_reisner(&SimplicialComplex::simplex(2, 0b11), &[1, 1]).is_err());
    }

    #[test]
    fn minimalization_drops_multiples() {
        let i = MonomialIdeal::new(2, vec![vec![1, 1], vec![2, 1], vec![1, 1], vec![0, 3]]).unwrap();
        assert_eq!(i.generators, vec![vec![1, 1], vec![0, 3]]);
    }

    #[test]
    fn taylor_tor_of_principal_and_coprime_ideals() {
        let p = MonomialIdeal::new(2, vec![vec![1, 1]]).unwrap();
        let t = taylor_tor(&p, TorModule::Ideal, FieldKind::Rationals).unwrap();
        assert_eq!(t.entries, BTreeMap::from([((0, vec![1, 1]), 1)]));
        let c = MonomialIdeal::new(4, vec![vec![1, 0, 1, 0], vec![0, 1, 0, 1]]).unwrap();
        let t = taylor_tor(&c, TorModule::Ideal, FieldKind::Prime(2)).unwrap();
        assert_eq!(t.totals(), BTreeMap::from([(0, 2), (1, 1)]));
        assert_eq!(t.entries[&(1, vec![1, 1, 1, 1])], 1);
        let q = taylor_tor(&c, TorModule::Quotient, FieldKind::Prime(2)).unwrap();
        assert_eq!(q.totals(), BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
        assert!(
            taylor_tor(&MonomialIdeal::zero(3), TorModule::Ideal, FieldKind::Rationals)
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn hochster_on_examples() {
        let s0 = SimplicialComplex::boundary(2, 0b11);
        let (l, r, ok) = hochster_check(&s0, &[1, 1], FieldKind::Rationals).unwrap();
        assert!(ok);
        assert_eq!(l.entries, BTreeMap::from([((0, vec![1, 1]), 1)]));
        assert_eq!(l, r);
        let square = SimplicialComplex::from_facets(4, &[0b0011, 0b0110, 0b1100, 0b1001]).unwrap();
        let (l, _, ok) = hochster_check(&square, &[1; 4], FieldKind::Prime(2)).unwrap();
        assert!(ok);
        assert_eq!(l.totals(), BTreeMap::from([(0, 2), (1, 1)]));
    }

    #[test]
    fn composition_of_boundaries() {
        let s0 = SimplicialComplex::boundary(2, 0b11);
        let (l, r) = composition_identity(&s0, &[s0.clone(), s0.clone()], &[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(l.same_generators(&r));
        // K° = {∅} relative to [2]: Z*({∅}; ∂Δ, ∂Δ) = ∂Δ^[2] * ∂Δ^[2] = the 4-gon.
        assert_eq!(gens(&r), vec![vec![0, 0, 1, 1], vec![1, 1, 0, 0]]);
    }

    #[test]
    fn single_vertex_composition_is_the_ideal() {
        let k = SimplicialComplex::empty(1);
        let i = MonomialIdeal::new(2, vec![vec![1, 2]]).unwrap();
        assert!(composition_ideal(&k, std::slice::from_ref(&i))
            .unwrap()
            .same_generators(&i));
    }
}
