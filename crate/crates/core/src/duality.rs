//! Alexander duality for local complexes: face-set identities, the complementation chain map
//! and its certificates, and the dual of a composition complex.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{self, Mask};
use crate::chain::{cohomology, DegreeGroup, HomologySummary};
use crate::complex::SimplicialComplex;
use crate::decomposition::{join_total_homology, local_homology};
use crate::error::{input, invariant, Result};
use crate::field::{show_rational, Coefficients, FieldKind};
use crate::polyhedral::{composition_complex, PairSequence};
use crate::ring::linalg::{self, CohomologyBasis};
use crate::total::{local_suspended_chain, IndexPair, Universe};

/// `K°` relative to the whole ground set.
pub fn dual_complex(k: &SimplicialComplex) -> Result<SimplicialComplex> {
    let m = k.ground_size();
    if m == 0 {
        return input("dual of a complex on an empty ground set");
    }
    k.alexander_dual(bits::full(m))
}

/// `(σ', ω)` with `σ' = [m] ∖ (σ ∪ ω)`.
pub fn dual_pair(p: IndexPair, m: usize) -> IndexPair {
    IndexPair {
        sigma: p.rest(m),
        omega: p.omega,
    }
}

fn check_pair(k: &SimplicialComplex, p: IndexPair) -> Result<()> {
    let full = bits::full(k.ground_size());
    if p.omega == 0 {
        return input("duality needs ω ≠ ∅");
    }
    if p.sigma & p.omega != 0 || (p.sigma | p.omega) & !full != 0 {
        return input(format!("{p} is not an index pair on [{}]", k.ground_size()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualLocalWitness {
    pub pair: IndexPair,
    pub dual_pair: IndexPair,
    /// `(K_{σ,ω})°` relative to ω.
    pub dual_of_local: SimplicialComplex,
    /// `(K°)_{σ',ω}`.
    pub local_of_dual: SimplicialComplex,
    pub equal: bool,
}

pub fn dual_local_identity(k: &SimplicialComplex, p: IndexPair) -> Result<DualLocalWitness> {
    check_pair(k, p)?;
    let m = k.ground_size();
    let q = dual_pair(p, m);
    let dual_of_local = k.local_complex(p.sigma, p.omega).alexander_dual(p.omega)?;
    let local_of_dual = dual_complex(k)?.local_complex(q.sigma, q.omega);
    let equal = dual_of_local == local_of_dual;
    Ok(DualLocalWitness {
        pair: p,
        dual_pair: q,
        dual_of_local,
        local_of_dual,
        equal,
    })
}

/// A sign rule `η ↦ (−1)^e(η, ω)` for the complementation map `η ↦ ±(ω∖η)`.
struct SignRule {
    name: &'static str,
    exponent: fn(Mask, Mask) -> usize,
}

fn position_sum(eta: Mask, omega: Mask) -> usize {
    bits::elements(eta).map(|v| bits::rank_below(omega, v)).sum()
}

/// Tried in order. The first four depend on `|η|` and `|ω|` only.
const SIGN_RULES: &[SignRule] = &[
    SignRule {
        name: "0",
        exponent: |_, _| 0,
    },
    SignRule {
        name: "|η|",
        exponent: |e, _| bits::size(e),
    },
    SignRule {
        name: "|η|(|η|-1)/2",
        exponent: |e, _| bits::size(e) * bits::size(e).saturating_sub(1) / 2,
    },
    SignRule {
        name: "|η||ω|",
        exponent: |e, w| bits::size(e) * bits::size(w),
    },
    SignRule {
        name: "Σ_{v∈η} pos_ω(v)",
        exponent: position_sum,
    },
    SignRule {
        name: "Σ_{v∈η} pos_ω(v) + |η|",
        exponent: |e, w| position_sum(e, w) + bits::size(e),
    },
];

fn sign(rule: &SignRule, eta: Mask, omega: Mask) -> i64 {
    if (rule.exponent)(eta, omega).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Checks that `ψ(η) = ε(η)·(ω∖η)*` maps the relative chains `C(Δ^ω, L)` onto the suspended
/// cochains of `dual` and commutes with the differentials: `ψ∂ = δψ`.
fn complementation_commutes(local: &SimplicialComplex, dual: &SimplicialComplex, omega: Mask, rule: &SignRule) -> bool {
    let relative: Vec<Mask> = bits::submasks(omega).filter(|&e| !local.contains(e)).collect();
    let dual_count = if dual.is_void() { 0 } else { dual.num_faces() };
    if relative.len() != dual_count {
        return false;
    }
    for &eta in &relative {
        if !dual.contains(omega & !eta) {
            return false;
        }
        let mut lhs: BTreeMap<Mask, i64> = BTreeMap::new();
        for (j, v) in bits::elements(eta).enumerate() {
            let face = eta & !(1 << v);
            if local.contains(face) {
                continue;
            }
            let s = if j % 2 == 0 { 1 } else { -1 };
            *lhs.entry(omega & !face).or_insert(0) += s * sign(rule, face, omega);
        }
        let rho = omega & !eta;
        let e = sign(rule, eta, omega);
        let mut rhs: BTreeMap<Mask, i64> = BTreeMap::new();
        for v in bits::elements(eta) {
            let up = rho | (1 << v);
            if !dual.contains(up) {
                continue;
            }
            let s = if bits::rank_below(rho, v).is_multiple_of(2) {
                1
            } else {
                -1
            };
            *rhs.entry(up).or_insert(0) += s * e;
        }
        lhs.retain(|_, c| *c != 0);
        rhs.retain(|_, c| *c != 0);
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Matrix of the induced map in one homological degree of the source, entries as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeMatrix {
    pub degree: i32,
    pub target_degree: i32,
    pub rows: Vec<Vec<String>>,
    pub invertible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityCertificate {
    pub pair: IndexPair,
    pub dual_pair: IndexPair,
    pub coeffs: Coefficients,
    /// `H_*^{σ,ω}(K)`.
    pub left: HomologySummary,
    /// `H^*_{σ',ω}(K°)` in its own (cohomological) degrees.
    pub right: HomologySummary,
    /// Per-degree groups agree under `q ↦ |ω| − q − 1` (and every matrix is invertible).
    pub matched: bool,
    /// Exponent of the complementation sign that made ψ a chain map.
    pub sign_rule: String,
    pub matrices: Option<Vec<DegreeMatrix>>,
}

/// Moves degree `q` to `w − q − 1`.
pub fn reflect(h: &HomologySummary, w: usize) -> HomologySummary {
    HomologySummary::from_groups(h.groups.iter().map(|g| DegreeGroup {
        degree: w as i32 - g.degree - 1,
        ..g.clone()
    }))
}

/// Certificate for `H_*^{σ,ω}(K) ≅ H^{|ω|−*−1}_{σ',ω}(K°)`. With `explicit` and field
/// coefficients, also the matrices of `[z] ↦ [ψ(c(z))]`, where `c` is the cone on the least
/// vertex of ω (so `∂c(z) = z`) followed by the projection to relative chains.
pub fn gamma_certificate(
    k: &SimplicialComplex,
    p: IndexPair,
    coeffs: Coefficients,
    explicit: bool,
) -> Result<DualityCertificate> {
    let witness = dual_local_identity(k, p)?;
    let m = k.ground_size();
    let q = witness.dual_pair;
    let kd = dual_complex(k)?;
    let local = k.local_complex(p.sigma, p.omega);
    let dual = witness.local_of_dual.clone();
    let Some(rule) = SIGN_RULES
        .iter()
        .find(|r| complementation_commutes(&local, &dual, p.omega, r))
    else {
        return invariant(format!(
            "no complementation sign is a chain map for K = {:?} on [{m}], block {p}",
            k.facets()
        ));
    };
    let left = local_homology(k, p, coeffs);
    let right = cohomology(&local_suspended_chain(&kd, q, coeffs));
    let w = bits::size(p.omega);
    let mut matched = left == reflect(&right, w);
    let matrices = match (explicit, coeffs.field()) {
        (true, Some(kind)) => {
            let ms = induced_matrices(k, &kd, p, q, kind, rule)?;
            matched &= ms.iter().all(|d| d.invertible);
            Some(ms)
        }
        _ => None,
    };
    Ok(DualityCertificate {
        pair: p,
        dual_pair: q,
        coeffs,
        left,
        right,
        matched,
        sign_rule: rule.name.to_string(),
        matrices,
    })
}

fn induced_matrices(
    k: &SimplicialComplex,
    kd: &SimplicialComplex,
    p: IndexPair,
    q: IndexPair,
    kind: FieldKind,
    rule: &SignRule,
) -> Result<Vec<DegreeMatrix>> {
    let coeffs = kind.coefficients();
    let local = k.local_complex(p.sigma, p.omega);
    let source = local_suspended_chain(k, p, coeffs);
    let target = local_suspended_chain(kd, q, coeffs);
    let w = bits::size(p.omega) as i32;
    let apex = 1 << p.omega.trailing_zeros();
    let mut out = Vec::new();
    if source.total_rank() == 0 {
        return Ok(out);
    }
    for d in source.lo..=source.hi() {
        let hb = CohomologyBasis::homology(kind, &source, d);
        let td = w - d - 1;
        let cb = CohomologyBasis::new(kind, &target, td);
        if hb.dim() == 0 && cb.dim() == 0 {
            continue;
        }
        let index = target.index_of(td);
        let labels = source.basis(d);
        let mut columns = Vec::with_capacity(hb.dim());
        for z in hb.representatives() {
            let mut image = vec![BigRational::zero(); target.dim(td)];
            for (i, c) in z.iter().enumerate() {
                let tau = labels[i] as Mask;
                if c.is_zero() || tau & apex != 0 {
                    continue;
                }
                let eta = tau | apex;
                if local.contains(eta) {
                    continue;
                }
                let Some(&j) = index.get(&((p.omega & !eta) as u64)) else {
                    return invariant(format!(
                        "block {p}: complement of {} is not a dual face",
                        bits::show(eta)
                    ));
                };
                let s = BigRational::from_integer(sign(rule, eta, p.omega).into());
                image[j] += c * s;
            }
            let image = linalg::normalized(kind, image);
            let Some(coords) = cb.coordinates(&image) else {
                return invariant(format!("block {p}: image of a degree-{d} cycle is not a cocycle"));
            };
            columns.push(coords);
        }
        let rows_r: Vec<Vec<BigRational>> = (0..cb.dim())
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        let invertible = hb.dim() == cb.dim() && linalg::rank(kind, &rows_r, hb.dim()) == hb.dim();
        let rows = rows_r
            .iter()
            .map(|r| r.iter().map(|x| show_rational(&kind.normalize(x))).collect())
            .collect();
        out.push(DegreeMatrix {
            degree: d,
            target_degree: td,
            rows,
            invertible,
        });
    }
    Ok(out)
}

/// Certificates for every pair with `ω ≠ ∅`, ascending by pair.
pub fn all_certificates(
    k: &SimplicialComplex,
    coeffs: Coefficients,
    explicit: bool,
) -> Result<Vec<DualityCertificate>> {
    let pairs = Universe::Left.pairs(k.ground_size());
    pairs
        .par_iter()
        .map(|&p| gamma_certificate(k, p, coeffs, explicit))
        .collect()
}

/// Cohomology predicted from homology by universal coefficients: torsion moves up one degree.
fn cohomology_of(h: &HomologySummary) -> HomologySummary {
    HomologySummary::from_groups(h.groups.iter().flat_map(|g| {
        [
            DegreeGroup {
                degree: g.degree,
                free_rank: g.free_rank,
                torsion: vec![],
            },
            DegreeGroup {
                degree: g.degree + 1,
                free_rank: 0,
                torsion: g.torsion.clone(),
            },
        ]
    }))
}

/// Certificate at `(K, σ, ω)`, then at `(K°, σ', ω)`: `K°° = K`, both match, and each
/// certificate's right side is the cohomology of the other's left side.
pub fn involution_holds(k: &SimplicialComplex, p: IndexPair, coeffs: Coefficients) -> Result<bool> {
    let m = k.ground_size();
    let kd = dual_complex(k)?;
    let back = dual_complex(&kd)?;
    let c1 = gamma_certificate(k, p, coeffs, false)?;
    let c2 = gamma_certificate(&kd, dual_pair(p, m), coeffs, false)?;
    Ok(back == *k
        && c2.dual_pair == p
        && c1.matched
        && c2.matched
        && c1.right == cohomology_of(&c2.left)
        && c2.right == cohomology_of(&c1.left))
}

/// `Z*(K; L)°` and `Z*(K°; L°)`, each dual relative to its whole ground set.
pub fn composition_dual_identity(
    k: &SimplicialComplex,
    ls: &[SimplicialComplex],
) -> Result<(SimplicialComplex, SimplicialComplex)> {
    let left = dual_complex(&composition_complex(k, ls)?)?;
    let lds: Vec<SimplicialComplex> = ls.iter().map(dual_complex).collect::<Result<_>>()?;
    let right = composition_complex(&dual_complex(k)?, &lds)?;
    Ok((left, right))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorCompatReport {
    pub blocks: usize,
    pub nonzero_blocks: usize,
    pub holds: bool,
}

/// Rank-level form of the tensor compatibility of γ on `Z = Z*(K; L)`: for every block with
/// `ω ≠ ∅`, γ_Z is an invertible matrix whose source and target have the graded dimensions
/// predicted by the block decompositions of `Z*(K; L)` and `Z*(K°; L°)`, and `Z° = Z*(K°; L°)`.
pub fn gamma_tensor_compat(
    k: &SimplicialComplex,
    ls: &[SimplicialComplex],
    field: FieldKind,
) -> Result<TensorCompatReport> {
    let coeffs = field.coefficients();
    let z = composition_complex(k, ls)?;
    let (zd, zd_direct) = composition_dual_identity(k, ls)?;
    let n = z.ground_size();
    let lds: Vec<SimplicialComplex> = ls.iter().map(dual_complex).collect::<Result<_>>()?;
    let predicted = join_total_homology(k, &PairSequence::composition(ls)?, &Universe::All, coeffs)?;
    let predicted_dual = join_total_homology(
        &dual_complex(k)?,
        &PairSequence::composition(&lds)?,
        &Universe::All,
        coeffs,
    )?;
    let certs = all_certificates(&z, coeffs, true)?;
    let mut holds = zd == zd_direct;
    let mut nonzero = 0;
    for c in &certs {
        if !c.left.is_zero() {
            nonzero += 1;
        }
        holds &= c.matched;
        holds &= c.left.ranks() == predicted.get(&c.pair).ranks();
        holds &= c.right.ranks() == predicted_dual.get(&dual_pair(c.pair, n)).ranks();
    }
    Ok(TensorCompatReport {
        blocks: certs.len(),
        nonzero_blocks: nonzero,
        holds,
    })
}

/// Determinant-free check that a square matrix of strings is the identity up to one unit.
pub fn is_scalar_unit(rows: &[Vec<String>]) -> bool {
    let parse = |s: &str| -> Option<BigRational> {
        let mut it = s.split('/');
        let a: num_bigint::BigInt = it.next()?.parse().ok()?;
        let b: num_bigint::BigInt = it.next().map_or(Some(num_bigint::BigInt::one()), |x| x.parse().ok())?;
        Some(BigRational::new(a, b))
    };
    let n = rows.len();
    let mut unit: Option<BigRational> = None;
    for (i, r) in rows.iter().enumerate() {
        if r.len() != n {
            return false;
        }
        for (j, s) in r.iter().enumerate() {
            let Some(x) = parse(s) else { return false };
            if i == j {
                if x.is_zero() || unit.as_ref().is_some_and(|u| *u != x) {
                    return false;
                }
                unit = Some(x);
            } else if !x.is_zero() {
                return false;
            }
        }
    }
    true
}
