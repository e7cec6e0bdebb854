//! Ring models: polyhedral products of disk and sphere pairs read off a family table with
//! degree shifts and sign twists, diagonal tensor products over a shared index set, and the
//! right total cohomology ring of a composition complex.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bits;
use crate::complex::SimplicialComplex;
use crate::error::{input, Result};
use crate::field::FieldKind;
use crate::total::{Atom, IndexPair, Universe};

use super::engine::total_cohomology_ring;
use super::families::{family, ProductFamily};
use super::table::{finish, BasisClass, Element, RingTable};

/// Pair kinds with a closed ring model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    /// `(D^n, S^{n-1})`, `n ≥ 1`.
    Disk(usize),
    /// `(S^r, S^p)`, `r > p ≥ 0`.
    Sphere(usize, usize),
}

impl PairKind {
    /// `disk1`, `disk:n`, `sphere:r:p`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |x: &str| {
            x.parse::<usize>()
                .map_err(|_| crate::Error::Input(format!("bad number in `{s}`")))
        };
        let kind = match parts.as_slice() {
            ["disk1"] => PairKind::Disk(1),
            ["disk", n] => PairKind::Disk(num(n)?),
            ["sphere", r, p] => PairKind::Sphere(num(r)?, num(p)?),
            _ => return input(format!("unknown pair kind `{s}` (disk1, disk:n, sphere:r:p)")),
        };
        match kind {
            PairKind::Disk(0) => input("disk:n needs n ≥ 1"),
            PairKind::Sphere(r, p) if p >= r => input("sphere:r:p needs r > p"),
            k => Ok(k),
        }
    }

    /// Family, universe, and the per-vertex degree shifts `(on σ, on ω)`.
    fn model(self) -> Result<(Box<dyn ProductFamily>, Universe, i32, i32)> {
        Ok(match self {
            PairKind::Disk(1) => (family("right-strictly-normal")?, Universe::Right, 0, 0),
            PairKind::Disk(n) => (family("right-special")?, Universe::Right, 0, n as i32 - 1),
            PairKind::Sphere(r, 0) => (Box::new(PointedSphere), Universe::All, r as i32, 0),
            PairKind::Sphere(r, p) => (family("special")?, Universe::All, r as i32, p as i32),
        })
    }
}

/// `(S^r, S^0)` with `r > 0`: strictly normal on `𝓷`, `𝓷̄`, but `𝓮 ↦ 𝓮⊗𝓲 + 𝓲⊗𝓮` since the
/// top class of `S^r` squares to zero.
struct PointedSphere;

impl ProductFamily for PointedSphere {
    fn name(&self) -> String {
        "strictly-normal, special on σ".into()
    }
    fn coproduct(&self, a: Atom) -> Vec<(Atom, Atom)> {
        use Atom::{NBar as B, E, I, N};
        match a {
            I => vec![(I, I)],
            N => vec![(N, N), (N, I), (I, N)],
            B => vec![(B, N), (B, I), (I, B)],
            E => vec![(E, I), (I, E)],
        }
    }
    fn admissible(&self, k: &SimplicialComplex, p1: IndexPair, p2: IndexPair, p: IndexPair) -> bool {
        p1.sigma & p2.sigma == 0
            && p.sigma == p1.sigma | p2.sigma
            && p.omega == p1.omega | p2.omega
            && k.contains(p.sigma)
    }
    fn degree_preserving(&self) -> bool {
        true
    }
}

/// Sign of sorting the shift coordinates of `a` followed by those of `b` by vertex, each
/// vertex of `σ` carrying `on_sigma` coordinates and each vertex of `ω` carrying `on_omega`.
fn interleave_parity(a: IndexPair, b: IndexPair, on_sigma: i32, on_omega: i32) -> i32 {
    let weight = |p: IndexPair, v: usize| {
        if p.sigma >> v & 1 == 1 {
            on_sigma
        } else if p.omega >> v & 1 == 1 {
            on_omega
        } else {
            0
        }
    };
    let mut parity = 0;
    for i in bits::elements(a.sigma | a.omega) {
        for j in bits::elements(b.sigma | b.omega).take_while(|&j| j < i) {
            parity += weight(a, i) * weight(b, j);
        }
    }
    parity
}

fn sign(odd: bool) -> BigRational {
    if odd {
        -BigRational::one()
    } else {
        BigRational::one()
    }
}

/// Cohomology ring of `Z(K; X, A)` for a disk or sphere pair, on the basis of the family
/// table. A class of block `(σ, ω)` in degree `t` moves to degree `t + r|σ| + s|ω|`, where
/// `(r, s)` are the pair's shifts, and `a · b` picks up `(−1)^{t_b (r|σ_a| + s|ω_a|)}` times
/// the sign of interleaving the shift coordinates of `a` and `b`.
pub fn polyhedral_ring(k: &SimplicialComplex, kind: PairKind, field: FieldKind) -> Result<RingTable> {
    polyhedral_ring_with(k, kind, field, true)
}

/// As [`polyhedral_ring`]; with `interleave = false` only the `(−1)^{t_b(…)}` factor is applied.
pub fn polyhedral_ring_with(
    k: &SimplicialComplex,
    kind: PairKind,
    field: FieldKind,
    interleave: bool,
) -> Result<RingTable> {
    let (fam, universe, on_sigma, on_omega) = kind.model()?;
    let name = fam.name();
    let mut t = total_cohomology_ring(k, fam.as_ref(), &universe, field)?;
    let shift = |p: IndexPair| on_sigma * bits::size(p.sigma) as i32 + on_omega * bits::size(p.omega) as i32;
    let block_degree: Vec<i32> = t.basis.iter().map(|b| b.degree).collect();
    let pairs: Vec<IndexPair> = t.basis.iter().map(|b| b.pair.unwrap_or_default()).collect();
    for (i, c) in t.constants.iter_mut() {
        let mut parity = block_degree[i.1] * shift(pairs[i.0]);
        if interleave {
            parity += interleave_parity(pairs[i.0], pairs[i.1], on_sigma, on_omega);
        }
        let odd = parity.rem_euclid(2) == 1;
        if odd {
            for (_, x) in c.iter_mut() {
                *x = field.normalize(&-x.clone());
            }
        }
    }
    for b in &mut t.basis {
        b.degree += shift(b.pair.unwrap_or_default());
    }
    t.family = match kind {
        PairKind::Disk(n) => format!("{name} (disk:{n})"),
        PairKind::Sphere(r, p) => format!("{name} (sphere:{r}:{p})"),
    };
    Ok(t)
}

/// Graded tensor product of algebras, `(a'⊗b')(a''⊗b'') = (−1)^{|b'||a''|} a'a''⊗b'b''`,
/// extended to any number of factors. `index` assigns each basis tuple its index pair.
pub fn tensor_algebra(
    factors: &[RingTable],
    field: FieldKind,
    universe: &str,
    index: impl Fn(&[&BasisClass]) -> Option<IndexPair>,
) -> RingTable {
    let dims: Vec<usize> = factors.iter().map(|f| f.dim()).collect();
    let total: usize = if factors.is_empty() { 1 } else { dims.iter().product() };
    let digits = |mut x: usize| -> Vec<usize> {
        let mut out = vec![0; dims.len()];
        for k in (0..dims.len()).rev() {
            out[k] = x % dims[k];
            x /= dims[k];
        }
        out
    };
    let flat = |ds: &[usize]| ds.iter().zip(&dims).fold(0, |a, (&d, &n)| a * n + d);
    let mut basis = Vec::with_capacity(total);
    for x in 0..total {
        let ds = digits(x);
        let classes: Vec<&BasisClass> = ds.iter().enumerate().map(|(k, &d)| &factors[k].basis[d]).collect();
        basis.push(BasisClass {
            pair: index(&classes),
            degree: classes.iter().map(|c| c.degree).sum(),
            label: classes.iter().map(|c| c.label.as_str()).collect::<Vec<_>>().join("⊗"),
            rep: Vec::new(),
        });
    }
    // Expands a tuple of per-factor elements into the flat basis.
    let expand = |parts: &[Element], c: BigRational, acc: &mut BTreeMap<usize, BigRational>| {
        let mut terms: Vec<(Vec<usize>, BigRational)> = vec![(Vec::new(), c)];
        for part in parts {
            let mut next = Vec::new();
            for (ds, x) in &terms {
                for (d, y) in part {
                    let mut e = ds.clone();
                    e.push(*d);
                    next.push((e, x * y));
                }
            }
            terms = next;
        }
        for (ds, x) in terms {
            let e = acc.entry(flat(&ds)).or_insert_with(BigRational::zero);
            *e = field.normalize(&(&*e + x));
        }
    };
    let mut constants = BTreeMap::new();
    for x in 0..total {
        let dx = digits(x);
        for y in 0..total {
            let dy = digits(y);
            let mut parts = Vec::with_capacity(dims.len());
            for k in 0..dims.len() {
                let p = factors[k].product(dx[k], dy[k]);
                if p.is_empty() {
                    break;
                }
                parts.push(p.to_vec());
            }
            if parts.len() < dims.len() {
                continue;
            }
            // Moving each left factor of the second element past the later factors of the first.
            let mut exp = 0;
            for k in 0..dims.len() {
                for l in k + 1..dims.len() {
                    exp += factors[l].basis[dx[l]].degree * factors[k].basis[dy[k]].degree;
                }
            }
            let mut acc = BTreeMap::new();
            expand(&parts, sign(exp.rem_euclid(2) == 1), &mut acc);
            let v = finish(acc);
            if !v.is_empty() {
                constants.insert((x, y), v);
            }
        }
    }
    let unit = factors
        .iter()
        .map(|f| f.unit.clone())
        .collect::<Option<Vec<_>>>()
        .map(|us| {
            let mut acc = BTreeMap::new();
            expand(&us, BigRational::one(), &mut acc);
            finish(acc)
        });
    RingTable {
        field,
        family: factors
            .iter()
            .map(|f| f.family.as_str())
            .collect::<Vec<_>>()
            .join(" ⊗ "),
        universe: universe.to_string(),
        basis,
        constants,
        unit,
        degree_preserving: factors.iter().all(|f| f.degree_preserving),
    }
}

/// `A ⊗̂ B`: classes `a⊗̂b` with equal index pairs, product
/// `(a'⊗̂b')(a''⊗̂b'') = (−1)^{|a''||b'|} a'a''⊗̂b'b''`, mismatched terms dropped.
pub fn diagonal_tensor_algebra(a: &RingTable, b: &RingTable) -> Result<RingTable> {
    if a.universe != b.universe {
        return input(format!(
            "diagonal tensor product over different universes `{}` and `{}`",
            a.universe, b.universe
        ));
    }
    if a.field != b.field {
        return input(format!(
            "diagonal tensor product over different fields {} and {}",
            a.field, b.field
        ));
    }
    if a.basis.iter().chain(&b.basis).any(|c| c.pair.is_none()) {
        return input("diagonal tensor product needs indexed tables");
    }
    let field = a.field;
    let mut basis = Vec::new();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut members = Vec::new();
    for (i, x) in a.basis.iter().enumerate() {
        for (j, y) in b.basis.iter().enumerate() {
            if x.pair == y.pair {
                index.insert((i, j), basis.len());
                members.push((i, j));
                basis.push(BasisClass {
                    pair: x.pair,
                    degree: x.degree + y.degree,
                    label: format!("{}⊗̂{}", x.label, y.label),
                    rep: Vec::new(),
                });
            }
        }
    }
    let pair_up = |x: &[(usize, BigRational)], y: &[(usize, BigRational)], c: &BigRational| -> Element {
        let mut acc = BTreeMap::new();
        for (i, s) in x {
            for (j, t) in y {
                if let Some(&k) = index.get(&(*i, *j)) {
                    let e = acc.entry(k).or_insert_with(BigRational::zero);
                    *e = field.normalize(&(&*e + c * s * t));
                }
            }
        }
        finish(acc)
    };
    let mut constants = BTreeMap::new();
    for (x, &(i1, j1)) in members.iter().enumerate() {
        for (y, &(i2, j2)) in members.iter().enumerate() {
            let (pa, pb) = (a.product(i1, i2), b.product(j1, j2));
            if pa.is_empty() || pb.is_empty() {
                continue;
            }
            let s = sign((a.basis[i2].degree * b.basis[j1].degree).rem_euclid(2) == 1);
            let v = pair_up(pa, pb, &s);
            if !v.is_empty() {
                constants.insert((x, y), v);
            }
        }
    }
    let unit = match (&a.unit, &b.unit) {
        (Some(u), Some(v)) => Some(pair_up(u, v, &BigRational::one())),
        _ => None,
    };
    Ok(RingTable {
        field,
        family: format!("({}) ⊗̂ ({})", a.family, b.family),
        universe: a.universe.clone(),
        basis,
        constants,
        unit,
        degree_preserving: a.degree_preserving && b.degree_preserving,
    })
}

/// Right total cohomology ring of `Z*(K; L_1, …, L_m)` as
/// `(H_{R_m}(K), right normal) ⊗̂ ⊗_k (H_{R_{n_k}}(L_k), right universal)`. A tuple of `L`
/// classes sits over `(∅, {k : b_k is not in block (∅, ∅)})`.
pub fn composition_ring(k: &SimplicialComplex, ls: &[SimplicialComplex], field: FieldKind) -> Result<RingTable> {
    if ls.len() != k.ground_size() {
        return input(format!(
            "complex on [{}] needs {} complexes L_k, got {}",
            k.ground_size(),
            k.ground_size(),
            ls.len()
        ));
    }
    let normal = family("right-normal")?;
    let universal = family("right-universal")?;
    let base = total_cohomology_ring(k, normal.as_ref(), &Universe::Right, field)?;
    let factors: Vec<RingTable> = ls
        .iter()
        .map(|l| total_cohomology_ring(l, universal.as_ref(), &Universe::Right, field))
        .collect::<Result<_>>()?;
    let fibre = tensor_algebra(&factors, field, Universe::Right.tag(), |cs| {
        let omega = cs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.pair.is_some_and(|p| p.omega != 0))
            .fold(0, |acc, (i, _)| acc | 1 << i);
        Some(IndexPair { sigma: 0, omega })
    });
    let mut t = diagonal_tensor_algebra(&base, &fibre)?;
    t.family = "right-normal ⊗̂ right-universal".into();
    Ok(t)
}
