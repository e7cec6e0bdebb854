//! Local products `T*_{p1} ⊗ T*_{p2} → T*_p` on the total cochains of `K`.
//!
//! Two independent routes: a closed form on faces (`product_term`) and a brute-force
//! evaluation of the factorwise atom coproduct (`local_product_atoms`).

use std::collections::BTreeMap;

use crate::bits::{self, Mask};
use crate::complex::SimplicialComplex;
use crate::total::{block_generators, Atom, IndexPair, TotalGenerator};

use super::families::{atom_type, forced, vertex_type, ProductFamily, Universal};

/// One nonzero entry: `τ'* · τ''* ∋ sign · τ*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LocalTerm {
    pub left: Mask,
    pub right: Mask,
    pub target: Mask,
    pub sign: i64,
}

/// Closed form for the universal product, restricted by the family's admissibility:
/// `τ'* · τ''* = ε τ*` with `R = ω ∖ (ω' ∪ ω'')` and `τ = τ' ∪ τ'' ∪ R`, provided
/// `τ', τ'' ⊆ ω`, `τ'' ∩ ω' = ∅` and `σ ∪ τ ∈ K`. The sign `ε` sorts the concatenation
/// `τ' τ'' R`; with `R = ∅` it is the shuffle sign of `τ'` and `τ''`.
pub fn product_term(
    k: &SimplicialComplex,
    family: &dyn ProductFamily,
    p1: IndexPair,
    left: Mask,
    p2: IndexPair,
    right: Mask,
    p: IndexPair,
) -> Option<(Mask, i64)> {
    if !family.admissible(k, p1, p2, p) {
        return None;
    }
    if left & !p.omega != 0 || right & !p.omega != 0 || right & p1.omega != 0 {
        return None;
    }
    let target = left | right | forced(p1, p2, p);
    if !k.contains(p.sigma | target) {
        return None;
    }
    let r = forced(p1, p2, p);
    Some((
        target,
        bits::shuffle_sign(left, right) * bits::shuffle_sign(left | right, r),
    ))
}

/// All entries of one local product via the closed form, sorted.
pub fn local_product(
    k: &SimplicialComplex,
    family: &dyn ProductFamily,
    p1: IndexPair,
    p2: IndexPair,
    p: IndexPair,
) -> Vec<LocalTerm> {
    let g1 = block_generators(k, p1);
    let g2 = block_generators(k, p2);
    let mut out = Vec::new();
    for &left in &g1 {
        for &right in &g2 {
            if let Some((target, sign)) = product_term(k, family, p1, left, p2, right, p) {
                out.push(LocalTerm {
                    left,
                    right,
                    target,
                    sign,
                });
            }
        }
    }
    out.sort();
    out
}

/// All entries of one local product by expanding the atom coproduct of every generator of
/// block `p` and keeping the terms that land in `p1 ⊗ p2`.
pub fn local_product_atoms(
    k: &SimplicialComplex,
    family: &dyn ProductFamily,
    p1: IndexPair,
    p2: IndexPair,
    p: IndexPair,
) -> Vec<LocalTerm> {
    let m = k.ground_size();
    let tables: Vec<Vec<(Atom, Atom)>> = [Atom::I, Atom::N, Atom::NBar, Atom::E]
        .iter()
        .map(|&a| family.coproduct(a))
        .collect();
    let table = |a: Atom| -> &Vec<(Atom, Atom)> {
        match a {
            Atom::I => &tables[0],
            Atom::N => &tables[1],
            Atom::NBar => &tables[2],
            Atom::E => &tables[3],
        }
    };
    let mut out = Vec::new();
    'gen: for target in block_generators(k, p) {
        let t = TotalGenerator::new(m, p, target);
        let mut first = Vec::with_capacity(m);
        let mut second = Vec::with_capacity(m);
        for v in 0..m {
            let want = (vertex_type(p1, v), vertex_type(p2, v));
            let hits: Vec<&(Atom, Atom)> = table(t.atom(v))
                .iter()
                .filter(|(a, b)| (atom_type(*a), atom_type(*b)) == want)
                .collect();
            match hits.as_slice() {
                [] => continue 'gen,
                [(a, b)] => {
                    first.push(*a);
                    second.push(*b);
                }
                _ => unreachable!("atom tables have at most one term per vertex-type pair"),
            }
        }
        let bar = |atoms: &[Atom]| -> Mask {
            atoms
                .iter()
                .enumerate()
                .filter(|(_, &a)| a == Atom::NBar)
                .fold(0, |s, (v, _)| s | 1 << v)
        };
        let (left, right) = (bar(&first), bar(&second));
        if !k.contains(p1.sigma | left) || !k.contains(p2.sigma | right) {
            continue;
        }
        // Koszul sign of regrouping (a'_1 a''_1)…(a'_m a''_m) as (a'_1…a'_m)(a''_1…a''_m),
        // and for each degree-lowering factor, the degrees of the later factors.
        let mut parity = 0;
        for j in 0..m {
            for i in j + 1..m {
                parity += second[j].degree() * first[i].degree();
            }
            if first[j].degree() + second[j].degree() < t.atom(j).degree() {
                parity += (j + 1..m)
                    .map(|i| first[i].degree() + second[i].degree())
                    .sum::<usize>();
            }
        }
        out.push(LocalTerm {
            left,
            right,
            target,
            sign: if parity % 2 == 0 { 1 } else { -1 },
        });
    }
    out.sort();
    out
}

/// Partiality: a family's local product is the universal one or zero.
pub fn is_partial(
    k: &SimplicialComplex,
    family: &dyn ProductFamily,
    p1: IndexPair,
    p2: IndexPair,
    p: IndexPair,
) -> bool {
    let f = local_product_atoms(k, family, p1, p2, p);
    f.is_empty() || f == local_product_atoms(k, &Universal, p1, p2, p)
}

/// Integral total cochain keyed by (block, face).
type Cochain = BTreeMap<(IndexPair, Mask), i64>;

fn coboundary(k: &SimplicialComplex, c: &Cochain) -> Cochain {
    let mut out = Cochain::new();
    for (&(p, t), &x) in c {
        for v in bits::elements(p.omega & !t) {
            let s = t | 1 << v;
            if !k.contains(p.sigma | s) {
                continue;
            }
            let sign = if bits::rank_below(s, v).is_multiple_of(2) {
                1
            } else {
                -1
            };
            *out.entry((p, s)).or_insert(0) += sign * x;
        }
    }
    out.retain(|_, x| *x != 0);
    out
}

fn cochain_product(
    k: &SimplicialComplex,
    family: &dyn ProductFamily,
    pairs: &[IndexPair],
    f: &Cochain,
    g: &Cochain,
) -> Cochain {
    let mut out = Cochain::new();
    for (&(p1, l), &x) in f {
        for (&(p2, r), &y) in g {
            for &p in pairs {
                if let Some((t, s)) = product_term(k, family, p1, l, p2, r, p) {
                    *out.entry((p, t)).or_insert(0) += s * x * y;
                }
            }
        }
    }
    out.retain(|_, x| *x != 0);
    out
}

/// Number of generator pairs `(f, g)` of the total cochains on `pairs` violating
/// `δ(fg) = δf·g + (−1)^{|f|} f·δg`.
pub fn leibniz_defects(k: &SimplicialComplex, family: &dyn ProductFamily, pairs: &[IndexPair]) -> usize {
    let gens: Vec<(IndexPair, Mask)> = pairs
        .iter()
        .flat_map(|&p| block_generators(k, p).into_iter().map(move |t| (p, t)))
        .collect();
    let mut bad = 0;
    for &a in &gens {
        let f: Cochain = [(a, 1)].into_iter().collect();
        let df = coboundary(k, &f);
        for &b in &gens {
            let g: Cochain = [(b, 1)].into_iter().collect();
            let lhs = coboundary(k, &cochain_product(k, family, pairs, &f, &g));
            let mut rhs = cochain_product(k, family, pairs, &df, &g);
            let s = if bits::size(a.1).is_multiple_of(2) { 1 } else { -1 };
            for (key, x) in cochain_product(k, family, pairs, &f, &coboundary(k, &g)) {
                *rhs.entry(key).or_insert(0) += s * x;
            }
            rhs.retain(|_, x| *x != 0);
            if lhs != rhs {
                bad += 1;
            }
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::all_complexes;
    use crate::ring::families::all_families;
    use crate::total::Universe;

    #[test]
    fn closed_form_matches_atoms_on_small_complexes() {
        for k in all_complexes(2) {
            let pairs = Universe::All.pairs(2);
            for f in all_families() {
                for &p1 in &pairs {
                    for &p2 in &pairs {
                        for &p in &pairs {
                            assert_eq!(
                                local_product(&k, f.as_ref(), p1, p2, p),
                                local_product_atoms(&k, f.as_ref(), p1, p2, p),
                                "{} {p1} {p2} {p}",
                                f.name()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unit_block_acts_trivially() {
        let k = SimplicialComplex::boundary(3, 0b111);
        let unit = IndexPair { sigma: 0, omega: 0 };
        let p = IndexPair { sigma: 0, omega: 0b111 };
        let terms = local_product(&k, &Universal, unit, p, p);
        assert_eq!(terms.len(), 7);
        assert!(terms.iter().all(|t| t.left == 0 && t.right == t.target && t.sign == 1));
    }

    #[test]
    fn products_satisfy_leibniz() {
        for m in 1..=3 {
            for k in all_complexes(m) {
                for f in all_families() {
                    let pairs: Vec<IndexPair> = Universe::All
                        .pairs(m)
                        .into_iter()
                        .filter(|p| !f.is_right() || p.is_right())
                        .collect();
                    assert_eq!(
                        leibniz_defects(&k, f.as_ref(), &pairs),
                        0,
                        "{} on {:?}",
                        f.name(),
                        k.facets()
                    );
                }
            }
        }
    }
}
