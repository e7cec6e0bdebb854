//! Polyhedral joins, polyhedral product complexes and composition complexes.

use crate::bits::{self, Mask, MAX_GROUND};
use crate::complex::SimplicialComplex;
use crate::error::{input, Result};

/// Sequence of pairs `(X_k, A_k)` with `A_k ⊆ X_k` on `[n_k]`, laid out on `[n] = [n_1] ⊔ … ⊔ [n_m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSequence {
    entries: Vec<(SimplicialComplex, SimplicialComplex)>,
    offsets: Vec<usize>,
    total: usize,
}

impl PairSequence {
    pub fn new(entries: Vec<(SimplicialComplex, SimplicialComplex)>) -> Result<Self> {
        let mut offsets = Vec::with_capacity(entries.len());
        let mut total = 0;
        for (k, (x, a)) in entries.iter().enumerate() {
            if x.ground_size() != a.ground_size() {
                return input(format!("pair {}: X and A live on different ground sets", k + 1));
            }
            if !a.is_subcomplex_of(x) {
                return input(format!("pair {}: A is not a subcomplex of X", k + 1));
            }
            offsets.push(total);
            total += x.ground_size();
        }
        if total > MAX_GROUND {
            return input(format!(
                "pair sequence needs {total} vertices, over the cap {MAX_GROUND}"
            ));
        }
        Ok(PairSequence {
            entries,
            offsets,
            total,
        })
    }

    /// Pairs `(Δ^{[n_k]}, L_k)`.
    pub fn composition(ls: &[SimplicialComplex]) -> Result<Self> {
        let mut entries = Vec::with_capacity(ls.len());
        for (k, l) in ls.iter().enumerate() {
            let n = l.ground_size();
            if l.is_void() || l.is_simplex_on(bits::full(n)) {
                return input(format!("L_{} must be neither void nor the full simplex", k + 1));
            }
            entries.push((SimplicialComplex::simplex(n, bits::full(n)), l.clone()));
        }
        Self::new(entries)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(SimplicialComplex, SimplicialComplex)] {
        &self.entries
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn total_vertices(&self) -> usize {
        self.total
    }

    /// Mask of block `k` inside `[n]`.
    pub fn block_mask(&self, k: usize) -> Mask {
        bits::full(self.entries[k].0.ground_size()) << self.offsets[k]
    }

    /// Restriction of a mask on `[n]` to block `k`, shifted down to `[n_k]`.
    pub fn split(&self, s: Mask, k: usize) -> Mask {
        (s & self.block_mask(k)) >> self.offsets[k]
    }
}

/// `Z*(K; X, A) = ∪_{τ∈K} Y_1^τ * … * Y_m^τ`.
pub fn polyhedral_join(k: &SimplicialComplex, pairs: &PairSequence) -> Result<SimplicialComplex> {
    check_lengths(k, pairs)?;
    let n = pairs.total_vertices();
    if k.is_void() {
        return Ok(SimplicialComplex::void(n));
    }
    let x_facets: Vec<Vec<Mask>> = pairs.entries().iter().map(|(x, _)| x.facets()).collect();
    let a_facets: Vec<Vec<Mask>> = pairs.entries().iter().map(|(_, a)| a.facets()).collect();
    let mut facets: Vec<Mask> = Vec::new();
    let mut any = false;
    for tau in k.facets() {
        let mut partial: Vec<Mask> = vec![0];
        let mut dead = false;
        for j in 0..pairs.len() {
            let (x, a) = &pairs.entries()[j];
            let (cx, fs) = if tau >> j & 1 == 1 {
                (x, &x_facets[j])
            } else {
                (a, &a_facets[j])
            };
            if cx.is_void() {
                dead = true;
                break;
            }
            let off = pairs.offsets()[j];
            let mut next = Vec::with_capacity(partial.len() * fs.len());
            for &p in &partial {
                for &f in fs {
                    next.push(p | (f << off));
                }
            }
            partial = next;
        }
        if !dead {
            any = true;
            facets.extend(partial);
        }
    }
    if !any {
        return Ok(SimplicialComplex::void(n));
    }
    SimplicialComplex::from_facets(n, &facets)
}

/// `Z(K; X, A) = ∪_{τ∈K} D(τ)` as staircase products, vertices numbered in mixed radix
/// `(i_1, …, i_m) ↦ ((i_1·n_2 + i_2)·n_3 + …)`. `K = { }` gives `{∅}`.
pub fn polyhedral_product_complex(k: &SimplicialComplex, pairs: &PairSequence) -> Result<SimplicialComplex> {
    check_lengths(k, pairs)?;
    let prod: usize = pairs.entries().iter().map(|(x, _)| x.ground_size()).product();
    if prod > MAX_GROUND {
        return input(format!(
            "product complex needs {prod} vertices, over the cap {MAX_GROUND}"
        ));
    }
    for (j, (x, _)) in pairs.entries().iter().enumerate() {
        if x.is_void() {
            return input(format!("X_{} is void", j + 1));
        }
    }
    if k.is_void() {
        return Ok(SimplicialComplex::empty(prod));
    }
    let mut result: Option<SimplicialComplex> = None;
    for tau in k.facets() {
        let mut acc: Option<SimplicialComplex> = None;
        let mut dead = false;
        for j in 0..pairs.len() {
            let (x, a) = &pairs.entries()[j];
            let y = if tau >> j & 1 == 1 { x } else { a };
            if y.is_void() {
                dead = true;
                break;
            }
            acc = Some(match acc {
                None => y.clone(),
                Some(c) => SimplicialComplex::staircase_product(&c, y)?,
            });
        }
        if dead {
            continue;
        }
        let d = acc.unwrap_or_else(|| SimplicialComplex::simplex(1, 1));
        result = Some(match result {
            None => d,
            Some(r) => r.union(&d)?,
        });
    }
    Ok(result.unwrap_or_else(|| SimplicialComplex::void(prod)))
}

/// `Z*(K; L_1, …, L_m)`, the polyhedral join with pairs `(Δ^{[n_k]}, L_k)`.
pub fn composition_complex(k: &SimplicialComplex, ls: &[SimplicialComplex]) -> Result<SimplicialComplex> {
    polyhedral_join(k, &PairSequence::composition(ls)?)
}

/// Both sides of the nesting law for polyhedral joins:
/// `Z*(K; Z*(X_k; U, C), Z*(A_k; U, C))` and `Z*(Z*(K; X, A); U, C)`, where `inner[k]` holds the
/// pairs `(U_i, C_i)` over the vertices of `X_k`.
pub fn nested_join_identity(
    k: &SimplicialComplex,
    outer: &PairSequence,
    inner: &[PairSequence],
) -> Result<(SimplicialComplex, SimplicialComplex)> {
    check_lengths(k, outer)?;
    if inner.len() != outer.len() {
        return input(format!(
            "{} outer pairs but {} inner sequences",
            outer.len(),
            inner.len()
        ));
    }
    let mut stacked = Vec::with_capacity(outer.len());
    for ((x, a), us) in outer.entries().iter().zip(inner) {
        stacked.push((polyhedral_join(x, us)?, polyhedral_join(a, us)?));
    }
    let left = polyhedral_join(k, &PairSequence::new(stacked)?)?;
    let flat = PairSequence::new(inner.iter().flat_map(|us| us.entries().iter().cloned()).collect())?;
    let right = polyhedral_join(&polyhedral_join(k, outer)?, &flat)?;
    Ok((left, right))
}

fn check_lengths(k: &SimplicialComplex, pairs: &PairSequence) -> Result<()> {
    if k.ground_size() != pairs.len() {
        return input(format!(
            "complex on [{}] needs {} pairs, got {}",
            k.ground_size(),
            k.ground_size(),
            pairs.len()
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::from_vertices as v;

    fn s0() -> SimplicialComplex {
        SimplicialComplex::boundary(2, 0b11)
    }

    fn disk1() -> (SimplicialComplex, SimplicialComplex) {
        (SimplicialComplex::simplex(2, 0b11), s0())
    }

    #[test]
    fn join_of_full_simplex_is_join_of_pieces() {
        let k = SimplicialComplex::simplex(2, 0b11);
        let pairs = PairSequence::new(vec![disk1(), disk1()]).unwrap();
        assert_eq!(
            polyhedral_join(&k, &pairs).unwrap(),
            SimplicialComplex::simplex(4, 0b1111)
        );
    }

    #[test]
    fn boundary_composed_with_boundaries_is_sphere() {
        let k = s0();
        let z = composition_complex(&k, &[s0(), s0()]).unwrap();
        assert_eq!(z, SimplicialComplex::boundary(4, 0b1111));
        assert!(polyhedral_join(
            &SimplicialComplex::void(2),
            &PairSequence::new(vec![disk1(), disk1()]).unwrap()
        )
        .unwrap()
        .is_void());
    }

    #[test]
    fn composition_with_point_pairs_is_identity() {
        let k = SimplicialComplex::from_facets(3, &[v(&[1, 2]), v(&[3])]).unwrap();
        let e = SimplicialComplex::empty(1);
        let z = composition_complex(&k, &[e.clone(), e.clone(), e]).unwrap();
        assert_eq!(z, k);
    }

    #[test]
    fn composition_rejects_full_simplex() {
        assert!(composition_complex(&s0(), &[SimplicialComplex::simplex(1, 1), s0()]).is_err());
    }

    #[test]
    fn product_complex_examples() {
        let pairs = PairSequence::new(vec![disk1(), disk1()]).unwrap();
        let z = polyhedral_product_complex(&SimplicialComplex::empty(2), &pairs).unwrap();
        assert_eq!(z.faces(), &[0, 1, 2, 4, 8]);
        let circle = polyhedral_product_complex(&s0(), &pairs).unwrap();
        assert_eq!(circle.facets().len(), 4);
        assert_eq!(
            polyhedral_product_complex(&SimplicialComplex::void(2), &pairs).unwrap(),
            SimplicialComplex::empty(4)
        );
    }
}
