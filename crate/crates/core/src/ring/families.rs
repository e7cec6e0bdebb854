//! The five atom coproduct families and their right variants, behind one trait.
//!
//! A family is a table `a ↦ Σ a' ⊗ a''` on the four atoms. On the total complex it acts
//! factorwise; the dual product on cochains is what the ring engine uses.

use crate::bits::Mask;
use crate::complex::SimplicialComplex;
use crate::error::{input, Result};
use crate::total::{Atom, IndexPair};

use Atom::{NBar as B, E, I, N};

/// Coarse position of a vertex in an index pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexType {
    /// in `σ`
    Sigma,
    /// in `ω`
    Omega,
    /// elsewhere
    Rest,
}

pub fn vertex_type(p: IndexPair, k: usize) -> VertexType {
    if p.sigma >> k & 1 == 1 {
        VertexType::Sigma
    } else if p.omega >> k & 1 == 1 {
        VertexType::Omega
    } else {
        VertexType::Rest
    }
}

pub fn atom_type(a: Atom) -> VertexType {
    match a {
        E => VertexType::Sigma,
        N | B => VertexType::Omega,
        I => VertexType::Rest,
    }
}

pub trait ProductFamily: Send + Sync {
    fn name(&self) -> String;

    /// Terms `(a', a'')` of the coproduct of one atom.
    fn coproduct(&self, a: Atom) -> Vec<(Atom, Atom)>;

    /// Closed-form test for a local triple: the local product into `p` from `p1 ⊗ p2` equals
    /// the universal one when this holds, and vanishes otherwise.
    fn admissible(&self, k: &SimplicialComplex, p1: IndexPair, p2: IndexPair, p: IndexPair) -> bool;

    fn is_right(&self) -> bool {
        false
    }

    /// Whether products add cochain degrees.
    fn degree_preserving(&self) -> bool;
}

/// `ω ∖ (ω' ∪ ω'')`: vertices forced into `τ` by the `𝓷̄ ↦ 𝓲 ⊗ 𝓲`-type terms.
pub fn forced(p1: IndexPair, p2: IndexPair, p: IndexPair) -> Mask {
    p.omega & !(p1.omega | p2.omega)
}

fn subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

pub struct Universal;
pub struct Normal;
pub struct StrictlyNormal;
pub struct Special;
pub struct WeaklySpecial;

/// Right variant: drops every coproduct term involving `𝓮`.
pub struct Right<F>(pub F);

impl ProductFamily for Universal {
    fn name(&self) -> String {
        "universal".into()
    }
    fn coproduct(&self, a: Atom) -> Vec<(Atom, Atom)> {
        match a {
            I => vec![(I, I), (I, N), (N, I), (N, N)],
            N => vec![(N, N), (N, I), (I, N)],
            B => vec![(B, N), (B, I), (I, B), (E, E), (E, I), (I, E), (I, I)],
            E => vec![(E, E), (E, I), (I, E), (I, I)],
        }
    }
    fn admissible(&self, k: &SimplicialComplex, p1: IndexPair, p2: IndexPair, p: IndexPair) -> bool {
        let r = forced(p1, p2, p);
        p.sigma & (p1.omega | p2.omega) == 0 && subset((p1.sigma | p2.sigma) & !p.sigma, r) && k.contains(p.sigma | r)
    }
    fn degree_preserving(&self) -> bool {
        false
    }
}

impl ProductFamily for Normal {
    fn name(&self) -> String {
        "normal".into()
    }
    fn coproduct(&self, a: Atom) -> Vec<(Atom, Atom)> {
        match a {
            I => vec![(I, I), (I, N), (N, I), (N, N)],
            N => vec![(N, N), (N, I), (I, N)],
            B => vec![(B, N), (B, I), (I, B)],
            E => vec![(E, E), (E, I), (I, E), (I, I)],
        }
    }
    fn admissible(&self, k: &SimplicialComplex, p1: IndexPair, p2: IndexPair, p: IndexPair) -> bool {
        subset(p1.sigma | p2.sigma, p.sigma)
            && subset(p.omega, p1.omega | p2.omega)
            && p.sigma & (p1.omega | p2.omega) == 0
            && k.contains(p.sigma)
    }
    fn degree_preserving(&self) -> bool {
        true
    }
}

impl ProductFamily for StrictlyNormal {
    fn name(&self) -> String {
        "strictly-normal".into()
    }
    fn coproduct(&self, a: Atom) -> Vec<(Atom, Atom)> {
        match a {
            I => vec![(I, I)],
            N => vec![(N, N), (N, I), (I, N)],
            B => vec![(B, N), (B, I), (I, B)],
            E => vec![(E, E), (E, I), (I, E)],
        }
    }
    fn admissible(&self, k: &SimplicialComplex, p1: IndexPair, p2: IndexPair, p: IndexPair) -> bool {
        p.sigma == p1.sigma | p2.sigma && p.omega == p1.omega | p2.omega && k.contains(p.sigma)
    }
    fn degree_preserving(&self) -> bool {
        true
    }
}

impl ProductFamily for Special {
    fn name(&self) -> String {
        "special".into()
    }
    fn coproduct(&self, a: Atom) -> Vec<(Atom, Atom)> {
        match a {
            I => vec![(I, I)],
            N => vec![(N, I), (I, N)],
            B => vec![(B, I), (I, B)],
            E => vec![(E, I), (I, E)],
        }
    }
    fn admissible(&self, k: &SimplicialComplex, p1: IndexPair, p2: IndexPair, p: IndexPair) -> bool {
        p1.sigma & p2.sigma == 0
            && p1.omega & p2.omega == 0
            && p.sigma == p1.sigma | p2.sigma
            && p.omega == p1.omega | p2.omega
            && k.contains(p.sigma)
    }
    fn degree_preserving(&self) -> bool {
        true
    }
}

impl ProductFamily for WeaklySpecial {
    fn name(&self) -> String {
        "weakly-special".into()
    }
    fn coproduct(&self, a: Atom) -> Vec<(Atom, Atom)> {
        match a {
            I => vec![(I, I)],
            N => vec![(N, I), (I, N)],
            B => vec![(B, I), (I, B), (I, I)],
            E => vec![(E, I), (I, E)],
        }
    }
    fn admissible(&self, k: &SimplicialComplex, p1: IndexPair, p2: IndexPair, p: IndexPair) -> bool {
        p1.sigma & p2.sigma == 0
            && p1.omega & p2.omega == 0
            && p.sigma == p1.sigma | p2.sigma
            && subset(p1.omega | p2.omega, p.omega)
            && k.contains(p.sigma | forced(p1, p2, p))
    }
    fn degree_preserving(&self) -> bool {
        false
    }
}

impl<F: ProductFamily> ProductFamily for Right<F> {
    fn name(&self) -> String {
        format!("right-{}", self.0.name())
    }
    fn coproduct(&self, a: Atom) -> Vec<(Atom, Atom)> {
        if a == E {
            return Vec::new();
        }
        self.0
            .coproduct(a)
            .into_iter()
            .filter(|&(x, y)| x != E && y != E)
            .collect()
    }
    fn admissible(&self, k: &SimplicialComplex, p1: IndexPair, p2: IndexPair, p: IndexPair) -> bool {
        p.sigma == 0 && p1.sigma == 0 && p2.sigma == 0 && self.0.admissible(k, p1, p2, p)
    }
    fn is_right(&self) -> bool {
        true
    }
    fn degree_preserving(&self) -> bool {
        self.0.degree_preserving()
    }
}

pub const FAMILY_NAMES: [&str; 10] = [
    "universal",
    "normal",
    "strictly-normal",
    "special",
    "weakly-special",
    "right-universal",
    "right-normal",
    "right-strictly-normal",
    "right-special",
    "right-weakly-special",
];

/// Looks a family up by name.
pub fn family(name: &str) -> Result<Box<dyn ProductFamily>> {
    let (right, base) = match name.strip_prefix("right-") {
        Some(b) => (true, b),
        None => (false, name),
    };
    let f: Box<dyn ProductFamily> = match (base, right) {
        ("universal", false) => Box::new(Universal),
        ("normal", false) => Box::new(Normal),
        ("strictly-normal", false) => Box::new(StrictlyNormal),
        ("special", false) => Box::new(Special),
        ("weakly-special", false) => Box::new(WeaklySpecial),
        ("universal", true) => Box::new(Right(Universal)),
        ("normal", true) => Box::new(Right(Normal)),
        ("strictly-normal", true) => Box::new(Right(StrictlyNormal)),
        ("special", true) => Box::new(Right(Special)),
        ("weakly-special", true) => Box::new(Right(WeaklySpecial)),
        _ => {
            return input(format!(
                "unknown product family `{name}` (one of {})",
                FAMILY_NAMES.join(", ")
            ))
        }
    };
    Ok(f)
}

pub fn all_families() -> Vec<Box<dyn ProductFamily>> {
    FAMILY_NAMES
        .iter()
        .map(|n| family(n).expect("registered name"))
        .collect()
}

/// Every coproduct term of every family is a term of the universal one.
pub fn is_subtable(f: &dyn ProductFamily) -> bool {
    [I, N, B, E].iter().all(|&a| {
        let u = Universal.coproduct(a);
        f.coproduct(a).iter().all(|t| u.contains(t))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_round_trips() {
        for n in FAMILY_NAMES {
            assert_eq!(family(n).unwrap().name(), n);
        }
        assert!(family("bogus").is_err());
    }

    #[test]
    fn all_tables_are_partial() {
        for f in all_families() {
            assert!(is_subtable(f.as_ref()), "{}", f.name());
        }
    }

    #[test]
    fn coproducts_commute_with_the_differential() {
        // d𝓷̄ = 𝓷; d is zero on the other atoms. ψ(d a) must equal (d⊗1 + 1⊗d) ψ(a).
        for f in all_families() {
            let mut lhs = f.coproduct(N);
            lhs.sort();
            let mut rhs: Vec<(Atom, Atom)> = Vec::new();
            for (x, y) in f.coproduct(B) {
                if x == B {
                    rhs.push((N, y));
                }
                if y == B {
                    rhs.push((x, N));
                }
            }
            rhs.sort();
            assert_eq!(lhs, rhs, "{}", f.name());
        }
    }
}
