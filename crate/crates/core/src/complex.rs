//! Finite simplicial complexes on a ground set `[m]`, with faces stored as bitmasks.

use std::collections::HashSet;

use crate::bits::{self, Mask, MAX_GROUND};
use crate::error::{input, Result};

/// A simplicial complex on `[m]`. The void complex `{ }` is a flag, distinct from `{∅}`.
///
/// Faces are kept sorted by numeric mask value. Vertices `i` with `{i}` not a face are ghosts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    m: usize,
    faces: Vec<Mask>,
    void: bool,
}

impl SimplicialComplex {
    /// Downward closure of `facets`. An empty facet list gives `{∅}`; use [`Self::void`] for `{ }`.
    pub fn from_facets(m: usize, facets: &[Mask]) -> Result<Self> {
        if m > MAX_GROUND {
            return input(format!("ground size {m} exceeds {MAX_GROUND}"));
        }
        let full = bits::full(m);
        for &f in facets {
            if f & !full != 0 {
                return input(format!("facet {} is not inside [{m}]", bits::show(f)));
            }
        }
        let mut set: HashSet<Mask> = HashSet::new();
        set.insert(0);
        let mut stack: Vec<Mask> = facets.to_vec();
        stack.sort_unstable();
        stack.dedup();
        // Visit each facet's subsets once; skip subsets already known.
        for f in stack {
            if set.contains(&f) {
                continue;
            }
            for s in bits::submasks(f) {
                set.insert(s);
            }
        }
        Ok(Self::from_closed_set(m, set))
    }

    /// Builder for face sets already known to be closed. Used internally after set algebra.
    pub(crate) fn from_closed_set(m: usize, set: HashSet<Mask>) -> Self {
        let mut faces: Vec<Mask> = set.into_iter().collect();
        faces.sort_unstable();
        debug_assert!(faces.first() == Some(&0));
        SimplicialComplex { m, faces, void: false }
    }

    pub(crate) fn from_sorted_faces(m: usize, faces: Vec<Mask>) -> Self {
        if faces.is_empty() {
            return Self::void(m);
        }
        SimplicialComplex { m, faces, void: false }
    }

    pub fn void(m: usize) -> Self {
        SimplicialComplex {
            m,
            faces: Vec::new(),
            void: true,
        }
    }

    /// `{∅}` on `[m]`.
    pub fn empty(m: usize) -> Self {
        SimplicialComplex {
            m,
            faces: vec![0],
            void: false,
        }
    }

    /// Full simplex on the vertex set `s`.
    pub fn simplex(m: usize, s: Mask) -> Self {
        let mut faces: Vec<Mask> = bits::submasks(s).collect();
        faces.sort_unstable();
        SimplicialComplex { m, faces, void: false }
    }

    /// Proper faces of the simplex on `s`. `∂Δ^∅` is void.
    pub fn boundary(m: usize, s: Mask) -> Self {
        let mut faces: Vec<Mask> = bits::submasks(s).filter(|&f| f != s).collect();
        faces.sort_unstable();
        Self::from_sorted_faces(m, faces)
    }

    pub fn ground_size(&self) -> usize {
        self.m
    }

    pub fn is_void(&self) -> bool {
        self.void
    }

    pub fn faces(&self) -> &[Mask] {
        &self.faces
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn contains(&self, f: Mask) -> bool {
        self.faces.binary_search(&f).is_ok()
    }

    /// Union of all faces.
    pub fn vertex_mask(&self) -> Mask {
        self.faces.iter().fold(0, |a, &f| a | f)
    }

    /// Maximal faces, ascending by mask.
    pub fn facets(&self) -> Vec<Mask> {
        let mut out = Vec::new();
        for &f in &self.faces {
            let mut maximal = true;
            for v in bits::elements(bits::full(self.m) & !f) {
                if self.contains(f | (1 << v)) {
                    maximal = false;
                    break;
                }
            }
            if maximal {
                out.push(f);
            }
        }
        out
    }

    /// Largest face size minus one; `None` for the void complex.
    pub fn dim(&self) -> Option<i32> {
        self.faces.iter().map(|&f| bits::size(f) as i32 - 1).max()
    }

    /// True when this is the full simplex on `s`.
    pub fn is_simplex_on(&self, s: Mask) -> bool {
        !self.void && self.contains(s) && self.vertex_mask() == s
    }

    /// Full subcomplex `K|_ω`.
    pub fn restrict(&self, omega: Mask) -> Self {
        if self.void {
            return self.clone();
        }
        let faces = self.faces.iter().copied().filter(|&f| f & !omega == 0).collect();
        SimplicialComplex {
            m: self.m,
            faces,
            void: false,
        }
    }

    /// `link_K σ`; void when `σ ∉ K`.
    pub fn link(&self, sigma: Mask) -> Self {
        if !self.contains(sigma) {
            return Self::void(self.m);
        }
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|&f| f & sigma == 0 && self.contains(f | sigma))
            .collect();
        SimplicialComplex {
            m: self.m,
            faces,
            void: false,
        }
    }

    /// `K_{σ,ω} = {τ ⊆ ω : σ ∪ τ ∈ K}` (void if `σ ∉ K`). Ground size stays `m`.
    pub fn local_complex(&self, sigma: Mask, omega: Mask) -> Self {
        if !self.contains(sigma) {
            return Self::void(self.m);
        }
        let faces = self
            .faces
            .iter()
            .copied()
            .filter(|&f| f & !omega == 0 && self.contains(f | sigma))
            .collect();
        SimplicialComplex {
            m: self.m,
            faces,
            void: false,
        }
    }

    /// Alexander dual relative to `s`: `{ s∖τ : τ ⊆ s, τ ∉ K }`.
    pub fn alexander_dual(&self, s: Mask) -> Result<Self> {
        if s == 0 {
            return input("alexander dual needs a nonempty vertex set");
        }
        if self.vertex_mask() & !s != 0 {
            return input("complex has faces outside the dual's vertex set");
        }
        let mut faces: Vec<Mask> = bits::submasks(s)
            .filter(|&t| !self.contains(t))
            .map(|t| s & !t)
            .collect();
        faces.sort_unstable();
        Ok(Self::from_sorted_faces(self.m, faces))
    }

    /// Same faces on a larger ground set, shifted up by `offset` positions.
    pub fn embed(&self, offset: usize, new_m: usize) -> Result<Self> {
        if offset + self.m > new_m || new_m > MAX_GROUND {
            return input("embedding does not fit the target ground set");
        }
        let mut faces: Vec<Mask> = self.faces.iter().map(|&f| f << offset).collect();
        faces.sort_unstable();
        Ok(SimplicialComplex {
            m: new_m,
            faces,
            void: self.void,
        })
    }

    /// Join on the disjoint union `[m_X] ⊔ [m_Y]`, with `Y` shifted by `m_X`.
    pub fn join(x: &Self, y: &Self) -> Result<Self> {
        let m = x.m + y.m;
        if m > MAX_GROUND {
            return input(format!("join needs {m} vertices, over the cap {MAX_GROUND}"));
        }
        if x.void || y.void {
            return Ok(Self::void(m));
        }
        let mut faces = Vec::with_capacity(x.faces.len() * y.faces.len());
        for &a in &x.faces {
            for &b in &y.faces {
                faces.push(a | (b << x.m));
            }
        }
        faces.sort_unstable();
        Ok(SimplicialComplex { m, faces, void: false })
    }

    /// Union of face sets on a common ground set.
    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return input("union of complexes on different ground sets");
        }
        let mut faces: Vec<Mask> = self.faces.iter().chain(other.faces.iter()).copied().collect();
        faces.sort_unstable();
        faces.dedup();
        Ok(Self::from_sorted_faces(self.m, faces))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return input("intersection of complexes on different ground sets");
        }
        let faces = self.faces.iter().copied().filter(|&f| other.contains(f)).collect();
        Ok(Self::from_sorted_faces(self.m, faces))
    }

    /// True when every face of `self` is a face of `other`.
    pub fn is_subcomplex_of(&self, other: &Self) -> bool {
        self.faces.iter().all(|&f| other.contains(f))
    }

    /// Subsets of `[m]` that are not faces but all of whose proper subsets are.
    pub fn minimal_nonfaces(&self) -> Vec<Mask> {
        if self.void {
            return vec![0];
        }
        let mut out = Vec::new();
        let full = bits::full(self.m);
        // Candidates are faces plus one vertex.
        let mut cands: Vec<Mask> = Vec::new();
        for &f in &self.faces {
            for v in bits::elements(full & !f) {
                cands.push(f | (1 << v));
            }
        }
        cands.sort_unstable();
        cands.dedup();
        for c in cands {
            if !self.contains(c) && bits::elements(c).all(|v| self.contains(c & !(1 << v))) {
                out.push(c);
            }
        }
        out
    }

    /// Checks the closure invariant on every face.
    pub fn is_closed(&self) -> bool {
        if self.void {
            return self.faces.is_empty();
        }
        if self.faces.first() != Some(&0) {
            return false;
        }
        self.faces
            .iter()
            .all(|&f| bits::elements(f).all(|v| self.contains(f & !(1 << v))))
    }

    /// Staircase (monotone chain) triangulation of `X × Y`. Vertex `(i, j)` becomes `i·m_Y + j`.
    pub fn staircase_product(x: &Self, y: &Self) -> Result<Self> {
        if x.void || y.void {
            return input("staircase product of a void complex is undefined");
        }
        let m = x.m * y.m;
        if m > MAX_GROUND {
            return input(format!("product needs {m} vertices, over the cap {MAX_GROUND}"));
        }
        let mut facets: Vec<Mask> = Vec::new();
        let xf = x.facets();
        let yf = y.facets();
        for &a in &xf {
            let av: Vec<usize> = bits::elements(a).collect();
            for &b in &yf {
                let bv: Vec<usize> = bits::elements(b).collect();
                if av.is_empty() || bv.is_empty() {
                    facets.push(0);
                    continue;
                }
                staircase_paths(&av, &bv, y.m, &mut facets);
            }
        }
        Self::from_facets(m, &facets)
    }
}

/// Pushes every maximal monotone lattice path through the grid `av × bv`.
fn staircase_paths(av: &[usize], bv: &[usize], ny: usize, out: &mut Vec<Mask>) {
    fn rec(av: &[usize], bv: &[usize], ny: usize, i: usize, j: usize, acc: Mask, out: &mut Vec<Mask>) {
        let acc = acc | (1 << (av[i] * ny + bv[j]));
        if i + 1 == av.len() && j + 1 == bv.len() {
            out.push(acc);
            return;
        }
        if i + 1 < av.len() {
            rec(av, bv, ny, i + 1, j, acc, out);
        }
        if j + 1 < bv.len() {
            rec(av, bv, ny, i, j + 1, acc, out);
        }
    }
    rec(av, bv, ny, 0, 0, 0, out);
}

/// Every simplicial complex on `[m]`, void included. Feasible for `m ≤ 4`.
pub fn all_complexes(m: usize) -> Vec<SimplicialComplex> {
    assert!(m <= 4, "exhaustive enumeration is limited to m ≤ 4");
    let n = 1usize << m;
    let mut out = vec![SimplicialComplex::void(m)];
    // Downsets of the Boolean lattice, grown by antichain search over nonempty subsets.
    let subsets: Vec<Mask> = (1..n as u32).collect();
    fn rec(m: usize, subsets: &[Mask], idx: usize, current: &mut Vec<Mask>, out: &mut Vec<SimplicialComplex>) {
        if idx == subsets.len() {
            let mut faces = current.clone();
            faces.push(0);
            faces.sort_unstable();
            out.push(SimplicialComplex { m, faces, void: false });
            return;
        }
        let s = subsets[idx];
        rec(m, subsets, idx + 1, current, out);
        // Subsets are visited in increasing numeric order, so all proper subsets of `s`
        // have been decided already.
        let ok = bits::elements(s).all(|v| {
            let t = s & !(1 << v);
            t == 0 || current.contains(&t)
        });
        if ok {
            current.push(s);
            rec(m, subsets, idx + 1, current, out);
            current.pop();
        }
    }
    let mut cur = Vec::new();
    rec(m, &subsets, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::from_vertices as v;

    fn gon(m: usize) -> SimplicialComplex {
        let facets: Vec<Mask> = (0..m).map(|i| (1 << i) | (1 << ((i + 1) % m))).collect();
        SimplicialComplex::from_facets(m, &facets).unwrap()
    }

    #[test]
    fn boundary_of_triangle_has_seven_faces() {
        let k = SimplicialComplex::from_facets(3, &[v(&[1, 2]), v(&[2, 3]), v(&[1, 3])]).unwrap();
        assert_eq!(k.num_faces(), 7);
        assert_eq!(k, SimplicialComplex::boundary(3, 0b111));
    }

    #[test]
    fn void_and_empty_are_distinct() {
        let e = SimplicialComplex::from_facets(4, &[0]).unwrap();
        assert_eq!(e, SimplicialComplex::empty(4));
        assert_ne!(e, SimplicialComplex::void(4));
        assert!(SimplicialComplex::void(2).is_void());
    }

    #[test]
    fn facet_outside_ground_set_is_rejected() {
        assert!(SimplicialComplex::from_facets(2, &[v(&[3])]).is_err());
    }

    #[test]
    fn local_complex_examples() {
        let k = SimplicialComplex::boundary(3, 0b111);
        let l = k.local_complex(v(&[1]), v(&[2, 3]));
        assert_eq!(l.faces(), &[0, v(&[2]), v(&[3])]);
        let k2 = SimplicialComplex::from_facets(3, &[v(&[1, 2])]).unwrap();
        assert!(k2.local_complex(v(&[3]), 0).is_void());
        assert_eq!(k2.local_complex(0, 0), SimplicialComplex::empty(3));
    }

    #[test]
    fn alexander_dual_examples() {
        let s = 0b1111;
        assert!(SimplicialComplex::simplex(4, s).alexander_dual(s).unwrap().is_void());
        assert_eq!(
            SimplicialComplex::boundary(4, s).alexander_dual(s).unwrap(),
            SimplicialComplex::empty(4)
        );
        let d = gon(4).alexander_dual(s).unwrap();
        assert_eq!(d.facets(), vec![v(&[1, 3]), v(&[2, 4])]);
        assert!(SimplicialComplex::empty(4).alexander_dual(0).is_err());
    }

    #[test]
    fn join_examples() {
        let s0 = SimplicialComplex::boundary(2, 0b11);
        let j = SimplicialComplex::join(&s0, &s0).unwrap();
        assert_eq!(j.facets(), vec![v(&[1, 3]), v(&[2, 3]), v(&[1, 4]), v(&[2, 4])]);
        let k = gon(4);
        assert_eq!(SimplicialComplex::join(&SimplicialComplex::empty(0), &k).unwrap(), k);
        assert!(SimplicialComplex::join(&SimplicialComplex::void(1), &k)
            .unwrap()
            .is_void());
    }

    #[test]
    fn staircase_examples() {
        let pt = SimplicialComplex::simplex(1, 1);
        assert_eq!(SimplicialComplex::staircase_product(&pt, &pt).unwrap(), pt);
        let edge = SimplicialComplex::simplex(2, 0b11);
        let sq = SimplicialComplex::staircase_product(&edge, &edge).unwrap();
        // (1,1)=bit0, (1,2)=bit1, (2,1)=bit2, (2,2)=bit3
        assert_eq!(sq.facets(), vec![0b1011, 0b1101]);
        let e = SimplicialComplex::empty(2);
        assert_eq!(
            SimplicialComplex::staircase_product(&e, &edge).unwrap(),
            SimplicialComplex::empty(4)
        );
        assert!(SimplicialComplex::staircase_product(&SimplicialComplex::void(1), &edge).is_err());
    }

    #[test]
    fn enumeration_counts_match_dedekind_numbers() {
        // Downsets containing ∅ on [m] plus the void complex: 2, 3, 6, 20, 168 for m = 0..4.
        let counts: Vec<usize> = (0..=4).map(|m| all_complexes(m).len()).collect();
        assert_eq!(counts, vec![2, 3, 6, 20, 168]);
        for k in all_complexes(3) {
            assert!(k.is_closed());
        }
    }

    #[test]
    fn minimal_nonfaces_of_square() {
        assert_eq!(gon(4).minimal_nonfaces(), vec![v(&[1, 3]), v(&[2, 4])]);
    }
}
