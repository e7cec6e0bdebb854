//! Structure-constant tables of graded algebras over a field.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::field::{show_rational, FieldKind};
use crate::total::IndexPair;

use super::linalg;

/// One basis class with a cochain representative (label → coefficient).
#[derive(Clone, Debug, PartialEq)]
pub struct BasisClass {
    /// Index pair of the block holding the class, if the algebra is indexed.
    pub pair: Option<IndexPair>,
    pub degree: i32,
    pub label: String,
    pub rep: Vec<(u64, BigRational)>,
}

/// Sparse vector in a table's basis, ascending indices, no zero entries.
pub type Element = Vec<(usize, BigRational)>;

#[derive(Clone, Debug)]
pub struct RingTable {
    pub field: FieldKind,
    pub family: String,
    pub universe: String,
    pub basis: Vec<BasisClass>,
    /// `(i, j) ↦ e_i · e_j`; pairs with zero product are absent.
    pub constants: BTreeMap<(usize, usize), Element>,
    pub unit: Option<Element>,
    pub degree_preserving: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub associative: bool,
    pub graded_commutative: bool,
    pub unital: bool,
}

impl LawReport {
    pub fn all(&self) -> bool {
        self.associative && self.graded_commutative && self.unital
    }
}

/// Adds `c · v` into an accumulator, normalizing in the field.
fn accumulate(kind: FieldKind, acc: &mut BTreeMap<usize, BigRational>, c: &BigRational, v: &[(usize, BigRational)]) {
    for (k, x) in v {
        let e = acc.entry(*k).or_insert_with(BigRational::zero);
        *e = kind.normalize(&(&*e + c * x));
    }
}

pub(crate) fn finish(acc: BTreeMap<usize, BigRational>) -> Element {
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

impl RingTable {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, BigRational)] {
        self.constants.get(&(i, j)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn basis_element(&self, i: usize) -> Element {
        vec![(i, BigRational::one())]
    }

    pub fn mul(&self, x: &[(usize, BigRational)], y: &[(usize, BigRational)]) -> Element {
        let mut acc = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                let c = a * b;
                accumulate(self.field, &mut acc, &c, self.product(*i, *j));
            }
        }
        finish(acc)
    }

    pub fn scale(&self, c: &BigRational, x: &[(usize, BigRational)]) -> Element {
        let mut acc = BTreeMap::new();
        accumulate(self.field, &mut acc, c, x);
        finish(acc)
    }

    pub fn add(&self, x: &[(usize, BigRational)], y: &[(usize, BigRational)]) -> Element {
        let mut acc = BTreeMap::new();
        accumulate(self.field, &mut acc, &BigRational::one(), x);
        accumulate(self.field, &mut acc, &BigRational::one(), y);
        finish(acc)
    }

    pub fn indices_of_degree(&self, d: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].degree == d).collect()
    }

    pub fn degrees(&self) -> Vec<i32> {
        let mut v: Vec<i32> = self.basis.iter().map(|b| b.degree).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Betti numbers by degree.
    pub fn ranks(&self) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for b in &self.basis {
            *out.entry(b.degree).or_insert(0) += 1;
        }
        out
    }

    /// Rank of `H^i ⊗ H^j → H^*` for every pair of occurring degrees. Zero ranks included.
    pub fn multiplication_ranks(&self) -> BTreeMap<(i32, i32), usize> {
        let degs = self.degrees();
        let mut out = BTreeMap::new();
        for &i in &degs {
            for &j in &degs {
                let mut rows = Vec::new();
                for a in self.indices_of_degree(i) {
                    for b in self.indices_of_degree(j) {
                        let mut row = vec![BigRational::zero(); self.dim()];
                        for (k, x) in self.product(a, b) {
                            row[*k] = x.clone();
                        }
                        rows.push(row);
                    }
                }
                out.insert((i, j), linalg::rank(self.field, &rows, self.dim()));
            }
        }
        out
    }

    /// True when every product of basis classes lives in the sum of their degrees.
    pub fn degree_additive(&self) -> bool {
        self.constants.iter().all(|(&(i, j), v)| {
            v.iter()
                .all(|(k, _)| self.basis[*k].degree == self.basis[i].degree + self.basis[j].degree)
        })
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let ab = self.product(a, b);
                for c in 0..n {
                    let bc = self.product(b, c);
                    let left = self.mul(ab, &self.basis_element(c));
                    let right = self.mul(&self.basis_element(a), bc);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `x · y = (−1)^{|x||y|} y · x` on basis classes.
    pub fn is_graded_commutative(&self) -> bool {
        let n = self.dim();
        for a in 0..n {
            for b in a..n {
                let s = if (self.basis[a].degree * self.basis[b].degree).rem_euclid(2) == 1 {
                    -BigRational::one()
                } else {
                    BigRational::one()
                };
                let ba = self.scale(&s, self.product(b, a));
                if self.product(a, b) != ba.as_slice() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_unital(&self) -> bool {
        let Some(u) = &self.unit else { return self.dim() == 0 };
        (0..self.dim()).all(|i| {
            let e = self.basis_element(i);
            self.mul(u, &e) == e && self.mul(&e, u) == e
        })
    }

    pub fn laws(&self) -> LawReport {
        LawReport {
            associative: self.is_associative(),
            graded_commutative: self.is_graded_commutative(),
            unital: self.is_unital(),
        }
    }

    /// Machine-readable form: basis list and nonzero constants as `[i, j, coeff, k]`.
    pub fn to_json(&self) -> Value {
        let basis: Vec<Value> = self
            .basis
            .iter()
            .enumerate()
            .map(|(i, b)| {
                json!({
                    "index": i,
                    "pair": b.pair.map(|p| p.to_string()),
                    "degree": b.degree,
                    "label": b.label,
                    "rep": b.rep.iter().map(|(l, x)| json!([l, show_rational(x)])).collect::<Vec<_>>(),
                })
            })
            .collect();
        let mut constants = Vec::new();
        for (&(i, j), v) in &self.constants {
            for (k, x) in v {
                constants.push(json!([i, j, show_rational(x), k]));
            }
        }
        json!({
            "field": self.field.to_string(),
            "family": self.family,
            "universe": self.universe,
            "degree_preserving": self.degree_preserving,
            "basis": basis,
            "constants": constants,
        })
    }
}
