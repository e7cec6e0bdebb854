//! Coefficient rings and exact linear algebra over fields.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

/// Coefficients for chain complexes: the integers, the rationals, or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coefficients {
    Integers,
    Rationals,
    Prime(u64),
}

impl Coefficients {
    /// Accepts `z`, `q`, `f2`, `f<p>` (also `fp<p>`).
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "z" | "integers" => Ok(Coefficients::Integers),
            "q" | "rationals" => Ok(Coefficients::Rationals),
            _ => {
                let digits = t.trim_start_matches("fp").trim_start_matches('f');
                match digits.parse::<u64>() {
                    Ok(p) if is_prime(p) && p < (1 << 31) => Ok(Coefficients::Prime(p)),
                    _ => input(format!("unknown coefficients `{s}` (use z, q, f2, f<p>)")),
                }
            }
        }
    }

    pub fn field(self) -> Option<FieldKind> {
        match self {
            Coefficients::Integers => None,
            Coefficients::Rationals => Some(FieldKind::Rationals),
            Coefficients::Prime(p) => Some(FieldKind::Prime(p)),
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Rationals => write!(f, "Q"),
            Coefficients::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// A field choice known at run time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
}

impl FieldKind {
    pub fn parse(s: &str) -> Result<Self> {
        match Coefficients::parse(s)?.field() {
            Some(f) => Ok(f),
            None => input("a field is required here (q, f2, f<p>)"),
        }
    }

    pub fn coefficients(self) -> Coefficients {
        match self {
            FieldKind::Rationals => Coefficients::Rationals,
            FieldKind::Prime(p) => Coefficients::Prime(p),
        }
    }

    /// Brings a rational into canonical form for this field (residue in `0..p` for prime fields).
    pub fn normalize(self, x: &BigRational) -> BigRational {
        match self {
            FieldKind::Rationals => x.clone(),
            FieldKind::Prime(p) => {
                let f = Fp::new(p);
                BigRational::from_integer(BigInt::from(f.from_rational(x)))
            }
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.coefficients().fmt(f)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Field arithmetic with an associated element type.
pub trait Field: Clone + Send + Sync {
    type E: Clone + PartialEq + fmt::Debug + Send + Sync;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn from_i64(&self, x: i64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn to_rational(&self, a: &Self::E) -> BigRational;
    fn from_rational(&self, a: &BigRational) -> Self::E;
}

/// Prime field `F_p` with `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p) && p < (1 << 31), "F_p needs a prime p < 2^31");
        Fp { p }
    }

    fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }
}

impl Field for Fp {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn to_rational(&self, a: &u64) -> BigRational {
        BigRational::from_integer(BigInt::from(*a))
    }
    fn from_rational(&self, a: &BigRational) -> u64 {
        let p = BigInt::from(self.p);
        let n = ((a.numer() % &p) + &p) % &p;
        let d = ((a.denom() % &p) + &p) % &p;
        let n = n.to_u64().expect("residue fits");
        let d = d.to_u64().expect("residue fits");
        self.mul(&n, &self.inv(&d))
    }
}

/// The rationals with arbitrary precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn from_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
}

/// Renders a rational compactly (`3`, `-1/2`).
pub fn show_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!(
            "{}{}/{}",
            if x.is_negative() { "-" } else { "" },
            x.numer().abs(),
            x.denom()
        )
    }
}

/// Sparse vector over a field: sorted `(index, nonzero value)` pairs.
pub type SparseVec<E> = Vec<(usize, E)>;

/// Adds `c · src` into the dense row `dst`.
pub fn axpy<F: Field>(f: &F, dst: &mut [F::E], c: &F::E, src: &[F::E]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !f.is_zero(s) {
            *d = f.add(d, &f.mul(c, s));
        }
    }
}

/// In-place reduced row echelon form. Returns pivot columns, ascending.
pub fn rref<F: Field>(f: &F, rows: &mut Vec<Vec<F::E>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !f.is_zero(&row[c]) {
                let c2 = f.neg(&row[c]);
                axpy(f, row, &c2, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank<F: Field>(f: &F, rows: &[Vec<F::E>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m, ncols).len()
}

/// Basis of `{x : A x = 0}` for `A` given by rows, one basis vector per free column,
/// normalized so the free coordinate is 1. Ordered by free column.
pub fn kernel_basis<F: Field>(f: &F, rows: &[Vec<F::E>], ncols: usize) -> Vec<Vec<F::E>> {
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); ncols];
        v[free] = f.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(&m[i][free]);
        }
        out.push(v);
    }
    out
}

/// A subspace `B ⊆ Z` of `F^n` with chosen complement basis for `Z / B`.
///
/// Rows are kept in reduced echelon form. Each row carries its coordinates on the
/// complement representatives (zero for rows coming from `B`).
#[derive(Clone, Debug)]
pub struct QuotientBasis<F: Field> {
    field: F,
    n: usize,
    rows: Vec<(usize, Vec<F::E>, Vec<F::E>)>,
    reps: Vec<Vec<F::E>>,
}

impl<F: Field> QuotientBasis<F> {
    /// `b` spans the subspace to quotient by; `z` spans the ambient subspace (must contain `b`).
    /// Representatives are the vectors of `z`, in order, that are independent modulo what came before.
    pub fn new(field: F, n: usize, b: &[Vec<F::E>], z: &[Vec<F::E>]) -> Self {
        let width = z.len();
        let mut q = QuotientBasis {
            field,
            n,
            rows: Vec::new(),
            reps: Vec::new(),
        };
        for v in b {
            q.insert(v.clone(), None, width);
        }
        for v in z {
            let idx = q.reps.len();
            if q.insert(v.clone(), Some(idx), width) {
                q.reps.push(v.clone());
            }
        }
        q
    }

    fn insert(&mut self, mut v: Vec<F::E>, rep: Option<usize>, width: usize) -> bool {
        let f = self.field.clone();
        let mut coord = vec![f.zero(); width];
        if let Some(i) = rep {
            coord[i] = f.one();
        }
        for (p, row, rc) in &self.rows {
            if !f.is_zero(&v[*p]) {
                let c = f.neg(&v[*p]);
                axpy(&f, &mut v, &c, row);
                axpy(&f, &mut coord, &c, rc);
            }
        }
        let Some(p) = (0..self.n).find(|&i| !f.is_zero(&v[i])) else {
            return false;
        };
        let inv = f.inv(&v[p]);
        for x in v.iter_mut() {
            *x = f.mul(x, &inv);
        }
        for x in coord.iter_mut() {
            *x = f.mul(x, &inv);
        }
        // Keep the echelon form reduced: clear column p from existing rows.
        for (_, row, rc) in self.rows.iter_mut() {
            if !f.is_zero(&row[p]) {
                let c = f.neg(&row[p]);
                axpy(&f, row, &c, &v);
                axpy(&f, rc, &c, &coord);
            }
        }
        self.rows.push((p, v, coord));
        self.rows.sort_by_key(|r| r.0);
        true
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[Vec<F::E>] {
        &self.reps
    }

    /// Coordinates of `v` (assumed to lie in `Z`) on the representatives, modulo `B`.
    /// Returns `None` when `v` is not in the span of `B ∪ reps`.
    pub fn coordinates(&self, v: &[F::E]) -> Option<Vec<F::E>> {
        let f = &self.field;
        let mut v = v.to_vec();
        let k = self.reps.len();
        let mut coord = vec![f.zero(); k];
        for (p, row, rc) in &self.rows {
            if !f.is_zero(&v[*p]) {
                let c = v[*p].clone();
                let negc = f.neg(&c);
                axpy(f, &mut v, &negc, row);
                for (i, x) in rc.iter().enumerate().take(k) {
                    if !f.is_zero(x) {
                        coord[i] = f.add(&coord[i], &f.mul(&c, x));
                    }
                }
            }
        }
        if v.iter().any(|x| !f.is_zero(x)) {
            return None;
        }
        Some(coord)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_coefficients() {
        assert_eq!(Coefficients::parse("z").unwrap(), Coefficients::Integers);
        assert_eq!(Coefficients::parse("f2").unwrap(), Coefficients::Prime(2));
        assert_eq!(Coefficients::parse("f7").unwrap(), Coefficients::Prime(7));
        assert!(Coefficients::parse("f4").is_err());
        assert_eq!(FieldKind::parse("q").unwrap(), FieldKind::Rationals);
        assert!(FieldKind::parse("z").is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = Fp::new(7);
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.from_rational(&half), 4);
    }

    #[test]
    fn kernel_and_rank() {
        let f = Rationals;
        let q = |x: i64| f.from_i64(x);
        let rows = vec![vec![q(1), q(1), q(0)], vec![q(0), q(1), q(1)]];
        assert_eq!(rank(&f, &rows, 3), 2);
        let k = kernel_basis(&f, &rows, 3);
        assert_eq!(k, vec![vec![q(1), q(-1), q(1)]]);
    }

    #[test]
    fn quotient_coordinates() {
        let f = Fp::new(2);
        // Z = F_2^3, B = span{(1,1,0)}. Reps: e1 (independent), e2 ≡ e1, e3.
        let b = vec![vec![1, 1, 0]];
        let z = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let qb = QuotientBasis::new(f, 3, &b, &z);
        assert_eq!(qb.dim(), 2);
        assert_eq!(qb.coordinates(&[0, 1, 0]).unwrap(), vec![1, 0]);
        assert_eq!(qb.coordinates(&[1, 1, 1]).unwrap(), vec![0, 1]);
    }
}
