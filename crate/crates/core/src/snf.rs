//! Smith normal form over the integers.
//!
//! Elimination runs on checked `i64` first and restarts on `BigInt` if any entry overflows.
//! Pivots are chosen as the entry of smallest absolute value in the remaining block.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

trait SnfInt: Clone + PartialEq + Ord + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn abs(&self) -> Option<Self>;
    /// `self - q * b`
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Truncated quotient and remainder.
    fn quot(&self, b: &Self) -> Self;
    fn rem(&self, b: &Self) -> Self;
    fn is_negative(&self) -> bool;
    fn to_big(&self) -> BigInt;
}

impl SnfInt for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn abs(&self) -> Option<Self> {
        self.checked_abs()
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*b)?)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn quot(&self, b: &Self) -> Self {
        self / b
    }
    fn rem(&self, b: &Self) -> Self {
        self % b
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl SnfInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> Option<Self> {
        Some(Signed::abs(self))
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn quot(&self, b: &Self) -> Self {
        self / b
    }
    fn rem(&self, b: &Self) -> Self {
        self % b
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Result of a full Smith normal form: `D = U · M · V` with `D` diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct Snf {
    /// Diagonal entries `d_0, …, d_{min(r,c)-1}`, nonnegative, nonzero ones dividing the next.
    pub factors: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub u_inv: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub v_inv: Vec<Vec<BigInt>>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|d| !Zero::is_zero(*d)).count()
    }
}

struct Engine<T: SnfInt> {
    a: Vec<Vec<T>>,
    rows: usize,
    cols: usize,
    track: bool,
    u: Vec<Vec<T>>,
    u_inv: Vec<Vec<T>>,
    v: Vec<Vec<T>>,
    v_inv: Vec<Vec<T>>,
}

fn identity<T: SnfInt>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect()
}

impl<T: SnfInt> Engine<T> {
    fn new(a: Vec<Vec<T>>, rows: usize, cols: usize, track: bool) -> Self {
        let (u, u_inv, v, v_inv) = if track {
            (identity(rows), identity(rows), identity(cols), identity(cols))
        } else {
            (Vec::new(), Vec::new(), Vec::new(), Vec::new())
        };
        Engine {
            a,
            rows,
            cols,
            track,
            u,
            u_inv,
            v,
            v_inv,
        }
    }

    /// row_i -= q · row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &T) -> Option<()> {
        for j in 0..self.cols {
            if !self.a[t][j].is_zero() {
                self.a[i][j] = self.a[i][j].sub_mul(q, &self.a[t][j])?;
            }
        }
        if self.track {
            for j in 0..self.rows {
                if !self.u[t][j].is_zero() {
                    self.u[i][j] = self.u[i][j].sub_mul(q, &self.u[t][j])?;
                }
            }
            // inverse: column t += q · column i
            let mq = q.neg()?;
            for r in 0..self.rows {
                if !self.u_inv[r][i].is_zero() {
                    self.u_inv[r][t] = self.u_inv[r][t].sub_mul(&mq, &self.u_inv[r][i])?;
                }
            }
        }
        Some(())
    }

    /// col_j -= q · col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &T) -> Option<()> {
        for r in 0..self.rows {
            if !self.a[r][t].is_zero() {
                self.a[r][j] = self.a[r][j].sub_mul(q, &self.a[r][t])?;
            }
        }
        if self.track {
            for r in 0..self.cols {
                if !self.v[r][t].is_zero() {
                    self.v[r][j] = self.v[r][j].sub_mul(q, &self.v[r][t])?;
                }
            }
            // inverse: row t += q · row j
            let mq = q.neg()?;
            for c in 0..self.cols {
                if !self.v_inv[j][c].is_zero() {
                    self.v_inv[t][c] = self.v_inv[t][c].sub_mul(&mq, &self.v_inv[j][c])?;
                }
            }
        }
        Some(())
    }

    fn swap_rows(&mut self, i: usize, t: usize) {
        if i == t {
            return;
        }
        self.a.swap(i, t);
        if self.track {
            self.u.swap(i, t);
            for r in 0..self.rows {
                self.u_inv[r].swap(i, t);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, t: usize) {
        if j == t {
            return;
        }
        for r in 0..self.rows {
            self.a[r].swap(j, t);
        }
        if self.track {
            for r in 0..self.cols {
                self.v[r].swap(j, t);
            }
            self.v_inv.swap(j, t);
        }
    }

    fn negate_row(&mut self, t: usize) -> Option<()> {
        for j in 0..self.cols {
            self.a[t][j] = self.a[t][j].neg()?;
        }
        if self.track {
            for j in 0..self.rows {
                self.u[t][j] = self.u[t][j].neg()?;
            }
            for r in 0..self.rows {
                self.u_inv[r][t] = self.u_inv[r][t].neg()?;
            }
        }
        Some(())
    }

    /// Outer `None` signals overflow; inner `None` means the block is zero.
    fn smallest(&self, t: usize) -> Option<Option<(usize, usize)>> {
        let mut best: Option<(T, usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                let ax = x.abs()?;
                if best.as_ref().is_none_or(|(b, _, _)| ax < *b) {
                    let unit = ax == T::one();
                    best = Some((ax, i, j));
                    if unit {
                        return Some(best.map(|(_, i, j)| (i, j)));
                    }
                }
            }
        }
        Some(best.map(|(_, i, j)| (i, j)))
    }

    /// Runs elimination; `full` also enforces the divisibility chain.
    fn run(&mut self, full: bool) -> Option<()> {
        let n = self.rows.min(self.cols);
        let mut t = 0;
        while t < n {
            let Some((pi, pj)) = self.smallest(t)? else { break };
            self.swap_rows(pi, t);
            self.swap_cols(pj, t);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].quot(&self.a[t][t]);
                        self.row_sub(i, t, &q)?;
                        if !self.a[i][t].is_zero() {
                            clean = false;
                        }
                    }
                }
                for j in t + 1..self.cols {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].quot(&self.a[t][t]);
                        self.col_sub(j, t, &q)?;
                        if !self.a[t][j].is_zero() {
                            clean = false;
                        }
                    }
                }
                if clean {
                    break;
                }
                // A remainder is smaller than the pivot; move the smallest entry of row/col t in.
                let mut best: Option<(T, usize, bool)> = None;
                for i in t + 1..self.rows {
                    if !self.a[i][t].is_zero() {
                        let ax = self.a[i][t].abs()?;
                        if best.as_ref().is_none_or(|(b, _, _)| ax < *b) {
                            best = Some((ax, i, true));
                        }
                    }
                }
                for j in t + 1..self.cols {
                    if !self.a[t][j].is_zero() {
                        let ax = self.a[t][j].abs()?;
                        if best.as_ref().is_none_or(|(b, _, _)| ax < *b) {
                            best = Some((ax, j, false));
                        }
                    }
                }
                if let Some((_, idx, is_row)) = best {
                    if is_row {
                        self.swap_rows(idx, t);
                    } else {
                        self.swap_cols(idx, t);
                    }
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t)?;
            }
            if full {
                let d = self.a[t][t].clone();
                let mut bad = None;
                'outer: for i in t + 1..self.rows {
                    for j in t + 1..self.cols {
                        if !self.a[i][j].rem(&d).is_zero() {
                            bad = Some(i);
                            break 'outer;
                        }
                    }
                }
                if let Some(i) = bad {
                    // row_t += row_i, then redo this pivot.
                    let m1 = T::one().neg()?;
                    self.row_sub(t, i, &m1)?;
                    continue;
                }
            }
            t += 1;
        }
        Some(())
    }
}

fn to_big_matrix(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn big_of<T: SnfInt>(m: Vec<Vec<T>>) -> Vec<Vec<BigInt>> {
    m.into_iter()
        .map(|r| r.into_iter().map(|x| x.to_big()).collect())
        .collect()
}

fn finish<T: SnfInt>(e: Engine<T>) -> Snf {
    let n = e.rows.min(e.cols);
    let factors = (0..n).map(|i| e.a[i][i].to_big()).collect();
    Snf {
        factors,
        u: big_of(e.u),
        u_inv: big_of(e.u_inv),
        v: big_of(e.v),
        v_inv: big_of(e.v_inv),
    }
}

/// Full Smith normal form with unimodular transforms and their inverses.
pub fn smith_normal_form(m: &[Vec<i64>], cols: usize) -> Snf {
    let rows = m.len();
    let mut e = Engine::new(m.to_vec(), rows, cols, true);
    if e.run(true).is_some() {
        return finish(e);
    }
    smith_normal_form_big(&to_big_matrix(m), cols)
}

pub fn smith_normal_form_big(m: &[Vec<BigInt>], cols: usize) -> Snf {
    let rows = m.len();
    let mut e = Engine::new(m.to_vec(), rows, cols, true);
    e.run(true).expect("big integers do not overflow");
    finish(e)
}

/// Nonzero invariant factors only, ascending in the divisibility order. No transforms.
pub fn invariant_factors(m: &[Vec<i64>], cols: usize) -> Vec<BigInt> {
    let rows = m.len();
    let mut e = Engine::new(m.to_vec(), rows, cols, false);
    let diag: Vec<BigInt> = if e.run(false).is_some() {
        (0..rows.min(cols)).map(|i| BigInt::from(e.a[i][i])).collect()
    } else {
        let mut b = Engine::new(to_big_matrix(m), rows, cols, false);
        b.run(false).expect("big integers do not overflow");
        (0..rows.min(cols)).map(|i| b.a[i][i].clone()).collect()
    };
    normalize_diagonal(diag)
}

/// Turns any diagonal into the divisibility chain with the same cokernel, dropping zeros.
pub fn normalize_diagonal(diag: Vec<BigInt>) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = diag
        .into_iter()
        .filter(|x| !Zero::is_zero(x))
        .map(|x| Signed::abs(&x))
        .collect();
    // Replace (a, b) by (gcd, lcm) until sorted by divisibility.
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let n = a.len();
        let k = b.len();
        let c = if k == 0 { 0 } else { b[0].len() };
        (0..n)
            .map(|i| {
                (0..c)
                    .map(|j| (0..k).map(|t| &a[i][t] * &b[t][j]).sum::<BigInt>())
                    .collect()
            })
            .collect()
    }

    fn check(m: Vec<Vec<i64>>, cols: usize) -> Snf {
        let s = smith_normal_form(&m, cols);
        let big = to_big_matrix(&m);
        let d = mul(&mul(&s.u, &big), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i == j {
                    assert_eq!(*x, s.factors[i]);
                } else {
                    assert!(Zero::is_zero(x));
                }
            }
        }
        let r = m.len();
        assert_eq!(
            mul(&s.u, &s.u_inv),
            (0..r)
                .map(|i| (0..r).map(|j| BigInt::from((i == j) as i64)).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        );
        assert_eq!(
            mul(&s.v, &s.v_inv),
            (0..cols)
                .map(|i| (0..cols).map(|j| BigInt::from((i == j) as i64)).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        );
        s
    }

    #[test]
    fn small_examples() {
        let s = check(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], 3);
        assert_eq!(s.factors, vec![BigInt::from(1); 3]);
        let s = check(vec![vec![2, 0], vec![0, 3]], 2);
        assert_eq!(s.factors, vec![BigInt::from(1), BigInt::from(6)]);
        let s = check(vec![vec![0, 0], vec![0, 0]], 2);
        assert_eq!(s.factors, vec![BigInt::from(0); 2]);
        assert_eq!(
            invariant_factors(&[vec![2, 0], vec![0, 3]], 2),
            vec![BigInt::from(1), BigInt::from(6)]
        );
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = i64::MAX / 2;
        let m = vec![vec![big, big - 1], vec![big - 1, big - 2]];
        let s = check(m.clone(), 2);
        // det = big(big-2) - (big-1)^2 = -1
        assert_eq!(s.factors, vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(invariant_factors(&m, 2), vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn rectangular_with_transforms() {
        let s = check(vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        assert_eq!(s.factors, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        check(vec![vec![1, 2, 3, 4], vec![2, 4, 6, 8]], 4);
        check(vec![vec![0, 3], vec![5, 0], vec![0, 0]], 2);
    }
}
