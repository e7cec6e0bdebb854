//! Explicit (co)homology bases: cycle representatives and coordinates of classes.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::chain::ChainComplex;
use crate::field::{kernel_basis, Field, QuotientBasis};
use crate::snf::smith_normal_form_big;

/// Homology (or cohomology) basis in one degree over a field.
pub struct FieldBasis<F: Field> {
    pub degree: i32,
    pub dim: usize,
    q: QuotientBasis<F>,
}

impl<F: Field> FieldBasis<F> {
    /// `H_d(C)`: cycles `ker ∂_d` modulo `im ∂_{d+1}`.
    pub fn homology(f: &F, c: &ChainComplex, d: i32) -> Self {
        let n = c.dim(d);
        let out = c.boundary(d).dense_in(f);
        let z = kernel_basis(f, &out, n);
        let inc = c.boundary(d + 1);
        let b: Vec<Vec<F::E>> = inc
            .cols
            .iter()
            .map(|col| {
                let mut v = vec![f.zero(); n];
                for &(i, x) in col {
                    v[i as usize] = f.add(&v[i as usize], &f.from_i64(x));
                }
                v
            })
            .collect();
        let q = QuotientBasis::new(f.clone(), n, &b, &z);
        FieldBasis {
            degree: d,
            dim: q.dim(),
            q,
        }
    }

    /// `H^d(C)`: cocycles `ker δ^d = ker ∂_{d+1}^T` modulo `im δ^{d-1}` (rows of `∂_d`).
    pub fn cohomology(f: &F, c: &ChainComplex, d: i32) -> Self {
        let n = c.dim(d);
        let up = c.boundary(d + 1);
        let rows_t: Vec<Vec<F::E>> = up
            .cols
            .iter()
            .map(|col| {
                let mut v = vec![f.zero(); n];
                for &(i, x) in col {
                    v[i as usize] = f.add(&v[i as usize], &f.from_i64(x));
                }
                v
            })
            .collect();
        let z = kernel_basis(f, &rows_t, n);
        let b = c.boundary(d).dense_in(f);
        let q = QuotientBasis::new(f.clone(), n, &b, &z);
        FieldBasis {
            degree: d,
            dim: q.dim(),
            q,
        }
    }

    pub fn representatives(&self) -> &[Vec<F::E>] {
        self.q.representatives()
    }

    /// Coordinates of a (co)cycle; `None` if it is not one.
    pub fn coordinates(&self, v: &[F::E]) -> Option<Vec<F::E>> {
        self.q.coordinates(v)
    }
}

/// Free part of integral homology in one degree.
pub struct IntegerBasis {
    pub degree: i32,
    /// Rows `r..` of `V^{-1}` for the SNF of `∂_d`: maps a chain to kernel coordinates.
    kernel_coords: Vec<Vec<BigInt>>,
    /// Row transform of the boundary image inside kernel coordinates.
    p: Vec<Vec<BigInt>>,
    /// Number of unit-or-torsion invariant factors of the boundary image.
    r_img: usize,
    pub torsion: Vec<BigInt>,
    pub reps: Vec<Vec<BigInt>>,
}

fn mat_vec(m: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

impl IntegerBasis {
    pub fn homology(c: &ChainComplex, d: i32) -> Self {
        let n = c.dim(d);
        let big = |m: Vec<Vec<i64>>| -> Vec<Vec<BigInt>> {
            m.into_iter()
                .map(|r| r.into_iter().map(BigInt::from).collect())
                .collect()
        };
        let out = big(c.boundary(d).dense());
        let s = smith_normal_form_big(&out, n);
        let r = s.rank();
        let kernel_coords: Vec<Vec<BigInt>> = s.v_inv[r..].to_vec();
        let k = n - r;
        // Boundaries in kernel coordinates: (V^{-1} ∂_{d+1})[r..].
        let inc = c.boundary(d + 1);
        let mut img: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); inc.ncols()]; k];
        for (j, col) in inc.cols.iter().enumerate() {
            let mut v = vec![BigInt::zero(); n];
            for &(i, x) in col {
                v[i as usize] += BigInt::from(x);
            }
            let y = mat_vec(&kernel_coords, &v);
            for (i, yi) in y.into_iter().enumerate() {
                img[i][j] = yi;
            }
        }
        let s2 = smith_normal_form_big(&img, inc.ncols());
        let r_img = s2.rank();
        let torsion: Vec<BigInt> = s2
            .factors
            .iter()
            .filter(|x| !x.is_zero() && !x.is_one())
            .cloned()
            .collect();
        // Free generators: V[:, r..] · P^{-1}[:, r_img..].
        let mut reps = Vec::new();
        for g in r_img..k {
            let col: Vec<BigInt> = (0..k).map(|i| s2.u_inv[i][g].clone()).collect();
            let chain: Vec<BigInt> = (0..n)
                .map(|row| (0..k).map(|i| &s.v[row][r + i] * &col[i]).sum())
                .collect();
            reps.push(chain);
        }
        IntegerBasis {
            degree: d,
            kernel_coords,
            p: s2.u,
            r_img,
            torsion,
            reps,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.reps.len()
    }

    /// Free-part coordinates of a cycle.
    pub fn free_coords(&self, z: &[BigInt]) -> Vec<BigInt> {
        let y = mat_vec(&self.kernel_coords, z);
        let py = mat_vec(&self.p, &y);
        py[self.r_img..].to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{simplicial_chain, ChainVariant};
    use crate::complex::SimplicialComplex;
    use crate::field::{Coefficients, Fp, Rationals};

    #[test]
    fn circle_basis_over_fields() {
        let k = SimplicialComplex::boundary(3, 0b111);
        let c = simplicial_chain(&k, ChainVariant::Plain, Coefficients::Rationals);
        let h1 = FieldBasis::homology(&Rationals, &c, 1);
        assert_eq!(h1.dim, 1);
        let rep = h1.representatives()[0].clone();
        assert_eq!(h1.coordinates(&rep).unwrap(), vec![Rationals.one()]);
        let co1 = FieldBasis::cohomology(&Fp::new(2), &c, 1);
        assert_eq!(co1.dim, 1);
        // Each edge cochain is a generator mod coboundaries.
        assert_eq!(co1.coordinates(&[1, 0, 0]).unwrap(), vec![1]);
        assert_eq!(co1.coordinates(&[0, 0, 1]).unwrap(), vec![1]);
    }

    #[test]
    fn integer_basis_of_circle_and_torsion() {
        let k = SimplicialComplex::boundary(3, 0b111);
        let c = simplicial_chain(&k, ChainVariant::Plain, Coefficients::Integers);
        let b = IntegerBasis::homology(&c, 1);
        assert_eq!(b.free_rank(), 1);
        let coords = b.free_coords(&b.reps[0]);
        assert_eq!(coords, vec![BigInt::one()]);
        let b0 = IntegerBasis::homology(&c, 0);
        assert_eq!(b0.free_rank(), 1);
        // Any single vertex generates H_0.
        let v = vec![BigInt::one(), BigInt::zero(), BigInt::zero()];
        assert_eq!(
            b0.free_coords(&v).iter().map(|x| x.clone() * x).sum::<BigInt>(),
            BigInt::one()
        );
    }
}
