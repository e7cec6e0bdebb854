//! Field-dispatched linear algebra on `BigRational` vectors, so ring code need not be
//! generic over the field type.

use num_rational::BigRational;
use num_traits::Zero;

use crate::chain::ChainComplex;
use crate::field::{self, Field, FieldKind, Fp, Rationals};
use crate::hbasis::FieldBasis;

/// Cohomology (or, via [`CohomologyBasis::homology`], homology) basis of one degree, over a
/// field chosen at run time.
pub enum CohomologyBasis {
    Q(FieldBasis<Rationals>),
    P(Fp, FieldBasis<Fp>),
}

impl CohomologyBasis {
    pub fn new(kind: FieldKind, c: &ChainComplex, d: i32) -> Self {
        match kind {
            FieldKind::Rationals => CohomologyBasis::Q(FieldBasis::cohomology(&Rationals, c, d)),
            FieldKind::Prime(p) => {
                let f = Fp::new(p);
                CohomologyBasis::P(f, FieldBasis::cohomology(&f, c, d))
            }
        }
    }

    pub fn homology(kind: FieldKind, c: &ChainComplex, d: i32) -> Self {
        match kind {
            FieldKind::Rationals => CohomologyBasis::Q(FieldBasis::homology(&Rationals, c, d)),
            FieldKind::Prime(p) => {
                let f = Fp::new(p);
                CohomologyBasis::P(f, FieldBasis::homology(&f, c, d))
            }
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            CohomologyBasis::Q(b) => b.dim,
            CohomologyBasis::P(_, b) => b.dim,
        }
    }

    pub fn representatives(&self) -> Vec<Vec<BigRational>> {
        match self {
            CohomologyBasis::Q(b) => b.representatives().to_vec(),
            CohomologyBasis::P(f, b) => b
                .representatives()
                .iter()
                .map(|r| r.iter().map(|x| f.to_rational(x)).collect())
                .collect(),
        }
    }

    /// Class coordinates of a cochain; `None` when it is not a cocycle.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        match self {
            CohomologyBasis::Q(b) => b.coordinates(v),
            CohomologyBasis::P(f, b) => {
                let w: Vec<u64> = v.iter().map(|x| f.from_rational(x)).collect();
                b.coordinates(&w).map(|c| c.iter().map(|x| f.to_rational(x)).collect())
            }
        }
    }
}

pub fn rank(kind: FieldKind, rows: &[Vec<BigRational>], ncols: usize) -> usize {
    match kind {
        FieldKind::Rationals => field::rank(&Rationals, rows, ncols),
        FieldKind::Prime(p) => {
            let f = Fp::new(p);
            let rows: Vec<Vec<u64>> = rows
                .iter()
                .map(|r| r.iter().map(|x| f.from_rational(x)).collect())
                .collect();
            field::rank(&f, &rows, ncols)
        }
    }
}

/// Every entry brought to canonical form for the field.
pub fn normalized(kind: FieldKind, v: Vec<BigRational>) -> Vec<BigRational> {
    match kind {
        FieldKind::Rationals => v,
        FieldKind::Prime(_) => v.iter().map(|x| kind.normalize(x)).collect(),
    }
}

pub fn is_zero_vec(kind: FieldKind, v: &[BigRational]) -> bool {
    v.iter().all(|x| kind.normalize(x).is_zero())
}
