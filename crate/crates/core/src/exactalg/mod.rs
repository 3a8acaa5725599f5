//! Exact sparse arithmetic: Laurent rational functions in the ground
//! variables and truncated bivariate power series over them.

pub mod domain;
pub mod gcd;
pub mod guard;
pub mod pade;
pub mod poly;
pub mod rat;
pub mod scalar;
pub mod series;
pub mod text;

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

pub use domain::{Domain, Specialized, Symbolic};
pub use pade::{fit_with_denominator, rational_reconstruct, RationalFit, UniPoly};
pub use poly::{Mono, Poly, Var};
pub use rat::Rat;
pub use scalar::{GroundScalar, HalfInt};
pub use series::TruncatedSeries;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("constant term must be {expected}")]
    BadConstantTerm { expected: &'static str },
    #[error("limit a->0 does not exist (valuation {valuation})")]
    LimitDoesNotExist { valuation: HalfInt },
    #[error("zero has no a-valuation")]
    ZeroValuation,
    #[error("no rational function with numerator degree <= {dn} and denominator degree <= {dd} fits")]
    NoRationalFit { dn: usize, dd: usize },
    #[error("need at least {needed} coefficients, have {have}")]
    TooFewCoefficients { needed: usize, have: usize },
    #[error("singular linear system")]
    Singular,
}

/// Commutative ring operations shared by scalars, series and Fock coefficients.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn mul_rat(&self, r: &BigRational) -> Self;

    fn mul_int(&self, k: i64) -> Self {
        self.mul_rat(&BigRational::from_integer(k.into()))
    }

    fn pow(&self, k: u32) -> Self {
        let mut out = self.one_like();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }
}

/// A field of coefficients with canonical zero and one.
pub trait Field: Ring {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: &BigRational) -> Self;
    fn inv(&self) -> Result<Self, ArithError>;

    fn from_int(k: i64) -> Self {
        Self::from_rat(&BigRational::from_integer(k.into()))
    }

    fn div(&self, o: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&o.inv()?))
    }
}

/// Solve `m x = b` over a field by Gaussian elimination.
///
/// `m` is row-major with `rows >= cols`; extra rows must be consistent.
pub fn solve_linear<S: Field>(m: &[Vec<S>], b: &[S]) -> Result<Vec<S>, ArithError> {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    let mut a: Vec<Vec<S>> = m
        .iter()
        .zip(b.iter())
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let mut piv_row = 0;
    let mut pivots = Vec::with_capacity(cols);
    for c in 0..cols {
        let Some(p) = (piv_row..rows).find(|&r| !a[r][c].is_zero()) else {
            return Err(ArithError::Singular);
        };
        a.swap(piv_row, p);
        let inv = a[piv_row][c].inv()?;
        let prow: Vec<S> = a[piv_row].iter().map(|x| x.mul(&inv)).collect();
        a[piv_row] = prow;
        for r in 0..rows {
            if r != piv_row && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let row: Vec<S> = a[r].iter().zip(a[piv_row].iter()).map(|(x, y)| x.sub(&f.mul(y))).collect();
                a[r] = row;
            }
        }
        pivots.push(piv_row);
        piv_row += 1;
    }
    if a[piv_row..].iter().any(|r| !r[cols].is_zero()) {
        return Err(ArithError::Singular);
    }
    Ok(pivots.iter().map(|&r| a[r][cols].clone()).collect())
}

/// A basis of the null space of `m` (row-major), via reduced row echelon form.
pub fn null_space<S: Field>(m: &[Vec<S>], cols: usize) -> Vec<Vec<S>> {
    let mut a: Vec<Vec<S>> = m.to_vec();
    let rows = a.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("pivot is nonzero");
        let prow: Vec<S> = a[r].iter().map(|x| x.mul(&inv)).collect();
        a[r] = prow;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let row: Vec<S> = a[i].iter().zip(a[r].iter()).map(|(x, y)| x.sub(&f.mul(y))).collect();
                a[i] = row;
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![S::zero(); cols];
            v[fc] = S::one();
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = a[i][fc].neg();
            }
            v
        })
        .collect()
}
