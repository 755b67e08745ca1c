//! Field scalars used by the cycle-space geometry and the LP solver.
//!
//! Everything that needs division is written against [`Scalar`]. The exact
//! instantiation ([`crate::Rational`]) is what the library uses for
//! certificates and torus coordinates; `f64` is available for quick
//! numerical exploration and compares against a small tolerance.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{FromPrimitive, Num, Signed, Zero};

pub trait Scalar: Clone + Debug + Display + PartialOrd + Num + Signed + FromPrimitive {
    /// True when arithmetic and comparisons are exact.
    const EXACT: bool;

    fn floor(&self) -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    /// Zero test, tolerant for floating point.
    fn near_zero(&self) -> bool;

    fn sign(&self) -> Ordering {
        if self.near_zero() {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("i64 is representable")
    }

    /// Representative in `[0, 1)`.
    fn frac(&self) -> Self {
        let f = self.clone() - Scalar::floor(self);
        if !Self::EXACT && (f.clone() - Self::one()).near_zero() {
            Self::zero()
        } else {
            f
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn floor(&self) -> Self {
        BigRational::floor(self)
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn near_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for Rational64 {
    const EXACT: bool = true;

    fn floor(&self) -> Self {
        Rational64::floor(self)
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Rational64::new(numer, denom)
    }

    fn near_zero(&self) -> bool {
        self.is_zero()
    }
}

const F64_TOLERANCE: f64 = 1e-9;

impl Scalar for f64 {
    const EXACT: bool = false;

    fn floor(&self) -> Self {
        f64::floor(*self)
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn near_zero(&self) -> bool {
        self.abs() < F64_TOLERANCE
    }
}

/// `p/q` rendering used by the JSON exports, integers included.
pub fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Gaussian elimination solve of a square system. Returns `None` when the
/// matrix is singular.
pub fn solve<S: Scalar>(matrix: &[Vec<S>], rhs: &[S]) -> Option<Vec<S>> {
    let n = matrix.len();
    let mut a: Vec<Vec<S>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].near_zero())
            .max_by(|&x, &y| {
                a[x][col]
                    .abs()
                    .partial_cmp(&a[y][col].abs())
                    .unwrap_or(Ordering::Equal)
            })?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for k in col..=n {
            a[col][k] = a[col][k].clone() / p.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].near_zero() {
                let f = a[r][col].clone();
                for k in col..=n {
                    let delta = f.clone() * a[col][k].clone();
                    a[r][k] = a[r][k].clone() - delta;
                }
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub fn determinant<S: Scalar>(matrix: &[Vec<S>]) -> S {
    let n = matrix.len();
    let mut a = matrix.to_vec();
    let mut det = S::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].near_zero()) else {
            return S::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        let p = a[col][col].clone();
        det = det * p.clone();
        for r in col + 1..n {
            if !a[r][col].near_zero() {
                let f = a[r][col].clone() / p.clone();
                for k in col..n {
                    let delta = f.clone() * a[col][k].clone();
                    a[r][k] = a[r][k].clone() - delta;
                }
            }
        }
    }
    det
}
