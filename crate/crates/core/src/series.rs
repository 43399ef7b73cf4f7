//! Truncated power series, generic over the coefficient scalar.
//!
//! A `Series<T>` holds coefficients `c_0 .. c_N` of `Σ c_n q^n` known modulo
//! `q^{N+1}`; `N` is the order. Binary operations truncate to the smaller
//! order of the two operands. The scalar only needs ring operations with
//! division by invertible elements, so both exact rationals and `f64` work.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{FromPrimitive, One, Zero};

use crate::error::{Error, Result};

/// Coefficient scalar for [`Series`].
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + FromPrimitive
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
}

impl<T> Scalar for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + FromPrimitive
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
{
}

#[derive(Clone, PartialEq)]
pub struct Series<T> {
    coeffs: Vec<T>, // length = order + 1
}

impl<T: Scalar> Series<T> {
    pub fn from_coeffs(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![T::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut coeffs = vec![T::zero(); order + 1];
        coeffs[0] = c;
        Series { coeffs }
    }

    /// The monomial `c q^k` (zero series if `k` exceeds the order).
    pub fn monomial(c: T, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> T {
        self.coeffs.get(n).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, c: T) {
        assert!(n < self.coeffs.len());
        self.coeffs[n] = c;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        Series {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Series {
            coeffs: (0..=n)
                .map(|i| self.coeffs[i].clone() + rhs.coeffs[i].clone())
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        Series {
            coeffs: (0..=n)
                .map(|i| self.coeffs[i].clone() - rhs.coeffs[i].clone())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.order().min(rhs.order());
        let mut out = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series { coeffs: out }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be invertible.
    pub fn inverse(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let n = self.order();
        let mut inv = vec![T::zero(); n + 1];
        inv[0] = T::one() / self.coeffs[0].clone();
        for k in 1..=n {
            let mut acc = T::zero();
            for j in 0..k {
                acc = acc + inv[j].clone() * self.coeffs[k - j].clone();
            }
            inv[k] = -(acc / self.coeffs[0].clone());
        }
        Ok(Series { coeffs: inv })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self
            .mul(&rhs.inverse()?)
            .truncate(self.order().min(rhs.order())))
    }

    /// `q d/dq`, the theta derivative.
    pub fn theta_derivative(&self) -> Self {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c.clone() * T::from_usize(n).expect("scalar from usize"))
                .collect(),
        }
    }

    /// Substitutes `q -> q^k`, keeping the requested order.
    pub fn substitute_q_power(&self, k: usize, order: usize) -> Self {
        assert!(k >= 1);
        let mut out = Self::zero(order);
        for (n, c) in self.coeffs.iter().enumerate() {
            let e = n * k;
            if e > order {
                break;
            }
            out.coeffs[e] = c.clone();
        }
        out
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*q")?,
                _ => write!(f, "({c})*q^{n}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

impl<T: Scalar + fmt::Display> fmt::Debug for Series<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
