//! Exact integer polynomials in the indeterminate `u`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// A polynomial over `Z` with no trailing zero coefficients.
///
/// `coeffs[k]` is the coefficient of `u^k`; the zero polynomial has an empty
/// coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        IntPolynomial::from_big(vec![c.into()])
    }

    /// `c * u^k`.
    pub fn monomial<T: Into<BigInt>>(c: T, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        IntPolynomial::from_big(coeffs)
    }

    pub fn from_coeffs<T: Into<BigInt> + Clone>(cs: &[T]) -> Self {
        IntPolynomial::from_big(cs.iter().cloned().map(Into::into).collect())
    }

    pub fn from_big(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Multiplies by `u^k`.
    pub fn shifted(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// True when `u^k` divides the polynomial (always true for zero).
    pub fn divisible_by_u_pow(&self, k: usize) -> bool {
        self.coeffs.iter().take(k).all(|c| c.is_zero())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPolynomial::zero();
        }
        IntPolynomial::from_big(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `p(u) ^ k` by repeated multiplication.
    pub fn pow(&self, k: usize) -> Self {
        let mut acc = IntPolynomial::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Rewrites the polynomial in the variable `t = u - 1` and returns the
    /// coefficient vector of the result, i.e. `q` with `q(u - 1) = p(u)`.
    pub fn coeffs_in_u_minus_one(&self) -> Vec<BigInt> {
        // Horner in (t + 1).
        let mut acc: Vec<BigInt> = Vec::new();
        for c in self.coeffs.iter().rev() {
            // acc := acc * (t + 1) + c
            let mut next = vec![BigInt::zero(); acc.len() + 1];
            for (i, a) in acc.iter().enumerate() {
                next[i] += a;
                next[i + 1] += a;
            }
            if next.is_empty() {
                next.push(BigInt::zero());
            }
            next[0] += c;
            while next.last().is_some_and(|x| x.is_zero()) {
                next.pop();
            }
            acc = next;
        }
        acc
    }

    /// True when the polynomial lies in `N[u-1]`, the set of polynomials in
    /// `u - 1` with nonnegative integer coefficients.
    pub fn nonneg_in_u_minus_one(&self) -> bool {
        self.coeffs_in_u_minus_one().iter().all(|c| !c.is_negative())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPolynomial::from_big(out)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        IntPolynomial::from_big(out)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_big(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "u")?;
                    } else {
                        write!(f, "u^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}
