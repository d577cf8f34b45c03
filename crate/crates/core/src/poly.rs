//! Univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients in ascending order of degree, with trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn from_bigints(coeffs: Vec<BigInt>) -> Self {
        Self::new(coeffs.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = BigRational::one();
        Poly { coeffs: c }
    }

    /// `x + a`.
    pub fn linear(a: BigRational) -> Self {
        Self::new(vec![a, BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(x)))
    }

    pub fn scale(&self, k: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: usize) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// The coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Human-readable form in the variable `var`, e.g. `1 + 3n + 6n^2`.
    pub fn display_in(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = if a.is_integer() {
                a.to_integer().to_string()
            } else {
                format!("({a})")
            };
            match k {
                0 => out.push_str(&mag),
                _ => {
                    if !a.is_one() {
                        out.push_str(&mag);
                    }
                    out.push_str(var);
                    if k > 1 {
                        out.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("n"))
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}
