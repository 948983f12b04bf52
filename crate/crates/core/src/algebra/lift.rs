use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;

/// Polynomial in the lift parameter `l` with exact rational coefficients,
/// lowest degree first. The leading coefficient is never zero; the zero
/// polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiftPolynomial {
    coeffs: Vec<Rational>,
}

impl LiftPolynomial {
    pub fn new(coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut coeffs: Vec<Rational> = coeffs.into_iter().collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        LiftPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        LiftPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new([c])
    }

    /// `(a + l)`
    pub fn shifted_variable(a: &Rational) -> Self {
        Self::new([a.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The constant value, if the polynomial does not depend on `l`.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, l: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * l + c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c))
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::constant(Rational::one()), |acc, _| &acc * self)
    }

    /// The polynomial `l -> p(l + delta)`.
    pub fn compose_shift(&self, delta: &Rational) -> Self {
        // Horner in the shifted variable
        let step = Self::shifted_variable(delta);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &step) + &Self::constant(c.clone()))
    }
}

/// Coefficient-wise equality; the canonical form makes this structural.
pub fn lift_poly_equal(p: &LiftPolynomial, q: &LiftPolynomial) -> bool {
    p == q
}

impl Add for &LiftPolynomial {
    type Output = LiftPolynomial;
    fn add(self, rhs: &LiftPolynomial) -> LiftPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        LiftPolynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)))
    }
}

impl Add for LiftPolynomial {
    type Output = LiftPolynomial;
    fn add(self, rhs: LiftPolynomial) -> LiftPolynomial {
        &self + &rhs
    }
}

impl AddAssign<&LiftPolynomial> for LiftPolynomial {
    fn add_assign(&mut self, rhs: &LiftPolynomial) {
        *self = &*self + rhs;
    }
}

impl Neg for &LiftPolynomial {
    type Output = LiftPolynomial;
    fn neg(self) -> LiftPolynomial {
        LiftPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &LiftPolynomial {
    type Output = LiftPolynomial;
    fn sub(self, rhs: &LiftPolynomial) -> LiftPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &LiftPolynomial {
    type Output = LiftPolynomial;
    fn mul(self, rhs: &LiftPolynomial) -> LiftPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LiftPolynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LiftPolynomial::new(out)
    }
}

impl fmt::Display for LiftPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c < &Rational::zero();
            let mag = if negative { -c } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == Rational::one();
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "l")?,
                _ => write!(f, "l^{k}")?,
            }
        }
        Ok(())
    }
}

impl From<i64> for LiftPolynomial {
    fn from(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }
}
