use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Finite Laurent polynomial `λ^low * (c_0 + c_1 λ + ... + c_k λ^k)` with
/// integer coefficients. Normalized so that `c_0` and `c_k` are nonzero;
/// the zero polynomial has no coefficients and `low = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn new(low: i64, coeffs: impl IntoIterator<Item = BigInt>) -> Self {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        LaurentPoly {
            low: low + lead_zeros as i64,
            coeffs,
        }
    }

    pub fn from_i64(low: i64, coeffs: &[i64]) -> Self {
        Self::new(low, coeffs.iter().map(|&c| BigInt::from(c)))
    }

    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(0, [c])
    }

    pub fn monomial(c: BigInt, exp: i64) -> Self {
        Self::new(exp, [c])
    }

    /// `λ^n - 1` for `n >= 1`.
    pub fn lambda_power_minus_one(n: u32) -> Self {
        let mut coeffs = vec![BigInt::zero(); n as usize + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n as usize] = BigInt::one();
        Self::new(0, coeffs)
    }

    /// `λ^n + 1` for `n >= 1`.
    pub fn lambda_power_plus_one(n: u32) -> Self {
        let mut coeffs = vec![BigInt::zero(); n as usize + 1];
        coeffs[0] = BigInt::one();
        coeffs[n as usize] = BigInt::one();
        Self::new(0, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let idx = exp - self.low;
        if idx < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(idx as usize).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn trailing_coeff(&self) -> Option<&BigInt> {
        self.coeffs.first()
    }

    /// Multiplies by `λ^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Same coefficients with `low = 0`.
    pub fn without_monomial(&self) -> Self {
        self.shift(-self.low)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|a| a * c))
    }

    /// Gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_exact_scalar(&self, c: &BigInt) -> Self {
        debug_assert!(self.coeffs.iter().all(|a| (a % c).is_zero()));
        Self::new(self.low, self.coeffs.iter().map(|a| a / c))
    }

    /// Divides by a polynomial with unit leading coefficient and nonzero
    /// constant term, returning the quotient only when the division is exact.
    pub(crate) fn div_exact_unit_lead(&self, divisor: &[BigInt]) -> Option<Self> {
        let dlen = divisor.len();
        let lead = divisor.last().expect("non-empty divisor");
        debug_assert!(lead.abs().is_one());
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.coeffs.len() < dlen {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dlen + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = &rem[i + dlen - 1] * lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.low, quot))
    }

    /// Factors `±λ^k ∏ Φ_d^{m_d}` when the polynomial is a product of
    /// cyclotomic polynomials up to sign and a power of `λ`; returns the
    /// exponents `(d, m_d)` in increasing order of `d`.
    pub(crate) fn cyclotomic_factorization(&self) -> Option<Vec<(u32, u32)>> {
        if self.is_zero() {
            return None;
        }
        let mut rest = self.without_monomial();
        let mut factors = Vec::new();
        // totient(d) > d / 6 below 30030, so larger indices cannot fit
        let degree = rest.coeffs.len() as u64 - 1;
        let max_index = u32::try_from(6 * degree + 6).ok()?;
        let mut d = 1u32;
        while rest.coeffs.len() > 1 && d <= max_index {
            if totient(d) as usize >= rest.coeffs.len() {
                d += 1;
                continue;
            }
            let phi = cyclotomic(d);
            let mut mult = 0;
            while let Some(q) = rest.div_exact_unit_lead(&phi) {
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                factors.push((d, mult));
            }
            d += 1;
        }
        if rest.coeffs.len() == 1 && rest.coeffs[0].abs().is_one() {
            Some(factors)
        } else {
            None
        }
    }

    pub fn eval_i64(&self, lambda: i64) -> Option<num_rational::BigRational> {
        if lambda == 0 && self.low < 0 {
            return None;
        }
        let x = num_rational::BigRational::from_integer(BigInt::from(lambda));
        let mut acc = num_rational::BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &x + num_rational::BigRational::from_integer(c.clone());
        }
        let shift = if self.low >= 0 {
            num_traits::pow(x, self.low as usize)
        } else {
            num_traits::pow(x.recip(), (-self.low) as usize)
        };
        Some(acc * shift)
    }
}

/// Coefficients of the `d`-th cyclotomic polynomial, lowest degree first.
pub(crate) fn cyclotomic(d: u32) -> Vec<BigInt> {
    static TABLE: OnceLock<RwLock<Vec<Vec<BigInt>>>> = OnceLock::new();
    let lock = TABLE.get_or_init(|| RwLock::new(vec![Vec::new()]));
    {
        let table = lock.read().expect("cyclotomic table poisoned");
        if let Some(p) = table.get(d as usize) {
            return p.clone();
        }
    }
    let mut table = lock.write().expect("cyclotomic table poisoned");
    while table.len() <= d as usize {
        let n = table.len() as u32;
        let next = cyclotomic_from(&table, n);
        table.push(next);
    }
    table[d as usize].clone()
}

fn cyclotomic_from(smaller: &[Vec<BigInt>], n: u32) -> Vec<BigInt> {
    let mut p = LaurentPoly::lambda_power_minus_one(n);
    for e in 1..n {
        if n.is_multiple_of(e) {
            p = p
                .div_exact_unit_lead(&smaller[e as usize])
                .expect("cyclotomic factors divide λ^n - 1");
        }
    }
    p.coeffs
}

/// Euler's totient, the degree of the `n`-th cyclotomic polynomial.
fn totient(mut n: u32) -> u32 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        LaurentPoly::new(low, (low..=high).map(|e| self.coeff(e) + rhs.coeff(e)))
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
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
        LaurentPoly::new(self.low + rhs.low, out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + i as i64;
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}*")?,
            }
            match e {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_strips_zeros() {
        let p = LaurentPoly::from_i64(-2, &[0, 0, 3, 0, 1, 0]);
        assert_eq!(p.low(), 0);
        assert_eq!(p.high(), 2);
        assert_eq!(p, LaurentPoly::from_i64(0, &[3, 0, 1]));
        assert!(LaurentPoly::from_i64(5, &[0, 0]).is_zero());
    }

    #[test]
    fn cyclotomic_small() {
        let as_i64 = |d| -> Vec<i64> {
            cyclotomic(d).iter().map(|c| i64::try_from(c).unwrap()).collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        // Φ_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic(105).iter().any(|c| c == &BigInt::from(-2)));
        assert_eq!(cyclotomic(140).len(), 49);
    }

    #[test]
    fn factor_products_of_binomials() {
        let p = &(&LaurentPoly::lambda_power_minus_one(6) * &LaurentPoly::lambda_power_minus_one(2))
            .shift(-3)
            * &LaurentPoly::constant(BigInt::from(-1));
        let f = p.cyclotomic_factorization().unwrap();
        assert_eq!(f, vec![(1, 2), (2, 2), (3, 1), (6, 1)]);
        assert!(LaurentPoly::from_i64(0, &[2, 1]).cyclotomic_factorization().is_none());
        assert!(LaurentPoly::from_i64(0, &[2]).cyclotomic_factorization().is_none());
        assert_eq!(LaurentPoly::from_i64(4, &[-1]).cyclotomic_factorization(), Some(vec![]));
    }

    #[test]
    fn exact_division() {
        let p = LaurentPoly::lambda_power_minus_one(4);
        let q = p.div_exact_unit_lead(&cyclotomic(2)).unwrap();
        assert_eq!(q, LaurentPoly::from_i64(0, &[-1, 1, -1, 1]));
        assert!(LaurentPoly::from_i64(0, &[1, 0, 1]).div_exact_unit_lead(&cyclotomic(2)).is_none());
    }
}
