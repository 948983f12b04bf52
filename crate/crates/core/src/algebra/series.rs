use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{AlgebraError, Rational};

/// Power series `c_0 + c_1 x + ... + c_N x^N + O(x^{N+1})` with exact
/// rational coefficients. Coefficients past the order are never consulted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series of the given order from leading coefficients; missing
    /// ones are zero and extra ones are discarded.
    pub fn new(order: usize, coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut coeffs: Vec<Rational> = coeffs.into_iter().take(order + 1).collect();
        coeffs.resize(order + 1, Rational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_integers(order: usize, coeffs: &[i64]) -> Self {
        Self::new(
            order,
            coeffs.iter().map(|&c| Rational::from_integer(BigInt::from(c))),
        )
    }

    pub fn zero(order: usize) -> Self {
        Self::new(order, [])
    }

    pub fn one(order: usize) -> Self {
        Self::new(order, [Rational::one()])
    }

    /// `c * x^k`, or zero if `k` exceeds the order.
    pub fn monomial(order: usize, k: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Substitutes `x -> d x`.
    pub fn rescale_variable(&self, d: &Rational) -> Self {
        let mut power = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let out = c * &power;
                power *= d;
                out
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul_same_order(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = mul_same_order(&base, &base);
            }
        }
        acc
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        series_product(self, other)
    }
}

fn mul_same_order(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let n = a.order();
    let mut out = vec![Rational::zero(); n + 1];
    for (i, ai) in a.coeffs.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs.iter().take(n + 1 - i).enumerate() {
            if !bj.is_zero() {
                out[i + j] += ai * bj;
            }
        }
    }
    TruncatedSeries { coeffs: out }
}

/// Cauchy product truncated at the common order.
pub fn series_product(
    a: &TruncatedSeries,
    b: &TruncatedSeries,
) -> Result<TruncatedSeries, AlgebraError> {
    if a.order() != b.order() {
        return Err(AlgebraError::OrderMismatch {
            left: a.order(),
            right: b.order(),
        });
    }
    Ok(mul_same_order(a, b))
}

/// Multiplicative inverse, solved coefficient by coefficient.
pub fn series_inverse(a: &TruncatedSeries) -> Result<TruncatedSeries, AlgebraError> {
    let c0 = &a.coeffs[0];
    if c0.is_zero() {
        return Err(AlgebraError::NonUnit);
    }
    let inv0 = c0.recip();
    let n = a.order();
    let mut out: Vec<Rational> = Vec::with_capacity(n + 1);
    out.push(inv0.clone());
    for k in 1..=n {
        let mut acc = Rational::zero();
        for j in 1..=k {
            if !a.coeffs[j].is_zero() {
                acc += &a.coeffs[j] * &out[k - j];
            }
        }
        out.push(-acc * &inv0);
    }
    Ok(TruncatedSeries { coeffs: out })
}

/// Line-bundle factor of a multiplicative sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenusKind {
    /// `1 + d x`
    Chern,
    /// `1 + d^2 x^2`
    Pontrjagin,
    /// `(d x / 2) / sinh(d x / 2)`
    AHat,
    /// `d x / tanh(d x)`
    LGenus,
}

/// Series of `f(d x)` for the characteristic power series `f` of `kind`,
/// truncated at `order`.
pub fn genus_line_factor(kind: GenusKind, scale: i64, order: usize) -> TruncatedSeries {
    let d = Rational::from_integer(BigInt::from(scale));
    match kind {
        GenusKind::Chern => TruncatedSeries::new(order, [Rational::one(), d]),
        GenusKind::Pontrjagin => {
            TruncatedSeries::new(order, [Rational::one(), Rational::zero(), &d * &d])
        }
        GenusKind::AHat => {
            // 1 / (sinh(u)/u) at u = d x / 2
            let half = d / Rational::from_integer(BigInt::from(2));
            let sinhc = even_exponential_series(order, 1).rescale_variable(&half);
            series_inverse(&sinhc).expect("sinh(u)/u has unit constant term")
        }
        GenusKind::LGenus => {
            // cosh(u) / (sinh(u)/u) at u = d x
            let cosh = even_exponential_series(order, 0).rescale_variable(&d);
            let sinhc = even_exponential_series(order, 1).rescale_variable(&d);
            let inv = series_inverse(&sinhc).expect("sinh(u)/u has unit constant term");
            mul_same_order(&cosh, &inv)
        }
    }
}

/// `sum_k u^{2k} / (2k + offset)!`; offset 0 is cosh, offset 1 is sinh(u)/u.
fn even_exponential_series(order: usize, offset: u64) -> TruncatedSeries {
    let mut coeffs = vec![Rational::zero(); order + 1];
    let mut factorial = BigInt::one();
    for m in 1..=offset {
        factorial *= BigInt::from(m);
    }
    let mut m = offset;
    for k in (0..=order).step_by(2) {
        coeffs[k] = Rational::new(BigInt::one(), factorial.clone());
        factorial *= BigInt::from(m + 1) * BigInt::from(m + 2);
        m += 2;
    }
    TruncatedSeries { coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use proptest::prelude::*;

    fn ints(order: usize, c: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_integers(order, c)
    }

    #[test]
    fn product_examples() {
        let p = series_product(&ints(3, &[1, 1]), &ints(3, &[1, -1])).unwrap();
        assert_eq!(p, ints(3, &[1, 0, -1]));
        let p = series_product(&ints(2, &[1, 2]), &ints(2, &[1, 3])).unwrap();
        assert_eq!(p, ints(2, &[1, 5, 6]));
    }

    #[test]
    fn geometric_series_times_one_minus_x() {
        // direct convolution by hand: every coefficient telescopes
        let geo = ints(5, &[1, 1, 1, 1, 1, 1]);
        let mut expected = vec![0i64; 6];
        for (k, slot) in expected.iter_mut().enumerate() {
            let g = |i: usize| if i <= 5 { 1 } else { 0 };
            *slot = g(k) - if k >= 1 { g(k - 1) } else { 0 };
        }
        let p = series_product(&geo, &ints(5, &[1, -1])).unwrap();
        assert_eq!(p, ints(5, &expected));
        assert_eq!(p, TruncatedSeries::one(5));
    }

    #[test]
    fn product_rejects_mismatched_orders() {
        let err = series_product(&ints(2, &[1]), &ints(3, &[1])).unwrap_err();
        assert_eq!(err, AlgebraError::OrderMismatch { left: 2, right: 3 });
    }

    #[test]
    fn inverse_examples() {
        for d in [-3i64, 2, 5] {
            let inv = series_inverse(&ints(3, &[1, d])).unwrap();
            assert_eq!(inv, ints(3, &[1, -d, d * d, -d * d * d]));
        }
        assert_eq!(series_inverse(&TruncatedSeries::one(4)).unwrap(), TruncatedSeries::one(4));
        // (1 + x + x^2)^{-1}: c0 = 1, c1 = -1, c2 = -(c1 + c0) = 0, c3 = -(c2 + c1) = 1,
        // c4 = -(c3 + c2) = -1
        let inv = series_inverse(&ints(4, &[1, 1, 1])).unwrap();
        assert_eq!(inv, ints(4, &[1, -1, 0, 1, -1]));
    }

    #[test]
    fn inverse_rejects_non_unit() {
        assert_eq!(series_inverse(&ints(3, &[0, 1])).unwrap_err(), AlgebraError::NonUnit);
    }

    #[test]
    fn genus_factor_examples() {
        let l = genus_line_factor(GenusKind::LGenus, 1, 5);
        assert_eq!(
            l,
            TruncatedSeries::new(
                5,
                [rat0(1), rat0(0), ratio(1, 3), rat0(0), ratio(-1, 45), rat0(0)]
            )
        );
        let a = genus_line_factor(GenusKind::AHat, 1, 5);
        assert_eq!(
            a,
            TruncatedSeries::new(
                5,
                [rat0(1), rat0(0), ratio(-1, 24), rat0(0), ratio(7, 5760), rat0(0)]
            )
        );
        assert_eq!(genus_line_factor(GenusKind::Chern, 3, 2), ints(2, &[1, 3]));
        assert_eq!(genus_line_factor(GenusKind::Pontrjagin, 3, 3), ints(3, &[1, 0, 9]));
        assert_eq!(genus_line_factor(GenusKind::Chern, 3, 0), ints(0, &[1]));
    }

    fn rat0(n: i64) -> Rational {
        ratio(n, 1)
    }

    #[test]
    fn genus_factors_are_even_and_trivial_at_zero_scale() {
        for kind in [GenusKind::AHat, GenusKind::LGenus] {
            for d in -4..=4 {
                let s = genus_line_factor(kind, d, 9);
                for k in (1..=9).step_by(2) {
                    assert!(s.coeff(k).is_zero(), "{kind:?} d={d} has odd term x^{k}");
                }
            }
            assert_eq!(genus_line_factor(kind, 0, 7), TruncatedSeries::one(7));
        }
    }

    #[test]
    fn pow_matches_repeated_product() {
        let s = ints(6, &[1, 2, -1, 3]);
        let mut acc = TruncatedSeries::one(6);
        for e in 0..6u64 {
            assert_eq!(s.pow(e), acc);
            acc = series_product(&acc, &s).unwrap();
        }
    }

    proptest! {
        #[test]
        fn inverse_is_two_sided(order in 0usize..8, c0 in prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]),
                                rest in prop::collection::vec(-5i64..=5, 0..8)) {
            let mut coeffs = vec![c0];
            coeffs.extend(rest);
            let a = ints(order, &coeffs);
            let inv = series_inverse(&a).unwrap();
            prop_assert_eq!(series_product(&a, &inv).unwrap(), TruncatedSeries::one(order));
            prop_assert_eq!(series_product(&inv, &a).unwrap(), TruncatedSeries::one(order));
        }
    }
}
