//! Characteristic numbers of complete intersections `X_n(d_1, ..., d_r)`,
//! read off from the stable splitting of the tangent bundle as
//! `(n + r + 1) L - (d_1 L + ... + d_r L)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{genus_line_factor, series_inverse, GenusKind, Rational, TruncatedSeries};

pub const MAX_DEGREE: u64 = 1_000_000;
pub const MAX_CODIMENSION: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantsError {
    #[error("complex dimension must be at least 1")]
    ZeroDimension,
    #[error("multidegree must be non-empty")]
    EmptyMultidegree,
    #[error("degree {0} is outside 1..={MAX_DEGREE}")]
    DegreeOutOfRange(u64),
    #[error("at most {MAX_CODIMENSION} degrees are supported, got {0}")]
    TooManyDegrees(usize),
    #[error("series of order {got} cannot be evaluated on a manifold of complex dimension {needed}")]
    OrderTooSmall { needed: usize, got: usize },
    #[error("{0} is only defined for even complex dimension, got n = {1}")]
    OddDimension(&'static str, u32),
}

/// `X_n(d_1, ..., d_r)` with the multidegree kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompleteIntersection {
    n: u32,
    degrees: Vec<u64>,
}

impl CompleteIntersection {
    pub fn new(n: u32, degrees: impl IntoIterator<Item = u64>) -> Result<Self, InvariantsError> {
        if n == 0 {
            return Err(InvariantsError::ZeroDimension);
        }
        let mut degrees: Vec<u64> = degrees.into_iter().collect();
        if degrees.is_empty() {
            return Err(InvariantsError::EmptyMultidegree);
        }
        if degrees.len() > MAX_CODIMENSION {
            return Err(InvariantsError::TooManyDegrees(degrees.len()));
        }
        if let Some(&d) = degrees.iter().find(|&&d| d == 0 || d > MAX_DEGREE) {
            return Err(InvariantsError::DegreeOutOfRange(d));
        }
        degrees.sort_unstable();
        Ok(CompleteIntersection { n, degrees })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn codimension(&self) -> usize {
        self.degrees.len()
    }

    /// Complex dimension of the ambient projective space, plus one.
    fn ambient_rank(&self) -> u64 {
        u64::from(self.n) + self.degrees.len() as u64 + 1
    }

    fn series_order(&self) -> usize {
        self.n as usize
    }
}

impl fmt::Display for CompleteIntersection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.degrees.iter().map(u64::to_string).collect();
        write!(f, "X_{}({})", self.n, ds.join(","))
    }
}

/// Drops hyperplane factors; an all-ones multidegree becomes `(1)`.
pub fn normalize(ci: &CompleteIntersection) -> CompleteIntersection {
    let mut degrees: Vec<u64> = ci.degrees.iter().copied().filter(|&d| d != 1).collect();
    if degrees.is_empty() {
        degrees.push(1);
    }
    CompleteIntersection { n: ci.n, degrees }
}

/// `[x^n]_M`, the product of the degrees.
pub fn top_power(ci: &CompleteIntersection) -> BigInt {
    ci.degrees.iter().map(|&d| BigInt::from(d)).product()
}

/// Evaluates the class `f(x)` on the fundamental cycle.
pub fn evaluate_top(ci: &CompleteIntersection, f: &TruncatedSeries) -> Result<Rational, InvariantsError> {
    let n = ci.series_order();
    if f.order() < n {
        return Err(InvariantsError::OrderTooSmall {
            needed: n,
            got: f.order(),
        });
    }
    Ok(f.coeff(n) * Rational::from_integer(top_power(ci)))
}

/// `ambient(d=1)^{n+r+1} * prod_j ambient(d_j)^{-1}` for a line factor.
fn virtual_bundle_series(ci: &CompleteIntersection, kind: GenusKind) -> TruncatedSeries {
    let order = ci.series_order();
    let mut acc = genus_line_factor(kind, 1, order).pow(ci.ambient_rank());
    for &d in &ci.degrees {
        let factor = genus_line_factor(kind, d as i64, order);
        let inv = series_inverse(&factor).expect("genus factors have constant term 1");
        acc = acc.checked_mul(&inv).expect("same order");
    }
    acc
}

/// Total Chern class `(1 + x)^{n+r+1} prod_j (1 + d_j x)^{-1}`, truncated at `x^n`.
pub fn chern_series(ci: &CompleteIntersection) -> TruncatedSeries {
    virtual_bundle_series(ci, GenusKind::Chern)
}

/// Total Pontrjagin class, truncated at `x^n`.
pub fn pontrjagin_series(ci: &CompleteIntersection) -> TruncatedSeries {
    virtual_bundle_series(ci, GenusKind::Pontrjagin)
}

/// `c_1(M) = (n + r + 1 - sum d_j) x`.
pub fn c1_coeff(ci: &CompleteIntersection) -> i64 {
    ci.ambient_rank() as i64 - ci.degrees.iter().map(|&d| d as i64).sum::<i64>()
}

/// `rho` with `p_1(M) = rho x^2`.
pub fn pontrjagin_coeff(ci: &CompleteIntersection) -> i64 {
    ci.ambient_rank() as i64 - ci.degrees.iter().map(|&d| (d * d) as i64).sum::<i64>()
}

fn integral(q: Rational) -> BigInt {
    assert!(q.is_integer(), "characteristic number {q} is not integral");
    q.to_integer()
}

pub fn euler_characteristic(ci: &CompleteIntersection) -> BigInt {
    integral(evaluate_top(ci, &chern_series(ci)).expect("order n series"))
}

pub fn signature(ci: &CompleteIntersection) -> Result<BigInt, InvariantsError> {
    if ci.n % 2 == 1 {
        return Err(InvariantsError::OddDimension("signature", ci.n));
    }
    let f = virtual_bundle_series(ci, GenusKind::LGenus);
    Ok(integral(evaluate_top(ci, &f)?))
}

pub fn a_hat_genus(ci: &CompleteIntersection) -> Result<Rational, InvariantsError> {
    if ci.n % 2 == 1 {
        return Err(InvariantsError::OddDimension("the A-hat genus", ci.n));
    }
    evaluate_top(ci, &virtual_bundle_series(ci, GenusKind::AHat))
}

/// `w_2` is the mod-2 reduction of `c_1`.
pub fn is_spin(ci: &CompleteIntersection) -> bool {
    c1_coeff(ci) % 2 == 0
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub n: u32,
    pub degrees: Vec<u64>,
    pub t: BigInt,
    pub c1_coeff: i64,
    pub rho: i64,
    pub euler: BigInt,
    pub signature: Option<BigInt>,
    pub a_hat: Option<Rational>,
    pub spin: bool,
    /// Only for threefolds, where all even Betti numbers are 1.
    pub b3: Option<BigInt>,
}

pub fn invariants(ci: &CompleteIntersection) -> InvariantReport {
    let euler = euler_characteristic(ci);
    let even = ci.n.is_multiple_of(2);
    let b3 = (ci.n == 3).then(|| BigInt::from(4) - &euler);
    InvariantReport {
        n: ci.n,
        degrees: ci.degrees.clone(),
        t: top_power(ci),
        c1_coeff: c1_coeff(ci),
        rho: pontrjagin_coeff(ci),
        euler,
        signature: even.then(|| signature(ci).expect("even dimension")),
        a_hat: even.then(|| a_hat_genus(ci).expect("even dimension")),
        spin: is_spin(ci),
        b3,
    }
}

impl InvariantReport {
    /// `b_3 = 4 - chi` is even and non-negative for threefolds.
    pub fn b3_is_consistent(&self) -> bool {
        match &self.b3 {
            None => self.n != 3,
            Some(b) => !b.is_negative() && (b % 2u32).is_zero(),
        }
    }

    pub fn t_positive(&self) -> bool {
        self.t > BigInt::zero()
    }

    pub fn euler_i64(&self) -> Option<i64> {
        self.euler.to_i64()
    }
}

/// All multidegrees for complex dimension `n` with entries `>= 2` summing to
/// at most `max_sum`, preceded by `(1)`. Ordered by length, then
/// lexicographically.
pub fn enumerate_normalized(n: u32, max_sum: u64) -> Vec<CompleteIntersection> {
    let mut out = Vec::new();
    if max_sum >= 1 {
        out.push(CompleteIntersection { n, degrees: vec![1] });
    }
    let mut parts = Vec::new();
    fn rec(min: u64, left: u64, parts: &mut Vec<u64>, n: u32, out: &mut Vec<CompleteIntersection>) {
        if !parts.is_empty() && parts.len() <= MAX_CODIMENSION {
            out.push(CompleteIntersection {
                n,
                degrees: parts.clone(),
            });
        }
        let mut d = min;
        while d <= left {
            parts.push(d);
            rec(d, left - d, parts, n, out);
            parts.pop();
            d += 1;
        }
    }
    rec(2, max_sum, &mut parts, n, &mut out);
    out.sort_by(|a, b| {
        (a.degrees.len(), &a.degrees).cmp(&(b.degrees.len(), &b.degrees))
    });
    out
}
