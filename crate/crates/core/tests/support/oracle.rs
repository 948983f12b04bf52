//! Brute-force characteristic numbers of complete intersections by naive
//! power series convolution. Deliberately shares nothing with the library.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Series = Vec<BigRational>;

fn r(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn factorial(k: usize) -> BigInt {
    (1..=k as u64).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn convolve(a: &Series, b: &Series, len: usize) -> Series {
    let mut out = vec![BigRational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate() {
            if i + j < len {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Long division `a / b` for `b[0] != 0`.
fn divide(a: &Series, b: &Series, len: usize) -> Series {
    let mut rem: Series = (0..len).map(|i| a.get(i).cloned().unwrap_or_else(BigRational::zero)).collect();
    let mut out = vec![BigRational::zero(); len];
    for i in 0..len {
        let c = &rem[i] / &b[0];
        for (j, y) in b.iter().enumerate() {
            if i + j < len {
                let sub = &c * y;
                rem[i + j] -= sub;
            }
        }
        out[i] = c;
    }
    out
}

fn power(a: &Series, k: usize, len: usize) -> Series {
    let mut out = vec![BigRational::zero(); len];
    out[0] = BigRational::one();
    for _ in 0..k {
        out = convolve(&out, a, len);
    }
    out
}

/// `f(d x)` from the coefficients of `f(x)`.
fn dilate(a: &Series, d: i64) -> Series {
    let mut scale = BigRational::one();
    a.iter()
        .map(|c| {
            let v = c * &scale;
            scale *= r(d);
            v
        })
        .collect()
}

/// `f(x)^(n + r + 1) / prod f(d_j x)` evaluated on the fundamental class.
fn top_number(n: usize, degrees: &[i64], f: &Series) -> BigRational {
    let len = n + 1;
    let mut total = power(f, n + degrees.len() + 1, len);
    for &d in degrees {
        total = divide(&total, &dilate(f, d), len);
    }
    let prod: i64 = degrees.iter().product();
    &total[n] * r(prod)
}

pub fn euler(n: usize, degrees: &[i64]) -> BigRational {
    top_number(n, degrees, &vec![r(1), r(1)])
}

/// `x / tanh x` as a series in `x`.
fn x_over_tanh(len: usize) -> Series {
    let cosh: Series = (0..len)
        .map(|k| if k % 2 == 0 { BigRational::new(BigInt::one(), factorial(k)) } else { BigRational::zero() })
        .collect();
    let sinh_over_x: Series = (0..len)
        .map(|k| if k % 2 == 0 { BigRational::new(BigInt::one(), factorial(k + 1)) } else { BigRational::zero() })
        .collect();
    divide(&cosh, &sinh_over_x, len)
}

/// `(x/2) / sinh(x/2)` as a series in `x`.
fn half_x_over_sinh(len: usize) -> Series {
    let sinh_over_x: Series = (0..len)
        .map(|k| if k % 2 == 0 { BigRational::new(BigInt::one(), factorial(k + 1)) } else { BigRational::zero() })
        .collect();
    let one: Series = vec![BigRational::one()];
    let inv = divide(&one, &sinh_over_x, len);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut scale = BigRational::one();
    inv.iter()
        .map(|c| {
            let v = c * &scale;
            scale *= &half;
            v
        })
        .collect()
}

/// Signature of a complete intersection of complex dimension `n` (even).
pub fn signature(n: usize, degrees: &[i64]) -> BigRational {
    top_number(n, degrees, &x_over_tanh(n + 1))
}

pub fn a_hat(n: usize, degrees: &[i64]) -> BigRational {
    top_number(n, degrees, &half_x_over_sinh(n + 1))
}
