//! Small exact linear algebra over `i128` fractions for the search inner
//! loop. Every operation is checked; overflow surfaces as an error instead of
//! a wrong answer.

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::algebra::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Overflow;

pub(crate) type Checked<T> = Result<T, Overflow>;

/// Reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Q {
    n: i128,
    d: i128,
}

impl Q {
    pub const ZERO: Q = Q { n: 0, d: 1 };
    pub const ONE: Q = Q { n: 1, d: 1 };

    pub fn int(n: i64) -> Q {
        Q { n: n.into(), d: 1 }
    }

    fn reduced(n: i128, d: i128) -> Checked<Q> {
        if d == 0 {
            return Err(Overflow);
        }
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = n.checked_neg().ok_or(Overflow)?;
            d = d.checked_neg().ok_or(Overflow)?;
        }
        Ok(Q { n, d })
    }

    pub fn from_rational(r: &Rational) -> Checked<Q> {
        let n = r.numer().to_i128().ok_or(Overflow)?;
        let d = r.denom().to_i128().ok_or(Overflow)?;
        Q::reduced(n, d)
    }

    pub fn is_zero(self) -> bool {
        self.n == 0
    }

    /// The value as an integer, if it is one.
    pub fn as_int(self) -> Option<i128> {
        (self.d == 1).then_some(self.n)
    }

    pub fn add(self, o: Q) -> Checked<Q> {
        if self.d == o.d {
            return Q::reduced(self.n.checked_add(o.n).ok_or(Overflow)?, self.d);
        }
        let g = self.d.gcd(&o.d);
        let (sd, od) = (self.d / g, o.d / g);
        let n = self
            .n
            .checked_mul(od)
            .and_then(|a| o.n.checked_mul(sd).and_then(|b| a.checked_add(b)))
            .ok_or(Overflow)?;
        let d = self.d.checked_mul(od).ok_or(Overflow)?;
        Q::reduced(n, d)
    }

    pub fn neg(self) -> Checked<Q> {
        Ok(Q {
            n: self.n.checked_neg().ok_or(Overflow)?,
            d: self.d,
        })
    }

    pub fn sub(self, o: Q) -> Checked<Q> {
        self.add(o.neg()?)
    }

    pub fn mul(self, o: Q) -> Checked<Q> {
        if self.n == 0 || o.n == 0 {
            return Ok(Q::ZERO);
        }
        let g1 = self.n.gcd(&o.d);
        let g2 = o.n.gcd(&self.d);
        let n = (self.n / g1).checked_mul(o.n / g2).ok_or(Overflow)?;
        let d = (self.d / g2).checked_mul(o.d / g1).ok_or(Overflow)?;
        Ok(Q { n, d })
    }

    pub fn div(self, o: Q) -> Checked<Q> {
        if o.n == 0 {
            return Err(Overflow);
        }
        self.mul(Q::reduced(o.d, o.n)?)
    }
}

/// Row-reduced form `R = T A` of a dense matrix, keeping the transform so
/// right-hand sides can be reduced later without redoing elimination.
#[derive(Debug, Clone)]
pub(crate) struct Reduced {
    pub rows: Vec<Vec<Q>>,
    pub transform: Vec<Vec<Q>>,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
}

impl Reduced {
    pub fn new(a: &[Vec<Q>]) -> Checked<Reduced> {
        let m = a.len();
        let cols = a.first().map_or(0, Vec::len);
        let mut rows: Vec<Vec<Q>> = a.to_vec();
        let mut transform: Vec<Vec<Q>> = (0..m)
            .map(|i| (0..m).map(|j| if i == j { Q::ONE } else { Q::ZERO }).collect())
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            transform.swap(r, p);
            let inv = Q::ONE.div(rows[r][c])?;
            for j in 0..cols {
                rows[r][j] = rows[r][j].mul(inv)?;
            }
            for j in 0..m {
                transform[r][j] = transform[r][j].mul(inv)?;
            }
            for i in 0..m {
                if i == r || rows[i][c].is_zero() {
                    continue;
                }
                let f = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = rows[i][j].sub(f.mul(rows[r][j])?)?;
                }
                for j in 0..m {
                    transform[i][j] = transform[i][j].sub(f.mul(transform[r][j])?)?;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok(Reduced {
            rows,
            transform,
            pivots,
        })
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn apply(&self, b: &[Q]) -> Checked<Vec<Q>> {
        self.transform
            .iter()
            .map(|row| {
                row.iter()
                    .zip(b)
                    .try_fold(Q::ZERO, |acc, (t, x)| acc.add(t.mul(*x)?))
            })
            .collect()
    }
}
