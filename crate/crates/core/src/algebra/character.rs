use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::laurent::cyclotomic;
use super::{LaurentPoly, Rational};

/// Rational function `numerator / denominator` in the character variable `λ`.
///
/// Canonical form: the denominator is an ordinary polynomial with nonzero
/// constant term (any power of `λ` lives in the numerator), cyclotomic
/// factors shared by numerator and denominator are cancelled, the combined
/// integer content is 1 and the denominator's leading coefficient is
/// positive. The zero function is `0 / 1`.
#[derive(Debug, Clone, Eq)]
pub struct CharacterFunction {
    numerator: LaurentPoly,
    denominator: LaurentPoly,
}

impl CharacterFunction {
    /// Returns `None` when the denominator is identically zero.
    pub fn new(numerator: LaurentPoly, denominator: LaurentPoly) -> Option<Self> {
        if denominator.is_zero() {
            return None;
        }
        Some(Self::canonical(numerator, denominator))
    }

    pub fn zero() -> Self {
        CharacterFunction {
            numerator: LaurentPoly::zero(),
            denominator: LaurentPoly::constant(BigInt::one()),
        }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::canonical(LaurentPoly::constant(c), LaurentPoly::constant(BigInt::one()))
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self::canonical(p, LaurentPoly::constant(BigInt::one()))
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let mut num = num.shift(-den.low());
        let mut den = den.without_monomial();
        if let Some(factors) = primitive_factorization(&den) {
            for (d, mult) in factors {
                let phi = cyclotomic(d);
                for _ in 0..mult {
                    match num.div_exact_unit_lead(&phi) {
                        Some(q) => {
                            num = q;
                            den = den
                                .div_exact_unit_lead(&phi)
                                .expect("factor taken from the denominator");
                        }
                        None => break,
                    }
                }
            }
        }
        let g = num.content().gcd(&den.content());
        if !g.is_one() {
            num = num.div_exact_scalar(&g);
            den = den.div_exact_scalar(&g);
        }
        if den.leading_coeff().is_some_and(|c| c.is_negative()) {
            num = -&num;
            den = -&den;
        }
        CharacterFunction {
            numerator: num,
            denominator: den,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::canonical(self.numerator.scale(c), self.denominator.clone())
    }

    /// The value at an integer `λ`, if it is not a pole.
    pub fn eval_i64(&self, lambda: i64) -> Option<Rational> {
        let d = self.denominator.eval_i64(lambda)?;
        if d.is_zero() {
            return None;
        }
        Some(self.numerator.eval_i64(lambda)? / d)
    }
}

/// Cyclotomic factorization of the primitive part.
fn primitive_factorization(p: &LaurentPoly) -> Option<Vec<(u32, u32)>> {
    let c = p.content();
    if c.is_zero() {
        return None;
    }
    p.div_exact_scalar(&c).cyclotomic_factorization()
}

/// Least common multiple of two denominators with nonzero constant term,
/// exact whenever both are cyclotomic products; otherwise their product.
fn common_denominator(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let (Some(fa), Some(fb)) = (primitive_factorization(a), primitive_factorization(b)) else {
        return a * b;
    };
    let mut lcm: BTreeMap<u32, u32> = fa.into_iter().collect();
    for (d, m) in fb {
        let e = lcm.entry(d).or_insert(0);
        *e = (*e).max(m);
    }
    let mut out = LaurentPoly::constant(BigInt::one());
    for (d, m) in lcm {
        let phi = LaurentPoly::new(0, cyclotomic(d));
        for _ in 0..m {
            out = &out * &phi;
        }
    }
    // unit content and sign of each side
    let ca = a.content() * a.leading_coeff().map_or(BigInt::one(), |c| c.signum());
    let cb = b.content() * b.leading_coeff().map_or(BigInt::one(), |c| c.signum());
    out.scale(&ca.lcm(&cb))
}

impl Add for &CharacterFunction {
    type Output = CharacterFunction;
    fn add(self, rhs: &CharacterFunction) -> CharacterFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.denominator == rhs.denominator {
            return CharacterFunction::canonical(
                &self.numerator + &rhs.numerator,
                self.denominator.clone(),
            );
        }
        let den = common_denominator(&self.denominator, &rhs.denominator);
        let lift = |f: &CharacterFunction| -> LaurentPoly {
            match cofactor(&den, &f.denominator) {
                Some(c) => &f.numerator * &c,
                None => unreachable!("common denominator is a multiple"),
            }
        };
        let num = &lift(self) + &lift(rhs);
        CharacterFunction::canonical(num, den)
    }
}

/// `multiple / divisor` for an exact multiple, dividing out the divisor's
/// content first and then its primitive cyclotomic factors.
fn cofactor(multiple: &LaurentPoly, divisor: &LaurentPoly) -> Option<LaurentPoly> {
    if multiple == divisor {
        return Some(LaurentPoly::constant(BigInt::one()));
    }
    let content = divisor.content() * divisor.leading_coeff()?.signum();
    let primitive = divisor.div_exact_scalar(&content);
    let scaled = multiple.div_exact_scalar(&content);
    match primitive.cyclotomic_factorization() {
        Some(factors) => {
            let mut q = scaled;
            // primitive = ± ∏ Φ_d^m; its sign is the sign of its leading coefficient
            for (d, m) in factors {
                let phi = cyclotomic(d);
                for _ in 0..m {
                    q = q.div_exact_unit_lead(&phi)?;
                }
            }
            let sign = primitive.leading_coeff()?.signum();
            Some(q.scale(&sign))
        }
        None => {
            // non-cyclotomic denominators only ever enter as plain products
            let lead = primitive.leading_coeff()?;
            if lead.abs().is_one() {
                scaled.div_exact_unit_lead(primitive.coeffs())
            } else {
                long_divide_exact(&scaled, &primitive)
            }
        }
    }
}

fn long_divide_exact(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let a0 = a.without_monomial();
    let b0 = b.without_monomial();
    let bl = b0.coeffs().len();
    if a0.coeffs().len() < bl {
        return if a0.is_zero() { Some(a0) } else { None };
    }
    let mut rem = a0.coeffs().to_vec();
    let lead = b0.leading_coeff()?;
    let qlen = rem.len() - bl + 1;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let top = &rem[i + bl - 1];
        if top.is_zero() {
            continue;
        }
        let (q, r) = top.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (j, c) in b0.coeffs().iter().enumerate() {
            rem[i + j] -= &q * c;
        }
        quot[i] = q;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(LaurentPoly::new(a.low() - b.low(), quot))
}

impl Neg for &CharacterFunction {
    type Output = CharacterFunction;
    fn neg(self) -> CharacterFunction {
        CharacterFunction {
            numerator: -&self.numerator,
            denominator: self.denominator.clone(),
        }
    }
}

impl Sub for &CharacterFunction {
    type Output = CharacterFunction;
    fn sub(self, rhs: &CharacterFunction) -> CharacterFunction {
        self + &(-rhs)
    }
}

impl Mul for &CharacterFunction {
    type Output = CharacterFunction;
    fn mul(self, rhs: &CharacterFunction) -> CharacterFunction {
        CharacterFunction::canonical(
            &self.numerator * &rhs.numerator,
            &self.denominator * &rhs.denominator,
        )
    }
}

/// Equality by cross-multiplication.
impl PartialEq for CharacterFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}

impl fmt::Display for CharacterFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.coeffs().len() == 1 && self.denominator.coeffs()[0].is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

/// Exact sum over a common denominator, renormalized.
pub fn character_sum<'a>(fs: impl IntoIterator<Item = &'a CharacterFunction>) -> CharacterFunction {
    fs.into_iter()
        .fold(CharacterFunction::zero(), |acc, f| &acc + f)
}

/// `Some(c)` exactly when the numerator equals `c` times the denominator.
pub fn character_is_constant(f: &CharacterFunction) -> Option<Rational> {
    if f.numerator.is_zero() {
        return Some(Rational::zero());
    }
    let n = &f.numerator;
    let d = &f.denominator;
    if n.low() != d.low() || n.high() != d.high() {
        return None;
    }
    let c = Rational::new(n.leading_coeff()?.clone(), d.leading_coeff()?.clone());
    // n * denom(c) == d * numer(c)
    let lhs = n.scale(c.denom());
    let rhs = d.scale(c.numer());
    (lhs == rhs).then_some(c)
}

/// Limit as `λ -> ∞`; `None` when it diverges.
pub fn character_limit_at_infinity(f: &CharacterFunction) -> Option<Rational> {
    if f.numerator.is_zero() {
        return Some(Rational::zero());
    }
    let top_num = f.numerator.high();
    let top_den = f.denominator.high();
    match top_num.cmp(&top_den) {
        std::cmp::Ordering::Less => Some(Rational::zero()),
        std::cmp::Ordering::Equal => Some(Rational::new(
            f.numerator.leading_coeff()?.clone(),
            f.denominator.leading_coeff()?.clone(),
        )),
        std::cmp::Ordering::Greater => None,
    }
}
