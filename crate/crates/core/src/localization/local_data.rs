//! Contributions of single fixed components to the localization of `x^3`,
//! `p_1(M) x` and the equivariant signature.

use num_bigint::BigInt;

use super::config::{FixedComponent, FourComponent, PointComponent, SurfaceComponent};
use super::LocalizationError;
use crate::algebra::{CharacterFunction, LaurentPoly, LiftPolynomial, Rational};

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn lift(a: i64) -> LiftPolynomial {
    LiftPolynomial::shifted_variable(&q(a))
}

/// `[(x + (a + l) z)^3 / e(ν)]_Z` as a polynomial in `l`.
pub fn x3_local_datum(c: &FixedComponent) -> LiftPolynomial {
    match c {
        FixedComponent::Point(p) => x3_point(p),
        FixedComponent::Surface(s) => x3_surface(s),
        FixedComponent::Four(f) => x3_four(f),
    }
}

fn x3_point(p: &PointComponent) -> LiftPolynomial {
    let [n1, n2, n3] = p.weights;
    lift(p.a).pow(3).scale(&frac(p.eps, n1 * n2 * n3))
}

fn x3_surface(s: &SurfaceComponent) -> LiftPolynomial {
    let [n1, n2] = s.weights;
    let u = lift(s.a);
    let y = frac(s.ev_y1, n1) + frac(s.ev_y2, n2);
    let cubic = u.pow(3).scale(&-y);
    let quad = u.pow(2).scale(&q(3 * s.ev_x));
    (&cubic + &quad).scale(&frac(1, n1 * n2))
}

fn x3_four(f: &FourComponent) -> LiftPolynomial {
    let n = f.weight;
    let u = lift(f.a);
    let linear = u.scale(&frac(3 * f.ev_x2, n));
    let quad = u.pow(2).scale(&frac(-3 * f.ev_xy, n * n));
    let cubic = u.pow(3).scale(&frac(f.ev_y2, n * n * n));
    &(&linear + &quad) + &cubic
}

/// `[p_1(M) (x + (a + l) z) / e(ν)]_Z` as a polynomial in `l`.
pub fn p1x_local_datum(c: &FixedComponent) -> LiftPolynomial {
    match c {
        FixedComponent::Point(p) => {
            let [n1, n2, n3] = p.weights;
            let s = n1 * n1 + n2 * n2 + n3 * n3;
            lift(p.a).scale(&frac(p.eps * s, n1 * n2 * n3))
        }
        FixedComponent::Surface(s) => {
            let [n1, n2] = s.weights;
            let sq = n1 * n1 + n2 * n2;
            let y = frac(s.ev_y1, n1) + frac(s.ev_y2, n2);
            let slope = -(q(sq) * y) + q(2 * (n1 * s.ev_y1 + n2 * s.ev_y2));
            let u = lift(s.a).scale(&slope);
            (&u + &LiftPolynomial::constant(q(sq * s.ev_x))).scale(&frac(1, n1 * n2))
        }
        FixedComponent::Four(f) => {
            let u = lift(f.a).scale(&frac(f.ev_p1, f.weight));
            &u + &LiftPolynomial::constant(q(f.ev_xy))
        }
    }
}

fn laurent_product(factors: impl IntoIterator<Item = LaurentPoly>) -> LaurentPoly {
    factors
        .into_iter()
        .fold(LaurentPoly::constant(BigInt::from(1)), |acc, f| &acc * &f)
}

/// Equivariant signature contribution as a rational function of `λ`.
/// Only points and surfaces have a closed form here.
pub fn signature_local_datum(c: &FixedComponent) -> Result<CharacterFunction, LocalizationError> {
    match c {
        FixedComponent::Point(p) => {
            // prod (1 + λ^{-n}) / (1 - λ^{-n}) = prod (λ^n + 1) / (λ^n - 1)
            let num = laurent_product(p.weights.iter().map(|&n| LaurentPoly::lambda_power_plus_one(n as u32)));
            let den = laurent_product(p.weights.iter().map(|&n| LaurentPoly::lambda_power_minus_one(n as u32)));
            Ok(CharacterFunction::new(num.scale(&BigInt::from(p.eps)), den).expect("nonzero denominator"))
        }
        FixedComponent::Surface(s) => {
            let [n1, n2] = s.weights;
            let term = |n: i64, m: i64, y: i64| {
                // 4 (1 + λ^m)/(1 - λ^m) · λ^n/(1 - λ^n)^2 · y
                let num = LaurentPoly::lambda_power_plus_one(m as u32)
                    .shift(n)
                    .scale(&BigInt::from(-4 * y));
                let den = laurent_product([
                    LaurentPoly::lambda_power_minus_one(m as u32),
                    LaurentPoly::lambda_power_minus_one(n as u32),
                    LaurentPoly::lambda_power_minus_one(n as u32),
                ]);
                CharacterFunction::new(num, den).expect("nonzero denominator")
            };
            Ok(&term(n1, n2, s.ev_y1) + &term(n2, n1, s.ev_y2))
        }
        FixedComponent::Four(_) => Err(LocalizationError::UnsupportedComponent),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{character_is_constant, character_limit_at_infinity, character_sum, rat, ratio};

    fn pt(eps: i64, w: [i64; 3], a: i64) -> FixedComponent {
        FixedComponent::Point(PointComponent { eps, weights: w, a })
    }

    fn poly(c: &[Rational]) -> LiftPolynomial {
        LiftPolynomial::new(c.iter().cloned())
    }

    fn surface(w: [i64; 2], a: i64, x: i64, y1: i64, y2: i64) -> FixedComponent {
        FixedComponent::Surface(SurfaceComponent {
            weights: w,
            a,
            ev_x: x,
            ev_y1: y1,
            ev_y2: y2,
            chi: 2,
        })
    }

    fn four(n: i64, a: i64, x2: i64, xy: i64, y2: i64, b2: i64, sign: i64) -> FixedComponent {
        FixedComponent::Four(FourComponent {
            weight: n,
            a,
            ev_x2: x2,
            ev_xy: xy,
            ev_y2: y2,
            ev_p1: 3 * sign,
            b2,
            sign,
            chi: 2 + b2,
        })
    }

    #[test]
    fn x3_examples() {
        assert_eq!(x3_local_datum(&pt(1, [1, 1, 1], 1)), poly(&[rat(1), rat(3), rat(3), rat(1)]));
        let s = x3_local_datum(&surface([2, 3], 0, 5, -1, 4));
        assert_eq!(s.eval(&rat(0)), rat(0));
        assert!(x3_local_datum(&four(3, 2, 0, 0, 0, 0, 0)).is_zero());
        // surface with a = 0: (-l^3 (y1/n1 + y2/n2) + 3 l^2 x) / (n1 n2)
        let s = x3_local_datum(&surface([1, 2], 0, 2, 2, 2));
        assert_eq!(s, poly(&[rat(0), rat(0), rat(3), ratio(-3, 2)]));
    }

    #[test]
    fn x3_vanishes_at_opposite_lift() {
        for c in [
            pt(-1, [1, 2, 3], 4),
            surface([2, 1], -3, 7, 1, -2),
            four(2, 5, -1, 2, -4, 1, -1),
            four(3, -2, 4, 1, 9, 2, 2),
        ] {
            assert_eq!(x3_local_datum(&c).eval(&rat(-c.a())), rat(0), "{c:?}");
        }
    }

    #[test]
    fn p1x_examples() {
        assert_eq!(p1x_local_datum(&pt(1, [1, 1, 1], 0)), poly(&[rat(0), rat(3)]));
        let p = p1x_local_datum(&pt(-1, [1, 2, 3], 1));
        assert_eq!(p, poly(&[ratio(-7, 3), ratio(-7, 3)]));
        assert!(p1x_local_datum(&four(1, 4, 0, 0, 0, 0, 0)).is_zero());
        // semifree surface with y2 = 0 contributes 2x + (a + l)(-2 y1 + 2 y1)
        assert_eq!(p1x_local_datum(&surface([1, 1], 3, 5, 7, 0)), poly(&[rat(10)]));
        assert_eq!(p1x_local_datum(&four(2, 1, 0, 3, 0, 1, -1)), poly(&[ratio(3, 2), ratio(-3, 2)]));
    }

    #[test]
    fn surface_p1x_by_direct_expansion() {
        // expand the defining formula term by term at l = 2
        let (n1, n2, a, x, y1, y2) = (2i64, 3i64, 1i64, 5i64, -2i64, 3i64);
        let l = 2i64;
        let u = rat(a + l);
        let sq = rat(n1 * n1 + n2 * n2);
        let nn = rat(n1 * n2);
        let expected = -(&u / &nn) * &sq * (ratio(y1, n1) + ratio(y2, n2)) + &sq / &nn * rat(x)
            + rat(2) * &u / &nn * rat(n1 * y1 + n2 * y2);
        let got = p1x_local_datum(&surface([n1, n2], a, x, y1, y2)).eval(&rat(l));
        assert_eq!(got, expected);
    }

    #[test]
    fn signature_point_examples() {
        let f = signature_local_datum(&pt(1, [1, 1, 1], 0)).unwrap();
        // ((λ + 1)/(λ - 1))^3 at λ = 2 is 27
        assert_eq!(f.eval_i64(2), Some(rat(27)));
        assert_eq!(character_is_constant(&f), None);
        let g = signature_local_datum(&pt(-1, [1, 1, 1], 5)).unwrap();
        assert!(character_sum([&f, &g]).is_zero());
        assert_eq!(character_limit_at_infinity(&f), Some(rat(1)));
    }

    #[test]
    fn signature_surface_examples() {
        assert!(signature_local_datum(&surface([2, 3], 1, 4, 0, 0)).unwrap().is_zero());
        let f = signature_local_datum(&surface([1, 1], 0, 1, 1, 0)).unwrap();
        // 4 (1 + λ)/(1 - λ) · λ/(1 - λ)^2 at λ = 2 is 4 · (-3) · 2 = -24
        assert_eq!(f.eval_i64(2), Some(rat(-24)));
        assert_eq!(character_limit_at_infinity(&f), Some(rat(0)));
        assert_eq!(
            signature_local_datum(&four(1, 0, 0, 0, 0, 0, 0)),
            Err(LocalizationError::UnsupportedComponent)
        );
    }

    #[test]
    fn inverse_action_preserves_local_data_up_to_reflection() {
        for c in [
            pt(-1, [1, 2, 3], 4),
            surface([2, 1], -3, 7, 1, -2),
            four(2, 5, -1, 2, -4, 1, -1),
        ] {
            let inv = c.inverse_action();
            for l in -3i64..=3 {
                assert_eq!(x3_local_datum(&inv).eval(&rat(-l)), x3_local_datum(&c).eval(&rat(l)));
                assert_eq!(p1x_local_datum(&inv).eval(&rat(-l)), p1x_local_datum(&c).eval(&rat(l)));
            }
            if let Ok(f) = signature_local_datum(&c) {
                let g = signature_local_datum(&inv).unwrap();
                // f(λ) = g(1/λ)
                let at3 = f.eval_i64(3).unwrap();
                let inv_at = eval_at_reciprocal(&g, 3);
                assert_eq!(at3, inv_at);
            }
        }
    }

    fn eval_at_reciprocal(f: &CharacterFunction, k: i64) -> Rational {
        let eval = |p: &LaurentPoly| {
            let mut acc = rat(0);
            for (i, c) in p.coeffs().iter().enumerate() {
                let e = p.low() + i as i64;
                let base = ratio(1, k);
                let pw = if e >= 0 {
                    num_traits::pow(base, e as usize)
                } else {
                    num_traits::pow(rat(k), (-e) as usize)
                };
                acc += Rational::from_integer(c.clone()) * pw;
            }
            acc
        };
        eval(f.numerator()) / eval(f.denominator())
    }
}
