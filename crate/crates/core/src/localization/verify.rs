use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::config::{Configuration, FixedComponent, FourComponent, AmbientData, SurfaceComponent, Template};
use super::local_data::{p1x_local_datum, signature_local_datum, x3_local_datum};
use crate::algebra::{
    character_is_constant, character_limit_at_infinity, character_sum, CharacterFunction, LiftPolynomial, Rational,
};

/// The quantity a check requires to vanish (or, for rigidity, to be
/// constant).
#[derive(Debug, Clone, PartialEq)]
pub enum Residual {
    Lift(LiftPolynomial),
    Character(CharacterFunction),
    Value(Rational),
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Lift(p) => write!(f, "{p}"),
            Residual::Character(c) => write!(f, "{c}"),
            Residual::Value(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub residual: Residual,
    pub citation: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub consistent: bool,
}

impl VerificationReport {
    fn new(checks: Vec<CheckResult>) -> Self {
        let consistent = checks.iter().all(|c| c.passed);
        VerificationReport { checks, consistent }
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn case_label(cfg: &Configuration) -> &'static str {
    match cfg.template() {
        Template::TwoFours => "two 4-dimensional components with b_2 = 0",
        Template::FourPlusSurface => "a 4-dimensional component with b_2 = 0 and a surface",
        Template::FourPlusTwoPoints => "a 4-dimensional component with b_2 = 0 and two points",
        Template::Cp2likePlusPoint => "a 4-dimensional component with b_2 = 1 and a point",
        Template::SingleFourB2Two => "a single 4-dimensional component with b_2 = 2",
        Template::TwoSurfaces if is_semifree(cfg) => "two surfaces, semifree",
        Template::TwoSurfaces => "two surfaces, not semifree",
        Template::SurfacePlusTwoPoints => "a surface and two points",
    }
}

fn is_semifree(cfg: &Configuration) -> bool {
    cfg.components().iter().all(|c| c.weights().iter().all(|&n| n == 1))
}

fn result(name: &'static str, passed: bool, residual: Residual, citation: impl Into<String>, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name,
        passed,
        residual,
        citation: citation.into(),
        detail: detail.into(),
    }
}

pub fn sum_x3(cfg: &Configuration) -> LiftPolynomial {
    cfg.components()
        .iter()
        .fold(LiftPolynomial::zero(), |acc, c| &acc + &x3_local_datum(c))
}

pub fn sum_p1x(cfg: &Configuration) -> LiftPolynomial {
    cfg.components()
        .iter()
        .fold(LiftPolynomial::zero(), |acc, c| &acc + &p1x_local_datum(c))
}

/// The local data of `x^3` must add up to the constant `t` for every lift.
pub fn check_x3(cfg: &Configuration) -> CheckResult {
    let residual = &sum_x3(cfg) - &LiftPolynomial::from(cfg.ambient().t);
    let passed = residual.is_zero();
    let detail = if passed {
        String::new()
    } else {
        format!("sum of local data minus t = {residual}")
    };
    result(
        "x3-localization",
        passed,
        Residual::Lift(residual),
        format!("[x^3]_M is the lift-independent sum of local data; {}", case_label(cfg)),
        detail,
    )
}

/// The local data of `p_1(M) x` must add up to the constant `rho t`.
pub fn check_p1x(cfg: &Configuration) -> CheckResult {
    let a = cfg.ambient();
    let residual = &sum_p1x(cfg) - &LiftPolynomial::from(a.rho * a.t);
    let passed = residual.is_zero();
    let detail = if passed {
        String::new()
    } else {
        format!("sum of local data minus rho t = {residual}")
    };
    result(
        "p1x-localization",
        passed,
        Residual::Lift(residual),
        format!("[p_1(M) x]_M = rho t is the sum of local data; {}", case_label(cfg)),
        detail,
    )
}

pub fn check_euler(cfg: &Configuration) -> CheckResult {
    let total: i64 = cfg.components().iter().map(FixedComponent::chi).sum();
    let diff = total - cfg.ambient().euler;
    result(
        "euler",
        diff == 0,
        Residual::Value(q(diff)),
        "chi(M) is the Euler characteristic of the fixed point set",
        format!("fixed set chi = {total}, chi(M) = {}", cfg.ambient().euler),
    )
}

/// `b_3 = 4 - chi(M)` is positive and even.
pub fn check_euler_range(cfg: &Configuration) -> CheckResult {
    let chi = cfg.ambient().euler;
    result(
        "euler-range",
        chi < 4 && chi % 2 == 0,
        Residual::Value(q(chi)),
        "b_3(M) = 4 - chi(M) is even and chi(M) < 4",
        format!("chi(M) = {chi}"),
    )
}

/// Rigidity of the equivariant signature. With 4-dimensional components
/// only the limit identity is available.
pub fn check_signature_rigidity(cfg: &Configuration) -> Vec<CheckResult> {
    signature_checks(cfg.components(), cfg.ambient().sign)
}

/// The signature checks of [`check_signature_rigidity`] for an arbitrary
/// list of fixed components of a manifold with signature `sign_m`.
pub fn signature_checks(components: &[FixedComponent], sign_m: i64) -> Vec<CheckResult> {
    let sign_sum: i64 = components.iter().map(FixedComponent::sign).sum();
    let limit_citation = "sign(M) is the sum of sign(Z) over fixed components (limit λ -> ∞)";
    let data: Option<Vec<CharacterFunction>> = components.iter().map(|c| signature_local_datum(c).ok()).collect();
    let Some(data) = data else {
        let diff = sign_sum - sign_m;
        return vec![result(
            "signature-limit",
            diff == 0,
            Residual::Value(q(diff)),
            limit_citation,
            format!("sum of sign(Z) = {sign_sum}, sign(M) = {sign_m}"),
        )];
    };
    let total = character_sum(&data);
    let constant = character_is_constant(&total);
    let mut out = vec![result(
        "signature-rigidity",
        constant.is_some(),
        Residual::Character(total.clone()),
        "the equivariant signature is constant in λ",
        if constant.is_some() {
            String::new()
        } else {
            format!("sum of local data = {total}")
        },
    )];
    if let Some(c) = constant {
        let diff = &c - q(sign_m);
        out.push(result(
            "signature-value",
            diff.is_zero(),
            Residual::Value(diff),
            "the constant value of the equivariant signature is sign(M)",
            format!("constant = {c}"),
        ));
    }
    let limit = character_limit_at_infinity(&total);
    let (passed, residual, detail) = match &limit {
        Some(v) => {
            let diff = v - q(sign_sum);
            (diff.is_zero(), diff, format!("limit = {v}, sum of sign(Z) = {sign_sum}"))
        }
        None => (false, q(sign_sum), "limit diverges".to_string()),
    };
    out.push(result("signature-limit", passed, Residual::Value(residual), limit_citation, detail));
    out
}

/// For a codimension-2 fixed component `F` with Poincaré dual `gamma x`:
/// `[x|_F^2]_F = t gamma` and `p_1(F) = (rho - gamma^2) x|_F^2`.
pub fn check_codim_two_pontryagin(f: &FourComponent, gamma: &Rational, ambient: &AmbientData) -> CheckResult {
    let expected = (q(ambient.rho) - gamma * gamma) * q(f.ev_x2);
    let diff = q(f.ev_p1) - &expected;
    let dual = q(f.ev_x2) - gamma * q(ambient.t);
    let passed = diff.is_zero() && dual.is_zero();
    result(
        "codim2-pontryagin",
        passed,
        Residual::Value(if dual.is_zero() { diff } else { dual }),
        "codimension-2 fixed component F: [x|_F^2]_F = t gamma and p_1(F) = (rho - gamma^2) x|_F^2",
        format!(
            "gamma = {gamma}, [p_1(F)] = {}, (rho - gamma^2) [x|_F^2] = {expected}",
            f.ev_p1
        ),
    )
}

fn codim_two_checks(cfg: &Configuration) -> Vec<CheckResult> {
    let a = cfg.ambient();
    cfg.fours()
        .flat_map(|f| {
            let gamma = frac(f.ev_x2, a.t);
            let integral = gamma.is_integer();
            let dual = result(
                "codim2-dual-class",
                integral,
                Residual::Value(gamma.clone()),
                "the Poincaré dual of a codimension-2 fixed component is an integral multiple gamma x",
                format!("gamma = [x|_F^2]_F / t = {gamma}"),
            );
            [dual, check_codim_two_pontryagin(f, &gamma, a)]
        })
        .collect()
}

/// Comparing coefficients of `l` in the `x^3` sum: the `l^3`, `l^2`, `l`
/// coefficients must vanish, and the constant term is the forced value of
/// `t`.
fn forced_t_check(cfg: &Configuration) -> CheckResult {
    let sum = sum_x3(cfg);
    let citation = format!(
        "comparing coefficients in l: sum eps/N = sum eps a/N = sum eps a^2/N = 0 forces t = sum eps a^3/N = 0; {}",
        case_label(cfg)
    );
    for k in [3usize, 2, 1] {
        let c = sum.coeff(k);
        if !c.is_zero() {
            return result(
                "forced-t",
                false,
                Residual::Value(c),
                citation,
                format!("coefficient of l^{k} does not vanish"),
            );
        }
    }
    let forced = sum.coeff(0);
    let diff = q(cfg.ambient().t) - &forced;
    result(
        "forced-t",
        diff.is_zero(),
        Residual::Value(diff),
        citation,
        format!("forced t = {forced}"),
    )
}

fn two_surface_checks(cfg: &Configuration) -> Vec<CheckResult> {
    let surfaces: Vec<&SurfaceComponent> = cfg.surfaces().collect();
    let (x, y) = (surfaces[0], surfaces[1]);
    let mut out = Vec::new();
    let split = x.ev_y2 == 0 && y.ev_y2 == 0 && x.weights[1] == y.weights[1];
    out.push(result(
        "normal-splitting",
        split,
        Residual::Value(q(x.ev_y2.abs() + y.ev_y2.abs() + (x.weights[1] - y.weights[1]).abs())),
        "the normal bundles of X and Y split off a common line: y_2 = 0 and n_{X,2} = n_{Y,2}",
        format!(
            "y_X2 = {}, y_Y2 = {}, n_X2 = {}, n_Y2 = {}",
            x.ev_y2, y.ev_y2, x.weights[1], y.weights[1]
        ),
    ));
    out.push(restriction_check(&[x.ev_x, y.ev_x]));
    let t = q(cfg.ambient().t);
    let rho = q(cfg.ambient().rho);
    let a = q(x.a - y.a);
    if is_semifree(cfg) {
        let diff = &t - &a * &a * &rho * &t / q(4);
        out.push(result(
            "semifree-relation",
            diff.is_zero(),
            Residual::Value(diff),
            "semifree two-surface case: t = a^2 rho t / 4 with a = a_X - a_Y",
            format!("t (1 - rho a^2 / 4) with rho = {rho}, a = {a}"),
        ));
    } else {
        let [n1, n2] = x.weights;
        let degree = &t - &a * &a * frac(x.ev_x, n1 * n2);
        out.push(result(
            "non-semifree-degree",
            degree.is_zero(),
            Residual::Value(degree),
            "two surfaces, not semifree: t = a^2 [x|_X]_X / (n_{X,1} n_{X,2})",
            format!("a = {a}, [x|_X] = {}", x.ev_x),
        ));
        let pont = &rho * &t - frac(4 * n1 * x.ev_x, n2);
        out.push(result(
            "non-semifree-pontryagin",
            pont.is_zero(),
            Residual::Value(pont),
            "two surfaces, not semifree: rho t = 4 n_{X,1} [x|_X]_X / n_{X,2}",
            format!("rho t = {}", &rho * &t),
        ));
    }
    out
}

fn restriction_check(ev: &[i64]) -> CheckResult {
    let passed = ev.iter().all(|&e| e != 0);
    let product: i64 = ev.iter().product();
    result(
        "restriction-nonzero",
        passed,
        Residual::Value(q(product)),
        "x restricts non-trivially to every fixed surface",
        format!("[x|_Z]_Z = {ev:?}"),
    )
}

fn sorted3(w: [i64; 3]) -> [i64; 3] {
    let mut w = w;
    w.sort_unstable();
    w
}

fn surface_two_point_checks(cfg: &Configuration) -> Vec<CheckResult> {
    let x = cfg.surfaces().next().expect("template has a surface");
    let (pt, qq) = cfg.point_pair().expect("template has two points");
    let mut out = vec![restriction_check(&[x.ev_x])];
    out.push(result(
        "point-orientation",
        pt.eps + qq.eps == 0,
        Residual::Value(q(pt.eps + qq.eps)),
        "sign(M) = 0 forces opposite orientations at the two isolated points",
        format!("eps_pt = {}, eps_q = {}", pt.eps, qq.eps),
    ));
    if !cfg.flags().matched_point_weights {
        return out;
    }
    let (wp, wq) = (sorted3(pt.weights), sorted3(qq.weights));
    let mismatch: i64 = wp.iter().zip(&wq).map(|(a, b)| (a - b).abs()).sum();
    out.push(result(
        "weight-matching",
        mismatch == 0,
        Residual::Value(q(mismatch)),
        "the normal weights at pt and q agree up to order",
        format!("pt {wp:?}, q {wq:?}"),
    ));
    let bad: Vec<i64> = x
        .weights
        .iter()
        .copied()
        .filter(|&m| m >= 2)
        .filter(|&m| {
            let hits = |w: [i64; 3]| w.iter().filter(|&&n| n % m == 0).count();
            hits(pt.weights) != 2 || hits(qq.weights) != 2
        })
        .collect();
    out.push(result(
        "weight-divisibility",
        bad.is_empty(),
        Residual::Value(q(bad.len() as i64)),
        "each surface weight m >= 2 divides exactly two weights at pt and two at q",
        if bad.is_empty() {
            String::new()
        } else {
            format!("failing surface weights {bad:?}")
        },
    ));
    if mismatch == 0 {
        let [n1, n2, n3] = pt.weights;
        let big_n = n1 * n2 * n3;
        let s_pt = n1 * n1 + n2 * n2 + n3 * n3;
        let s_x = x.weights[0].pow(2) + x.weights[1].pow(2);
        let r = frac(2 * (pt.a - x.a) * (s_pt - s_x), big_n);
        let a = cfg.ambient();
        let diff = q(a.rho * a.t) - &r;
        out.push(result(
            "equal-weights-relation",
            diff.is_zero(),
            Residual::Value(diff),
            "equal weights at pt and q: rho t = 2 (a_pt - a_X)(sum n_pt^2 - n_X1^2 - n_X2^2) / N, positive under the divisibility constraints",
            format!("right hand side = {r}, rho t = {}", a.rho * a.t),
        ));
    }
    out
}

/// Runs every constraint that applies to the configuration's template.
pub fn verify_case(cfg: &Configuration) -> VerificationReport {
    let mut checks = vec![check_x3(cfg), check_p1x(cfg), check_euler(cfg), check_euler_range(cfg)];
    checks.extend(check_signature_rigidity(cfg));
    checks.extend(codim_two_checks(cfg));
    match cfg.template() {
        Template::FourPlusTwoPoints => checks.push(forced_t_check(cfg)),
        Template::TwoSurfaces => checks.extend(two_surface_checks(cfg)),
        Template::SurfacePlusTwoPoints => checks.extend(surface_two_point_checks(cfg)),
        _ => {}
    }
    VerificationReport::new(checks)
}
