use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Global data of the 6-manifold `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmbientData {
    /// `[x^3]_M`
    pub t: i64,
    /// `p_1(M) = rho x^2`
    pub rho: i64,
    pub euler: i64,
    pub sign: i64,
}

/// Isolated fixed point. Its Euler characteristic is 1 and its signature
/// is the orientation sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointComponent {
    pub eps: i64,
    pub weights: [i64; 3],
    pub a: i64,
}

/// Fixed surface with normal roots `y_1 + n_1 z`, `y_2 + n_2 z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceComponent {
    pub weights: [i64; 2],
    pub a: i64,
    pub ev_x: i64,
    pub ev_y1: i64,
    pub ev_y2: i64,
    pub chi: i64,
}

/// Fixed 4-manifold with normal root `y + n z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FourComponent {
    pub weight: i64,
    pub a: i64,
    pub ev_x2: i64,
    pub ev_xy: i64,
    pub ev_y2: i64,
    pub ev_p1: i64,
    pub b2: i64,
    pub sign: i64,
    pub chi: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FixedComponent {
    Point(PointComponent),
    Surface(SurfaceComponent),
    Four(FourComponent),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentKind {
    Point,
    Surface,
    /// A 4-dimensional component with the given `b_2`.
    Four(i64),
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentKind::Point => write!(f, "point"),
            ComponentKind::Surface => write!(f, "surface"),
            ComponentKind::Four(b2) => write!(f, "four(b2={b2})"),
        }
    }
}

impl FixedComponent {
    pub fn kind(&self) -> ComponentKind {
        match self {
            FixedComponent::Point(_) => ComponentKind::Point,
            FixedComponent::Surface(_) => ComponentKind::Surface,
            FixedComponent::Four(f) => ComponentKind::Four(f.b2),
        }
    }

    pub fn a(&self) -> i64 {
        match self {
            FixedComponent::Point(p) => p.a,
            FixedComponent::Surface(s) => s.a,
            FixedComponent::Four(f) => f.a,
        }
    }

    fn a_mut(&mut self) -> &mut i64 {
        match self {
            FixedComponent::Point(p) => &mut p.a,
            FixedComponent::Surface(s) => &mut s.a,
            FixedComponent::Four(f) => &mut f.a,
        }
    }

    pub fn chi(&self) -> i64 {
        match self {
            FixedComponent::Point(_) => 1,
            FixedComponent::Surface(s) => s.chi,
            FixedComponent::Four(f) => f.chi,
        }
    }

    pub fn sign(&self) -> i64 {
        match self {
            FixedComponent::Point(p) => p.eps,
            FixedComponent::Surface(_) => 0,
            FixedComponent::Four(f) => f.sign,
        }
    }

    /// Total even Betti number.
    pub fn b_ev(&self) -> i64 {
        match self {
            FixedComponent::Point(_) => 1,
            FixedComponent::Surface(_) => 2,
            FixedComponent::Four(f) => 2 + f.b2,
        }
    }

    pub fn weights(&self) -> Vec<i64> {
        match self {
            FixedComponent::Point(p) => p.weights.to_vec(),
            FixedComponent::Surface(s) => s.weights.to_vec(),
            FixedComponent::Four(f) => vec![f.weight],
        }
    }

    /// Data of the same fixed component for the inverse action `λ -> λ^{-1}`.
    /// Points and 4-dimensional components reverse orientation; normal roots
    /// of surfaces change sign.
    pub fn inverse_action(&self) -> FixedComponent {
        match *self {
            FixedComponent::Point(p) => FixedComponent::Point(PointComponent {
                eps: -p.eps,
                a: -p.a,
                ..p
            }),
            FixedComponent::Surface(s) => FixedComponent::Surface(SurfaceComponent {
                a: -s.a,
                ev_y1: -s.ev_y1,
                ev_y2: -s.ev_y2,
                ..s
            }),
            FixedComponent::Four(f) => FixedComponent::Four(FourComponent {
                a: -f.a,
                ev_x2: -f.ev_x2,
                ev_y2: -f.ev_y2,
                ev_p1: -f.ev_p1,
                sign: -f.sign,
                ..f
            }),
        }
    }
}

/// The seven fixed-point-set shapes compatible with `b_ev = 4` and `chi < 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Template {
    TwoFours,
    FourPlusSurface,
    FourPlusTwoPoints,
    Cp2likePlusPoint,
    #[serde(rename = "single_four_b2_2")]
    SingleFourB2Two,
    TwoSurfaces,
    SurfacePlusTwoPoints,
}

impl Template {
    pub const ALL: [Template; 7] = [
        Template::TwoFours,
        Template::FourPlusSurface,
        Template::FourPlusTwoPoints,
        Template::Cp2likePlusPoint,
        Template::SingleFourB2Two,
        Template::TwoSurfaces,
        Template::SurfacePlusTwoPoints,
    ];

    /// Component kinds in canonical order.
    pub fn kinds(self) -> &'static [ComponentKind] {
        use ComponentKind::*;
        match self {
            Template::TwoFours => &[Four(0), Four(0)],
            Template::FourPlusSurface => &[Four(0), Surface],
            Template::FourPlusTwoPoints => &[Four(0), Point, Point],
            Template::Cp2likePlusPoint => &[Four(1), Point],
            Template::SingleFourB2Two => &[Four(2)],
            Template::TwoSurfaces => &[Surface, Surface],
            Template::SurfacePlusTwoPoints => &[Surface, Point, Point],
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Template::TwoFours => "two_fours",
            Template::FourPlusSurface => "four_plus_surface",
            Template::FourPlusTwoPoints => "four_plus_two_points",
            Template::Cp2likePlusPoint => "cp2like_plus_point",
            Template::SingleFourB2Two => "single_four_b2_2",
            Template::TwoSurfaces => "two_surfaces",
            Template::SurfacePlusTwoPoints => "surface_plus_two_points",
        }
    }

    pub fn parse(s: &str) -> Option<Template> {
        Template::ALL.into_iter().find(|t| t.as_str() == s)
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flags {
    /// Weights at every point and surface, and across the whole fixed set,
    /// are coprime.
    pub effectiveness: bool,
    /// Pass to the inverse action when needed so that some isolated point is
    /// positively oriented.
    pub positive_base_point: bool,
    /// The two isolated points beside a fixed surface carry the same
    /// weights, and each surface weight `>= 2` divides exactly two of them.
    pub matched_point_weights: bool,
}

impl Flags {
    pub const ALL_ON: Flags = Flags {
        effectiveness: true,
        positive_base_point: true,
        matched_point_weights: true,
    };
    pub const ALL_OFF: Flags = Flags {
        effectiveness: false,
        positive_base_point: false,
        matched_point_weights: false,
    };
}

/// Invalid configuration data, located by a JSON-style key path.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path}: {message}")]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError {
        path: path.into(),
        message: message.into(),
    }
}

/// A candidate fixed point set together with the ambient data it must
/// reproduce. Always satisfies the structural invariants checked in
/// [`Configuration::new`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    ambient: AmbientData,
    template: Template,
    flags: Flags,
    components: Vec<FixedComponent>,
    inverted: bool,
}

impl Configuration {
    pub fn new(
        ambient: AmbientData,
        template: Template,
        flags: Flags,
        components: Vec<FixedComponent>,
    ) -> Result<Self, ConfigError> {
        if ambient.t <= 0 {
            return Err(invalid("ambient.t", "must be positive"));
        }
        if ambient.sign != 0 {
            return Err(invalid("ambient.sign", "the signature of a 6-manifold is 0"));
        }
        for (i, c) in components.iter().enumerate() {
            validate_component(c).map_err(|(field, msg)| invalid(format!("components[{i}]{field}"), msg))?;
        }
        let mut found: Vec<ComponentKind> = components.iter().map(FixedComponent::kind).collect();
        let mut expected = template.kinds().to_vec();
        found.sort();
        expected.sort();
        if found != expected {
            let names: Vec<String> = template.kinds().iter().map(|k| k.to_string()).collect();
            return Err(invalid(
                "components",
                format!("template {template} needs components [{}]", names.join(", ")),
            ));
        }
        let b_ev: i64 = components.iter().map(FixedComponent::b_ev).sum();
        if b_ev != 4 {
            return Err(invalid("components", format!("even Betti numbers sum to {b_ev}, not 4")));
        }
        if flags.effectiveness {
            for (i, c) in components.iter().enumerate() {
                if !matches!(c, FixedComponent::Four(_)) && gcd_all(&c.weights()) != 1 {
                    return Err(invalid(
                        format!("components[{i}].weights"),
                        "weights must be coprime for an effective action",
                    ));
                }
            }
            let all: Vec<i64> = components.iter().flat_map(FixedComponent::weights).collect();
            if gcd_all(&all) != 1 {
                return Err(invalid("components", "weights must be coprime for an effective action"));
            }
        }
        let has_points = components.iter().any(|c| matches!(c, FixedComponent::Point(_)));
        let has_positive = components
            .iter()
            .any(|c| matches!(c, FixedComponent::Point(p) if p.eps == 1));
        let invert = flags.positive_base_point && has_points && !has_positive;
        let components = if invert {
            components.iter().map(FixedComponent::inverse_action).collect()
        } else {
            components
        };
        Ok(Configuration {
            ambient,
            template,
            flags,
            components,
            inverted: invert,
        })
    }

    pub fn ambient(&self) -> &AmbientData {
        &self.ambient
    }

    pub fn template(&self) -> Template {
        self.template
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn components(&self) -> &[FixedComponent] {
        &self.components
    }

    /// Whether construction passed to the inverse action.
    pub fn inverted(&self) -> bool {
        self.inverted
    }

    pub fn points(&self) -> impl Iterator<Item = &PointComponent> {
        self.components.iter().filter_map(|c| match c {
            FixedComponent::Point(p) => Some(p),
            _ => None,
        })
    }

    pub fn surfaces(&self) -> impl Iterator<Item = &SurfaceComponent> {
        self.components.iter().filter_map(|c| match c {
            FixedComponent::Surface(s) => Some(s),
            _ => None,
        })
    }

    pub fn fours(&self) -> impl Iterator<Item = &FourComponent> {
        self.components.iter().filter_map(|c| match c {
            FixedComponent::Four(f) => Some(f),
            _ => None,
        })
    }

    /// The base point `pt` (positively oriented if possible) and the other
    /// isolated point `q`, for templates with two points.
    pub fn point_pair(&self) -> Option<(&PointComponent, &PointComponent)> {
        let pts: Vec<&PointComponent> = self.points().collect();
        match pts.as_slice() {
            [p, q] if q.eps == 1 && p.eps != 1 => Some((q, p)),
            [p, q] => Some((p, q)),
            _ => None,
        }
    }
}

/// Replaces every lift weight `a_Z` by `a_Z + delta`.
pub fn shift_lift(cfg: &Configuration, delta: i64) -> Configuration {
    let mut out = cfg.clone();
    for c in &mut out.components {
        *c.a_mut() += delta;
    }
    out
}

pub(crate) fn gcd_all(xs: &[i64]) -> i64 {
    xs.iter().fold(0i64, |g, &x| g.gcd(&x))
}

type FieldError = (String, String);

fn field(name: &str, msg: impl Into<String>) -> FieldError {
    (format!(".{name}"), msg.into())
}

fn validate_component(c: &FixedComponent) -> Result<(), FieldError> {
    match c {
        FixedComponent::Point(p) => {
            if p.eps != 1 && p.eps != -1 {
                return Err(field("eps", "must be 1 or -1"));
            }
            if p.weights.iter().any(|&n| n <= 0) {
                return Err(field("weights", "weights must be positive"));
            }
        }
        FixedComponent::Surface(s) => {
            if s.weights.iter().any(|&n| n <= 0) {
                return Err(field("weights", "weights must be positive"));
            }
            if s.chi > 2 || s.chi % 2 != 0 {
                return Err(field("chi", "the Euler characteristic of a surface is even and at most 2"));
            }
        }
        FixedComponent::Four(f) => validate_four(f)?,
    }
    Ok(())
}

fn validate_four(f: &FourComponent) -> Result<(), FieldError> {
    if f.weight <= 0 {
        return Err(field("weight", "must be positive"));
    }
    if !(0..=2).contains(&f.b2) {
        return Err(field("b2", "must be 0, 1 or 2"));
    }
    if f.sign.abs() > f.b2 || (f.sign - f.b2) % 2 != 0 {
        return Err(field("sign", "needs |sign| <= b2 and sign = b2 mod 2"));
    }
    if f.ev_p1 != 3 * f.sign {
        return Err(field("ev_p1", "must equal 3 * sign"));
    }
    if f.b2 == 0 && (f.ev_x2, f.ev_xy, f.ev_y2) != (0, 0, 0) {
        return Err(field("b2", "evaluations of degree-2 classes vanish when b2 = 0"));
    }
    if f.b2 > 0 && f.sign.abs() == f.b2 {
        // definite intersection form
        if f.sign * f.ev_x2 < 0 {
            return Err(field("ev_x2", "has the wrong sign for a definite intersection form"));
        }
        if f.sign * f.ev_y2 < 0 {
            return Err(field("ev_y2", "has the wrong sign for a definite intersection form"));
        }
        if i128::from(f.ev_xy).pow(2) > i128::from(f.ev_x2) * i128::from(f.ev_y2) {
            return Err(field("ev_xy", "violates Cauchy-Schwarz for a definite intersection form"));
        }
    }
    if f.chi > 2 + f.b2 || (f.chi - f.b2) % 2 != 0 {
        return Err(field("chi", "needs chi <= 2 + b2 and chi = b2 mod 2"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn amb(t: i64) -> AmbientData {
        AmbientData { t, rho: 0, euler: 2, sign: 0 }
    }

    fn pt(eps: i64, w: [i64; 3], a: i64) -> FixedComponent {
        FixedComponent::Point(PointComponent { eps, weights: w, a })
    }

    fn four0(n: i64, a: i64) -> FixedComponent {
        FixedComponent::Four(FourComponent {
            weight: n,
            a,
            ev_x2: 0,
            ev_xy: 0,
            ev_y2: 0,
            ev_p1: 0,
            b2: 0,
            sign: 0,
            chi: 2,
        })
    }

    #[test]
    fn template_names_round_trip() {
        for t in Template::ALL {
            assert_eq!(Template::parse(t.as_str()), Some(t));
            let json = serde_json::to_string(&t).unwrap();
            assert_eq!(json, format!("\"{}\"", t.as_str()));
        }
    }

    #[test]
    fn every_template_has_four_even_betti() {
        for t in Template::ALL {
            let sum: i64 = t
                .kinds()
                .iter()
                .map(|k| match k {
                    ComponentKind::Point => 1,
                    ComponentKind::Surface => 2,
                    ComponentKind::Four(b) => 2 + b,
                })
                .sum();
            assert_eq!(sum, 4, "{t}");
        }
    }

    #[test]
    fn rejects_template_mismatch_and_bad_ambient() {
        let comps = vec![four0(1, 0), pt(1, [1, 1, 1], 0)];
        let err = Configuration::new(amb(1), Template::FourPlusTwoPoints, Flags::ALL_OFF, comps).unwrap_err();
        assert_eq!(err.path, "components");
        let comps = vec![four0(1, 0), four0(1, 0)];
        let err = Configuration::new(amb(0), Template::TwoFours, Flags::ALL_OFF, comps).unwrap_err();
        assert_eq!(err.path, "ambient.t");
    }

    #[test]
    fn rejects_invalid_components() {
        let comps = vec![four0(1, 0), pt(1, [1, 0, 1], 0), pt(-1, [1, 1, 1], 0)];
        let err = Configuration::new(amb(1), Template::FourPlusTwoPoints, Flags::ALL_OFF, comps).unwrap_err();
        assert_eq!(err.path, "components[1].weights");
        let comps = vec![four0(1, 0), pt(2, [1, 1, 1], 0), pt(-1, [1, 1, 1], 0)];
        let err = Configuration::new(amb(1), Template::FourPlusTwoPoints, Flags::ALL_OFF, comps).unwrap_err();
        assert_eq!(err.path, "components[1].eps");
        let mut f = FourComponent {
            weight: 1,
            a: 0,
            ev_x2: 1,
            ev_xy: 0,
            ev_y2: 0,
            ev_p1: -3,
            b2: 1,
            sign: -1,
            chi: 3,
        };
        let comps = vec![FixedComponent::Four(f), pt(1, [1, 1, 1], 0)];
        let err = Configuration::new(amb(1), Template::Cp2likePlusPoint, Flags::ALL_OFF, comps).unwrap_err();
        assert_eq!(err.path, "components[0].ev_x2");
        f.ev_x2 = -1;
        let comps = vec![FixedComponent::Four(f), pt(1, [1, 1, 1], 0)];
        assert!(Configuration::new(amb(1), Template::Cp2likePlusPoint, Flags::ALL_OFF, comps).is_ok());
    }

    #[test]
    fn effectiveness_requires_coprime_weights() {
        let comps = vec![four0(2, 0), pt(1, [2, 2, 4], 0), pt(-1, [2, 2, 2], 0)];
        let err = Configuration::new(amb(1), Template::FourPlusTwoPoints, Flags::ALL_ON, comps.clone()).unwrap_err();
        assert_eq!(err.path, "components[1].weights");
        assert!(Configuration::new(amb(1), Template::FourPlusTwoPoints, Flags::ALL_OFF, comps).is_ok());
    }

    #[test]
    fn positive_base_point_inverts_action() {
        let comps = vec![four0(1, 3), pt(-1, [1, 2, 3], 2), pt(-1, [1, 1, 1], -1)];
        let cfg = Configuration::new(amb(1), Template::FourPlusTwoPoints, Flags::ALL_ON, comps).unwrap();
        assert!(cfg.inverted());
        let (p, q) = cfg.point_pair().unwrap();
        assert_eq!((p.eps, p.a, q.eps, q.a), (1, -2, 1, 1));
        assert_eq!(cfg.components()[0].a(), -3);
    }

    #[test]
    fn inverse_action_is_an_involution() {
        let s = FixedComponent::Surface(SurfaceComponent {
            weights: [1, 2],
            a: 3,
            ev_x: 4,
            ev_y1: -1,
            ev_y2: 2,
            chi: 0,
        });
        assert_eq!(s.inverse_action().inverse_action(), s);
        let p = pt(1, [1, 2, 3], -4);
        assert_eq!(p.inverse_action().inverse_action(), p);
    }

    #[test]
    fn shift_moves_every_lift_weight() {
        let comps = vec![four0(1, 0), pt(1, [1, 1, 1], 2), pt(-1, [1, 1, 1], -1)];
        let cfg = Configuration::new(amb(1), Template::FourPlusTwoPoints, Flags::ALL_OFF, comps).unwrap();
        let moved = shift_lift(&cfg, 5);
        let a: Vec<i64> = moved.components().iter().map(FixedComponent::a).collect();
        assert_eq!(a, vec![5, 7, 4]);
        assert_eq!(shift_lift(&cfg, 0), cfg);
    }
}
