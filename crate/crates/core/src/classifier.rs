//! Which complete intersections of complex dimension at most three carry a
//! smooth non-trivial circle action.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::invariants::{enumerate_normalized, invariants, normalize, CompleteIntersection, InvariantReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VerdictReason {
    /// Curves: spheres and tori.
    TorusOrSphere,
    /// Surfaces with positive first Chern class.
    PositiveC1List,
    /// Threefolds: projective space and the quadric.
    ProjectiveOrQuadric,
    OutOfScope,
}

impl VerdictReason {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictReason::TorusOrSphere => "torus_or_sphere",
            VerdictReason::PositiveC1List => "positive_c1_list",
            VerdictReason::ProjectiveOrQuadric => "projective_or_quadric",
            VerdictReason::OutOfScope => "out_of_scope",
        }
    }
}

impl fmt::Display for VerdictReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryVerdict {
    /// `None` when no classification is known.
    pub admits: Option<bool>,
    pub n: u32,
    pub normalized: CompleteIntersection,
    pub reason: VerdictReason,
    pub citation: &'static str,
    pub evidence: InvariantReport,
}

const CURVES: &str =
    "curves: X_1(1) and X_1(2) are spheres, X_1(3) and X_1(2,2) are tori, all others have genus at least 2";
const SURFACES: &str =
    "surfaces: only X_2(1), X_2(2), X_2(3) and X_2(2,2) admit circle actions, exactly those with c_1 > 0";
const THREEFOLDS: &str =
    "threefolds: only projective space X_3(1) and the quadric X_3(2) admit circle actions";
const HIGHER: &str = "no classification is known in complex dimension 4 or more";

fn listed(ci: &CompleteIntersection, models: &[&[u64]]) -> bool {
    models.iter().any(|m| ci.degrees() == *m)
}

pub fn s1_verdict(ci: &CompleteIntersection) -> SymmetryVerdict {
    let normalized = normalize(ci);
    let evidence = invariants(&normalized);
    let (admits, reason, citation) = match ci.n() {
        1 => (
            Some(listed(&normalized, &[&[1], &[2], &[3], &[2, 2]])),
            VerdictReason::TorusOrSphere,
            CURVES,
        ),
        2 => (
            Some(listed(&normalized, &[&[1], &[2], &[3], &[2, 2]])),
            VerdictReason::PositiveC1List,
            SURFACES,
        ),
        3 => (
            Some(listed(&normalized, &[&[1], &[2]])),
            VerdictReason::ProjectiveOrQuadric,
            THREEFOLDS,
        ),
        _ => (None, VerdictReason::OutOfScope, HIGHER),
    };
    SymmetryVerdict {
        admits,
        n: ci.n(),
        normalized,
        reason,
        citation,
        evidence,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifierError {
    #[error("the non-existence hypotheses concern threefolds, got n = {0}")]
    NotThreefold(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisItem {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

/// Checklist of the hypotheses under which a simply connected 6-manifold
/// with `b_2 = 1` admits no circle action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonexistenceHypotheses {
    pub items: Vec<HypothesisItem>,
    pub all_hold: bool,
}

pub fn nonexistence_hypotheses(ci: &CompleteIntersection) -> Result<NonexistenceHypotheses, ClassifierError> {
    if ci.n() != 3 {
        return Err(ClassifierError::NotThreefold(ci.n()));
    }
    let r = invariants(&normalize(ci));
    let items = vec![
        HypothesisItem {
            name: "homology",
            holds: true,
            detail: "torsion-free, b_1 = 0, b_2 = 1 by the Lefschetz hyperplane theorem".into(),
        },
        HypothesisItem {
            name: "rho_nonpositive",
            holds: r.rho <= 0,
            detail: format!("p_1 = {} x^2", r.rho),
        },
        HypothesisItem {
            name: "x_cubed_nonzero",
            holds: !r.t.is_zero(),
            detail: format!("[x^3] = {}", r.t),
        },
        HypothesisItem {
            name: "euler_below_four",
            holds: r.euler < BigInt::from(4),
            detail: format!("chi = {}", r.euler),
        },
    ];
    let all_hold = items.iter().all(|i| i.holds);
    Ok(NonexistenceHypotheses { items, all_hold })
}

/// Verdicts for every normalized multidegree with degree sum at most
/// `max_degree_sum`.
pub fn verdict_table(n: u32, max_degree_sum: u64) -> Vec<SymmetryVerdict> {
    enumerate_normalized(n, max_degree_sum).iter().map(s1_verdict).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ci(n: u32, d: &[u64]) -> CompleteIntersection {
        CompleteIntersection::new(n, d.iter().copied()).unwrap()
    }

    #[test]
    fn verdict_examples() {
        assert_eq!(s1_verdict(&ci(3, &[3])).admits, Some(false));
        let v = s1_verdict(&ci(3, &[1, 2]));
        assert_eq!(v.admits, Some(true));
        assert_eq!(v.normalized, ci(3, &[2]));
        assert_eq!(s1_verdict(&ci(2, &[2, 2])).admits, Some(true));
        let v = s1_verdict(&ci(4, &[2]));
        assert_eq!((v.admits, v.reason), (None, VerdictReason::OutOfScope));
        assert_eq!(s1_verdict(&ci(1, &[4])).admits, Some(false));
        assert_eq!(s1_verdict(&ci(1, &[1, 3])).admits, Some(true));
    }

    #[test]
    fn hypotheses_examples() {
        let h = nonexistence_hypotheses(&ci(3, &[3])).unwrap();
        assert!(h.all_hold);
        let h = nonexistence_hypotheses(&ci(3, &[2])).unwrap();
        assert!(!h.all_hold);
        assert!(!h.items.iter().find(|i| i.name == "rho_nonpositive").unwrap().holds);
        assert!(nonexistence_hypotheses(&ci(3, &[2, 2])).unwrap().all_hold);
        assert_eq!(nonexistence_hypotheses(&ci(2, &[2])), Err(ClassifierError::NotThreefold(2)));
    }

    #[test]
    fn curve_verdicts_match_euler_sign() {
        for v in verdict_table(1, 12) {
            assert_eq!(v.admits, Some(v.evidence.euler >= BigInt::zero()), "{}", v.normalized);
        }
    }

    #[test]
    fn threefold_euler_bounded_sweep() {
        // chi <= 0 away from projective space and the quadric; zero only for X_3(2,2)
        for c in enumerate_normalized(3, 30) {
            let chi = invariants(&c).euler;
            let d = c.degrees().to_vec();
            if d == [1] || d == [2] {
                assert_eq!(chi, BigInt::from(4));
            } else if d == [2, 2] {
                assert!(chi.is_zero());
            } else {
                assert!(chi < BigInt::zero(), "{c}: {chi}");
            }
        }
    }

    #[test]
    fn verdicts_ignore_order_and_padding() {
        assert_eq!(s1_verdict(&ci(3, &[2, 3])).admits, s1_verdict(&ci(3, &[3, 1, 2, 1])).admits);
        assert_eq!(s1_verdict(&ci(2, &[1, 1])).admits, Some(true));
    }
}
