//! Equivariant localization for circle actions on 6-manifolds `M` with
//! `H^*(M)` like a complete intersection threefold: local data of fixed
//! components, the constraints they must satisfy, and a bounded search over
//! candidate fixed point sets.

mod config;
mod linear;
mod local_data;
mod search;
mod verify;

use thiserror::Error;

pub use config::{
    shift_lift, AmbientData, ComponentKind, ConfigError, Configuration, FixedComponent, Flags, FourComponent,
    PointComponent, SurfaceComponent, Template,
};
pub use local_data::{p1x_local_datum, signature_local_datum, x3_local_datum};
pub use search::{search_case, SearchBounds, SearchError, SearchOptions, SearchOutcome, SearchRanges};
pub use verify::{
    check_codim_two_pontryagin, check_euler, check_euler_range, check_p1x, check_signature_rigidity, check_x3,
    signature_checks, sum_p1x, sum_x3, verify_case, CheckResult, Residual, VerificationReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalizationError {
    #[error("no equivariant signature datum for 4-dimensional fixed components")]
    UnsupportedComponent,
}
