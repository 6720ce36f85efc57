//! Linearized exact controls and Newton steering near eigensolutions.

mod derivative;
mod steering;
mod tangent;

pub use derivative::{endpoint_derivative_check, DerivativeCheck, DERIVATIVE_EPSILONS};
pub use steering::{steer, SteeringProblem, SteeringReport};
pub use tangent::{linearized_control, project_tangent, DEFECT_THRESHOLD};
