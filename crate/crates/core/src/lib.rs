//! Mean-field SIS diffusion of a true and a false message when agents are
//! biased towards one of them and a fraction of agents inspects what they
//! receive.
//!
//! - [`steady`]: closed-form rumor prevalence and the truth fixed point.
//! - [`dynamics`]: RK4 integration of the group fractions and a multi-start
//!   stability check.
//! - [`planner`]: budgeted inspection policies and their thresholds.

pub mod dynamics;
pub mod error;
pub mod numeric;
pub mod params;
pub mod planner;
pub mod steady;

pub use dynamics::{
    derivatives, integrate, verify_global_stability, DynState, IntegratorConfig, StabilityReport,
    Termination, Trajectory,
};
pub use error::{Error, Result};
pub use params::{Allocation, ModelParams, SolverConfig};
pub use planner::{
    compute_thresholds, maximize_platform, maximize_truth_targeted, maximize_truth_uniform, minimize_rumor,
    optimize, Budget, Objective, OptResult, OptimizerConfig, Thresholds,
};
pub use steady::{
    eradication_threshold, full_steady_state, rumor_steady_state, total_prevalence_map, truth_map,
    truth_steady_state, SteadyState,
};
