//! Steady states of the truth/rumor diffusion.
//!
//! The rumor spreads only among non-inspecting rumor-biased agents, so its
//! prevalence has a closed form and does not depend on the truth. The truth
//! is fed both by truth-biased agents and by inspectors who hear either
//! message; its prevalence is the fixed point of a concave map and is found
//! by bisection whenever the rumor is endemic.

use serde::{Deserialize, Serialize};

use crate::error::{check_unit, Error, Result};
use crate::numeric::bisect;
use crate::params::{Allocation, ModelParams, SolverConfig};

/// Solved prevalence bundle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteadyState {
    /// Fraction of the population believing the truth.
    pub theta0: f64,
    /// Fraction of the population believing the rumor.
    pub theta1: f64,
    /// Total prevalence, `theta0 + theta1`.
    pub theta: f64,
    /// Believing-truth fraction among inspecting truth-biased agents.
    pub rho_00_a: f64,
    /// Believing-truth fraction among inspecting rumor-biased agents.
    pub rho_10_a: f64,
    /// Believing-truth fraction among non-inspecting truth-biased agents.
    pub rho_00_na: f64,
    /// Believing-rumor fraction among non-inspecting rumor-biased agents.
    pub rho_11_na: f64,
}

impl SteadyState {
    pub fn rumor_eradicated(&self) -> bool {
        self.theta1 == 0.0
    }
}

/// `lambda*s / (1 + lambda*s)`, the believing fraction of a group exposed to
/// prevalence `s`.
pub(crate) fn saturation(lambda: f64, s: f64) -> f64 {
    lambda * s / (1.0 + lambda * s)
}

fn validate(p: &ModelParams, a: &Allocation) -> Result<()> {
    a.validate()?;
    check_unit("x", p.x())
}

/// Unclamped rumor level `(1-alpha1)(1-x) - 1/lambda`.
pub(crate) fn rumor_level(p: &ModelParams, alpha1: f64) -> f64 {
    (1.0 - alpha1) * (1.0 - p.x()) - 1.0 / p.lambda()
}

/// Steady-state rumor prevalence, `max(0, (1-alpha1)(1-x) - 1/lambda)`.
///
/// Only the rumor-biased inspection rate matters; in uniform mode that is
/// the common rate.
pub fn rumor_steady_state(p: &ModelParams, a: &Allocation) -> Result<f64> {
    validate(p, a)?;
    Ok(rumor_level(p, a.alpha1()).max(0.0))
}

/// Smallest inspection rate among rumor-biased agents that drives the rumor
/// extinct, `max(0, 1 - 1/(lambda(1-x)))`. Zero when the rumor can never be
/// endemic, including `x = 1`.
pub fn eradication_threshold(p: &ModelParams) -> f64 {
    let reach = p.lambda() * (1.0 - p.x());
    if reach <= 1.0 {
        0.0
    } else {
        1.0 - 1.0 / reach
    }
}

/// The map whose fixed point is the truth prevalence:
///
/// `H(theta0) = m * sat(theta0 + theta1) + x(1 - alpha0) * sat(theta0)`
///
/// with `m = x*alpha0 + (1-x)*alpha1` the inspecting mass.
pub fn truth_map(theta0: f64, theta1: f64, p: &ModelParams, a: &Allocation) -> Result<f64> {
    check_unit("theta0", theta0)?;
    check_unit("theta1", theta1)?;
    validate(p, a)?;
    Ok(truth_map_unchecked(theta0, theta1, p, a))
}

pub(crate) fn truth_map_unchecked(theta0: f64, theta1: f64, p: &ModelParams, a: &Allocation) -> f64 {
    let l = p.lambda();
    let x = p.x();
    a.inspection_mass(x) * saturation(l, theta0 + theta1) + x * (1.0 - a.alpha0()) * saturation(l, theta0)
}

/// Truth prevalence once the rumor is extinct: `x + (1-x)*alpha1 - 1/lambda`,
/// clamped at zero. `alpha0` plays no role here.
fn truth_without_rumor(p: &ModelParams, a: &Allocation, cfg: &SolverConfig) -> f64 {
    cfg.clamp(p.x() + (1.0 - p.x()) * a.alpha1() - 1.0 / p.lambda())
}

/// Solves `theta0 = H(theta0)` treating the rumor prevalence as given.
///
/// For `theta1 > 0` and a positive inspecting mass, `H(0) > 0` and
/// `H(1) < 1`; concavity makes the positive crossing unique, so bisection
/// on `[0, 1]` is safe.
pub fn solve_truth_given_rumor(
    theta1: f64,
    p: &ModelParams,
    a: &Allocation,
    cfg: &SolverConfig,
) -> Result<f64> {
    check_unit("theta1", theta1)?;
    validate(p, a)?;
    cfg.validate()?;
    if theta1 == 0.0 {
        return Ok(truth_without_rumor(p, a, cfg));
    }
    if a.inspection_mass(p.x()) == 0.0 {
        // Nobody inspects: truth-biased agents form a plain SIS subsystem.
        return Ok(cfg.clamp(p.x() - 1.0 / p.lambda()));
    }
    let gap = |s: f64| s - truth_map_unchecked(s, theta1, p, a);
    let root = bisect(gap, 0.0, 1.0, cfg.tol, cfg.max_iter)?;
    Ok(cfg.clamp(root))
}

/// True when `alpha1` sits at or within `tol` below the eradication
/// threshold, where the rumor is treated as extinct.
fn rumor_treated_extinct(p: &ModelParams, a: &Allocation, cfg: &SolverConfig) -> bool {
    let threshold = eradication_threshold(p);
    threshold == 0.0 || a.alpha1() >= threshold - cfg.tol
}

fn effective_rumor(p: &ModelParams, a: &Allocation, cfg: &SolverConfig) -> Result<f64> {
    let theta1 = rumor_steady_state(p, a)?;
    if rumor_treated_extinct(p, a, cfg) {
        Ok(0.0)
    } else {
        Ok(cfg.clamp(theta1))
    }
}

/// Steady-state truth prevalence.
pub fn truth_steady_state(p: &ModelParams, a: &Allocation, cfg: &SolverConfig) -> Result<f64> {
    cfg.validate()?;
    let theta1 = effective_rumor(p, a, cfg)?;
    solve_truth_given_rumor(theta1, p, a, cfg)
}

/// Group-level prevalences recomposed from the believing fractions:
/// returns `(theta0, theta1)`.
pub fn recompose(ss: &SteadyState, p: &ModelParams, a: &Allocation) -> (f64, f64) {
    let x = p.x();
    let (a0, a1) = (a.alpha0(), a.alpha1());
    let theta0 = x * (a0 * ss.rho_00_a + (1.0 - a0) * ss.rho_00_na) + (1.0 - x) * a1 * ss.rho_10_a;
    let theta1 = (1.0 - x) * (1.0 - a1) * ss.rho_11_na;
    (theta0, theta1)
}

/// Residual allowed between solved prevalences and their recomposition.
pub const RECOMPOSITION_TOL: f64 = 1e-9;

/// Full steady state: both prevalences and the four believing fractions.
pub fn full_steady_state(p: &ModelParams, a: &Allocation, cfg: &SolverConfig) -> Result<SteadyState> {
    cfg.validate()?;
    let theta1 = effective_rumor(p, a, cfg)?;
    let theta0 = solve_truth_given_rumor(theta1, p, a, cfg)?;
    let theta = theta0 + theta1;
    let l = p.lambda();
    let inspected = saturation(l, theta);
    let ss = SteadyState {
        theta0,
        theta1,
        theta,
        rho_00_a: inspected,
        rho_10_a: inspected,
        rho_00_na: saturation(l, theta0),
        rho_11_na: saturation(l, theta1),
    };
    let (r0, r1) = recompose(&ss, p, a);
    let residual = (r0 - theta0).abs().max((r1 - theta1).abs());
    if residual > RECOMPOSITION_TOL.max(cfg.tol) {
        return Err(Error::Recomposition { residual });
    }
    Ok(ss)
}

/// Evaluates the total-prevalence map
///
/// `m * sat(theta) + x(1 - alpha0) * sat(theta0*) + theta1*`
///
/// at `theta`, where `theta0*` and `theta1*` are the solved steady state.
/// The solved total prevalence is a fixed point of this map.
pub fn total_prevalence_map(theta: f64, p: &ModelParams, a: &Allocation, cfg: &SolverConfig) -> Result<f64> {
    check_unit("theta", theta)?;
    let ss = full_steady_state(p, a, cfg)?;
    let l = p.lambda();
    let x = p.x();
    Ok(a.inspection_mass(x) * saturation(l, theta)
        + x * (1.0 - a.alpha0()) * saturation(l, ss.theta0)
        + ss.theta1)
}

/// Minimum uniform inspection rate for the truth to survive once the rumor
/// is gone, under two readings of the written condition
/// `alpha > 1/(1-x)[1/lambda - x]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruthSurvival {
    /// `(1/lambda - x) / (1 - x)`; the reading consistent with the no-rumor
    /// closed form. `None` when `x = 1`.
    pub ratio_reading: Option<f64>,
    /// `1 / ((1 - x)(1/lambda - x))`. `None` when the denominator vanishes.
    pub reciprocal_reading: Option<f64>,
}

pub fn truth_survival_thresholds(p: &ModelParams) -> TruthSurvival {
    let x = p.x();
    let gap = 1.0 / p.lambda() - x;
    let ratio_reading = (x < 1.0).then(|| gap / (1.0 - x));
    let denom = (1.0 - x) * gap;
    let reciprocal_reading = (denom != 0.0).then(|| 1.0 / denom);
    TruthSurvival {
        ratio_reading,
        reciprocal_reading,
    }
}
