//! Exogenous model constants, inspection policies and solver settings.

use serde::{Deserialize, Serialize};

use crate::error::{check_positive, check_unit, Error, Result};

/// Death/replacement rate used when only the diffusion rate is supplied.
pub const CANONICAL_DELTA: f64 = 0.5;
/// Meetings per period used when only the diffusion rate is supplied.
pub const CANONICAL_K: f64 = 1.0;

/// Model constants.
///
/// `lambda` is always derived as `nu * k / delta`, so the three rates and the
/// diffusion rate can never disagree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    nu: f64,
    k: f64,
    delta: f64,
    lambda: f64,
    x: f64,
}

impl ModelParams {
    /// Builds parameters from the per-contact rate, meetings per period and
    /// the death rate. `x` is the mass of truth-biased agents.
    pub fn from_rates(nu: f64, k: f64, delta: f64, x: f64) -> Result<Self> {
        check_positive("nu", nu)?;
        check_positive("k", k)?;
        check_positive("delta", delta)?;
        check_unit("x", x)?;
        let lambda = nu * k / delta;
        check_positive("lambda", lambda)?;
        Ok(Self {
            nu,
            k,
            delta,
            lambda,
            x,
        })
    }

    /// Builds parameters from the diffusion rate alone, with `delta = 0.5`,
    /// `k = 1` and `nu = lambda * delta / k`. Steady states depend only on
    /// `lambda`; the choice of `delta` only sets the time unit.
    pub fn from_lambda(lambda: f64, x: f64) -> Result<Self> {
        check_positive("lambda", lambda)?;
        Self::from_rates(
            lambda * CANONICAL_DELTA / CANONICAL_K,
            CANONICAL_K,
            CANONICAL_DELTA,
            x,
        )
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    /// Contact rate `k * nu` at which a susceptible hears a believer.
    pub fn contact_rate(&self) -> f64 {
        self.k * self.nu
    }

    /// Multiplies `nu` and `delta` by `factor`. The diffusion rate, and hence
    /// every steady state, is unchanged; only the clock runs faster.
    pub fn rescale_time(&self, factor: f64) -> Result<Self> {
        check_positive("factor", factor)?;
        Self::from_rates(self.nu * factor, self.k, self.delta * factor, self.x)
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Self::from_lambda(lambda, self.x)
    }

    pub fn with_x(&self, x: f64) -> Result<Self> {
        Self::from_rates(self.nu, self.k, self.delta, x)
    }
}

/// An inspection policy: the fraction of agents who inspect the messages
/// they receive, either common to both types or set per type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Allocation {
    Uniform { alpha: f64 },
    Targeted { alpha0: f64, alpha1: f64 },
}

impl Allocation {
    pub fn uniform(alpha: f64) -> Result<Self> {
        check_unit("alpha", alpha)?;
        Ok(Allocation::Uniform { alpha })
    }

    pub fn targeted(alpha0: f64, alpha1: f64) -> Result<Self> {
        check_unit("alpha0", alpha0)?;
        check_unit("alpha1", alpha1)?;
        Ok(Allocation::Targeted { alpha0, alpha1 })
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Allocation::Uniform { alpha } => check_unit("alpha", alpha),
            Allocation::Targeted { alpha0, alpha1 } => {
                check_unit("alpha0", alpha0)?;
                check_unit("alpha1", alpha1)
            }
        }
    }

    /// Inspection rate among truth-biased (type-0) agents.
    pub fn alpha0(&self) -> f64 {
        match *self {
            Allocation::Uniform { alpha } => alpha,
            Allocation::Targeted { alpha0, .. } => alpha0,
        }
    }

    /// Inspection rate among rumor-biased (type-1) agents.
    pub fn alpha1(&self) -> f64 {
        match *self {
            Allocation::Uniform { alpha } => alpha,
            Allocation::Targeted { alpha1, .. } => alpha1,
        }
    }

    /// Population mass of inspecting agents, `x*alpha0 + (1-x)*alpha1`.
    /// With unit cost this is also the budget the policy spends.
    pub fn inspection_mass(&self, x: f64) -> f64 {
        match *self {
            Allocation::Uniform { alpha } => alpha,
            Allocation::Targeted { alpha0, alpha1 } => x * alpha0 + (1.0 - x) * alpha1,
        }
    }

    /// The same policy written with per-type rates.
    pub fn to_targeted(&self) -> Self {
        Allocation::Targeted {
            alpha0: self.alpha0(),
            alpha1: self.alpha1(),
        }
    }
}

/// Settings for the fixed-point solver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Absolute width at which the bisection bracket is accepted.
    pub tol: f64,
    pub max_iter: usize,
    /// Prevalences at or below this value are reported as exactly zero.
    pub clamp_eps: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol: 1e-12,
            max_iter: 200,
            clamp_eps: 0.0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        check_positive("tol", self.tol)?;
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter {
                name: "max_iter",
                value: 0.0,
                reason: "must be at least 1",
            });
        }
        if self.clamp_eps.is_nan() || self.clamp_eps < 0.0 {
            return Err(Error::InvalidParameter {
                name: "clamp_eps",
                value: self.clamp_eps,
                reason: "must be non-negative",
            });
        }
        Ok(())
    }

    pub(crate) fn clamp(&self, value: f64) -> f64 {
        if value <= self.clamp_eps {
            0.0
        } else {
            value
        }
    }
}
