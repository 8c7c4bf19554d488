use thiserror::Error;

/// Errors raised by the model, the solvers and the integrator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The bisection bracket did not shrink below the tolerance in time.
    #[error("fixed-point solver did not converge after {iterations} iterations (last bracket [{lo}, {hi}])")]
    NoConvergence { lo: f64, hi: f64, iterations: usize },

    #[error("infeasible allocation: alpha0 = {alpha0}, alpha1 = {alpha1} for budget {budget}")]
    Infeasible { alpha0: f64, alpha1: f64, budget: f64 },

    /// Solved prevalences do not reproduce themselves through the group fractions.
    #[error("steady state fails recomposition check (residual {residual:e})")]
    Recomposition { residual: f64 },

    #[error("integrator left the unit interval at t = {t} ({coordinate} = {value}, dt = {dt}); retry with a smaller dt")]
    Unstable {
        t: f64,
        dt: f64,
        coordinate: &'static str,
        value: f64,
    },
}

impl Error {
    /// True for failures of a numerical procedure, as opposed to bad inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. } | Error::Recomposition { .. } | Error::Unstable { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must lie in [0, 1]",
        })
    }
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and strictly positive",
        })
    }
}
