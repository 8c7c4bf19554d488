//! Polynomial form of the targeted steady-state condition.
//!
//! With the budget binding, `theta0 = H(theta0)` multiplied through by
//! `(1 + l(theta0 + theta1))(1 + l*theta0)` is a cubic in `theta0`:
//!
//! ```text
//! c3 = l^2
//! c2 = l (2 + l*theta1 - l*q)
//! c1 = (1 + l*theta1)(1 - l*q)
//! c0 = -A * l * theta1
//! ```
//!
//! where `q = x + (1-x)*alpha1` and `theta1 = (1-alpha1)(1-x) - 1/l` is left
//! unclamped. For `theta1 >= 0` the coefficients change sign at most once, so
//! there is at most one positive root.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::bisect;
use crate::params::ModelParams;
use crate::steady::rumor_level;

use super::Budget;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicConstraint {
    pub c3: f64,
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

/// Coefficients as written in closed form in terms of the budget and
/// `alpha0` (`B`, `C`, `D`), and the rescaled forms (`b`, `c`, `d`) that
/// accompany them. Kept only to be compared against the derived cubic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrintedCoefficients {
    pub b_upper: f64,
    pub c_upper: f64,
    pub d_upper: f64,
    pub b_lower: f64,
    pub c_lower: f64,
    pub d_lower: f64,
    /// Largest difference between `(B, C, D)` and `(c2, c1, c0)`.
    pub upper_mismatch: f64,
    /// Largest difference between `(b, c, d)` and `(c2, c1, c0) / l^2`.
    pub lower_mismatch: f64,
}

/// Implied rumor-group rate on the binding budget line, validated.
fn implied_alpha1(p: &ModelParams, budget: Budget, alpha0: f64) -> Result<f64> {
    let x = p.x();
    let infeasible = Error::Infeasible {
        alpha0,
        alpha1: f64::NAN,
        budget: budget.amount(),
    };
    if !(0.0..=1.0).contains(&alpha0) || x >= 1.0 {
        return Err(infeasible);
    }
    let alpha1 = (budget.amount() - x * alpha0) / (1.0 - x);
    if !(0.0..=1.0).contains(&alpha1) {
        return Err(Error::Infeasible {
            alpha0,
            alpha1,
            budget: budget.amount(),
        });
    }
    Ok(alpha1)
}

/// Cubic whose positive root is the truth prevalence at
/// `(alpha0, (A - x*alpha0)/(1-x))`.
pub fn cubic_coefficients(p: &ModelParams, budget: Budget, alpha0: f64) -> Result<CubicConstraint> {
    let alpha1 = implied_alpha1(p, budget, alpha0)?;
    let l = p.lambda();
    let theta1 = rumor_level(p, alpha1);
    let q = p.x() + (1.0 - p.x()) * alpha1;
    Ok(CubicConstraint {
        c3: l * l,
        c2: l * (2.0 + l * theta1 - l * q),
        c1: (1.0 + l * theta1) * (1.0 - l * q),
        c0: -budget.amount() * l * theta1,
    })
}

/// Evaluates the closed-form coefficients and their mismatch with
/// [`cubic_coefficients`].
pub fn printed_coefficients(p: &ModelParams, budget: Budget, alpha0: f64) -> Result<PrintedCoefficients> {
    let derived = cubic_coefficients(p, budget, alpha0)?;
    let alpha1 = implied_alpha1(p, budget, alpha0)?;
    let (l, x, a) = (p.lambda(), p.x(), budget.amount());
    let theta1 = rumor_level(p, alpha1);

    let b_upper = l * (1.0 + l - 2.0 * a * l - 2.0 * l * x + 2.0 * alpha0 * l * x);
    let c_upper = l * (1.0 - a - x * (1.0 - alpha0)) * (1.0 - a * l - l * x + alpha0 * l * x);
    let d_upper = a * (1.0 - l + l * a + l * x - alpha0 * l * x);
    let b_lower = -(2.0 * alpha1 * (1.0 - x) + 2.0 * x - 1.0 - 1.0 / l) / (l * l);
    let c_lower = -(1.0 - alpha1) * (1.0 - x) * (alpha1 * (1.0 - x) + x - 1.0 / l) / (l * l);
    let d_lower = -theta1 / l;

    let l2 = l * l;
    let upper_mismatch = (b_upper - derived.c2)
        .abs()
        .max((c_upper - derived.c1).abs())
        .max((d_upper - derived.c0).abs());
    let lower_mismatch = (b_lower - derived.c2 / l2)
        .abs()
        .max((c_lower - derived.c1 / l2).abs())
        .max((d_lower - derived.c0 / l2).abs());
    Ok(PrintedCoefficients {
        b_upper,
        c_upper,
        d_upper,
        b_lower,
        c_lower,
        d_lower,
        upper_mismatch,
        lower_mismatch,
    })
}

impl CubicConstraint {
    pub fn eval(&self, s: f64) -> f64 {
        ((self.c3 * s + self.c2) * s + self.c1) * s + self.c0
    }

    /// `|p(s)| / |c3|`.
    pub fn normalized_residual(&self, s: f64) -> f64 {
        (self.eval(s) / self.c3).abs()
    }

    /// Sign changes in `(c3, c2, c1, c0)`, zeros skipped. By Descartes' rule
    /// this bounds the number of positive roots.
    pub fn sign_changes(&self) -> usize {
        let signs: Vec<bool> = [self.c3, self.c2, self.c1, self.c0]
            .iter()
            .filter(|c| **c != 0.0)
            .map(|c| *c > 0.0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Real roots in `(0, inf)`, ascending.
    ///
    /// The positive axis is cut at the real critical points into pieces on
    /// which the cubic is monotone; each piece with a sign change holds one
    /// root, found by bisection to machine precision.
    pub fn positive_roots(&self) -> Vec<f64> {
        if self.c3 == 0.0 {
            return Vec::new();
        }
        let (a, b, c) = (self.c2 / self.c3, self.c1 / self.c3, self.c0 / self.c3);
        // Cauchy bound on root magnitudes.
        let bound = 1.0 + a.abs().max(b.abs()).max(c.abs());

        let mut cuts = vec![0.0];
        // p'(s) / c3 = 3s^2 + 2a s + b
        let disc = a * a - 3.0 * b;
        if disc >= 0.0 {
            let r = disc.sqrt();
            let mut crit = [(-a - r) / 3.0, (-a + r) / 3.0];
            crit.sort_by(f64::total_cmp);
            cuts.extend(crit.into_iter().filter(|&s| s > 0.0 && s < bound));
        }
        cuts.push(bound);

        let f = |s: f64| ((s + a) * s + b) * s + c;
        let mut roots = Vec::new();
        for w in cuts.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let (flo, fhi) = (f(lo), f(hi));
            if fhi == 0.0 && hi < bound {
                roots.push(hi);
                continue;
            }
            if flo.signum() == fhi.signum() || flo == 0.0 {
                continue;
            }
            let oriented = |s: f64| if flo < 0.0 { f(s) } else { -f(s) };
            if let Ok(r) = bisect(oriented, lo, hi, 0.0, 2000) {
                roots.push(r);
            }
        }
        roots.dedup();
        roots
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::{Allocation, SolverConfig};
    use crate::steady::truth_steady_state;

    #[test]
    fn residual_at_bisection_root() {
        let p = ModelParams::from_lambda(2.0, 0.3).unwrap();
        let budget = Budget::new(0.2).unwrap();
        let cubic = cubic_coefficients(&p, budget, 0.1).unwrap();
        let alpha1 = (0.2 - 0.3 * 0.1) / 0.7;
        let a = Allocation::targeted(0.1, alpha1).unwrap();
        let root = truth_steady_state(&p, &a, &SolverConfig::default()).unwrap();
        assert!(root > 0.0);
        assert!(cubic.normalized_residual(root) < 1e-8);
        let roots = cubic.positive_roots();
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - root).abs() < 1e-10);
        assert_eq!(cubic.sign_changes(), 1);
    }

    #[test]
    fn degenerates_to_linear_form_at_eradication() {
        // alpha0 = 0 with A = (1-x)*alpha' puts alpha1 on the threshold.
        let p = ModelParams::from_lambda(4.0, 0.3).unwrap();
        let alpha_prime = 1.0 - 1.0 / (4.0 * 0.7);
        let budget = Budget::new(0.7 * alpha_prime).unwrap();
        let cubic = cubic_coefficients(&p, budget, 0.0).unwrap();
        assert!(cubic.c0.abs() < 1e-14);
        let roots = cubic.positive_roots();
        let expected = 0.3 + 0.7 * alpha_prime - 0.25;
        assert!(roots.iter().any(|r| (r - expected).abs() < 1e-9), "{roots:?}");
    }

    #[test]
    fn infeasible_pairs_are_rejected() {
        let p = ModelParams::from_lambda(2.0, 0.3).unwrap();
        assert!(matches!(
            cubic_coefficients(&p, Budget::new(0.05).unwrap(), 0.5),
            Err(Error::Infeasible { .. })
        ));
        assert!(cubic_coefficients(&p, Budget::new(0.9).unwrap(), 0.0).is_err());
        let all_type0 = ModelParams::from_lambda(2.0, 1.0).unwrap();
        assert!(cubic_coefficients(&all_type0, Budget::new(0.5).unwrap(), 0.5).is_err());
    }

    #[test]
    fn printed_upper_forms_agree() {
        let p = ModelParams::from_lambda(2.5, 0.4).unwrap();
        let pc = printed_coefficients(&p, Budget::new(0.2).unwrap(), 0.2).unwrap();
        assert!(pc.upper_mismatch < 1e-12, "{pc:?}");
        assert!(pc.lower_mismatch > 1e-3, "{pc:?}");
    }

    #[test]
    fn roots_of_known_cubic() {
        // (s - 0.5)(s + 1)(s + 2) = s^3 + 2.5 s^2 + 0.5 s - 1
        let c = CubicConstraint {
            c3: 1.0,
            c2: 2.5,
            c1: 0.5,
            c0: -1.0,
        };
        let r = c.positive_roots();
        assert_eq!(r.len(), 1);
        assert!((r[0] - 0.5).abs() < 1e-14);
        // (s - 0.2)(s - 0.7)(s - 3)
        let c = CubicConstraint {
            c3: 1.0,
            c2: -3.9,
            c1: 0.14 + 0.6 + 2.1,
            c0: -0.42,
        };
        let r = c.positive_roots();
        assert_eq!(r.len(), 3);
        for (got, want) in r.iter().zip([0.2, 0.7, 3.0]) {
            assert!((got - want).abs() < 1e-12, "{r:?}");
        }
        assert_eq!(c.sign_changes(), 3);
    }
}
