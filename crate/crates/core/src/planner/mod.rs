//! Budgeted choice of inspection rates.
//!
//! Four objectives are supported: minimizing the rumor, maximizing the
//! truth with a common rate, maximizing the truth with per-type rates, and
//! maximizing total message volume (the platform's goal). Inspection costs
//! one unit per unit of population mass.
//!
//! Truth prevalence is not monotone in the inspection rate (it has a kink
//! at the eradication threshold and may have an interior peak below it), so
//! the optimizers scan a dense grid and then refine the best cell with a
//! golden-section search.

mod cubic;

pub use cubic::{cubic_coefficients, printed_coefficients, CubicConstraint, PrintedCoefficients};

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::golden_section_max;
use crate::params::{Allocation, ModelParams, SolverConfig};
use crate::steady::{
    eradication_threshold, full_steady_state, rumor_steady_state, truth_survival_thresholds, SteadyState,
    TruthSurvival,
};

/// Total inspection budget, in population-mass units.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Budget(f64);

impl Budget {
    pub fn new(amount: f64) -> Result<Self> {
        if amount >= 0.0 && amount.is_finite() {
            Ok(Budget(amount))
        } else {
            Err(Error::InvalidParameter {
                name: "A",
                value: amount,
                reason: "budget must be finite and non-negative",
            })
        }
    }

    pub fn amount(&self) -> f64 {
        self.0
    }

    /// The most that can usefully be spent: everyone inspecting costs 1.
    pub fn usable(&self) -> f64 {
        self.0.min(1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    /// Minimize rumor prevalence with a common rate.
    RumorMin,
    /// Maximize truth prevalence with a common rate.
    Truth,
    /// Maximize truth prevalence with per-type rates.
    TruthTargeted,
    /// Maximize total prevalence with a common rate.
    Platform,
}

impl Objective {
    pub fn name(&self) -> &'static str {
        match self {
            Objective::RumorMin => "rumor-min",
            Objective::Truth => "truth",
            Objective::TruthTargeted => "truth-targeted",
            Objective::Platform => "platform",
        }
    }
}

/// Closed-form and numerically located thresholds for one parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Rate that exactly eradicates the rumor.
    pub alpha_prime: f64,
    /// `2 + sqrt(2 - 1/(1-x))`: below it, eradicating the rumor with a budget
    /// that just suffices lowers the truth. `None` for `x > 0.5`, where the
    /// root is imaginary, and for `x = 1`.
    pub lambda_bar: Option<f64>,
    /// Diffusion rates at which a planner able to eradicate the rumor through
    /// group 1 prefers to fund group 0 instead. `None` when `(4-x)^2 < 12`.
    pub eradication_interval: Option<(f64, f64)>,
    pub truth_survival: TruthSurvival,
    /// Lower end of the budget range where the truth-maximizing planner
    /// leaves money unspent.
    pub a_lower: Option<f64>,
    /// Upper end of that range.
    pub a_upper: Option<f64>,
    /// Budget above which the platform spends everything.
    pub a_tilde: Option<f64>,
}

impl Thresholds {
    /// Thresholds with closed forms; the budget thresholds are left unset.
    pub fn closed_form(p: &ModelParams) -> Self {
        Self {
            alpha_prime: eradication_threshold(p),
            lambda_bar: lambda_bar(p.x()),
            eradication_interval: eradication_interval(p.x()),
            truth_survival: truth_survival_thresholds(p),
            a_lower: None,
            a_upper: None,
            a_tilde: None,
        }
    }
}

pub fn lambda_bar(x: f64) -> Option<f64> {
    if x >= 1.0 {
        return None;
    }
    let radicand = 2.0 - 1.0 / (1.0 - x);
    (radicand >= 0.0).then(|| 2.0 + radicand.sqrt())
}

pub fn eradication_interval(x: f64) -> Option<(f64, f64)> {
    let b = 4.0 - x;
    let disc = b * b - 12.0;
    if disc < 0.0 {
        return None;
    }
    let r = disc.sqrt();
    Some(((b - r) / 2.0, (b + r) / 2.0))
}

/// Optimizer settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub grid_points: usize,
    /// Width at which golden-section refinement stops.
    pub refine_tol: f64,
    /// Objective values within this of the best count as ties; ties go to
    /// the cheaper policy.
    pub tie_tol: f64,
    /// Budgets scanned when locating the slack region.
    pub budget_scan_points: usize,
    /// Resolution of the budget-threshold bisection.
    pub threshold_resolution: f64,
    pub solver: SolverConfig,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            grid_points: 2001,
            refine_tol: 1e-10,
            tie_tol: 1e-10,
            budget_scan_points: 201,
            threshold_resolution: 1e-6,
            solver: SolverConfig::default(),
        }
    }
}

/// Spend below `min(A, 1)` by more than this counts as leaving budget unused.
pub const SLACK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptResult {
    pub objective_kind: Objective,
    pub allocation: Allocation,
    /// Achieved objective: `theta1` for rumor minimization, `theta0` for the
    /// planner, `theta` for the platform.
    pub objective: f64,
    pub theta0: f64,
    pub theta1: f64,
    pub budget: f64,
    pub budget_spent: f64,
    pub slack: bool,
    pub rumor_eradicated: bool,
    /// Targeted problem with `A > x`, outside the regime where full spend is
    /// known to be optimal whenever the rumor survives.
    pub outside_regime: bool,
    pub diagnostics: Thresholds,
}

fn objective_value(kind: Objective, ss: &SteadyState) -> f64 {
    match kind {
        Objective::RumorMin => ss.theta1,
        Objective::Truth | Objective::TruthTargeted => ss.theta0,
        Objective::Platform => ss.theta,
    }
}

fn finish(
    kind: Objective,
    p: &ModelParams,
    budget: Budget,
    allocation: Allocation,
    solver: &SolverConfig,
) -> Result<OptResult> {
    let ss = full_steady_state(p, &allocation, solver)?;
    let budget_spent = allocation.inspection_mass(p.x());
    Ok(OptResult {
        objective_kind: kind,
        allocation,
        objective: objective_value(kind, &ss),
        theta0: ss.theta0,
        theta1: ss.theta1,
        budget: budget.amount(),
        budget_spent,
        slack: budget_spent < budget.usable() - SLACK_TOL,
        rumor_eradicated: ss.rumor_eradicated(),
        outside_regime: kind == Objective::TruthTargeted && budget.amount() > p.x(),
        diagnostics: Thresholds::closed_form(p),
    })
}

/// Rumor minimization: spend up to the eradication threshold and no more.
pub fn minimize_rumor(p: &ModelParams, budget: Budget, solver: &SolverConfig) -> Result<OptResult> {
    let alpha = budget.usable().min(eradication_threshold(p));
    finish(
        Objective::RumorMin,
        p,
        budget,
        Allocation::uniform(alpha)?,
        solver,
    )
}

#[derive(Debug, Clone, Copy)]
struct Evaluated {
    allocation: Allocation,
    value: f64,
    spend: f64,
}

/// Cheapest first, then the least spent on truth-biased agents. Spends
/// within `tol` of each other count as equal.
fn cheaper(a: &Evaluated, b: &Evaluated, tol: f64) -> Ordering {
    let by_spend = if (a.spend - b.spend).abs() <= tol {
        Ordering::Equal
    } else {
        a.spend.total_cmp(&b.spend)
    };
    by_spend.then(a.allocation.alpha0().total_cmp(&b.allocation.alpha0()))
}

fn pick_best(cands: &[Evaluated], tie_tol: f64) -> Evaluated {
    let best = cands.iter().map(|c| c.value).fold(f64::NEG_INFINITY, f64::max);
    *cands
        .iter()
        .filter(|c| c.value >= best - tie_tol)
        .min_by(|a, b| cheaper(a, b, tie_tol))
        .expect("candidate list is never empty")
}

/// Scans `param` over `[lo, hi]`, refines around the best grid point and
/// returns every evaluated candidate.
fn scan_and_refine<M>(lo: f64, hi: f64, cfg: &OptimizerConfig, eval: M) -> Result<Vec<Evaluated>>
where
    M: Fn(f64) -> Result<Evaluated> + Sync,
{
    let n = if hi > lo { cfg.grid_points.max(2) } else { 1 };
    let step = if n > 1 { (hi - lo) / (n - 1) as f64 } else { 0.0 };
    let at = |i: usize| if i + 1 == n { hi } else { lo + step * i as f64 };
    let mut cands = (0..n)
        .into_par_iter()
        .map(|i| eval(at(i)))
        .collect::<Result<Vec<_>>>()?;
    if n > 1 {
        let best = cands
            .iter()
            .enumerate()
            .fold(0, |b, (i, c)| if c.value > cands[b].value { i } else { b });
        let (a, b) = (at(best.saturating_sub(1)), at((best + 1).min(n - 1)));
        let (arg, _) = golden_section_max(|t| eval(t).map(|c| c.value), a, b, cfg.refine_tol)?;
        cands.push(eval(arg)?);
    }
    Ok(cands)
}

fn uniform_optimum(
    kind: Objective,
    p: &ModelParams,
    budget: Budget,
    cfg: &OptimizerConfig,
) -> Result<OptResult> {
    let solver = cfg.solver;
    let eval = |alpha: f64| -> Result<Evaluated> {
        let allocation = Allocation::uniform(alpha.clamp(0.0, 1.0))?;
        let ss = full_steady_state(p, &allocation, &solver)?;
        Ok(Evaluated {
            allocation,
            value: objective_value(kind, &ss),
            spend: allocation.inspection_mass(p.x()),
        })
    };
    let cands = scan_and_refine(0.0, budget.usable(), cfg, eval)?;
    let best = pick_best(&cands, cfg.tie_tol);
    finish(kind, p, budget, best.allocation, &solver)
}

/// Truth maximization with a common inspection rate.
pub fn maximize_truth_uniform(p: &ModelParams, budget: Budget, cfg: &OptimizerConfig) -> Result<OptResult> {
    uniform_optimum(Objective::Truth, p, budget, cfg)
}

/// Total-volume maximization with a common inspection rate.
pub fn maximize_platform(p: &ModelParams, budget: Budget, cfg: &OptimizerConfig) -> Result<OptResult> {
    uniform_optimum(Objective::Platform, p, budget, cfg)
}

/// Truth maximization with per-type rates under `x*alpha0 + (1-x)*alpha1 <= A`.
///
/// Scans the segment where the budget binds, parametrized by `alpha1`, and
/// also weighs zero spending and spending only on rumor-biased agents; the
/// latter two matter once the rumor is extinct, when `alpha0` no longer
/// affects the truth.
pub fn maximize_truth_targeted(p: &ModelParams, budget: Budget, cfg: &OptimizerConfig) -> Result<OptResult> {
    let x = p.x();
    let amount = budget.amount();
    let solver = cfg.solver;
    let eval_alloc = |alpha0: f64, alpha1: f64| -> Result<Evaluated> {
        let allocation = Allocation::targeted(alpha0.clamp(0.0, 1.0), alpha1.clamp(0.0, 1.0))?;
        let ss = full_steady_state(p, &allocation, &solver)?;
        Ok(Evaluated {
            allocation,
            value: ss.theta0,
            spend: allocation.inspection_mass(x),
        })
    };

    let mut cands = if x == 0.0 {
        vec![eval_alloc(0.0, budget.usable())?]
    } else if x == 1.0 {
        vec![eval_alloc(budget.usable(), 0.0)?]
    } else {
        let lo = ((amount - x) / (1.0 - x)).clamp(0.0, 1.0);
        let hi = (amount / (1.0 - x)).clamp(0.0, 1.0);
        let alpha0_of = |alpha1: f64| ((amount - (1.0 - x) * alpha1) / x).clamp(0.0, 1.0);
        let mut c = scan_and_refine(lo, hi, cfg, |a1| eval_alloc(alpha0_of(a1), a1))?;
        c.push(eval_alloc(0.0, hi)?);
        c
    };
    cands.push(eval_alloc(0.0, 0.0)?);
    let best = pick_best(&cands, cfg.tie_tol);
    finish(Objective::TruthTargeted, p, budget, best.allocation, &solver)
}

/// Runs the optimizer for `kind`.
pub fn optimize(
    kind: Objective,
    p: &ModelParams,
    budget: Budget,
    cfg: &OptimizerConfig,
) -> Result<OptResult> {
    match kind {
        Objective::RumorMin => minimize_rumor(p, budget, &cfg.solver),
        Objective::Truth => maximize_truth_uniform(p, budget, cfg),
        Objective::TruthTargeted => maximize_truth_targeted(p, budget, cfg),
        Objective::Platform => maximize_platform(p, budget, cfg),
    }
}

/// Whether truth prevalence is locally increasing in the common rate:
///
/// `[1+l*theta] * [theta0(1-x)(1+l*theta) + theta1] > alpha(1-x)(1+l*theta0)`
pub fn marginal_condition_uniform(p: &ModelParams, a: &Allocation, ss: &SteadyState) -> bool {
    let l = p.lambda();
    let x = p.x();
    let total = 1.0 + l * (ss.theta0 + ss.theta1);
    let lhs = total * (ss.theta0 * (1.0 - x) * total + ss.theta1);
    let rhs = a.inspection_mass(x) * (1.0 - x) * (1.0 + l * ss.theta0);
    lhs > rhs
}

/// Whether moving budget into rumor-biased inspection raises the truth:
///
/// `theta0 * [1 + l(theta0 + theta1)]^2 > A(1 + l*theta0)`
pub fn marginal_condition_targeted(p: &ModelParams, budget: Budget, ss: &SteadyState) -> bool {
    let l = p.lambda();
    let total = 1.0 + l * (ss.theta0 + ss.theta1);
    ss.theta0 * total * total > budget.amount() * (1.0 + l * ss.theta0)
}

/// Budgets in `[0, 1]` where the optimizer for `kind` leaves money unspent,
/// as `(infimum, supremum)`. Located on a budget grid and sharpened by
/// bisection on the slack indicator; `None` if no scanned budget is slack.
pub fn slack_region(kind: Objective, p: &ModelParams, cfg: &OptimizerConfig) -> Result<Option<(f64, f64)>> {
    let n = cfg.budget_scan_points.max(2);
    let budget_at = |i: usize| i as f64 / (n - 1) as f64;
    let is_slack = |amount: f64| -> Result<bool> { Ok(optimize(kind, p, Budget::new(amount)?, cfg)?.slack) };
    let flags = (0..n)
        .into_par_iter()
        .map(|i| is_slack(budget_at(i)))
        .collect::<Result<Vec<_>>>()?;
    let (Some(first), Some(last)) = (flags.iter().position(|&s| s), flags.iter().rposition(|&s| s)) else {
        return Ok(None);
    };

    let sharpen = |mut outside: f64, mut inside: f64| -> Result<f64> {
        while (inside - outside).abs() > cfg.threshold_resolution {
            let mid = 0.5 * (inside + outside);
            if is_slack(mid)? {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        Ok(0.5 * (inside + outside))
    };
    let lower = if first == 0 {
        0.0
    } else {
        sharpen(budget_at(first - 1), budget_at(first))?
    };
    let upper = if last == n - 1 {
        1.0
    } else {
        sharpen(budget_at(last + 1), budget_at(last))?
    };
    Ok(Some((lower, upper)))
}

/// All thresholds, including the budget thresholds located numerically.
pub fn compute_thresholds(p: &ModelParams, cfg: &OptimizerConfig) -> Result<Thresholds> {
    let mut t = Thresholds::closed_form(p);
    if let Some((lo, hi)) = slack_region(Objective::Truth, p, cfg)? {
        t.a_lower = Some(lo);
        t.a_upper = Some(hi);
    }
    t.a_tilde = slack_region(Objective::Platform, p, cfg)?.map(|(_, hi)| hi);
    Ok(t)
}

/// `alpha0` above which a targeted optimum counts as funding truth-biased agents.
pub const DIVERSIFY_TOL: f64 = 1e-9;

/// Smallest and largest of `budgets` at which the targeted optimum funds
/// truth-biased inspection.
pub fn diversification_range(
    p: &ModelParams,
    budgets: &[f64],
    cfg: &OptimizerConfig,
) -> Result<Option<(f64, f64)>> {
    let hits = budgets
        .par_iter()
        .map(|&a| {
            Ok((
                a,
                maximize_truth_targeted(p, Budget::new(a)?, cfg)?
                    .allocation
                    .alpha0()
                    > DIVERSIFY_TOL,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let funded: Vec<f64> = hits.into_iter().filter(|&(_, d)| d).map(|(a, _)| a).collect();
    Ok(funded
        .iter()
        .copied()
        .fold(None, |acc: Option<(f64, f64)>, a| match acc {
            None => Some((a, a)),
            Some((lo, hi)) => Some((lo.min(a), hi.max(a))),
        }))
}

/// Smallest and largest of `lambdas` for which some budget in `budgets`
/// makes the targeted optimum fund truth-biased inspection.
pub fn diversification_lambda_range(
    x: f64,
    lambdas: &[f64],
    budgets: &[f64],
    cfg: &OptimizerConfig,
) -> Result<Option<(f64, f64)>> {
    let mut range: Option<(f64, f64)> = None;
    for &l in lambdas {
        let p = ModelParams::from_lambda(l, x)?;
        if diversification_range(&p, budgets, cfg)?.is_some() {
            range = Some(range.map_or((l, l), |(lo, hi)| (lo.min(l), hi.max(l))));
        }
    }
    Ok(range)
}

/// Rumor prevalence the rumor-minimizing planner reaches with budget `A`.
pub fn minimal_rumor(p: &ModelParams, budget: Budget) -> Result<f64> {
    rumor_steady_state(p, &Allocation::uniform(budget.usable())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steady::truth_steady_state;

    fn params(lambda: f64, x: f64) -> ModelParams {
        ModelParams::from_lambda(lambda, x).unwrap()
    }

    fn budget(a: f64) -> Budget {
        Budget::new(a).unwrap()
    }

    #[test]
    fn rumor_min_examples() {
        let s = SolverConfig::default();
        let r = minimize_rumor(&params(2.0, 0.3), budget(0.5), &s).unwrap();
        assert!((r.allocation.alpha0() - 2.0 / 7.0).abs() < 1e-15);
        assert!(r.rumor_eradicated && r.slack);

        let r = minimize_rumor(&params(2.0, 0.3), budget(0.1), &s).unwrap();
        assert_eq!(r.allocation.alpha0(), 0.1);
        assert!((r.objective - 0.13).abs() < 1e-12);
        assert!(!r.slack && !r.rumor_eradicated);
        assert!((minimal_rumor(&params(2.0, 0.3), budget(0.1)).unwrap() - 0.13).abs() < 1e-12);

        let r = minimize_rumor(&params(1.2, 0.3), budget(0.4), &s).unwrap();
        assert_eq!(r.allocation.alpha0(), 0.0);
        assert!(r.rumor_eradicated);
    }

    #[test]
    fn budget_rejects_negative() {
        assert!(Budget::new(-0.1).is_err());
        assert!(Budget::new(f64::INFINITY).is_err());
    }

    #[test]
    fn uniform_condition_examples() {
        let s = SolverConfig::default();
        let p = params(2.0, 0.3);
        let a = Allocation::uniform(0.0).unwrap();
        // alpha = 0 at an endemic point: right-hand side vanishes.
        let p3 = params(3.0, 0.3);
        let ss = full_steady_state(&p3, &a, &s).unwrap();
        assert!(ss.theta > 0.0);
        assert!(marginal_condition_uniform(&p3, &a, &ss));

        let a = Allocation::uniform(2.0 / 7.0).unwrap();
        let ss = full_steady_state(&p, &a, &s).unwrap();
        assert!(!marginal_condition_uniform(&p, &a, &ss));

        let p4 = params(4.0, 0.3);
        let a = Allocation::uniform(eradication_threshold(&p4)).unwrap();
        let ss = full_steady_state(&p4, &a, &s).unwrap();
        assert!((ss.theta0 - 0.5).abs() < 1e-12);
        assert!(marginal_condition_uniform(&p4, &a, &ss));
    }

    #[test]
    fn targeted_condition_examples() {
        let s = SolverConfig::default();
        for (lambda, expected) in [(2.0, false), (4.0, true)] {
            let p = params(lambda, 0.3);
            let amount = 1.0 - 0.3 - 1.0 / lambda;
            let a = Allocation::targeted(0.0, amount / 0.7).unwrap();
            let ss = full_steady_state(&p, &a, &s).unwrap();
            assert_eq!(ss.theta1, 0.0);
            assert!((ss.theta0 - (1.0 - 2.0 / lambda)).abs() < 1e-12);
            assert_eq!(
                marginal_condition_targeted(&p, budget(amount), &ss),
                expected,
                "lambda {lambda}"
            );
            assert_eq!(lambda + 3.0 / lambda > 4.0 - 0.3, expected);
        }
        let zero = SteadyState {
            theta0: 0.0,
            theta1: 0.1,
            theta: 0.1,
            rho_00_a: 0.0,
            rho_10_a: 0.0,
            rho_00_na: 0.0,
            rho_11_na: 0.0,
        };
        assert!(!marginal_condition_targeted(
            &params(2.0, 0.3),
            budget(0.1),
            &zero
        ));
    }

    #[test]
    fn closed_form_thresholds() {
        assert!((lambda_bar(0.3).unwrap() - (2.0 + (2.0f64 - 1.0 / 0.7).sqrt())).abs() < 1e-15);
        assert!((lambda_bar(0.3).unwrap() - 2.755_928_946_018_454_6).abs() < 1e-12);
        assert_eq!(lambda_bar(0.5), Some(2.0));
        assert_eq!(lambda_bar(0.6), None);
        assert_eq!(lambda_bar(1.0), None);
        let (lo, hi) = eradication_interval(0.3).unwrap();
        assert!((lo - 1.2).abs() < 1e-12 && (hi - 2.5).abs() < 1e-12);
        assert_eq!(eradication_interval(0.6), None);
    }

    #[test]
    fn uniform_examples() {
        let cfg = OptimizerConfig::default();
        let p = params(2.0, 0.3);
        let r = maximize_truth_uniform(&p, budget(0.05), &cfg).unwrap();
        assert!((r.allocation.alpha0() - 0.05).abs() < 1e-9 && !r.slack);

        let r = maximize_truth_uniform(&p, budget(2.0 / 7.0), &cfg).unwrap();
        assert!(r.slack && r.theta0 > 0.0 && r.theta1 > 0.0);
        assert!(r.allocation.alpha0() < 2.0 / 7.0);

        let r = maximize_truth_uniform(&p, budget(0.9), &cfg).unwrap();
        assert!((r.allocation.alpha0() - 0.9).abs() < 1e-9);
        assert!((r.objective - 0.43).abs() < 1e-9);
    }

    #[test]
    fn subcritical_prefers_spending_nothing() {
        let cfg = OptimizerConfig::default();
        let r = maximize_truth_uniform(&params(0.5, 0.3), budget(0.5), &cfg).unwrap();
        assert_eq!(r.allocation.alpha0(), 0.0);
        assert_eq!(r.objective, 0.0);
        assert!(r.slack);
    }

    #[test]
    fn targeted_zero_budget() {
        let cfg = OptimizerConfig::default();
        let p = params(2.0, 0.3);
        let r = maximize_truth_targeted(&p, budget(0.0), &cfg).unwrap();
        assert_eq!((r.allocation.alpha0(), r.allocation.alpha1()), (0.0, 0.0));
        let direct = truth_steady_state(&p, &Allocation::targeted(0.0, 0.0).unwrap(), &cfg.solver).unwrap();
        assert_eq!(r.objective, direct);
    }

    #[test]
    fn targeted_degenerate_masses() {
        let cfg = OptimizerConfig::default();
        let r = maximize_truth_targeted(&params(3.0, 0.0), budget(0.4), &cfg).unwrap();
        assert_eq!(r.allocation.alpha0(), 0.0);
        assert!((r.allocation.alpha1() - 0.4).abs() < 1e-12);
        // Everyone truth-biased: no rumor, inspection buys nothing.
        let r = maximize_truth_targeted(&params(3.0, 1.0), budget(0.4), &cfg).unwrap();
        assert_eq!(r.budget_spent, 0.0);
        assert!((r.objective - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn targeted_flags_large_budgets() {
        let cfg = OptimizerConfig::default();
        let r = maximize_truth_targeted(&params(2.0, 0.3), budget(0.5), &cfg).unwrap();
        assert!(r.outside_regime);
        assert!(r.budget_spent <= 0.5 + 1e-12);
    }
}
