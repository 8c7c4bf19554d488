use rayon::prelude::*;
use rumor_inspect::planner::{
    diversification_range, Budget, Objective, OptResult, OptimizerConfig, Thresholds,
};
use rumor_inspect::{
    compute_thresholds, full_steady_state, integrate, optimize, verify_global_stability, Allocation,
    DynState, Error, IntegratorConfig, ModelParams, SolverConfig, SteadyState,
};
use serde_json::Value;

use crate::args::{
    AllocArgs, Axis, DynamicsArgs, ModelArgs, ObjectiveArg, OptimizeArgs, SteadyArgs, SweepArgs,
    ThresholdsArgs,
};
use crate::report::{Cell, Report};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Numerical(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Config(e.to_string())
        }
    }
}

fn config_error(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// A finished report plus, when the run itself counts as failed, the reason.
pub struct Outcome {
    pub report: Report,
    pub failure: Option<String>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome {
            report,
            failure: None,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn solver(tol: f64) -> CliResult<SolverConfig> {
    let s = SolverConfig {
        tol,
        ..Default::default()
    };
    s.validate()?;
    Ok(s)
}

fn optimizer(tol: f64) -> CliResult<OptimizerConfig> {
    Ok(OptimizerConfig {
        solver: solver(tol)?,
        ..Default::default()
    })
}

fn objective(o: ObjectiveArg) -> Objective {
    match o {
        ObjectiveArg::RumorMin => Objective::RumorMin,
        ObjectiveArg::Truth => Objective::Truth,
        ObjectiveArg::TruthTargeted => Objective::TruthTargeted,
        ObjectiveArg::Platform => Objective::Platform,
    }
}

fn params_with(m: &ModelArgs, lambda: Option<f64>, x: Option<f64>) -> CliResult<ModelParams> {
    let x = x.ok_or_else(|| config_error("--x is required"))?;
    let p = match (lambda, m.nu, m.k, m.delta) {
        (Some(l), ..) => ModelParams::from_lambda(l, x)?,
        (None, Some(nu), Some(k), Some(delta)) => ModelParams::from_rates(nu, k, delta, x)?,
        _ => return Err(config_error("give either --lambda or all of --nu, --k, --delta")),
    };
    Ok(p)
}

fn params(m: &ModelArgs) -> CliResult<ModelParams> {
    params_with(m, m.lambda, m.x)
}

fn allocation(a: &AllocArgs) -> CliResult<Allocation> {
    match (a.alpha, a.alpha0, a.alpha1) {
        (Some(alpha), ..) => Ok(Allocation::uniform(alpha)?),
        (None, Some(a0), Some(a1)) => Ok(Allocation::targeted(a0, a1)?),
        _ => Err(config_error("give either --alpha or both --alpha0 and --alpha1")),
    }
}

fn has_allocation(a: &AllocArgs) -> bool {
    a.alpha.is_some() || a.alpha0.is_some() || a.alpha1.is_some()
}

const STEADY_COLUMNS: [&str; 12] = [
    "lambda",
    "x",
    "alpha0",
    "alpha1",
    "theta0",
    "theta1",
    "theta",
    "rho_00_a",
    "rho_10_a",
    "rho_00_na",
    "rho_11_na",
    "eradicated",
];

fn steady_row(p: &ModelParams, a: &Allocation, ss: &SteadyState) -> Vec<Cell> {
    vec![
        p.lambda().into(),
        p.x().into(),
        a.alpha0().into(),
        a.alpha1().into(),
        ss.theta0.into(),
        ss.theta1.into(),
        ss.theta.into(),
        ss.rho_00_a.into(),
        ss.rho_10_a.into(),
        ss.rho_00_na.into(),
        ss.rho_11_na.into(),
        ss.rumor_eradicated().into(),
    ]
}

const OPT_COLUMNS: [&str; 13] = [
    "objective",
    "lambda",
    "x",
    "A",
    "alpha0",
    "alpha1",
    "value",
    "theta0",
    "theta1",
    "budget_spent",
    "slack",
    "rumor_eradicated",
    "outside_regime",
];

fn opt_row(p: &ModelParams, r: &OptResult) -> Vec<Cell> {
    vec![
        r.objective_kind.name().into(),
        p.lambda().into(),
        p.x().into(),
        r.budget.into(),
        r.allocation.alpha0().into(),
        r.allocation.alpha1().into(),
        r.objective.into(),
        r.theta0.into(),
        r.theta1.into(),
        r.budget_spent.into(),
        r.slack.into(),
        r.rumor_eradicated.into(),
        r.outside_regime.into(),
    ]
}

const THRESHOLD_COLUMNS: [&str; 9] = [
    "alpha_prime",
    "lambda_bar",
    "eradication_lambda_lo",
    "eradication_lambda_hi",
    "survival_ratio_reading",
    "survival_reciprocal_reading",
    "A_lower",
    "A_upper",
    "A_tilde",
];

fn threshold_cells(t: &Thresholds) -> Vec<Cell> {
    vec![
        t.alpha_prime.into(),
        t.lambda_bar.into(),
        t.eradication_interval.map(|i| i.0).into(),
        t.eradication_interval.map(|i| i.1).into(),
        t.truth_survival.ratio_reading.into(),
        t.truth_survival.reciprocal_reading.into(),
        t.a_lower.into(),
        t.a_upper.into(),
        t.a_tilde.into(),
    ]
}

fn threshold_section(t: &Thresholds) -> (String, Vec<(&'static str, Cell)>) {
    (
        "thresholds".into(),
        THRESHOLD_COLUMNS.into_iter().zip(threshold_cells(t)).collect(),
    )
}

pub fn steady(args: &SteadyArgs, config: Value) -> CliResult<Outcome> {
    let p = params(&args.model)?;
    let a = allocation(&args.alloc)?;
    let ss = full_steady_state(&p, &a, &solver(args.output.tol)?)?;
    let mut report = Report::new(config, STEADY_COLUMNS.to_vec());
    report.rows.push(steady_row(&p, &a, &ss));
    Ok(report.into())
}

const TRAJECTORY_COLUMNS: [&str; 7] = ["t", "r00a", "r00na", "r10a", "r11na", "theta0", "theta1"];

pub fn dynamics(args: &DynamicsArgs, config: Value) -> CliResult<Outcome> {
    let p = params(&args.model)?;
    let a = allocation(&args.alloc)?;
    let s = solver(args.output.tol)?;
    let cfg = IntegratorConfig {
        dt: args.dt,
        t_max: args.t_max,
        sample_interval: args.sample_interval,
        ..Default::default()
    };
    cfg.validate()?;
    let s0 = DynState::uniform(args.init);
    s0.validate()?;
    let analytic = full_steady_state(&p, &a, &s)?;

    let stability = match args.starts {
        Some(n) => Some(verify_global_stability(&p, &a, n, args.seed, &cfg, &s)?),
        None => None,
    };
    let tr = integrate(&s0, &p, &a, &cfg)?;

    let mut report = Report::new(config, TRAJECTORY_COLUMNS.to_vec());
    for st in &tr.samples {
        let (t0, t1) = st.prevalences(&p, &a);
        report.rows.push(vec![
            st.t.into(),
            st.r00a.into(),
            st.r00na.into(),
            st.r10a.into(),
            st.r11na.into(),
            t0.into(),
            t1.into(),
        ]);
    }
    let last = tr.last();
    let (t0, t1) = last.prevalences(&p, &a);
    let distance = (t0 - analytic.theta0).abs().max((t1 - analytic.theta1).abs());
    report.sections.push((
        "summary".into(),
        vec![
            (
                "termination",
                if tr.converged() { "converged" } else { "horizon" }.into(),
            ),
            ("steps", tr.steps.into()),
            ("t", last.t.into()),
            ("theta0", t0.into()),
            ("theta1", t1.into()),
            ("final_rate", tr.final_rate.into()),
            ("analytic_theta0", analytic.theta0.into()),
            ("analytic_theta1", analytic.theta1.into()),
            ("distance_to_analytic", distance.into()),
        ],
    ));

    let mut failure = (!tr.converged()).then(|| format!("no convergence by t = {}", last.t));
    if let Some(r) = &stability {
        report.sections.push((
            "stability".into(),
            vec![
                ("starts", r.starts.len().into()),
                ("seed", Cell::Int(args.seed)),
                ("non_converged", r.non_converged.into()),
                ("max_pairwise_distance", r.max_pairwise_distance.into()),
                ("max_distance_to_analytic", r.max_distance_to_analytic.into()),
                ("passed", r.passed.into()),
            ],
        ));
        if !r.passed && failure.is_none() {
            failure = Some(format!(
                "stability check failed: {} non-converged, max pairwise distance {:e}",
                r.non_converged, r.max_pairwise_distance
            ));
        }
    }
    Ok(Outcome { report, failure })
}

fn grid(start: f64, stop: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                stop
            } else {
                start + (stop - start) * i as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

pub fn sweep(args: &SweepArgs, config: Value) -> CliResult<Outcome> {
    if args.steps < 2 {
        return Err(config_error("--steps must be at least 2"));
    }
    let (default_start, default_stop, in_domain): (f64, f64, fn(f64) -> bool) = match args.axis {
        Axis::Alpha | Axis::X => (0.0, 1.0, |v| (0.0..=1.0).contains(&v)),
        Axis::Budget => (0.0, 1.0, |v| v >= 0.0 && v.is_finite()),
        Axis::Lambda => (0.5, 5.0, |v| v > 0.0 && v.is_finite()),
    };
    let start = args.start.unwrap_or(default_start);
    let stop = args.stop.unwrap_or(default_stop);
    for (flag, v) in [("--start", start), ("--stop", stop)] {
        if !in_domain(v) {
            return Err(config_error(format!(
                "{flag} {v} is outside the domain of the sweep axis"
            )));
        }
    }
    if args.objective.is_some() && args.axis != Axis::Budget {
        return Err(config_error("--objective applies only to --axis A"));
    }
    let values = grid(start, stop, args.steps);
    let s = solver(args.output.tol)?;
    let m = &args.model;

    let rows: Vec<Vec<Cell>> = match args.axis {
        Axis::Alpha | Axis::Lambda | Axis::X => {
            let (alloc, base_lambda, base_x) = match args.axis {
                Axis::Alpha => {
                    if has_allocation(&args.alloc) {
                        return Err(config_error(
                            "--alpha/--alpha0/--alpha1 conflict with --axis alpha",
                        ));
                    }
                    (None, m.lambda, m.x)
                }
                Axis::Lambda => {
                    if m.lambda.is_some() || m.nu.is_some() {
                        return Err(config_error(
                            "--lambda/--nu/--k/--delta conflict with --axis lambda",
                        ));
                    }
                    (Some(allocation(&args.alloc)?), Some(1.0), m.x)
                }
                _ => {
                    if m.x.is_some() {
                        return Err(config_error("--x conflicts with --axis x"));
                    }
                    (Some(allocation(&args.alloc)?), m.lambda, Some(0.0))
                }
            };
            let base = params_with(m, base_lambda, base_x)?;
            values
                .par_iter()
                .map(|&v| {
                    let (p, a) = match args.axis {
                        Axis::Alpha => (base, Allocation::uniform(v)?),
                        Axis::Lambda => (base.with_lambda(v)?, alloc.unwrap()),
                        _ => (base.with_x(v)?, alloc.unwrap()),
                    };
                    let ss = full_steady_state(&p, &a, &s)?;
                    Ok(steady_row(&p, &a, &ss))
                })
                .collect::<Result<_, Error>>()?
        }
        Axis::Budget => {
            if has_allocation(&args.alloc) {
                return Err(config_error("--alpha/--alpha0/--alpha1 conflict with --axis A"));
            }
            let kind = objective(
                args.objective
                    .ok_or_else(|| config_error("--axis A needs --objective"))?,
            );
            let p = params(m)?;
            let cfg = optimizer(args.output.tol)?;
            values
                .par_iter()
                .map(|&v| Ok(opt_row(&p, &optimize(kind, &p, Budget::new(v)?, &cfg)?)))
                .collect::<Result<_, Error>>()?
        }
    };

    let columns = if args.axis == Axis::Budget {
        OPT_COLUMNS.to_vec()
    } else {
        STEADY_COLUMNS.to_vec()
    };
    let mut report = Report::new(config, columns);
    report.rows = rows;
    if args.axis == Axis::Budget {
        report
            .sections
            .push(threshold_section(&Thresholds::closed_form(&params(m)?)));
    }
    Ok(report.into())
}

pub fn optimize_cmd(args: &OptimizeArgs, config: Value) -> CliResult<Outcome> {
    let p = params(&args.model)?;
    let cfg = optimizer(args.output.tol)?;
    let r = optimize(objective(args.objective), &p, Budget::new(args.budget)?, &cfg)?;
    let mut report = Report::new(config, OPT_COLUMNS.to_vec());
    report.rows.push(opt_row(&p, &r));
    report
        .sections
        .push(threshold_section(&compute_thresholds(&p, &cfg)?));
    Ok(report.into())
}

/// Budgets scanned for the range where the targeted optimum funds
/// truth-biased inspection.
const DIVERSIFY_BUDGETS: usize = 99;

pub fn thresholds(args: &ThresholdsArgs, config: Value) -> CliResult<Outcome> {
    let p = params(&args.model)?;
    let cfg = optimizer(args.output.tol)?;
    let t = compute_thresholds(&p, &cfg)?;
    let budgets: Vec<f64> = (1..=DIVERSIFY_BUDGETS)
        .map(|i| i as f64 / (DIVERSIFY_BUDGETS + 1) as f64)
        .collect();
    let diversify = diversification_range(&p, &budgets, &cfg)?;

    let mut columns = vec!["lambda", "x"];
    columns.extend(THRESHOLD_COLUMNS);
    columns.extend(["diversify_A_min", "diversify_A_max"]);
    let mut row: Vec<Cell> = vec![p.lambda().into(), p.x().into()];
    row.extend(threshold_cells(&t));
    row.push(diversify.map(|d| d.0).into());
    row.push(diversify.map(|d| d.1).into());
    let mut report = Report::new(config, columns);
    report.rows.push(row);
    Ok(report.into())
}
