//! Transient dynamics of the four believing fractions.
//!
//! Each group's equation carries its constant mass (`x*alpha0`, ...) on both
//! sides; we integrate the per-capita form with the mass divided out. Groups
//! of zero mass are pinned at zero.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_positive, check_unit, Error, Result};
use crate::params::{Allocation, ModelParams, SolverConfig};
use crate::steady::{full_steady_state, SteadyState};

/// Believing fractions of the four non-trivial groups at time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DynState {
    /// Inspecting truth-biased agents believing the truth.
    pub r00a: f64,
    /// Non-inspecting truth-biased agents believing the truth.
    pub r00na: f64,
    /// Inspecting rumor-biased agents believing the truth.
    pub r10a: f64,
    /// Non-inspecting rumor-biased agents believing the rumor.
    pub r11na: f64,
    pub t: f64,
}

const NAMES: [&str; 4] = ["r00a", "r00na", "r10a", "r11na"];

impl DynState {
    pub fn new(r00a: f64, r00na: f64, r10a: f64, r11na: f64) -> Self {
        Self {
            r00a,
            r00na,
            r10a,
            r11na,
            t: 0.0,
        }
    }

    /// Same small infection in every group.
    pub fn uniform(level: f64) -> Self {
        Self::new(level, level, level, level)
    }

    /// The believing fractions of a solved steady state.
    pub fn from_steady_state(ss: &SteadyState) -> Self {
        Self::new(ss.rho_00_a, ss.rho_00_na, ss.rho_10_a, ss.rho_11_na)
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.r00a, self.r00na, self.r10a, self.r11na]
    }

    fn with_coords(c: [f64; 4], t: f64) -> Self {
        Self {
            r00a: c[0],
            r00na: c[1],
            r10a: c[2],
            r11na: c[3],
            t,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in NAMES.iter().zip(self.coords()) {
            check_unit(name, v)?;
        }
        Ok(())
    }

    /// `(theta0, theta1)` implied by the group fractions.
    pub fn prevalences(&self, p: &ModelParams, a: &Allocation) -> (f64, f64) {
        let x = p.x();
        let (a0, a1) = (a.alpha0(), a.alpha1());
        let theta0 = x * (a0 * self.r00a + (1.0 - a0) * self.r00na) + (1.0 - x) * a1 * self.r10a;
        let theta1 = (1.0 - x) * (1.0 - a1) * self.r11na;
        (theta0, theta1)
    }

    /// Largest coordinate difference.
    pub fn distance(&self, other: &DynState) -> f64 {
        self.coords()
            .iter()
            .zip(other.coords())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Time derivatives of the four fractions, in the same field layout.
pub type Rates = [f64; 4];

fn group_masses(p: &ModelParams, a: &Allocation) -> [f64; 4] {
    let x = p.x();
    let (a0, a1) = (a.alpha0(), a.alpha1());
    [x * a0, x * (1.0 - a0), (1.0 - x) * a1, (1.0 - x) * (1.0 - a1)]
}

fn rates_of(c: &[f64; 4], masses: &[f64; 4], p: &ModelParams, a: &Allocation) -> Rates {
    let s = DynState::with_coords(*c, 0.0);
    let (theta0, theta1) = s.prevalences(p, a);
    let contact = p.contact_rate();
    let delta = p.delta();
    let exposure = [theta0 + theta1, theta0, theta0 + theta1, theta1];
    let mut out = [0.0; 4];
    for i in 0..4 {
        if masses[i] > 0.0 {
            out[i] = (1.0 - c[i]) * contact * exposure[i] - c[i] * delta;
        }
    }
    out
}

/// Per-capita rates of change at `s`. Groups with zero mass have rate zero.
pub fn derivatives(s: &DynState, p: &ModelParams, a: &Allocation) -> Rates {
    rates_of(&s.coords(), &group_masses(p, a), p, a)
}

fn max_abs(r: &Rates) -> f64 {
    r.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Integration settings. The scheme is classical fixed-step RK4; a step that
/// leaves the unit interval is retried at half the step size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegratorConfig {
    pub dt: f64,
    /// Horizon; `None` means `1e4 / delta`.
    pub t_max: Option<f64>,
    /// Converged once every rate is below this in absolute value.
    pub conv_tol: f64,
    /// Time between recorded samples.
    pub sample_interval: f64,
    /// How many times a step may be halved before giving up.
    pub max_halvings: u32,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            dt: 0.01,
            t_max: None,
            conv_tol: 1e-10,
            sample_interval: 1.0,
            max_halvings: 12,
        }
    }
}

impl IntegratorConfig {
    pub fn validate(&self) -> Result<()> {
        check_positive("dt", self.dt)?;
        if let Some(t) = self.t_max {
            check_positive("t_max", t)?;
        }
        check_positive("conv_tol", self.conv_tol)?;
        check_positive("sample_interval", self.sample_interval)
    }

    pub fn horizon(&self, p: &ModelParams) -> f64 {
        self.t_max.unwrap_or(1e4 / p.delta())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Termination {
    Converged,
    Horizon,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    /// Recorded states, starting with the initial one and ending with the final one.
    pub samples: Vec<DynState>,
    pub termination: Termination,
    pub steps: usize,
    /// Largest absolute rate at the final state.
    pub final_rate: f64,
}

impl Trajectory {
    pub fn last(&self) -> &DynState {
        self.samples
            .last()
            .expect("trajectory always holds the initial state")
    }

    pub fn converged(&self) -> bool {
        self.termination == Termination::Converged
    }
}

const ROUNDOFF: f64 = 1e-12;
const HARD_LIMIT: f64 = 1e-9;

fn rk4_step(
    c: &[f64; 4],
    k1: &Rates,
    h: f64,
    masses: &[f64; 4],
    p: &ModelParams,
    a: &Allocation,
) -> [f64; 4] {
    let shift = |k: &Rates, w: f64| {
        let mut out = *c;
        for i in 0..4 {
            out[i] += w * k[i];
        }
        out
    };
    let k2 = rates_of(&shift(k1, h / 2.0), masses, p, a);
    let k3 = rates_of(&shift(&k2, h / 2.0), masses, p, a);
    let k4 = rates_of(&shift(&k3, h), masses, p, a);
    let mut out = *c;
    for i in 0..4 {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

fn worst_violation(c: &[f64; 4]) -> Option<(usize, f64)> {
    c.iter()
        .enumerate()
        .map(|(i, &v)| (i, v, (-v).max(v - 1.0)))
        .filter(|&(_, _, excess)| excess > ROUNDOFF || excess.is_nan())
        .max_by(|a, b| a.2.total_cmp(&b.2))
        .map(|(i, v, _)| (i, v))
}

/// Integrates from `s0` until every rate falls below `cfg.conv_tol` or the
/// horizon is reached.
pub fn integrate(
    s0: &DynState,
    p: &ModelParams,
    a: &Allocation,
    cfg: &IntegratorConfig,
) -> Result<Trajectory> {
    s0.validate()?;
    a.validate()?;
    cfg.validate()?;
    let masses = group_masses(p, a);
    let mut c = s0.coords();
    for i in 0..4 {
        if masses[i] == 0.0 {
            c[i] = 0.0;
        }
    }
    let t_max = cfg.horizon(p);
    let mut t = 0.0;
    let mut h = cfg.dt;
    let mut steps = 0usize;
    let mut samples = vec![DynState::with_coords(c, t)];
    let mut next_sample = cfg.sample_interval;

    loop {
        let k1 = rates_of(&c, &masses, p, a);
        let rate = max_abs(&k1);
        if rate < cfg.conv_tol || t >= t_max {
            let termination = if rate < cfg.conv_tol {
                Termination::Converged
            } else {
                Termination::Horizon
            };
            if samples.last().map(|s| s.t) != Some(t) {
                samples.push(DynState::with_coords(c, t));
            }
            return Ok(Trajectory {
                samples,
                termination,
                steps,
                final_rate: rate,
            });
        }

        let mut halvings = 0;
        let next = loop {
            let step = h.min(t_max - t);
            let candidate = rk4_step(&c, &k1, step, &masses, p, a);
            match worst_violation(&candidate) {
                None => break (candidate, step),
                Some((i, v)) => {
                    let hard = !(-HARD_LIMIT..=1.0 + HARD_LIMIT).contains(&v);
                    if halvings >= cfg.max_halvings {
                        if hard {
                            return Err(Error::Unstable {
                                t,
                                dt: step,
                                coordinate: NAMES[i],
                                value: v,
                            });
                        }
                        break (candidate, step);
                    }
                    halvings += 1;
                    h /= 2.0;
                }
            }
        };
        let (mut candidate, step) = next;
        for v in candidate.iter_mut() {
            *v = v.clamp(0.0, 1.0);
        }
        c = candidate;
        t += step;
        steps += 1;
        if t >= next_sample {
            samples.push(DynState::with_coords(c, t));
            while next_sample <= t {
                next_sample += cfg.sample_interval;
            }
        }
    }
}

/// Outcome of integrating from several starting points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub starts: Vec<DynState>,
    /// Final state of each trajectory; `None` where integration failed.
    pub limits: Vec<Option<DynState>>,
    pub non_converged: usize,
    /// Largest coordinate distance between any two limits.
    pub max_pairwise_distance: f64,
    /// Largest deviation of a limit's `(theta0, theta1)` from the analytic steady state.
    pub max_distance_to_analytic: f64,
    pub passed: bool,
}

/// Pairwise agreement required of all limits.
pub const STABILITY_TOL: f64 = 1e-6;

/// Default "small initial infection" seed.
pub const DEFAULT_SEED_LEVEL: f64 = 1e-3;

/// Integrates from `n_starts` random interior states plus the small uniform
/// seed and checks that every trajectory settles at the same limit.
/// Failed or non-converged trajectories are reported, not raised.
pub fn verify_global_stability(
    p: &ModelParams,
    a: &Allocation,
    n_starts: usize,
    seed: u64,
    cfg: &IntegratorConfig,
    solver: &SolverConfig,
) -> Result<StabilityReport> {
    if n_starts < 2 {
        return Err(Error::InvalidParameter {
            name: "n_starts",
            value: n_starts as f64,
            reason: "at least two starting points are required",
        });
    }
    a.validate()?;
    cfg.validate()?;
    let analytic = full_steady_state(p, a, solver)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut starts = vec![DynState::uniform(DEFAULT_SEED_LEVEL)];
    for _ in 0..n_starts {
        // Open interval: an exact zero in the rumor group would pin it there.
        let mut draw = || rng.gen_range(f64::EPSILON..1.0);
        starts.push(DynState::new(draw(), draw(), draw(), draw()));
    }

    let outcomes: Vec<Result<Trajectory>> = starts.par_iter().map(|s| integrate(s, p, a, cfg)).collect();
    let mut non_converged = 0;
    let limits: Vec<Option<DynState>> = outcomes
        .into_iter()
        .map(|o| match o {
            Ok(tr) if tr.converged() => Some(*tr.last()),
            _ => {
                non_converged += 1;
                None
            }
        })
        .collect();

    let reached: Vec<&DynState> = limits.iter().flatten().collect();
    let mut max_pairwise_distance: f64 = 0.0;
    for (i, l) in reached.iter().enumerate() {
        for m in &reached[i + 1..] {
            max_pairwise_distance = max_pairwise_distance.max(l.distance(m));
        }
    }
    let max_distance_to_analytic = reached
        .iter()
        .map(|l| {
            let (t0, t1) = l.prevalences(p, a);
            (t0 - analytic.theta0).abs().max((t1 - analytic.theta1).abs())
        })
        .fold(0.0, f64::max);

    Ok(StabilityReport {
        passed: non_converged == 0 && max_pairwise_distance < STABILITY_TOL,
        starts,
        limits,
        non_converged,
        max_pairwise_distance,
        max_distance_to_analytic,
    })
}
