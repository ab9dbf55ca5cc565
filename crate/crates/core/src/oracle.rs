//! Brute-force reference solvers used to validate the closed-form responses.
//!
//! Both scan a uniform grid and then refine once around the best grid point
//! at a hundredth of the step. Neither uses the stationary-point algebra.

use crate::model::{
    generalist_utility, specialist_utility, GameParams, Regulation, StrategyProfile,
};
use crate::response::specialist_best_response;

pub const SPECIALIST_GRID_STEP: f64 = 1e-5;
pub const GENERALIST_GRID_STEP: f64 = 1e-4;
const REFINE_POINTS: usize = 200;

/// Result of the specialist oracle: the performance maximizing its utility
/// over `[alpha0, alpha0 + 1]` and the utility attained there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialistOracle {
    pub alpha1: f64,
    pub utility: f64,
}

impl SpecialistOracle {
    /// Adopting is worthwhile only if the best attainable utility is not
    /// below the zero outside option.
    pub fn participates(&self) -> bool {
        self.utility >= 0.0
    }
}

/// Maximizes `f` over `[lo, hi]` by a grid scan followed by one refinement
/// pass. Ties keep the larger argument.
fn scan_max(lo: f64, hi: f64, step: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let n = ((hi - lo) / step).ceil() as usize;
    let point = |i: usize| if i >= n { hi } else { lo + i as f64 * step };
    let mut best = (lo, f(lo));
    for i in 1..=n {
        let x = point(i);
        let v = f(x);
        if v >= best.1 {
            best = (x, v);
        }
    }
    let (a, b) = ((best.0 - step).max(lo), (best.0 + step).min(hi));
    let fine = (b - a) / REFINE_POINTS as f64;
    for i in 0..=REFINE_POINTS {
        let x = a + i as f64 * fine;
        let v = f(x);
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}

pub fn specialist_oracle(
    params: &GameParams,
    delta: f64,
    omega: f64,
    grid_step: f64,
) -> SpecialistOracle {
    let lo = params.alpha0;
    let (alpha1, utility) = scan_max(lo, lo + 1.0, grid_step, |a| {
        specialist_utility(params, delta, omega, a).expect("oracle requires omega > 0")
    });
    SpecialistOracle { alpha1, utility }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralistOracle {
    pub profile: StrategyProfile,
    pub u_g: f64,
}

/// Generalist utility at `omega` with the specialist's closed-form response;
/// an abstaining specialist leaves performance at `alpha0`.
fn release_utility(
    params: &GameParams,
    reg: &Regulation,
    delta: f64,
    omega: f64,
) -> (f64, Option<f64>) {
    let alpha1 = specialist_best_response(params, delta, omega).alpha1();
    let u = generalist_utility(params, reg, delta, omega, alpha1.unwrap_or(params.alpha0));
    (u, alpha1)
}

/// Exhaustive scan of the generalist's utility over `[omega_min, 1]` with the
/// threshold inserted into the grid, plus the abstain option.
pub fn generalist_oracle(
    params: &GameParams,
    reg: &Regulation,
    delta: f64,
    grid_step: f64,
) -> GeneralistOracle {
    let (omega, u) = scan_max(params.omega_min, 1.0, grid_step, |w| {
        release_utility(params, reg, delta, w).0
    });
    let (omega, u) = if (params.omega_min..=1.0).contains(&reg.theta) {
        let at_threshold = release_utility(params, reg, delta, reg.theta).0;
        if at_threshold >= u {
            (reg.theta, at_threshold)
        } else {
            (omega, u)
        }
    } else {
        (omega, u)
    };

    if u < 0.0 {
        return GeneralistOracle {
            profile: StrategyProfile::generalist_abstains(delta),
            u_g: 0.0,
        };
    }
    GeneralistOracle {
        profile: StrategyProfile {
            delta,
            omega: Some(omega),
            alpha1: release_utility(params, reg, delta, omega).1,
        },
        u_g: u,
    }
}
