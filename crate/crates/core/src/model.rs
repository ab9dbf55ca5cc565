//! Domain types and the utility/cost functions of the openness game.
//!
//! The generalist (G) releases a base model of performance `alpha0` at an
//! openness level `omega`; the specialist (D) fine-tunes it to `alpha1`.
//! Revenue is split by the bargained coefficient `delta` on the closed part
//! of the model, while G collects a reputational premium `eps` on the open
//! part. A regulator charges a penalty whenever `omega` falls strictly below
//! the open-source threshold `theta`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check, ModelError, Result};

/// Exogenous constants of the game plus solver resolution settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameParams {
    pub alpha0: f64,
    pub eps: f64,
    pub c_omega: f64,
    /// Openness used to represent the fully closed release.
    pub omega_min: f64,
    /// Step of the revenue-sharing grid searched during bargaining.
    pub delta_step: f64,
    pub tol: f64,
}

impl GameParams {
    pub const DEFAULT_OMEGA_MIN: f64 = 0.01;
    pub const DEFAULT_DELTA_STEP: f64 = 0.01;
    pub const DEFAULT_TOL: f64 = 1e-9;

    pub fn new(alpha0: f64, eps: f64, c_omega: f64) -> Result<Self> {
        let params = Self {
            alpha0,
            eps,
            c_omega,
            omega_min: Self::DEFAULT_OMEGA_MIN,
            delta_step: Self::DEFAULT_DELTA_STEP,
            tol: Self::DEFAULT_TOL,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_omega_min(mut self, omega_min: f64) -> Result<Self> {
        self.omega_min = omega_min;
        self.validate()?;
        Ok(self)
    }

    pub fn with_delta_step(mut self, delta_step: f64) -> Result<Self> {
        self.delta_step = delta_step;
        self.validate()?;
        Ok(self)
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        self.tol = tol;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        check(
            self.alpha0 > 0.0 && self.alpha0.is_finite(),
            "alpha0",
            self.alpha0,
            "(0, inf)",
        )?;
        check((0.0..=1.0).contains(&self.eps), "eps", self.eps, "[0, 1]")?;
        check(
            self.c_omega >= 0.0 && self.c_omega.is_finite(),
            "c_omega",
            self.c_omega,
            "[0, inf)",
        )?;
        check(
            self.omega_min > 0.0 && self.omega_min <= 1.0,
            "omega_min",
            self.omega_min,
            "(0, 1]",
        )?;
        check(
            self.delta_step > 0.0 && self.delta_step <= 0.5,
            "delta_step",
            self.delta_step,
            "(0, 0.5]",
        )?;
        check(
            self.tol > 0.0 && self.tol.is_finite(),
            "tol",
            self.tol,
            "(0, inf)",
        )
    }
}

/// A regulatory profile. `penalty == 0` is the unregulated baseline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Regulation {
    pub theta: f64,
    pub penalty: f64,
}

impl Regulation {
    pub fn new(theta: f64, penalty: f64) -> Result<Self> {
        let reg = Self { theta, penalty };
        reg.validate()?;
        Ok(reg)
    }

    /// No regulation: the threshold has no effect, so it is pinned to zero.
    pub const fn none() -> Self {
        Self {
            theta: 0.0,
            penalty: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check(
            (0.0..=1.0).contains(&self.theta),
            "theta",
            self.theta,
            "[0, 1]",
        )?;
        check(
            self.penalty >= 0.0 && self.penalty.is_finite(),
            "penalty",
            self.penalty,
            "[0, inf)",
        )
    }

    pub fn is_unregulated(&self) -> bool {
        self.penalty == 0.0
    }

    /// Penalty owed at openness `omega`. The comparison is strict, so
    /// releasing exactly at the threshold is compliant.
    pub fn charge(&self, omega: f64) -> f64 {
        if omega < self.theta {
            self.penalty
        } else {
            0.0
        }
    }
}

/// Strategies played at a solved node of the game.
///
/// `omega == None` means the generalist withheld the model; `alpha1 == None`
/// means the specialist declined to adopt it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrategyProfile {
    pub delta: f64,
    pub omega: Option<f64>,
    pub alpha1: Option<f64>,
}

impl StrategyProfile {
    pub fn generalist_abstains(delta: f64) -> Self {
        Self {
            delta,
            omega: None,
            alpha1: None,
        }
    }

    pub fn g_abstained(&self) -> bool {
        self.omega.is_none()
    }

    pub fn d_abstained(&self) -> bool {
        self.alpha1.is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BargainingRule {
    Nash,
    /// Vertical monopoly: the sum of utilities.
    VerticalMonopoly,
    Egalitarian,
}

impl BargainingRule {
    pub const ALL: [BargainingRule; 3] = [
        BargainingRule::Nash,
        BargainingRule::VerticalMonopoly,
        BargainingRule::Egalitarian,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BargainingRule::Nash => "nash",
            BargainingRule::VerticalMonopoly => "vm",
            BargainingRule::Egalitarian => "egalitarian",
        }
    }
}

impl fmt::Display for BargainingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BargainingRule {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nash" => Ok(BargainingRule::Nash),
            "vm" | "vertical-monopoly" => Ok(BargainingRule::VerticalMonopoly),
            "egalitarian" | "egal" => Ok(BargainingRule::Egalitarian),
            other => Err(ModelError::Invalid(format!(
                "unknown bargaining rule `{other}` (expected nash, vm or egalitarian)"
            ))),
        }
    }
}

/// Classification of a regulation cell relative to the unregulated baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionLabel {
    Compliant,
    ClosedDeadweight,
    GAbstain,
    DAbstain,
    ParetoImproving,
    OpenUnregulated,
}

impl RegionLabel {
    pub const ALL: [RegionLabel; 6] = [
        RegionLabel::Compliant,
        RegionLabel::ClosedDeadweight,
        RegionLabel::GAbstain,
        RegionLabel::DAbstain,
        RegionLabel::ParetoImproving,
        RegionLabel::OpenUnregulated,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            RegionLabel::Compliant => "COMPLIANT",
            RegionLabel::ClosedDeadweight => "CLOSED_DEADWEIGHT",
            RegionLabel::GAbstain => "G_ABSTAIN",
            RegionLabel::DAbstain => "D_ABSTAIN",
            RegionLabel::ParetoImproving => "PARETO_IMPROVING",
            RegionLabel::OpenUnregulated => "OPEN_UNREGULATED",
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RegionLabel {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        RegionLabel::ALL
            .into_iter()
            .find(|label| label.as_str() == s)
            .ok_or_else(|| ModelError::Invalid(format!("unknown region label `{s}`")))
    }
}

/// A solved subgame-perfect equilibrium.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Equilibrium {
    pub profile: StrategyProfile,
    pub u_g: f64,
    pub u_d: f64,
    pub rule: BargainingRule,
    pub region: Option<RegionLabel>,
}

impl Equilibrium {
    pub fn delta(&self) -> f64 {
        self.profile.delta
    }

    pub fn omega(&self) -> Option<f64> {
        self.profile.omega
    }

    pub fn alpha1(&self) -> Option<f64> {
        self.profile.alpha1
    }
}

/// Revenue earned by a model of performance `alpha1`. Fixed to the identity.
#[inline]
pub fn revenue(alpha1: f64) -> f64 {
    alpha1
}

/// Production, operation and regulatory cost borne by the generalist.
pub fn generalist_cost(params: &GameParams, reg: &Regulation, omega: f64, alpha1: f64) -> f64 {
    params.alpha0 * omega + params.c_omega * alpha1 * (1.0 - omega) + reg.charge(omega)
}

/// Fine-tuning and operation cost borne by the specialist. Diverges as
/// `omega -> 0`, so zero openness is rejected rather than returning infinity.
pub fn specialist_cost(params: &GameParams, omega: f64, alpha1: f64) -> Result<f64> {
    if omega <= 0.0 || omega.is_nan() {
        return Err(ModelError::Domain {
            name: "omega",
            value: omega,
            domain: "(0, 1] for the specialist cost",
        });
    }
    let gain = alpha1 - params.alpha0;
    Ok(gain * gain / omega + params.c_omega * alpha1 * omega)
}

/// Share of revenue accruing to the generalist: reputational premium on the
/// open fraction plus the bargained share of the closed fraction.
#[inline]
pub fn generalist_share(params: &GameParams, delta: f64, omega: f64) -> f64 {
    params.eps * omega + delta * (1.0 - omega)
}

#[inline]
pub fn specialist_share(delta: f64, omega: f64) -> f64 {
    1.0 - delta * (1.0 - omega)
}

pub fn generalist_utility(
    params: &GameParams,
    reg: &Regulation,
    delta: f64,
    omega: f64,
    alpha1: f64,
) -> f64 {
    generalist_share(params, delta, omega) * revenue(alpha1)
        - generalist_cost(params, reg, omega, alpha1)
}

pub fn specialist_utility(params: &GameParams, delta: f64, omega: f64, alpha1: f64) -> Result<f64> {
    Ok(specialist_share(delta, omega) * revenue(alpha1) - specialist_cost(params, omega, alpha1)?)
}
