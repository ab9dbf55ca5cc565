//! Mapping of regulation space: indifference curves, region labels, grid
//! sweeps and Pareto-optimal policy scans.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bargaining::solve_bargain_with;
use crate::error::{ModelError, Result};
use crate::model::{BargainingRule, Equilibrium, GameParams, RegionLabel, Regulation};
use crate::parallel::Execution;

/// Penalty at which a generalist holding `(delta, alpha1)` fixed is
/// indifferent between a fully closed release and releasing exactly at
/// `theta`. Below it the closed release weakly dominates; a negative value
/// means compliance wins at every penalty.
pub fn indifference_penalty(
    theta: f64,
    delta: f64,
    alpha0: f64,
    alpha1: f64,
    eps: f64,
    c_omega: f64,
) -> Result<f64> {
    if alpha1 == 0.0 {
        return Err(ModelError::Division(
            "indifference penalty needs alpha1 != 0",
        ));
    }
    Ok(theta * (delta + alpha0 / alpha1 - eps - c_omega) * alpha1)
}

/// Whether the equilibrium releases at or above the threshold.
pub fn complies(eq: &Equilibrium, theta: f64) -> bool {
    eq.omega().is_some_and(|omega| omega >= theta)
}

/// Smallest penalty in `[0, p_max]` at which the full equilibrium (with the
/// bargained share and the specialist's response both endogenous) complies
/// with `theta`, located by bisection to within `tol_p`.
///
/// Returns `0` when the unregulated game already complies and `p_max` when
/// no penalty in range induces compliance.
pub fn indifference_boundary_numeric(
    params: &GameParams,
    rule: BargainingRule,
    theta: f64,
    p_max: f64,
    tol_p: f64,
) -> Result<f64> {
    if !(p_max > 0.0) || !(tol_p > 0.0) {
        return Err(ModelError::Invalid(format!(
            "p_max ({p_max}) and tol_p ({tol_p}) must be positive"
        )));
    }
    let complies_at = |penalty: f64| -> Result<bool> {
        let reg = Regulation::new(theta, penalty)?;
        let eq = solve_bargain_with(params, &reg, rule, Execution::Sequential);
        Ok(complies(&eq, theta))
    };

    if complies_at(0.0)? {
        return Ok(0.0);
    }
    if !complies_at(p_max)? {
        return Ok(p_max);
    }
    let (mut lo, mut hi) = (0.0, p_max);
    while hi - lo > tol_p {
        let mid = 0.5 * (lo + hi);
        if complies_at(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Labels a solved cell against the unregulated equilibrium of the same game.
pub fn classify_cell(eq: &Equilibrium, reg: &Regulation, baseline: &Equilibrium) -> RegionLabel {
    let Some(omega) = eq.omega() else {
        return RegionLabel::GAbstain;
    };
    let Some(alpha1) = eq.alpha1() else {
        return RegionLabel::DAbstain;
    };
    if reg.is_unregulated() {
        return RegionLabel::OpenUnregulated;
    }
    if omega < reg.theta {
        return RegionLabel::ClosedDeadweight;
    }
    let improves = match (baseline.omega(), baseline.alpha1()) {
        (Some(b_omega), Some(b_alpha1)) => {
            omega > b_omega && alpha1 > b_alpha1 && eq.u_g > baseline.u_g && eq.u_d > baseline.u_d
        }
        // An abstaining baseline has nothing released; any participation
        // with strictly positive payoffs improves on it.
        (None, _) => eq.u_g > 0.0 && eq.u_d > 0.0,
        (Some(b_omega), None) => omega > b_omega && eq.u_g > baseline.u_g && eq.u_d > 0.0,
    };
    if improves {
        RegionLabel::ParetoImproving
    } else {
        RegionLabel::Compliant
    }
}

/// Parameter that a sweep axis varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SweepParam {
    Alpha0,
    Eps,
    COmega,
    Theta,
    Penalty,
}

impl SweepParam {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepParam::Alpha0 => "alpha0",
            SweepParam::Eps => "eps",
            SweepParam::COmega => "c_omega",
            SweepParam::Theta => "theta",
            SweepParam::Penalty => "penalty",
        }
    }

    pub fn is_game_param(&self) -> bool {
        matches!(
            self,
            SweepParam::Alpha0 | SweepParam::Eps | SweepParam::COmega
        )
    }

    fn apply(&self, value: f64, params: &mut GameParams, reg: &mut Regulation) {
        match self {
            SweepParam::Alpha0 => params.alpha0 = value,
            SweepParam::Eps => params.eps = value,
            SweepParam::COmega => params.c_omega = value,
            SweepParam::Theta => reg.theta = value,
            SweepParam::Penalty => reg.penalty = value,
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepParam {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha0" => Ok(SweepParam::Alpha0),
            "eps" => Ok(SweepParam::Eps),
            "c_omega" | "c-omega" => Ok(SweepParam::COmega),
            "theta" => Ok(SweepParam::Theta),
            "penalty" | "p" => Ok(SweepParam::Penalty),
            other => Err(ModelError::Invalid(format!(
                "unknown sweep parameter `{other}` (expected alpha0, eps, c_omega, theta or penalty)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub param: SweepParam,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(param: SweepParam, min: f64, max: f64, steps: usize) -> Self {
        Self {
            param,
            min,
            max,
            steps,
        }
    }

    /// Evenly spaced values including both ends.
    pub fn values(&self) -> Vec<f64> {
        let span = self.max - self.min;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.max
                } else {
                    self.min + span * (i as f64 / last)
                }
            })
            .collect()
    }
}

/// Two swept axes over a fixed game and regulation. The x axis is the
/// faster-varying one; by convention penalty runs along x and the
/// threshold along y.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub x: Axis,
    pub y: Axis,
    pub params: GameParams,
    pub reg: Regulation,
    pub rule: BargainingRule,
}

impl SweepSpec {
    pub const DEFAULT_STEPS: usize = 101;

    /// Penalty on x, threshold on y.
    pub fn regulation_grid(
        params: GameParams,
        rule: BargainingRule,
        p_max: f64,
        steps: usize,
    ) -> Self {
        Self {
            x: Axis::new(SweepParam::Penalty, 0.0, p_max, steps),
            y: Axis::new(SweepParam::Theta, 0.0, 1.0, steps),
            params,
            reg: Regulation::none(),
            rule,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.x.param == self.y.param {
            return Err(ModelError::Invalid(format!(
                "sweep axes must differ (both are {})",
                self.x.param
            )));
        }
        for axis in [&self.x, &self.y] {
            if axis.steps < 2 {
                return Err(ModelError::Invalid(format!(
                    "axis {} needs at least 2 steps",
                    axis.param
                )));
            }
            if !(axis.min < axis.max) {
                return Err(ModelError::Invalid(format!(
                    "axis {} needs min < max (got {} .. {})",
                    axis.param, axis.min, axis.max
                )));
            }
        }
        self.params.validate()?;
        self.reg.validate()
    }

    fn touches_game_params(&self) -> bool {
        self.x.param.is_game_param() || self.y.param.is_game_param()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CellOutcome {
    Solved(Equilibrium),
    /// The cell's parameters fall outside the model's domain.
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub ix: usize,
    pub iy: usize,
    pub params: GameParams,
    pub reg: Regulation,
    pub outcome: CellOutcome,
}

impl SweepCell {
    pub fn equilibrium(&self) -> Option<&Equilibrium> {
        match &self.outcome {
            CellOutcome::Solved(eq) => Some(eq),
            CellOutcome::Invalid(_) => None,
        }
    }

    pub fn region(&self) -> Option<RegionLabel> {
        self.equilibrium().and_then(|eq| eq.region)
    }
}

/// Row-major grid of solved cells: index `iy * x.steps + ix`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub spec: SweepSpec,
    /// Unregulated equilibrium of the fixed game parameters.
    pub baseline: Equilibrium,
    pub cells: Vec<SweepCell>,
}

impl SweepTable {
    pub fn cell(&self, ix: usize, iy: usize) -> &SweepCell {
        &self.cells[iy * self.spec.x.steps + ix]
    }

    pub fn count(&self, label: RegionLabel) -> usize {
        self.cells
            .iter()
            .filter(|c| c.region() == Some(label))
            .count()
    }
}

pub fn solve_baseline(params: &GameParams, rule: BargainingRule, exec: Execution) -> Equilibrium {
    let mut eq = solve_bargain_with(params, &Regulation::none(), rule, exec);
    eq.region = Some(classify_cell(&eq, &Regulation::none(), &eq));
    eq
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    run_sweep_with(spec, Execution::default())
}

/// Solves every cell and labels it against the unregulated equilibrium of
/// that cell's game. Cells whose parameters are out of domain are recorded
/// as invalid instead of aborting the sweep.
pub fn run_sweep_with(spec: &SweepSpec, exec: Execution) -> Result<SweepTable> {
    spec.validate()?;
    let xs = spec.x.values();
    let ys = spec.y.values();
    let baseline = solve_baseline(&spec.params, spec.rule, exec);

    let coords: Vec<(usize, usize)> = (0..ys.len())
        .flat_map(|iy| (0..xs.len()).map(move |ix| (ix, iy)))
        .collect();
    let per_cell_baseline = spec.touches_game_params();

    let cells = exec.map(&coords, |&(ix, iy)| {
        let mut params = spec.params;
        let mut reg = spec.reg;
        spec.x.param.apply(xs[ix], &mut params, &mut reg);
        spec.y.param.apply(ys[iy], &mut params, &mut reg);
        let outcome = match params.validate().and_then(|_| reg.validate()) {
            Err(err) => CellOutcome::Invalid(err.to_string()),
            Ok(()) => {
                let mut eq = solve_bargain_with(&params, &reg, spec.rule, Execution::Sequential);
                let cell_baseline = if per_cell_baseline {
                    solve_bargain_with(
                        &params,
                        &Regulation::none(),
                        spec.rule,
                        Execution::Sequential,
                    )
                } else {
                    baseline
                };
                eq.region = Some(classify_cell(&eq, &reg, &cell_baseline));
                CellOutcome::Solved(eq)
            }
        };
        SweepCell {
            ix,
            iy,
            params,
            reg,
            outcome,
        }
    });

    Ok(SweepTable {
        spec: *spec,
        baseline,
        cells,
    })
}

/// Outer bounds of the Pareto-improving region in `(penalty, theta)` space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParetoBounds {
    pub params: GameParams,
    pub rule: BargainingRule,
    /// Largest threshold at which the specialist can still participate.
    pub theta_max: f64,
    /// Smallest admissible threshold; a zero threshold cannot raise openness.
    pub theta_min: f64,
    pub p_upper: f64,
    pub tol_p: f64,
}

impl ParetoBounds {
    /// Largest threshold the specialist accepts when the bargained share is
    /// `delta`. Participation never binds when `c_omega <= delta`.
    pub fn theta_max_at(delta: f64, c_omega: f64) -> f64 {
        if c_omega > delta {
            ((1.0 - delta) / (c_omega - delta)).min(1.0)
        } else {
            1.0
        }
    }

    /// Penalty that any compliant cell at `theta` must exceed: the numeric
    /// indifference boundary less its bisection tolerance.
    pub fn p_lower(&self, theta: f64) -> Result<f64> {
        let boundary = indifference_boundary_numeric(
            &self.params,
            self.rule,
            theta,
            self.p_upper,
            self.tol_p,
        )?;
        Ok((boundary - self.tol_p).max(0.0))
    }

    pub fn contains(&self, reg: &Regulation) -> Result<bool> {
        if reg.theta < self.theta_min || reg.theta > self.theta_max || reg.penalty > self.p_upper {
            return Ok(false);
        }
        Ok(reg.penalty > self.p_lower(reg.theta)?)
    }
}

pub fn pareto_region_bounds(
    params: &GameParams,
    rule: BargainingRule,
    p_max: f64,
    tol_p: f64,
) -> ParetoBounds {
    // The bound must hold for whatever share each cell bargains, and it is
    // loosest at delta = 0.
    ParetoBounds {
        params: *params,
        rule,
        theta_max: ParetoBounds::theta_max_at(0.0, params.c_omega),
        theta_min: params.tol,
        p_upper: p_max,
        tol_p,
    }
}

/// Quantities a regulator may weigh when choosing a policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Objective {
    Omega,
    Alpha1,
    UG,
    UD,
}

impl Objective {
    pub const ALL: [Objective; 4] = [
        Objective::Omega,
        Objective::Alpha1,
        Objective::UG,
        Objective::UD,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Objective::Omega => "omega",
            Objective::Alpha1 => "alpha1",
            Objective::UG => "u_g",
            Objective::UD => "u_d",
        }
    }

    /// Value for a solved cell. A withheld model scores zero openness and
    /// performance; a declined adoption leaves performance at `alpha0`.
    pub fn value(&self, eq: &Equilibrium, params: &GameParams) -> f64 {
        match self {
            Objective::Omega => eq.omega().unwrap_or(0.0),
            Objective::Alpha1 => match eq.omega() {
                None => 0.0,
                Some(_) => eq.alpha1().unwrap_or(params.alpha0),
            },
            Objective::UG => eq.u_g,
            Objective::UD => eq.u_d,
        }
    }
}

impl FromStr for Objective {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self> {
        Objective::ALL
            .into_iter()
            .find(|o| o.as_str() == s)
            .ok_or_else(|| ModelError::Invalid(format!("unknown objective `{s}`")))
    }
}

/// Strictly positive weight vectors on the standard simplex with entries in
/// multiples of `1 / steps`.
pub fn simplex_weights(dim: usize, steps: usize) -> Vec<Vec<f64>> {
    fn compose(remaining: usize, parts: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 1..=remaining.saturating_sub(parts - 1) {
            prefix.push(k);
            compose(remaining - k, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    if dim == 0 || steps < dim {
        return Vec::new();
    }
    let mut parts = Vec::new();
    compose(steps, dim, &mut Vec::with_capacity(dim), &mut parts);
    parts
        .into_iter()
        .map(|p| p.into_iter().map(|k| k as f64 / steps as f64).collect())
        .collect()
}

/// A cell selected by the weighted policy scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolicyPoint {
    pub index: usize,
    pub reg: Regulation,
}

/// Union, over strictly positive simplex weights, of the cells maximizing
/// the weighted sum of the chosen objectives. Sorted by cell index.
pub fn pareto_optimal_policies(
    table: &SweepTable,
    weighting_grid_steps: usize,
    objectives: &[Objective],
) -> Result<Vec<PolicyPoint>> {
    if objectives.is_empty() {
        return Err(ModelError::Invalid(
            "at least one objective is required".into(),
        ));
    }
    let mut sorted = objectives.to_vec();
    sorted.sort_by_key(|o| *o as u8);
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(ModelError::Invalid("objectives must be distinct".into()));
    }
    if weighting_grid_steps < 2 {
        return Err(ModelError::Invalid(
            "weighting grid needs at least 2 steps".into(),
        ));
    }
    let weights = if objectives.len() == 1 {
        vec![vec![1.0]]
    } else {
        simplex_weights(objectives.len(), weighting_grid_steps)
    };
    if weights.is_empty() {
        return Err(ModelError::Invalid(format!(
            "{} steps cannot give {} strictly positive weights",
            weighting_grid_steps,
            objectives.len()
        )));
    }

    let scored: Vec<(usize, Vec<f64>)> = table
        .cells
        .iter()
        .enumerate()
        .filter_map(|(i, cell)| {
            let eq = cell.equilibrium()?;
            Some((
                i,
                objectives
                    .iter()
                    .map(|o| o.value(eq, &cell.params))
                    .collect(),
            ))
        })
        .collect();
    if scored.is_empty() {
        return Ok(Vec::new());
    }

    let mut chosen: Vec<usize> = weights
        .iter()
        .map(|w| {
            let mut best = (scored[0].0, f64::NEG_INFINITY);
            for (i, values) in &scored {
                let v: f64 = w.iter().zip(values).map(|(a, b)| a * b).sum();
                if v > best.1 {
                    best = (*i, v);
                }
            }
            best.0
        })
        .collect();
    chosen.sort_unstable();
    chosen.dedup();
    Ok(chosen
        .into_iter()
        .map(|index| PolicyPoint {
            index,
            reg: table.cells[index].reg,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bargaining::solve_bargain;
    use crate::model::StrategyProfile;

    fn eq(omega: Option<f64>, alpha1: Option<f64>, u_g: f64, u_d: f64) -> Equilibrium {
        Equilibrium {
            profile: StrategyProfile {
                delta: 0.5,
                omega,
                alpha1,
            },
            u_g,
            u_d,
            rule: BargainingRule::Nash,
            region: None,
        }
    }

    #[test]
    fn indifference_penalty_examples() {
        // theta (delta alpha1 + alpha0 - (eps + c) alpha1), expanded by hand.
        let p = indifference_penalty(0.6, 0.97, 0.1, 0.2746, 0.1, 0.05).unwrap();
        assert!((p - 0.6 * (0.97 * 0.2746 + 0.1 - 0.15 * 0.2746)).abs() < 1e-15);
        assert!((p - 0.1951032).abs() < 1e-9);

        assert_eq!(
            indifference_penalty(0.0, 0.4, 0.3, 0.5, 0.2, 0.1).unwrap(),
            0.0
        );

        let alpha1 = 0.5;
        let delta = 0.2 + 0.1 - 0.3 / alpha1;
        let zero = indifference_penalty(0.7, delta, 0.3, alpha1, 0.2, 0.1).unwrap();
        assert!(zero.abs() < 1e-15);

        assert!(matches!(
            indifference_penalty(0.5, 0.5, 0.1, 0.0, 0.1, 0.1),
            Err(ModelError::Division(_))
        ));
    }

    #[test]
    fn boundary_is_zero_at_zero_threshold() {
        let p = GameParams::new(1.0, 0.15, 0.01).unwrap();
        let b = indifference_boundary_numeric(&p, BargainingRule::Nash, 0.0, 1.0, 1e-4).unwrap();
        assert_eq!(b, 0.0);
    }

    #[test]
    fn boundary_is_zero_when_already_open() {
        // Cheap model with a large reputational premium opens fully unregulated.
        let p = GameParams::new(0.01, 1.0, 0.0).unwrap();
        let base = solve_bargain(&p, &Regulation::none(), BargainingRule::Nash);
        assert_eq!(base.omega(), Some(1.0));
        let b = indifference_boundary_numeric(&p, BargainingRule::Nash, 0.8, 1.0, 1e-4).unwrap();
        assert_eq!(b, 0.0);
    }

    #[test]
    fn boundary_returns_sentinel_when_unreachable() {
        let p = GameParams::new(5.0, 0.15, 0.01).unwrap();
        let b = indifference_boundary_numeric(&p, BargainingRule::Nash, 0.9, 0.01, 1e-4).unwrap();
        assert_eq!(b, 0.01);
    }

    #[test]
    fn boundary_lies_in_unit_interval_at_half_threshold() {
        let p = GameParams::new(1.0, 0.15, 0.01).unwrap();
        let b = indifference_boundary_numeric(&p, BargainingRule::Nash, 0.5, 1.0, 1e-4).unwrap();
        assert!(b > 0.0 && b <= 1.0, "boundary {b}");
    }

    #[test]
    fn classification_rules() {
        let base = eq(Some(0.01), Some(0.1024), 0.0478, 0.0480);
        let reg = Regulation::new(0.6, 0.05).unwrap();
        let better = eq(Some(0.6), Some(0.2746), 0.0575, 0.1090);
        assert_eq!(
            classify_cell(&better, &reg, &base),
            RegionLabel::ParetoImproving
        );

        let closed = eq(Some(0.01), Some(0.1002), 0.03, 0.04);
        assert_eq!(
            classify_cell(&closed, &reg, &base),
            RegionLabel::ClosedDeadweight
        );

        let worse_for_g = eq(Some(0.6), Some(0.2746), 0.04, 0.1090);
        assert_eq!(
            classify_cell(&worse_for_g, &reg, &base),
            RegionLabel::Compliant
        );

        let tie = eq(Some(0.6), Some(0.2746), 0.0478, 0.1090);
        assert_eq!(classify_cell(&tie, &reg, &base), RegionLabel::Compliant);

        let gone = eq(None, None, 0.0, 0.0);
        assert_eq!(classify_cell(&gone, &reg, &base), RegionLabel::GAbstain);

        let declined = eq(Some(0.9), None, 0.01, 0.0);
        assert_eq!(classify_cell(&declined, &reg, &base), RegionLabel::DAbstain);

        assert_eq!(
            classify_cell(&base, &Regulation::none(), &base),
            RegionLabel::OpenUnregulated
        );
    }

    #[test]
    fn axis_values_hit_both_ends() {
        let a = Axis::new(SweepParam::Theta, 0.0, 1.0, 101);
        let v = a.values();
        assert_eq!(v.len(), 101);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[100], 1.0);
        assert!((v[60] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn spec_validation() {
        let p = GameParams::new(0.1, 0.1, 0.05).unwrap();
        let mut spec = SweepSpec::regulation_grid(p, BargainingRule::Nash, 0.1, 3);
        assert!(spec.validate().is_ok());
        spec.y.param = SweepParam::Penalty;
        assert!(spec.validate().is_err());
        let mut spec = SweepSpec::regulation_grid(p, BargainingRule::Nash, 0.1, 1);
        assert!(spec.validate().is_err());
        spec.x.steps = 3;
        spec.y.steps = 3;
        spec.x.max = 0.0;
        assert!(spec.validate().is_err());
    }

    #[test]
    fn invalid_cells_do_not_abort() {
        let p = GameParams::new(0.1, 0.1, 0.05).unwrap();
        let spec = SweepSpec {
            x: Axis::new(SweepParam::Alpha0, 0.0, 0.2, 3),
            y: Axis::new(SweepParam::Eps, 0.1, 0.2, 2),
            params: p,
            reg: Regulation::none(),
            rule: BargainingRule::Nash,
        };
        let table = run_sweep(&spec).unwrap();
        assert_eq!(table.cells.len(), 6);
        assert!(matches!(table.cell(0, 0).outcome, CellOutcome::Invalid(_)));
        assert!(matches!(table.cell(0, 1).outcome, CellOutcome::Invalid(_)));
        assert!(table.cell(1, 0).equilibrium().is_some());
    }

    #[test]
    fn simplex_weights_are_positive_and_normalized() {
        let w = simplex_weights(3, 5);
        // Compositions of 5 into 3 positive parts: C(4, 2).
        assert_eq!(w.len(), 6);
        for v in &w {
            assert!(v.iter().all(|&x| x > 0.0));
            assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        assert!(simplex_weights(4, 3).is_empty());
    }

    #[test]
    fn theta_bound_examples() {
        assert_eq!(ParetoBounds::theta_max_at(0.5, 0.1), 1.0);
        assert_eq!(ParetoBounds::theta_max_at(0.0, 2.0), 0.5);
        let p = GameParams::new(0.1, 0.1, 0.05).unwrap();
        let b = pareto_region_bounds(&p, BargainingRule::Nash, 0.1, 1e-4);
        assert_eq!(b.theta_max, 1.0);
        assert!(!b.contains(&Regulation::new(0.0, 0.05).unwrap()).unwrap());
    }
}
