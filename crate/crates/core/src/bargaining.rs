//! Revenue-sharing stage: grid search over `delta` for the share that
//! maximizes a bargaining objective of the induced subgame payoffs.

use crate::model::{BargainingRule, Equilibrium, GameParams, Regulation};
use crate::parallel::Execution;
use crate::response::{generalist_best_response, GeneralistChoice};

/// Joint-utility measure maximized by the bargain. The disagreement point is
/// `(0, 0)`, the payoff pair when either side walks away.
pub fn bargaining_objective(rule: BargainingRule, u_g: f64, u_d: f64) -> f64 {
    match rule {
        BargainingRule::Nash => u_g * u_d,
        BargainingRule::VerticalMonopoly => u_g + u_d,
        BargainingRule::Egalitarian => u_g.min(u_d),
    }
}

/// Revenue shares searched by the bargain: `0, step, 2 step, ..., 1`, with
/// both endpoints always present.
pub fn delta_grid(params: &GameParams) -> Vec<f64> {
    let step = params.delta_step;
    let ratio = 1.0 / step;
    let n = ratio.round();
    if (ratio - n).abs() < 1e-9 {
        let n = n as usize;
        return (0..=n).map(|i| i as f64 / n as f64).collect();
    }
    let mut grid: Vec<f64> = (0..)
        .map(|i| i as f64 * step)
        .take_while(|&d| d < 1.0)
        .collect();
    grid.push(1.0);
    grid
}

/// One evaluated point of the bargaining grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BargainPoint {
    pub choice: GeneralistChoice,
    pub objective: f64,
}

pub fn evaluate_delta_grid(
    params: &GameParams,
    reg: &Regulation,
    rule: BargainingRule,
    exec: Execution,
) -> Vec<BargainPoint> {
    exec.map(&delta_grid(params), |&delta| {
        let choice = generalist_best_response(params, reg, delta);
        BargainPoint {
            choice,
            objective: bargaining_objective(rule, choice.u_g, choice.u_d),
        }
    })
}

pub fn solve_bargain(params: &GameParams, reg: &Regulation, rule: BargainingRule) -> Equilibrium {
    solve_bargain_with(params, reg, rule, Execution::default())
}

/// Picks the grid share with the largest objective. Objectives within `tol`
/// of the maximum tie, and ties go to the larger share.
pub fn solve_bargain_with(
    params: &GameParams,
    reg: &Regulation,
    rule: BargainingRule,
    exec: Execution,
) -> Equilibrium {
    let points = evaluate_delta_grid(params, reg, rule, exec);
    let best = points
        .iter()
        .map(|p| p.objective)
        .fold(f64::NEG_INFINITY, f64::max);
    let chosen = points
        .iter()
        .rev()
        .find(|p| p.objective >= best - params.tol)
        .expect("delta grid is never empty");
    Equilibrium {
        profile: chosen.choice.profile,
        u_g: chosen.choice.u_g,
        u_d: chosen.choice.u_d,
        rule,
        region: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn objective_examples() {
        let nash = bargaining_objective(BargainingRule::Nash, 0.0478, 0.0480);
        assert!((nash - 0.0022944).abs() < 1e-15);
        assert_eq!(
            bargaining_objective(BargainingRule::VerticalMonopoly, 0.0, 0.37),
            0.37
        );
        assert_eq!(
            bargaining_objective(BargainingRule::Egalitarian, 0.3, 0.3),
            0.3
        );
        assert_eq!(
            bargaining_objective(BargainingRule::Egalitarian, 0.1, 0.3),
            0.1
        );
    }

    #[test]
    fn objective_is_symmetric() {
        for rule in BargainingRule::ALL {
            for (a, b) in [(0.1, 0.4), (0.0, 2.0), (0.33, 0.05)] {
                assert_eq!(
                    bargaining_objective(rule, a, b),
                    bargaining_objective(rule, b, a)
                );
            }
        }
    }

    #[test]
    fn grid_has_both_endpoints() {
        let p = GameParams::new(0.1, 0.1, 0.05).unwrap();
        let g = delta_grid(&p);
        assert_eq!(g.len(), 101);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[53], 0.53);
        assert_eq!(g[100], 1.0);

        let odd = p.with_delta_step(0.3).unwrap();
        assert_eq!(
            delta_grid(&odd),
            vec![0.0, 0.3, 0.6, 0.8999999999999999, 1.0]
        );
    }

    #[test]
    fn unregulated_reference_equilibrium() {
        let p = GameParams::new(0.1, 0.1, 0.05).unwrap();
        let eq = solve_bargain(&p, &Regulation::none(), BargainingRule::Nash);
        assert!((eq.delta() - 0.53).abs() <= 0.01 + 1e-12);
        assert_eq!(eq.omega(), Some(0.01));
        assert!((eq.alpha1().unwrap() - 0.1024).abs() < 5e-4);
        assert!((eq.u_g - 0.0478).abs() < 5e-4);
        assert!((eq.u_d - 0.0480).abs() < 5e-4);
    }

    #[test]
    fn regulated_reference_equilibrium() {
        let p = GameParams::new(0.1, 0.1, 0.05).unwrap();
        let reg = Regulation::new(0.6, 0.05).unwrap();
        let eq = solve_bargain(&p, &reg, BargainingRule::Nash);
        assert!((eq.delta() - 0.97).abs() <= 0.01 + 1e-12);
        assert_eq!(eq.omega(), Some(0.6));
        assert!((eq.alpha1().unwrap() - 0.2746).abs() < 5e-4);
        assert!((eq.u_g - 0.0575).abs() < 5e-4);
        assert!((eq.u_d - 0.1090).abs() < 5e-4);
    }

    #[test]
    fn high_performance_baseline_is_balanced() {
        let p = GameParams::new(1.0, 0.1, 0.01).unwrap();
        let eq = solve_bargain(&p, &Regulation::none(), BargainingRule::Nash);
        assert_eq!(eq.omega(), Some(0.01));
        assert!((eq.alpha1().unwrap() - 1.0).abs() < 0.01);
        assert!((eq.u_g - 0.492).abs() < 0.01);
        assert!((eq.u_d - 0.491).abs() < 0.01);
        assert!((eq.delta() - 0.5).abs() <= 0.05);
    }

    #[test]
    fn chosen_share_is_grid_optimal() {
        let p = GameParams::new(0.3, 0.4, 0.1).unwrap();
        let reg = Regulation::new(0.5, 0.02).unwrap();
        for rule in BargainingRule::ALL {
            let eq = solve_bargain(&p, &reg, rule);
            let chosen = bargaining_objective(rule, eq.u_g, eq.u_d);
            for point in evaluate_delta_grid(&p, &reg, rule, Execution::Sequential) {
                assert!(point.objective <= chosen + p.tol);
            }
        }
    }

    #[test]
    fn execution_strategy_does_not_change_result() {
        let p = GameParams::new(0.2, 0.3, 0.05).unwrap();
        let reg = Regulation::new(0.4, 0.03).unwrap();
        for rule in BargainingRule::ALL {
            let a = solve_bargain_with(&p, &reg, rule, Execution::Sequential);
            let b = solve_bargain_with(&p, &reg, rule, Execution::Parallel);
            assert_eq!(a, b);
            assert_eq!(a.u_g.to_bits(), b.u_g.to_bits());
        }
    }
}
