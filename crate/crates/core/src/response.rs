//! Best responses of both players at a fixed revenue-sharing coefficient.
//!
//! The specialist's problem is strictly concave in `alpha1` and has a closed
//! form. Substituting it into the generalist's utility leaves a cubic in
//! `omega` whose stationary points solve a quadratic; the generalist's optimum
//! is then one of those roots or a boundary/kink of the feasible set.

use serde::{Deserialize, Serialize};

use crate::model::{
    generalist_utility, specialist_utility, GameParams, Regulation, StrategyProfile,
};

/// Openness argument for the specialist's best response.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Openness {
    At(f64),
    /// The analytic limit `omega -> 0+`, where no improvement is affordable.
    ClosedLimit,
}

impl From<f64> for Openness {
    fn from(omega: f64) -> Self {
        Openness::At(omega)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SpecialistResponse {
    Improve(f64),
    Abstain,
}

impl SpecialistResponse {
    pub fn alpha1(&self) -> Option<f64> {
        match *self {
            SpecialistResponse::Improve(alpha1) => Some(alpha1),
            SpecialistResponse::Abstain => None,
        }
    }
}

/// Marginal revenue the specialist keeps per unit of performance after
/// operation costs: `1 - delta (1 - omega) - c_omega omega`.
#[inline]
fn participation_margin(delta: f64, omega: f64, c_omega: f64) -> f64 {
    1.0 - delta * (1.0 - omega) - c_omega * omega
}

/// Whether adopting the model at baseline performance leaves the specialist
/// with non-negative utility.
pub fn specialist_participates(delta: f64, omega: f64, c_omega: f64) -> bool {
    participation_margin(delta, omega, c_omega) >= 0.0
}

pub fn specialist_best_response(
    params: &GameParams,
    delta: f64,
    omega: impl Into<Openness>,
) -> SpecialistResponse {
    match omega.into() {
        Openness::ClosedLimit => SpecialistResponse::Improve(params.alpha0),
        Openness::At(omega) => {
            let margin = participation_margin(delta, omega, params.c_omega);
            if margin >= 0.0 {
                SpecialistResponse::Improve(params.alpha0 + omega * margin / 2.0)
            } else {
                SpecialistResponse::Abstain
            }
        }
    }
}

/// Largest openness at which the specialist still participates, when that
/// limit is below full openness. Only exists when `c_omega > delta`.
pub fn participation_limit(delta: f64, c_omega: f64) -> Option<f64> {
    if c_omega <= delta {
        return None;
    }
    let mut omega = (1.0 - delta) / (c_omega - delta);
    if !(omega < 1.0) {
        return None;
    }
    // Land on the participating side of the boundary despite rounding.
    while omega > 0.0 && !specialist_participates(delta, omega, c_omega) {
        omega = omega.next_down();
    }
    Some(omega)
}

/// Coefficients of `a w^2 + b w + c = 0`, the first-order condition of the
/// generalist's penalty-free utility once the specialist's best response is
/// substituted for `alpha1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraticCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl QuadraticCoefficients {
    /// Real roots, solved linearly when `a` vanishes. Empty when the
    /// discriminant is negative or the equation is degenerate.
    pub fn real_roots(&self) -> Vec<f64> {
        const DEGENERATE: f64 = 1e-14;
        let Self { a, b, c } = *self;
        if a.abs() <= DEGENERATE {
            if b.abs() <= DEGENERATE {
                return Vec::new();
            }
            return vec![-c / b];
        }
        let disc = b * b - 4.0 * a * c;
        if disc < 0.0 {
            return Vec::new();
        }
        let sqrt = disc.sqrt();
        // Avoid cancellation between -b and the square root.
        let q = -0.5 * (b + b.signum() * sqrt);
        if q == 0.0 {
            return vec![0.0];
        }
        vec![q / a, c / q]
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.a * x + self.b) * x + self.c
    }
}

pub fn quadratic_coefficients(params: &GameParams, delta: f64) -> QuadraticCoefficients {
    let GameParams {
        alpha0,
        eps,
        c_omega,
        ..
    } = *params;
    let open_gain = eps - delta + c_omega;
    let closed_net = delta - c_omega;
    QuadraticCoefficients {
        a: 1.5 * open_gain * closed_net,
        b: open_gain * (1.0 - delta) + closed_net * closed_net,
        c: (eps - delta - 1.0 + c_omega) * alpha0 + closed_net * (1.0 - delta) / 2.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Candidate {
    Release(f64),
    Abstain,
}

impl Candidate {
    pub fn omega(&self) -> Option<f64> {
        match *self {
            Candidate::Release(omega) => Some(omega),
            Candidate::Abstain => None,
        }
    }
}

/// Openness levels that can maximize the generalist's utility at `delta`,
/// ascending, followed by the abstain option.
///
/// Boundary points (`omega_min`, the threshold, full openness) are always
/// present; interior stationary points and the specialist's participation
/// limit are added when they fall inside `(omega_min, 1]`.
pub fn generalist_candidates(params: &GameParams, reg: &Regulation, delta: f64) -> Vec<Candidate> {
    let lo = params.omega_min;
    let mut levels = vec![lo, 1.0];
    if (lo..=1.0).contains(&reg.theta) {
        levels.push(reg.theta);
    }

    let interior = quadratic_coefficients(params, delta)
        .real_roots()
        .into_iter()
        .chain(participation_limit(delta, params.c_omega));
    for omega in interior {
        if omega > lo && omega <= 1.0 {
            levels.push(omega);
        }
    }

    // Boundaries come first, so merging keeps them over nearby roots.
    let mut merged: Vec<f64> = Vec::with_capacity(levels.len());
    for omega in levels {
        if merged.iter().all(|&m| (m - omega).abs() > params.tol) {
            merged.push(omega);
        }
    }
    merged.sort_by(f64::total_cmp);

    merged
        .into_iter()
        .map(Candidate::Release)
        .chain(std::iter::once(Candidate::Abstain))
        .collect()
}

/// The generalist's choice at a fixed `delta` together with both payoffs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralistChoice {
    pub profile: StrategyProfile,
    pub u_g: f64,
    pub u_d: f64,
}

impl GeneralistChoice {
    fn abstain(delta: f64) -> Self {
        Self {
            profile: StrategyProfile::generalist_abstains(delta),
            u_g: 0.0,
            u_d: 0.0,
        }
    }
}

/// Payoffs when the generalist releases at `omega` and the specialist best
/// responds. If the specialist declines, the generalist still bears its own
/// costs on the unimproved model and the specialist receives nothing.
pub fn evaluate_release(
    params: &GameParams,
    reg: &Regulation,
    delta: f64,
    omega: f64,
) -> GeneralistChoice {
    let response = specialist_best_response(params, delta, omega);
    let (alpha1, u_d) = match response {
        SpecialistResponse::Improve(alpha1) => {
            let u_d = specialist_utility(params, delta, omega, alpha1)
                .expect("release candidates have positive openness");
            (alpha1, u_d)
        }
        SpecialistResponse::Abstain => (params.alpha0, 0.0),
    };
    GeneralistChoice {
        profile: StrategyProfile {
            delta,
            omega: Some(omega),
            alpha1: response.alpha1(),
        },
        u_g: generalist_utility(params, reg, delta, omega, alpha1),
        u_d,
    }
}

/// Chooses the candidate with the highest generalist utility, preferring
/// the more open release among near-ties. Abstains when every release
/// yields negative utility.
pub fn generalist_best_response(
    params: &GameParams,
    reg: &Regulation,
    delta: f64,
) -> GeneralistChoice {
    let releases: Vec<GeneralistChoice> = generalist_candidates(params, reg, delta)
        .into_iter()
        .filter_map(|c| c.omega())
        .map(|omega| evaluate_release(params, reg, delta, omega))
        .collect();

    select_release(releases, params.tol).unwrap_or_else(|| GeneralistChoice::abstain(delta))
}

/// Highest-utility release, preferring the more open one among near-ties;
/// `None` when every release yields negative utility.
fn select_release(releases: Vec<GeneralistChoice>, tol: f64) -> Option<GeneralistChoice> {
    let best_u = releases
        .iter()
        .map(|r| r.u_g)
        .fold(f64::NEG_INFINITY, f64::max);
    if !(best_u >= 0.0) {
        return None;
    }
    releases
        .into_iter()
        .filter(|r| r.u_g >= best_u - tol)
        .max_by(|a, b| {
            a.profile
                .omega
                .partial_cmp(&b.profile.omega)
                .expect("finite openness")
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Regulation;

    fn reference() -> GameParams {
        GameParams::new(0.1, 0.1, 0.05).unwrap()
    }

    /// Penalty-free generalist utility along the specialist's unconstrained
    /// best-response path, written out independently of the solver.
    fn reduced_utility(p: &GameParams, delta: f64, omega: f64) -> f64 {
        let alpha1 = p.alpha0 + omega * (1.0 - delta * (1.0 - omega) - p.c_omega * omega) / 2.0;
        (p.eps * omega + delta * (1.0 - omega)) * alpha1
            - p.alpha0 * omega
            - p.c_omega * alpha1 * (1.0 - omega)
    }

    fn central_difference(f: impl Fn(f64) -> f64, x: f64) -> f64 {
        let h = 1e-6;
        (f(x + h) - f(x - h)) / (2.0 * h)
    }

    #[test]
    fn participation_examples() {
        assert!(specialist_participates(0.5, 1.0, 0.1));
        assert!(!specialist_participates(0.0, 1.0, 2.0));
        for omega in [0.0, 0.3, 1.0] {
            assert!(specialist_participates(1.0, omega, 0.0));
        }
    }

    #[test]
    fn specialist_response_examples() {
        let p = reference();
        let a = specialist_best_response(&p, 0.97, 0.6).alpha1().unwrap();
        assert!((a - 0.2746).abs() < 1e-12);
        let b = specialist_best_response(&p, 0.53, 0.01).alpha1().unwrap();
        assert!((b - 0.102374).abs() < 1e-12);
        assert!((b - 0.1024).abs() < 5e-5);
        assert_eq!(
            specialist_best_response(&p, 0.3, Openness::ClosedLimit),
            SpecialistResponse::Improve(0.1)
        );
    }

    #[test]
    fn specialist_boundary_returns_baseline_exactly() {
        let p = GameParams::new(0.25, 0.1, 1.0).unwrap();
        assert_eq!(
            specialist_best_response(&p, 1.0, 1.0),
            SpecialistResponse::Improve(0.25)
        );
        let u_d = specialist_utility(&p, 1.0, 1.0, 0.25).unwrap();
        assert!(u_d.abs() <= p.tol);
    }

    #[test]
    fn specialist_abstains_past_participation_limit() {
        let p = GameParams::new(0.1, 0.1, 2.0).unwrap();
        assert_eq!(
            specialist_best_response(&p, 0.0, 1.0),
            SpecialistResponse::Abstain
        );
        let limit = participation_limit(0.0, 2.0).unwrap();
        assert!((limit - 0.5).abs() < 1e-15);
        assert!(specialist_participates(0.0, limit, 2.0));
        assert_eq!(participation_limit(0.5, 0.1), None);
    }

    #[test]
    fn coefficient_degenerate_cases() {
        let p = GameParams::new(0.3, 0.2, 0.0).unwrap();
        assert_eq!(quadratic_coefficients(&p, 0.2).a, 0.0);

        let q = GameParams::new(0.3, 0.2, 0.07).unwrap();
        let k = quadratic_coefficients(&q, 1.0);
        assert!((k.c - (0.2 - 2.0 + 0.07) * 0.3).abs() < 1e-15);
    }

    #[test]
    fn roots_are_stationary_points_of_reduced_utility() {
        let p = reference();
        for delta in [0.0, 0.2, 0.5, 0.8, 0.97] {
            let k = quadratic_coefficients(&p, delta);
            assert!(k.a.is_finite() && k.b.is_finite() && k.c.is_finite());
            for root in k.real_roots() {
                if root > 0.0 && root < 1.0 {
                    let slope = central_difference(|w| reduced_utility(&p, delta, w), root);
                    assert!(
                        slope.abs() < 1e-6,
                        "delta={delta} root={root} slope={slope}"
                    );
                }
            }
        }
    }

    #[test]
    fn coefficients_match_finite_difference_derivative() {
        let p = GameParams::new(0.7, 0.4, 0.2).unwrap();
        for delta in [0.1, 0.45, 0.9] {
            let k = quadratic_coefficients(&p, delta);
            for w in [0.05, 0.3, 0.6, 0.95] {
                let fd = central_difference(|x| reduced_utility(&p, delta, x), w);
                assert!((fd - k.eval(w)).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn linear_and_empty_root_cases() {
        let lin = QuadraticCoefficients {
            a: 0.0,
            b: 2.0,
            c: -1.0,
        };
        assert_eq!(lin.real_roots(), vec![0.5]);
        let none = QuadraticCoefficients {
            a: 0.0,
            b: 0.0,
            c: 1.0,
        };
        assert!(none.real_roots().is_empty());
        let complex = QuadraticCoefficients {
            a: 1.0,
            b: 0.0,
            c: 1.0,
        };
        assert!(complex.real_roots().is_empty());
    }

    #[test]
    fn candidates_include_threshold() {
        let p = reference();
        let reg = Regulation::new(0.6, 0.05).unwrap();
        let cands = generalist_candidates(&p, &reg, 0.97);
        assert!(cands.contains(&Candidate::Release(0.6)));
        assert!(cands.contains(&Candidate::Release(0.01)));
        assert!(cands.contains(&Candidate::Release(1.0)));
        assert_eq!(cands.last(), Some(&Candidate::Abstain));
    }

    #[test]
    fn zero_threshold_is_not_a_separate_candidate() {
        let p = reference();
        let cands = generalist_candidates(&p, &Regulation::new(0.0, 0.1).unwrap(), 0.5);
        assert!(!cands.contains(&Candidate::Release(0.0)));
        assert!(cands.contains(&Candidate::Release(0.01)));
    }

    #[test]
    fn complex_roots_leave_only_boundaries() {
        // delta = 0.97 > c_omega, so the participation limit is absent too.
        let p = reference();
        let k = quadratic_coefficients(&p, 0.97);
        assert!(k.b * k.b - 4.0 * k.a * k.c < 0.0);
        let reg = Regulation::new(0.6, 0.05).unwrap();
        assert_eq!(
            generalist_candidates(&p, &reg, 0.97),
            vec![
                Candidate::Release(0.01),
                Candidate::Release(0.6),
                Candidate::Release(1.0),
                Candidate::Abstain
            ]
        );
    }

    #[test]
    fn generalist_response_examples() {
        let p = reference();
        let reg = Regulation::new(0.6, 0.05).unwrap();
        let reg_choice = generalist_best_response(&p, &reg, 0.97);
        assert_eq!(reg_choice.profile.omega, Some(0.6));
        assert!((reg_choice.u_g - 0.0575).abs() < 5e-4);

        let free = generalist_best_response(&p, &Regulation::none(), 0.53);
        assert_eq!(free.profile.omega, Some(0.01));
        assert!((free.u_g - 0.0478).abs() < 5e-4);
    }

    #[test]
    fn generalist_abstains_when_every_release_loses() {
        let p = GameParams::new(1e-3, 0.0, 0.0).unwrap();
        let reg = Regulation::new(1.0, 100.0).unwrap();
        let choice = generalist_best_response(&p, &reg, 0.0);
        assert!(choice.profile.g_abstained());
        assert!(choice.profile.d_abstained());
        assert_eq!((choice.u_g, choice.u_d), (0.0, 0.0));
    }

    #[test]
    fn ties_prefer_more_open_release() {
        let release = |omega: f64, u_g: f64| GeneralistChoice {
            profile: StrategyProfile {
                delta: 0.5,
                omega: Some(omega),
                alpha1: Some(0.1),
            },
            u_g,
            u_d: 0.0,
        };
        let picked = select_release(
            vec![
                release(0.01, 0.3),
                release(0.4, 0.3 - 1e-12),
                release(1.0, 0.2),
            ],
            1e-9,
        );
        assert_eq!(picked.unwrap().profile.omega, Some(0.4));
        assert!(select_release(vec![release(0.5, -1e-3)], 1e-9).is_none());
    }

    #[test]
    fn specialist_abstention_keeps_generalist_costs() {
        let p = GameParams::new(0.2, 0.5, 3.0).unwrap();
        let r = evaluate_release(&p, &Regulation::none(), 0.0, 1.0);
        assert!(r.profile.d_abstained());
        assert_eq!(r.u_d, 0.0);
        let expected = generalist_utility(&p, &Regulation::none(), 0.0, 1.0, 0.2);
        assert_eq!(r.u_g, expected);
    }
}
