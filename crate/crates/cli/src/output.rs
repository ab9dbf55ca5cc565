//! CSV and JSON serialization of solver results.

use openness_core::{Equilibrium, GameParams, Regulation};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{CliError, Result};

/// Rounds to 12 significant digits. Written with the shortest round-trip
/// formatter, the result reads back to the same `f64`.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn round_opt(x: Option<f64>) -> Option<f64> {
    x.map(round12)
}

/// One equilibrium row. Abstentions leave `omega_star` and `alpha1_star`
/// empty; cells outside the model's domain leave every result empty and
/// carry `INVALID` as region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumRecord {
    pub alpha0: f64,
    pub eps: f64,
    pub c_omega: f64,
    pub theta: f64,
    pub penalty: f64,
    pub rule: String,
    pub delta_star: Option<f64>,
    pub omega_star: Option<f64>,
    pub alpha1_star: Option<f64>,
    pub u_g: Option<f64>,
    pub u_d: Option<f64>,
    pub region: String,
}

pub const INVALID_REGION: &str = "INVALID";

impl EquilibriumRecord {
    pub fn new(
        params: &GameParams,
        reg: &Regulation,
        rule: &str,
        eq: Option<&Equilibrium>,
    ) -> Self {
        let region = eq
            .and_then(|e| e.region)
            .map_or(INVALID_REGION.to_string(), |r| r.to_string());
        Self {
            alpha0: round12(params.alpha0),
            eps: round12(params.eps),
            c_omega: round12(params.c_omega),
            theta: round12(reg.theta),
            penalty: round12(reg.penalty),
            rule: rule.to_string(),
            delta_star: round_opt(eq.map(|e| e.delta())),
            omega_star: round_opt(eq.and_then(|e| e.omega())),
            alpha1_star: round_opt(eq.and_then(|e| e.alpha1())),
            u_g: round_opt(eq.map(|e| e.u_g)),
            u_d: round_opt(eq.map(|e| e.u_d)),
            region,
        }
    }
}

/// Equilibrium row with the policy-scan flag appended.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParetoRecord {
    pub alpha0: f64,
    pub eps: f64,
    pub c_omega: f64,
    pub theta: f64,
    pub penalty: f64,
    pub rule: String,
    pub delta_star: Option<f64>,
    pub omega_star: Option<f64>,
    pub alpha1_star: Option<f64>,
    pub u_g: Option<f64>,
    pub u_d: Option<f64>,
    pub region: String,
    pub pareto_optimal: bool,
}

impl ParetoRecord {
    pub fn new(r: EquilibriumRecord, pareto_optimal: bool) -> Self {
        Self {
            alpha0: r.alpha0,
            eps: r.eps,
            c_omega: r.c_omega,
            theta: r.theta,
            penalty: r.penalty,
            rule: r.rule,
            delta_star: r.delta_star,
            omega_star: r.omega_star,
            alpha1_star: r.alpha1_star,
            u_g: r.u_g,
            u_d: r.u_d,
            region: r.region,
            pareto_optimal,
        }
    }
}

/// One threshold on the indifference curve. `delta` and `alpha1` come from
/// the equilibrium at `(theta, p_numeric)` and feed `p_closed_form`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndifferenceRecord {
    pub theta: f64,
    pub rule: String,
    pub delta: f64,
    pub alpha1: Option<f64>,
    pub p_closed_form: Option<f64>,
    pub p_numeric: f64,
    pub complies: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Records {
    Equilibria(Vec<EquilibriumRecord>),
    Pareto(Vec<ParetoRecord>),
    Indifference(Vec<IndifferenceRecord>),
}

impl Records {
    pub fn len(&self) -> usize {
        match self {
            Records::Equilibria(r) => r.len(),
            Records::Pareto(r) => r.len(),
            Records::Indifference(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn write_csv<T: Serialize>(rows: &[T], header: &[&str]) -> Result<String> {
    let mut wtr = csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let encode = |e: csv::Error| CliError::Io(format!("csv encoding: {e}"));
    wtr.write_record(header).map_err(encode)?;
    for row in rows {
        wtr.serialize(row).map_err(encode)?;
    }
    let bytes = wtr
        .into_inner()
        .map_err(|e| CliError::Io(format!("csv encoding: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub const EQUILIBRIUM_HEADER: [&str; 12] = [
    "alpha0",
    "eps",
    "c_omega",
    "theta",
    "penalty",
    "rule",
    "delta_star",
    "omega_star",
    "alpha1_star",
    "u_g",
    "u_d",
    "region",
];

pub fn to_csv(records: &Records) -> Result<String> {
    match records {
        Records::Equilibria(rows) => write_csv(rows, &EQUILIBRIUM_HEADER),
        Records::Pareto(rows) => {
            let mut header = EQUILIBRIUM_HEADER.to_vec();
            header.push("pareto_optimal");
            write_csv(rows, &header)
        }
        Records::Indifference(rows) => write_csv(
            rows,
            &[
                "theta",
                "rule",
                "delta",
                "alpha1",
                "p_closed_form",
                "p_numeric",
                "complies",
            ],
        ),
    }
}

/// `{"spec": .., "records": [..]}` with the same fields as the CSV rows.
pub fn to_json(spec: Value, records: &Records) -> Result<String> {
    let rows = match records {
        Records::Equilibria(r) => serde_json::to_value(r),
        Records::Pareto(r) => serde_json::to_value(r),
        Records::Indifference(r) => serde_json::to_value(r),
    }
    .map_err(|e| CliError::Io(format!("json encoding: {e}")))?;
    let mut text = serde_json::to_string_pretty(&json!({ "spec": spec, "records": rows }))
        .map_err(|e| CliError::Io(format!("json encoding: {e}")))?;
    text.push('\n');
    Ok(text)
}

/// Reads rows written by [`to_csv`] for equilibrium output.
pub fn read_equilibrium_csv(text: &str) -> Result<Vec<EquilibriumRecord>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr
        .headers()
        .map_err(|e| CliError::Io(format!("csv decoding: {e}")))?;
    if header.iter().ne(EQUILIBRIUM_HEADER) {
        return Err(CliError::Io(format!(
            "unexpected csv header `{}`",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    rdr.deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| CliError::Io(format!("csv decoding: {e}")))
}
