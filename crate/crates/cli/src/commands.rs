use openness_core::regulation::{complies, solve_baseline};
use openness_core::{
    classify_cell, indifference_boundary_numeric, indifference_penalty, pareto_optimal_policies,
    run_sweep, solve_bargain, solve_bargain_with, Axis, BargainingRule, Execution, RegionLabel,
    Regulation, SweepSpec, SweepTable,
};
use serde_json::{json, Value};

use crate::config::{Command, RunConfig};
use crate::error::{CliError, Result};
use crate::output::{round12, EquilibriumRecord, IndifferenceRecord, ParetoRecord, Records};

/// Solved records plus a short description for the summary line.
pub struct Outcome {
    pub records: Records,
    pub note: String,
}

pub fn execute(config: &RunConfig) -> Result<Outcome> {
    match config.command {
        Command::Solve => solve(config),
        Command::Sweep => sweep(config),
        Command::Indifference => indifference(config),
        Command::Pareto => pareto(config),
        Command::Baseline => baseline(config),
    }
}

fn solve(config: &RunConfig) -> Result<Outcome> {
    let mut eq = solve_bargain(&config.params, &config.reg, config.rule);
    let base = solve_baseline(&config.params, config.rule, Execution::default());
    let region = classify_cell(&eq, &config.reg, &base);
    eq.region = Some(region);
    let record =
        EquilibriumRecord::new(&config.params, &config.reg, config.rule.as_str(), Some(&eq));
    let note = match (eq.omega(), eq.alpha1()) {
        (Some(omega), Some(alpha1)) => format!(
            "delta*={} omega*={} alpha1*={} {region}",
            round12(eq.delta()),
            round12(omega),
            round12(alpha1)
        ),
        _ => region.to_string(),
    };
    Ok(Outcome {
        records: Records::Equilibria(vec![record]),
        note,
    })
}

fn sweep_table(spec: &SweepSpec, command: Command) -> Result<SweepTable> {
    run_sweep(spec).map_err(|e| CliError::model(command.as_str(), e))
}

fn table_records(table: &SweepTable) -> Vec<EquilibriumRecord> {
    let rule = table.spec.rule.as_str();
    table
        .cells
        .iter()
        .map(|c| EquilibriumRecord::new(&c.params, &c.reg, rule, c.equilibrium()))
        .collect()
}

fn region_note(tables: &[SweepTable]) -> String {
    let counts: Vec<String> = RegionLabel::ALL
        .iter()
        .filter_map(|&label| {
            let n: usize = tables.iter().map(|t| t.count(label)).sum();
            (n > 0).then(|| format!("{label}={n}"))
        })
        .collect();
    counts.join(" ")
}

fn grid_spec(config: &RunConfig) -> SweepSpec {
    config.sweep.expect("grid commands carry a sweep spec")
}

fn sweep(config: &RunConfig) -> Result<Outcome> {
    let table = sweep_table(&grid_spec(config), config.command)?;
    Ok(Outcome {
        note: region_note(std::slice::from_ref(&table)),
        records: Records::Equilibria(table_records(&table)),
    })
}

fn pareto(config: &RunConfig) -> Result<Outcome> {
    let table = sweep_table(&grid_spec(config), config.command)?;
    let picks = pareto_optimal_policies(
        &table,
        config.options.weight_steps,
        &config.options.objectives,
    )
    .map_err(|e| CliError::Usage(format!("pareto: {e}")))?;
    let mut flagged = vec![false; table.cells.len()];
    for pick in &picks {
        flagged[pick.index] = true;
    }
    let records = table_records(&table)
        .into_iter()
        .zip(flagged)
        .map(|(r, f)| ParetoRecord::new(r, f))
        .collect();
    Ok(Outcome {
        note: format!(
            "{} policy-optimal; {}",
            picks.len(),
            region_note(std::slice::from_ref(&table))
        ),
        records: Records::Pareto(records),
    })
}

fn baseline(config: &RunConfig) -> Result<Outcome> {
    let rules: Vec<BargainingRule> = if config.options.all_rules {
        BargainingRule::ALL.to_vec()
    } else {
        vec![config.rule]
    };
    let mut tables = Vec::with_capacity(rules.len());
    for rule in rules {
        let spec = SweepSpec {
            rule,
            ..grid_spec(config)
        };
        tables.push(sweep_table(&spec, config.command)?);
    }
    Ok(Outcome {
        note: region_note(&tables),
        records: Records::Equilibria(tables.iter().flat_map(table_records).collect()),
    })
}

fn indifference(config: &RunConfig) -> Result<Outcome> {
    let opts = &config.options;
    let thetas = Axis::new(openness_core::SweepParam::Theta, 0.0, 1.0, opts.theta_steps).values();
    let params = config.params;
    let rule = config.rule;
    let rows = Execution::default().map(&thetas, |&theta| -> Result<IndifferenceRecord> {
        let context = || format!("indifference at theta={theta}");
        let p_numeric = indifference_boundary_numeric(&params, rule, theta, opts.p_max, opts.tol_p)
            .map_err(|e| CliError::model(context(), e))?;
        let reg = Regulation::new(theta, p_numeric).map_err(|e| CliError::model(context(), e))?;
        let eq = solve_bargain_with(&params, &reg, rule, Execution::Sequential);
        let alpha1 = eq.alpha1();
        let p_closed_form = alpha1
            .map(|a1| {
                indifference_penalty(
                    theta,
                    eq.delta(),
                    params.alpha0,
                    a1,
                    params.eps,
                    params.c_omega,
                )
            })
            .transpose()
            .map_err(|e| CliError::model(context(), e))?;
        Ok(IndifferenceRecord {
            theta: round12(theta),
            rule: rule.to_string(),
            delta: round12(eq.delta()),
            alpha1: alpha1.map(round12),
            p_closed_form: p_closed_form.map(round12),
            p_numeric: round12(p_numeric),
            complies: complies(&eq, theta),
        })
    });
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let compliant = rows.iter().filter(|r| r.complies).count();
    Ok(Outcome {
        note: format!(
            "{compliant}/{} thresholds reachable below p_max={}",
            rows.len(),
            opts.p_max
        ),
        records: Records::Indifference(rows),
    })
}

fn axis_json(axis: &Axis) -> Value {
    json!({
        "param": axis.param.as_str(),
        "min": round12(axis.min),
        "max": round12(axis.max),
        "steps": axis.steps,
    })
}

/// Inputs that produced the records, for the JSON envelope.
pub fn spec_json(config: &RunConfig) -> Value {
    let p = &config.params;
    let mut spec = json!({
        "command": config.command.as_str(),
        "rule": config.rule.as_str(),
        "alpha0": round12(p.alpha0),
        "eps": round12(p.eps),
        "c_omega": round12(p.c_omega),
        "theta": round12(config.reg.theta),
        "penalty": round12(config.reg.penalty),
        "omega_min": round12(p.omega_min),
        "delta_step": round12(p.delta_step),
        "tol": round12(p.tol),
    });
    let fields = spec.as_object_mut().expect("spec is an object");
    let opts = &config.options;
    if let Some(sweep) = &config.sweep {
        fields.insert("x".into(), axis_json(&sweep.x));
        fields.insert("y".into(), axis_json(&sweep.y));
        // Swept game parameters vary per row.
        for axis in [&sweep.x, &sweep.y] {
            if axis.param.is_game_param() {
                fields.remove(axis.param.as_str());
            }
        }
    }
    match config.command {
        Command::Indifference => {
            fields.insert("p_max".into(), json!(round12(opts.p_max)));
            fields.insert("tol_p".into(), json!(round12(opts.tol_p)));
            fields.insert("steps".into(), json!(opts.theta_steps));
        }
        Command::Pareto => {
            fields.insert("weight_steps".into(), json!(opts.weight_steps));
            let names: Vec<&str> = opts.objectives.iter().map(|o| o.as_str()).collect();
            fields.insert("objectives".into(), json!(names));
        }
        Command::Baseline => {
            let names: Vec<&str> = if opts.all_rules {
                BargainingRule::ALL.iter().map(|r| r.as_str()).collect()
            } else {
                vec![config.rule.as_str()]
            };
            fields.insert("rules".into(), json!(names));
            fields.remove("theta");
            fields.remove("penalty");
        }
        Command::Solve | Command::Sweep => {}
    }
    spec
}
