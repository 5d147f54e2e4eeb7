use std::fs;
use std::path::Path;
use std::time::Instant;

use mcap::generate::{random_instance_seeded, GeneratorConfig};
use mcap::io::{format_rational, instance_from_json, instance_to_json, matrix_from_json, matrix_to_json};
use mcap::learning::{
    fit_categories, predict_preferences_cf, FitOptions, Rating, RatingsMatrix, ResponseRecord,
};
use mcap::reduction::{
    check_reduction_matrix, embed_assignment, extract_assignment, parse_dimacs,
    parse_dimacs_sanitized, reduce_3sat, BooleanAssignment, ReducedInstance, ReductionSidecar,
};
use mcap::solvers::{
    brute_force_solve_with, dp_solve_with, dp_state_count, greedy_construct, local_search,
    solve_constant_suppression, solve_unbounded,
};
use mcap::{
    check_feasibility, evaluate_fitness, AssignmentMatrix, BigRational, BoundKind, Error,
    Instance, Result, SolveResult,
};
use serde_json::{json, Value};

use crate::config::{Command, Guards, Method, ReducedFiles, RunConfig};
use crate::report::{Report, EXIT_INFEASIBLE, EXIT_OTHER};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    let text = if text.ends_with('\n') { text.to_owned() } else { format!("{text}\n") };
    fs::write(path, text)
        .map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance> {
    instance_from_json(&read(path)?)
}

fn load_matrix(path: &Path) -> Result<AssignmentMatrix> {
    matrix_from_json(&read(path)?)
}

fn load_reduced(files: &ReducedFiles) -> Result<ReducedInstance> {
    let sidecar: ReductionSidecar = read_json(&files.sidecar)?;
    ReducedInstance::from_parts(load_instance(&files.instance)?, &sidecar)
}

pub fn run(config: &RunConfig) -> Result<Report> {
    match &config.command {
        Command::Evaluate { instance, matrix } => evaluate(&load_instance(instance)?, &load_matrix(matrix)?),
        Command::Solve { instance, method, start, guards, out } => {
            let inst = load_instance(instance)?;
            let start = start.as_deref().map(load_matrix).transpose()?;
            let (used, res) = solve(&inst, *method, start.as_ref(), guards)?;
            if let Some(out) = out {
                write(out, &matrix_to_json(&res.matrix))?;
            }
            Ok(Report::ok(json!({
                "method": used,
                "fitness": format_rational(&res.fitness),
                "optimal": res.optimal,
                "explored": res.stats.explored,
                "column_sums": res.matrix.column_sums(),
                "matrix": res.matrix.to_row_strings(),
            })))
        }
        Command::Reduce { cnf, sanitize, out, sidecar } => {
            let text = read(cnf)?;
            let formula = if *sanitize { parse_dimacs_sanitized(&text) } else { parse_dimacs(&text) }?;
            let red = reduce_3sat(&formula);
            write(out, &instance_to_json(&red.instance))?;
            let car = ReductionSidecar::from(&red);
            write(sidecar, &serde_json::to_string_pretty(&car).unwrap())?;
            Ok(Report::ok(json!({
                "variables": formula.num_vars(),
                "clauses": formula.num_clauses(),
                "n": red.instance.n(),
                "k": red.instance.k(),
                "threshold": red.threshold.to_string(),
            })))
        }
        Command::Embed { files, assignment, out } => {
            let red = load_reduced(files)?;
            let a: BooleanAssignment = assignment.parse()?;
            let m = embed_assignment(&red, &a)?;
            if let Some(out) = out {
                write(out, &matrix_to_json(&m))?;
            }
            Ok(Report::ok(json!({
                "assignment": a.to_string(),
                "fitness": format_rational(&evaluate_fitness(&red.instance, &m)?),
                "threshold": red.threshold.to_string(),
                "matrix": m.to_row_strings(),
            })))
        }
        Command::Extract { files, matrix } => {
            let red = load_reduced(files)?;
            let a = extract_assignment(&red, &load_matrix(matrix)?)?;
            Ok(Report::ok(json!({
                "assignment": a.to_string(),
                "satisfies": red.formula.is_satisfied_by(&a),
            })))
        }
        Command::Verify { files, matrix } => verify(&load_reduced(files)?, &load_matrix(matrix)?),
        Command::Gen {
            seed,
            n,
            k,
            pref_min,
            pref_max,
            weight_min,
            weight_max,
            suppression,
            grid,
            bounds,
            out,
        } => {
            let config = GeneratorConfig {
                n: *n,
                k: *k,
                preference_range: (*pref_min, *pref_max),
                weight_range: (*weight_min, *weight_max),
                family: *suppression,
                grid: *grid,
                bounds: (*bounds).into(),
            };
            let inst = random_instance_seeded(&config, *seed)?;
            let text = instance_to_json(&inst);
            match out {
                Some(out) => {
                    write(out, &text)?;
                    Ok(Report::ok(json!({ "seed": seed, "n": n, "k": k, "written": out })))
                }
                None => Ok(Report::ok(serde_json::from_str(&text).unwrap())),
            }
        }
        Command::Fit { records, labels, max_h, grid, restarts, seed, monotone, out } => {
            let records: Vec<ResponseRecord> = read_json(records)?;
            let labels: Vec<usize> = match labels {
                Some(path) => read_json(path)?,
                None => vec![0; records.iter().map(|r| r.customer + 1).max().unwrap_or(0)],
            };
            if *grid == 0 {
                return Err(Error::Precondition("grid must be positive".into()));
            }
            let options = FitOptions {
                max_h: *max_h,
                grid: *grid,
                restarts: *restarts,
                seed: *seed,
                monotone: *monotone,
            };
            let categories: Vec<Value> = fit_categories(&records, &labels, &options)?
                .into_iter()
                .map(|(category, fit)| {
                    json!({
                        "category": category.id,
                        "members": category.members,
                        "table": fit.table.values().iter().map(format_rational).collect::<Vec<_>>(),
                        "satisfied": fit.satisfied,
                        "total": fit.total,
                    })
                })
                .collect();
            let value = json!({ "categories": categories });
            if let Some(out) = out {
                write(out, &serde_json::to_string_pretty(&value).unwrap())?;
            }
            Ok(Report::ok(value))
        }
        Command::Predict { ratings, customer, campaign, neighbors } => {
            let triplets: Vec<Rating> = read_json(ratings)?;
            let m = RatingsMatrix::from_triplets(&triplets)?;
            if let (Some(i), Some(j)) = (customer, campaign) {
                let observed = *i < m.n() && *j < m.k() && m.get(*i, *j).is_some();
                return Ok(Report::ok(json!({
                    "customer": i,
                    "campaign": j,
                    "rating": predict_preferences_cf(&m, *i, *j, *neighbors),
                    "observed": observed,
                })));
            }
            let predictions: Vec<Value> = (0..m.n())
                .flat_map(|i| (0..m.k()).map(move |j| (i, j)))
                .filter(|&(i, j)| m.get(i, j).is_none())
                .map(|(i, j)| {
                    json!({ "customer": i, "campaign": j, "rating": predict_preferences_cf(&m, i, j, *neighbors) })
                })
                .collect();
            Ok(Report::ok(json!({ "predictions": predictions })))
        }
        Command::Bench { instance, guards } => bench(&load_instance(instance)?, guards),
    }
}

fn evaluate(inst: &Instance, m: &AssignmentMatrix) -> Result<Report> {
    let fitness = evaluate_fitness(inst, m)?;
    let report = check_feasibility(inst, m)?;
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            let (kind, bound) = match v.bound {
                BoundKind::Lower => ("lower", inst.lower_bounds()[v.campaign]),
                BoundKind::Upper => ("upper", inst.upper_bounds()[v.campaign]),
            };
            json!({ "campaign": v.campaign, "sum": v.sum, "bound": kind, "limit": bound })
        })
        .collect();
    Ok(Report {
        value: json!({
            "fitness": format_rational(&fitness),
            "feasible": report.feasible,
            "column_sums": report.column_sums,
            "violations": violations,
        }),
        status: if report.feasible { 0 } else { EXIT_INFEASIBLE },
    })
}

fn verify(red: &ReducedInstance, m: &AssignmentMatrix) -> Result<Report> {
    let check = check_reduction_matrix(red, m)?;
    let status = if !check.feasible {
        EXIT_INFEASIBLE
    } else if check.meets_threshold && check.properties_hold() {
        0
    } else {
        EXIT_OTHER
    };
    Ok(Report {
        value: json!({
            "fitness": format_rational(&check.fitness),
            "threshold": red.threshold.to_string(),
            "feasible": check.feasible,
            "meets_threshold": check.meets_threshold,
            "positive_cells": check.positive_cells,
            "unit_suppression": check.unit_suppression,
            "all_or_nothing": check.all_or_nothing,
            "one_literal_per_variable": check.one_literal_per_variable,
        }),
        status,
    })
}

fn dp_fits(inst: &Instance, guards: &Guards) -> bool {
    dp_state_count(inst).is_some_and(|s| s <= guards.max_states)
}

fn solve(
    inst: &Instance,
    method: Method,
    start: Option<&AssignmentMatrix>,
    guards: &Guards,
) -> Result<(&'static str, SolveResult)> {
    let local = |inst: &Instance| match start {
        Some(m) => local_search(inst, m),
        None => local_search(inst, &greedy_construct(inst)?.matrix),
    };
    Ok(match method {
        Method::Brute => ("brute", brute_force_solve_with(inst, guards.max_brute)?),
        Method::Dp => ("dp", dp_solve_with(inst, guards.max_states)?),
        Method::Const => ("const", solve_constant_suppression(inst)?),
        Method::Unbounded => ("unbounded", solve_unbounded(inst)?),
        Method::Greedy => ("greedy", greedy_construct(inst)?),
        Method::Local => ("local", local(inst)?),
        Method::Auto if dp_fits(inst, guards) => ("dp", dp_solve_with(inst, guards.max_states)?),
        Method::Auto => ("local", local(inst)?),
    })
}

fn bench(inst: &Instance, guards: &Guards) -> Result<Report> {
    let methods = [
        Method::Dp,
        Method::Brute,
        Method::Const,
        Method::Unbounded,
        Method::Greedy,
        Method::Local,
    ];
    let mut optimum: Option<BigRational> = None;
    let mut rows = Vec::new();
    for method in methods {
        let started = Instant::now();
        let outcome = solve(inst, method, None, guards);
        let ms = started.elapsed().as_secs_f64() * 1e3;
        let name = format!("{method:?}").to_lowercase();
        let row = match outcome {
            Ok((_, res)) => {
                if method == Method::Dp {
                    optimum = Some(res.fitness.clone());
                }
                let gap = optimum.as_ref().map_or("-".to_owned(), |best| {
                    if *best == BigRational::from_integer(0.into()) {
                        "0".to_owned()
                    } else {
                        format_rational(&((best - &res.fitness) / best))
                    }
                });
                json!({
                    "method": name,
                    "status": "ok",
                    "fitness": format_rational(&res.fitness),
                    "optimal": res.optimal,
                    "gap": gap,
                    "time_ms": format!("{ms:.3}"),
                })
            }
            Err(Error::GuardExceeded(_)) | Err(Error::Precondition(_)) => json!({
                "method": name,
                "status": "skipped",
                "fitness": "-",
                "optimal": false,
                "gap": "-",
                "time_ms": "-",
            }),
            Err(e) => return Err(e),
        };
        rows.push(row);
    }
    Ok(Report::ok(json!({
        "n": inst.n(),
        "k": inst.k(),
        "optimum": optimum.as_ref().map(format_rational),
        "rows": rows,
    })))
}
