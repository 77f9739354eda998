//! Command implementations.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_2;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use serde::Serialize;

use entxfer::family::{self, VerifyOutcome};
use entxfer::optimizer::{maximize_pairs, OptimizeRequest, OptimizeResult};
use entxfer::protocol::{self, ProtocolConfig};
use entxfer::tol;
use entxfer::unitary::{build_xxyy, XxYySpec};

use crate::config::{resolve, resolve_list, ConfigFile};
use crate::output::{fmt_f64, write_csv, RunManifest};
use crate::{CliError, GridArgs};

fn echo(map: &mut BTreeMap<String, String>, key: &str, value: impl ToString) {
    map.insert(key.to_string(), value.to_string());
}

/// One buffered write; a closed pipe on the consumer side is not an
/// error.
fn emit(report: &str) -> Result<(), CliError> {
    match std::io::stdout().write_all(report.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(CliError::failure(format!("cannot write report: {e}"))),
    }
}

fn require_finite(name: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::usage(format!("{name} must be finite")))
    }
}

fn linspace(min: f64, max: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![min];
    }
    (0..points)
        .map(|i| min + (max - min) * i as f64 / (points - 1) as f64)
        .collect()
}

/// Integer-stepped `x` grid: a single value when `x` is given, else
/// `x_min, x_min + 1, ..., <= x_max`.
fn x_grid(
    x: Option<f64>,
    x_min: Option<f64>,
    x_max: Option<f64>,
    config: &ConfigFile,
    defaults: (f64, f64),
) -> Result<Vec<f64>, CliError> {
    if let Some(single) = x {
        let single = require_finite("x", single)?;
        if single < 0.0 {
            return Err(CliError::usage("x must be nonnegative"));
        }
        return Ok(vec![single]);
    }
    let min = require_finite("x-min", resolve(x_min, config, "x-min", defaults.0)?)?;
    let max = require_finite("x-max", resolve(x_max, config, "x-max", defaults.1)?)?;
    if min < 0.0 || max < min {
        return Err(CliError::usage("x range must satisfy 0 <= x-min <= x-max"));
    }
    let mut grid = Vec::new();
    let mut v = min;
    while v <= max + 1e-12 {
        grid.push(v);
        v += 1.0;
    }
    Ok(grid)
}

fn lambda_grid(
    grid: &GridArgs,
    config: &ConfigFile,
    default_points: usize,
) -> Result<(Vec<f64>, BTreeMap<String, String>), CliError> {
    let mut echo_map = BTreeMap::new();
    if let Some(explicit) = resolve_list(&grid.lambda, config, "lambda")? {
        for &l in &explicit {
            require_finite("lambda", l)?;
        }
        echo(
            &mut echo_map,
            "lambda",
            explicit
                .iter()
                .map(|l| l.to_string())
                .collect::<Vec<_>>()
                .join(","),
        );
        return Ok((explicit, echo_map));
    }
    let min = require_finite(
        "lambda-min",
        resolve(grid.lambda_min, config, "lambda-min", 0.0)?,
    )?;
    let max = require_finite(
        "lambda-max",
        resolve(grid.lambda_max, config, "lambda-max", FRAC_PI_2)?,
    )?;
    let points = resolve(grid.points, config, "points", default_points)?;
    if max < min {
        return Err(CliError::usage("lambda-max must be at least lambda-min"));
    }
    if points < 2 {
        return Err(CliError::usage("points must be at least 2"));
    }
    echo(&mut echo_map, "lambda-min", min);
    echo(&mut echo_map, "lambda-max", max);
    echo(&mut echo_map, "points", points);
    Ok((linspace(min, max, points), echo_map))
}

pub fn sweep_single(
    config: &ConfigFile,
    grid: GridArgs,
    out: Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    let started = Instant::now();
    let (lambdas, mut echo_map) = lambda_grid(&grid, config, 200)?;
    let out = out.unwrap_or_else(|| PathBuf::from("sweep_single.csv"));
    echo(&mut echo_map, "out", out.display().to_string());

    let protocol_config = ProtocolConfig::with_xxyy(0.0)?;
    let rows = protocol::sweep(&protocol_config, &lambdas, 1)?;
    write_csv(
        &out,
        &["lambda", "e_cd_1", "e_ab_1", "sum"],
        rows.iter().map(|r| {
            vec![
                fmt_f64(r.lambda),
                fmt_f64(r.e_cd),
                fmt_f64(r.e_ab),
                fmt_f64(r.e_cd + r.e_ab),
            ]
        }),
    )?;

    let mut manifest = RunManifest::new("sweep-single", echo_map, None);
    manifest.wall_time_seconds = started.elapsed().as_secs_f64();
    manifest.add_output(&out)?;
    manifest.write_next_to(&out)?;
    Ok(ExitCode::SUCCESS)
}

pub fn sweep_multi(
    config: &ConfigFile,
    grid: GridArgs,
    rounds: Option<usize>,
    cap: Option<usize>,
    out: Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    let started = Instant::now();
    let (lambdas, mut echo_map) = lambda_grid(&grid, config, 50)?;
    let rounds = resolve(rounds, config, "rounds", 10)?;
    let cap = resolve(cap, config, "cap", tol::MAX_ROUNDS)?;
    let out = out.unwrap_or_else(|| PathBuf::from("sweep_multi.csv"));
    if rounds == 0 {
        return Err(CliError::usage("rounds must be at least 1"));
    }
    echo(&mut echo_map, "rounds", rounds);
    echo(&mut echo_map, "cap", cap);
    echo(&mut echo_map, "out", out.display().to_string());

    let mut protocol_config = ProtocolConfig::with_xxyy(0.0)?;
    protocol_config.max_rounds = cap;
    let rows = protocol::sweep(&protocol_config, &lambdas, rounds)?;
    write_csv(
        &out,
        &["lambda", "n", "e_cd_n", "e_ab_n"],
        rows.iter().map(|r| {
            vec![
                fmt_f64(r.lambda),
                r.round.to_string(),
                fmt_f64(r.e_cd),
                fmt_f64(r.e_ab),
            ]
        }),
    )?;

    let mut manifest = RunManifest::new("sweep-multi", echo_map, None);
    manifest.wall_time_seconds = started.elapsed().as_secs_f64();
    manifest.add_output(&out)?;
    manifest.write_next_to(&out)?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
pub fn count(
    config: &ConfigFile,
    x: Option<f64>,
    x_min: Option<f64>,
    x_max: Option<f64>,
    lambda: Option<f64>,
    cap: Option<usize>,
    out: Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    let started = Instant::now();
    let xs = x_grid(x, x_min, x_max, config, (1.0, 12.0))?;
    let lambda = require_finite("lambda", resolve(lambda, config, "lambda", 0.1)?)?;
    let cap = resolve(cap, config, "cap", tol::MAX_ROUNDS)?;
    let out = out.unwrap_or_else(|| PathBuf::from("count.csv"));

    let mut echo_map = BTreeMap::new();
    echo(&mut echo_map, "x-min", xs.first().copied().unwrap_or(0.0));
    echo(&mut echo_map, "x-max", xs.last().copied().unwrap_or(0.0));
    echo(&mut echo_map, "lambda", lambda);
    echo(&mut echo_map, "cap", cap);
    echo(&mut echo_map, "out", out.display().to_string());

    let u = build_xxyy(&XxYySpec::new(lambda)?);
    let mut rows = Vec::with_capacity(xs.len());
    for &x in &xs {
        let count = protocol::count_pairs(&u, x, cap)?;
        rows.push(vec![fmt_f64(x), count.pairs.to_string()]);
    }
    write_csv(&out, &["x", "n"], rows)?;

    let mut manifest = RunManifest::new("count", echo_map, None);
    manifest.wall_time_seconds = started.elapsed().as_secs_f64();
    manifest.add_output(&out)?;
    manifest.write_next_to(&out)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct OptimizeRecord {
    x: f64,
    result: OptimizeResult,
}

#[allow(clippy::too_many_arguments)]
pub fn optimize(
    config: &ConfigFile,
    x: Option<f64>,
    x_min: Option<f64>,
    x_max: Option<f64>,
    restarts: Option<usize>,
    seed: Option<u64>,
    cap: Option<usize>,
    out: Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    let started = Instant::now();
    let xs = x_grid(x, x_min, x_max, config, (1.0, 5.0))?;
    let restarts = resolve(restarts, config, "restarts", 4)?;
    let seed = resolve(seed, config, "seed", 42u64)?;
    let cap = resolve(cap, config, "cap", 500)?;
    let max_evals = resolve(None, config, "max-evals", 200usize)?;
    let out = out.unwrap_or_else(|| PathBuf::from("optimize.csv"));
    let results_path = out.with_extension("results.json");

    let mut echo_map = BTreeMap::new();
    echo(&mut echo_map, "x-min", xs.first().copied().unwrap_or(0.0));
    echo(&mut echo_map, "x-max", xs.last().copied().unwrap_or(0.0));
    echo(&mut echo_map, "restarts", restarts);
    echo(&mut echo_map, "seed", seed);
    echo(&mut echo_map, "cap", cap);
    echo(&mut echo_map, "max-evals", max_evals);
    echo(&mut echo_map, "out", out.display().to_string());

    // Ascending x with warm starts: each run re-seeds from the best
    // point of the previous (smaller) x, so the reported counts are
    // monotone in x by construction.
    let mut rows = Vec::with_capacity(xs.len());
    let mut records = Vec::with_capacity(xs.len());
    let mut warm: Option<[f64; 15]> = None;
    for &x in &xs {
        let mut request = OptimizeRequest::new(x, seed);
        request.restarts = restarts;
        request.max_evals = max_evals;
        request.round_cap = cap;
        request.extra_starts = warm.into_iter().collect();
        let result = maximize_pairs(&request)?;
        warm = Some(result.best_theta);
        rows.push(vec![
            fmt_f64(x),
            result.best_n.to_string(),
            fmt_f64(result.tie_margin),
        ]);
        records.push(OptimizeRecord { x, result });
    }
    write_csv(&out, &["x", "best_n", "margin"], rows)?;
    let json = serde_json::to_string_pretty(&records)
        .map_err(|e| CliError::failure(format!("cannot serialize results: {e}")))?;
    std::fs::write(&results_path, json)
        .map_err(|e| CliError::failure(format!("cannot write {}: {e}", results_path.display())))?;

    let mut manifest = RunManifest::new("optimize", echo_map, Some(seed));
    manifest.wall_time_seconds = started.elapsed().as_secs_f64();
    manifest.add_output(&out)?;
    manifest.add_output(&results_path)?;
    manifest.write_next_to(&out)?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify(
    config: &ConfigFile,
    n_target: usize,
    t: Option<f64>,
    out: Option<PathBuf>,
) -> Result<ExitCode, CliError> {
    let started = Instant::now();
    let t_flag =
        match t {
            Some(v) => Some(require_finite("t", v)?),
            None => match config.get("t") {
                Some(raw) => Some(raw.parse().map_err(|_| {
                    CliError::usage(format!("config key `t`: cannot parse `{raw}`"))
                })?),
                None => None,
            },
        };

    let (t_used, outcome) = match t_flag {
        Some(t) => (t, family::verify_theorem(n_target, t)?),
        None => {
            let (t, cert) = match family::find_t(n_target) {
                Ok(found) => found,
                Err(entxfer::Error::NoFeasibleT { .. }) => {
                    emit(&format!(
                        "result = failed\nn_target = {n_target}\ndetail = no feasible t found\n"
                    ))?;
                    let mut echo_map = BTreeMap::new();
                    echo(&mut echo_map, "n-target", n_target);
                    let anchor = out.unwrap_or_else(|| PathBuf::from("verify"));
                    let mut manifest = RunManifest::new("verify", echo_map, None);
                    manifest.wall_time_seconds = started.elapsed().as_secs_f64();
                    manifest.write_next_to(&anchor)?;
                    return Ok(ExitCode::from(1));
                }
                Err(e) => return Err(e.into()),
            };
            (t, VerifyOutcome::Certified(cert))
        }
    };

    let mut echo_map = BTreeMap::new();
    echo(&mut echo_map, "n-target", n_target);
    echo(&mut echo_map, "t", t_used);
    if let Some(path) = &out {
        echo(&mut echo_map, "out", path.display().to_string());
    }

    let mut report = format!("t = {}\n", fmt_f64(t_used));
    let exit = match &outcome {
        VerifyOutcome::Certified(cert) => {
            let min_e = cert.e_cd.iter().copied().fold(f64::INFINITY, f64::min);
            report.push_str("result = certified\n");
            report.push_str(&format!("rounds = {}\n", cert.rounds_checked));
            report.push_str(&format!("min_e_cd = {}\n", fmt_f64(min_e)));
            report.push_str("round,e_cd,lookahead_margin\n");
            let rows: Vec<Vec<String>> = cert
                .e_cd
                .iter()
                .enumerate()
                .map(|(i, &e)| {
                    let round = i + 1;
                    let margin = if round >= 3 {
                        cert.lookahead_margins
                            .get(round - 3)
                            .map(|m| fmt_f64(*m))
                            .unwrap_or_default()
                    } else {
                        String::new()
                    };
                    vec![round.to_string(), fmt_f64(e), margin]
                })
                .collect();
            for row in &rows {
                report.push_str(&row.join(","));
                report.push('\n');
            }
            if let Some(path) = &out {
                write_csv(path, &["round", "e_cd", "lookahead_margin"], rows)?;
            }
            ExitCode::SUCCESS
        }
        VerifyOutcome::Failed(failure) => {
            report.push_str("result = failed\n");
            report.push_str(&format!("failed_round = {}\n", failure.round));
            report.push_str(&format!("failed_e_cd = {}\n", fmt_f64(failure.e_cd)));
            report.push_str(&format!(
                "failed_min_pt_eig = {}\n",
                fmt_f64(failure.min_pt_eigenvalue)
            ));
            ExitCode::from(1)
        }
    };
    emit(&report)?;

    let anchor = out.clone().unwrap_or_else(|| PathBuf::from("verify"));
    let mut manifest = RunManifest::new("verify", echo_map, None);
    manifest.wall_time_seconds = started.elapsed().as_secs_f64();
    if let Some(path) = &out {
        if matches!(outcome, VerifyOutcome::Certified(_)) {
            manifest.add_output(path)?;
        }
    }
    manifest.write_next_to(&anchor)?;
    Ok(exit)
}
