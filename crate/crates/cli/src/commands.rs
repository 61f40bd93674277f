use std::fs;
use std::io::Write;

use anyhow::{Context, Result};
use boxwell::dist_calc::{
    eigenfunction, potential_term, symmetric_specification_form, symmetric_specification_form_unsifted, DistExpr,
};
use boxwell::oracles::{
    convergence_study, grid_expectation, ladder_from_e1_multiples, GridField, GridObservable, PairSummary,
};
use boxwell::spectral::{
    eigenvalue, evaluate_series, momentum_expectation, position_expectation, Observable, TimeSeries,
};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::output::{fmt17, fmt6, resolve_format, sink, write_csv, write_json, write_table};

#[derive(Serialize)]
struct Level {
    n: usize,
    energy: f64,
    wavenumber: f64,
}

pub fn eigen(cfg: &RunConfig) -> Result<()> {
    let well = &cfg.well;
    let levels = (1..=cfg.eigen_count)
        .map(|n| Ok(Level { n, energy: eigenvalue(n, well)?, wavenumber: well.wavenumber(n) }))
        .collect::<Result<Vec<_>>>()?;
    let mut w = sink(cfg.output.path.as_deref())?;
    match resolve_format(cfg) {
        Some(Format::Json) => {
            #[derive(Serialize)]
            struct Body<'a> {
                levels: &'a [Level],
            }
            write_json(&mut w, cfg, &Body { levels: &levels })?
        }
        Some(Format::Csv) => write_csv(
            &mut w,
            &["n", "energy", "wavenumber"],
            levels.iter().map(|l| vec![l.n.to_string(), fmt17(l.energy), fmt17(l.wavenumber)]),
        )?,
        None => {
            let rows: Vec<_> =
                levels.iter().map(|l| vec![l.n.to_string(), fmt6(l.energy), fmt6(l.wavenumber)]).collect();
            write_table(&mut w, &["n", "E_n", "k_n"], &rows)?
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct VerifyRow {
    t: f64,
    momentum: f64,
    momentum_rate: f64,
    force: f64,
    residual: f64,
}

/// Returns whether the largest residual stays within the threshold.
pub fn verify(cfg: &RunConfig) -> Result<bool> {
    let packet = cfg.packet()?;
    let times = cfg.times()?;
    let exec = cfg.execution();
    let column = |obs| -> Result<Vec<f64>> {
        let s = evaluate_series(obs, &packet, &times, &cfg.well, exec)?;
        Ok(s.values().as_real().expect("real observable").to_vec())
    };
    let (p, dp, f, r) = (
        column(Observable::Momentum)?,
        column(Observable::MomentumRate)?,
        column(Observable::Force)?,
        column(Observable::EhrenfestResidual)?,
    );
    let rows: Vec<VerifyRow> = (0..times.len())
        .map(|i| VerifyRow { t: times[i], momentum: p[i], momentum_rate: dp[i], force: f[i], residual: r[i] })
        .collect();
    let max_abs_residual = r.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let pass = max_abs_residual <= cfg.threshold;
    let status = if pass { "PASS" } else { "FAIL" };

    let mut w = sink(cfg.output.path.as_deref())?;
    match resolve_format(cfg) {
        Some(Format::Json) => {
            #[derive(Serialize)]
            struct Body<'a> {
                packet_digest: String,
                rows: &'a [VerifyRow],
                max_abs_residual: f64,
                threshold: f64,
                pass: bool,
            }
            let body =
                Body { packet_digest: packet.digest(), rows: &rows, max_abs_residual, threshold: cfg.threshold, pass };
            write_json(&mut w, cfg, &body)?;
        }
        Some(Format::Csv) => {
            write_csv(
                &mut w,
                &["t", "momentum", "momentum_rate", "force", "residual"],
                rows.iter().map(|r| {
                    vec![fmt17(r.t), fmt17(r.momentum), fmt17(r.momentum_rate), fmt17(r.force), fmt17(r.residual)]
                }),
            )?;
            eprintln!("max |residual| = {} (threshold {}): {status}", fmt17(max_abs_residual), cfg.threshold);
        }
        None => {
            let table: Vec<_> = rows
                .iter()
                .map(|r| vec![fmt6(r.t), fmt6(r.momentum), fmt6(r.momentum_rate), fmt6(r.force), fmt6(r.residual)])
                .collect();
            write_table(&mut w, &["t", "<p>", "d<p>/dt", "<dV/dx>", "residual"], &table)?;
            writeln!(w, "max |residual| = {} (threshold {}): {status}", fmt6(max_abs_residual), fmt6(cfg.threshold))?;
        }
    }
    w.flush()?;
    Ok(pass)
}

const EVOLVED: [Observable; 3] = [Observable::Momentum, Observable::Position, Observable::Force];

/// With an output path, one file per observable in that directory; otherwise a combined table.
pub fn evolve(cfg: &RunConfig) -> Result<()> {
    let packet = cfg.packet()?;
    let times = cfg.times()?;
    let series = EVOLVED
        .iter()
        .map(|&obs| evaluate_series(obs, &packet, &times, &cfg.well, cfg.execution()))
        .collect::<boxwell::Result<Vec<_>>>()?;
    let format = resolve_format(cfg);

    if let Some(dir) = cfg.output.path.as_deref() {
        fs::create_dir_all(dir).with_context(|| format!("creating output directory {}", dir.display()))?;
        let format = cfg.output.format.unwrap_or(Format::Csv);
        for s in &series {
            let ext = if format == Format::Json { "json" } else { "csv" };
            let path = dir.join(format!("{}.{ext}", s.label()));
            let mut w = sink(Some(&path))?;
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Body<'a> {
                        series: &'a TimeSeries,
                    }
                    write_json(&mut w, cfg, &Body { series: s })?
                }
                Format::Csv => s.write_csv(&mut w).with_context(|| format!("writing {}", path.display()))?,
            }
            w.flush().with_context(|| format!("writing {}", path.display()))?;
            eprintln!("wrote {}", path.display());
        }
        return Ok(());
    }

    let mut w = sink(None)?;
    let value = |k: usize, i: usize| series[k].values().as_real().expect("real observable")[i];
    match format {
        Some(Format::Json) => {
            #[derive(Serialize)]
            struct Body<'a> {
                series: &'a [TimeSeries],
            }
            write_json(&mut w, cfg, &Body { series: &series })?
        }
        Some(Format::Csv) => write_csv(
            &mut w,
            &["t", "momentum", "position", "force"],
            times
                .iter()
                .enumerate()
                .map(|(i, &t)| vec![fmt17(t), fmt17(value(0, i)), fmt17(value(1, i)), fmt17(value(2, i))]),
        )?,
        None => {
            let rows: Vec<_> = times
                .iter()
                .enumerate()
                .map(|(i, &t)| vec![fmt6(t), fmt6(value(0, i)), fmt6(value(1, i)), fmt6(value(2, i))])
                .collect();
            write_table(&mut w, &["t", "<p>", "<x>", "<dV/dx>"], &rows)?
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Derivation {
    n: usize,
    eigenfunction: DistExpr,
    second_derivative: DistExpr,
    potential_term: DistExpr,
    symmetric_form_unsifted: DistExpr,
    symmetric_form: DistExpr,
    equal: bool,
}

impl Derivation {
    fn lines(&self) -> Vec<(&'static str, String)> {
        vec![
            ("Psi_n(x)", self.eigenfunction.to_string()),
            ("Psi_n''(x)", self.second_derivative.to_string()),
            ("V(x) Psi_n(x)", self.potential_term.to_string()),
            ("symmetric wall form", self.symmetric_form_unsifted.to_string()),
            ("symmetric wall form, sifted", self.symmetric_form.to_string()),
        ]
    }
}

/// Returns whether the symmetric form reproduces `V·Ψₙ` term by term.
pub fn symbolic(cfg: &RunConfig) -> Result<bool> {
    let n = cfg.symbolic_n;
    let well = &cfg.well;
    let psi = eigenfunction(n, well)?;
    let second_derivative = psi.differentiate()?.differentiate()?;
    let potential_term = potential_term(n, well)?;
    let symmetric_form = symmetric_specification_form(n, well)?;
    let d = Derivation {
        n,
        eigenfunction: psi,
        second_derivative,
        equal: symmetric_form == potential_term,
        potential_term,
        symmetric_form_unsifted: symmetric_specification_form_unsifted(n, well)?,
        symmetric_form,
    };
    let status = if d.equal { "PASS" } else { "FAIL" };

    let mut w = sink(cfg.output.path.as_deref())?;
    match resolve_format(cfg) {
        Some(Format::Json) => write_json(&mut w, cfg, &d)?,
        Some(Format::Csv) => {
            let mut rows: Vec<_> = d.lines().into_iter().map(|(k, v)| vec![k.to_string(), v]).collect();
            rows.push(vec!["check".into(), status.into()]);
            write_csv(&mut w, &["expression", "text"], rows)?
        }
        None => {
            writeln!(w, "n = {n}, L = {}, m = {}, hbar = {}", well.length(), well.mass(), well.hbar())?;
            for (k, v) in d.lines() {
                writeln!(w, "{k:<28} = {v}")?;
            }
            writeln!(w, "check: sifted symmetric form == V(x) Psi_n(x) term by term: {status}")?;
        }
    }
    w.flush()?;
    Ok(d.equal)
}

#[derive(Serialize)]
struct GridCheck {
    t: f64,
    grid_points: usize,
    momentum_closed: f64,
    momentum_grid: f64,
    position_closed: f64,
    position_grid: f64,
}

const GRID_TOLERANCE: f64 = 1e-6;

fn grid_check(cfg: &RunConfig) -> Result<GridCheck> {
    let packet = cfg.packet()?;
    let t = cfg.time.t_start;
    let points = cfg.oracle.grid_points;
    let field = GridField::from_packet(&packet, t, &cfg.well, points, 8)?;
    let grid =
        |obs| grid_expectation(&field, obs, GRID_TOLERANCE).with_context(|| format!("grid check with {points} points"));
    Ok(GridCheck {
        t,
        grid_points: points,
        momentum_closed: momentum_expectation(&packet, t, &cfg.well),
        momentum_grid: grid(GridObservable::Momentum)?,
        position_closed: position_expectation(&packet, t, &cfg.well),
        position_grid: grid(GridObservable::Position)?,
    })
}

pub fn oracle(cfg: &RunConfig) -> Result<()> {
    cfg.check_oracle()?;
    let ladder = ladder_from_e1_multiples(&cfg.well, &cfg.oracle.ladder)?;
    let table = convergence_study(&cfg.well, &cfg.oracle.pairs, &ladder, cfg.execution())?;

    let mut w = sink(cfg.output.path.as_deref())?;
    match resolve_format(cfg) {
        Some(Format::Json) => {
            #[derive(Serialize)]
            struct Body<'a> {
                rows: &'a [boxwell::oracles::ConvergenceRow],
                summary: Vec<PairSummary>,
                grid_check: GridCheck,
            }
            let body = Body { rows: &table.rows, summary: table.summaries(), grid_check: grid_check(cfg)? };
            write_json(&mut w, cfg, &body)?
        }
        Some(Format::Csv) => table.write_csv(&mut w)?,
        None => {
            let rows: Vec<_> = table
                .rows
                .iter()
                .map(|r| {
                    vec![
                        format!("({},{})", r.n, r.j),
                        fmt6(r.v0),
                        fmt6(r.finite_value),
                        fmt6(r.target),
                        fmt6(r.rel_err),
                        r.empirical_order.map(fmt6).unwrap_or_else(|| "-".into()),
                    ]
                })
                .collect();
            write_table(&mut w, &["pair", "V0", "finite", "target", "rel_err", "order"], &rows)?;
            for s in table.summaries() {
                let trend = if s.final_rel_err == 0.0 && s.target == 0.0 {
                    "exact at every rung"
                } else if s.monotone {
                    "decreasing"
                } else {
                    "NOT decreasing"
                };
                writeln!(
                    w,
                    "({},{}): rel_err {} at V0 = {}, {trend}",
                    s.n,
                    s.j,
                    fmt6(s.final_rel_err),
                    fmt6(s.final_v0)
                )?;
            }
            let g = grid_check(cfg)?;
            writeln!(
                w,
                "grid check at t = {} ({} points): <p> {} vs {}, <x> {} vs {}",
                fmt6(g.t),
                g.grid_points,
                fmt6(g.momentum_grid),
                fmt6(g.momentum_closed),
                fmt6(g.position_grid),
                fmt6(g.position_closed)
            )?;
        }
    }
    w.flush()?;
    Ok(())
}
