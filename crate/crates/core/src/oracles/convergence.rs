use std::io::Write;

use serde::Serialize;

use super::finite_well::{solve_finite_well_levels, FiniteWell};
use crate::spectral::{eigenvalue, force_matrix_element, series::fmt17};
use crate::{par, Error, Execution, Result, WellConfig};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub j: usize,
    #[serde(rename = "V0")]
    pub v0: f64,
    pub finite_value: f64,
    pub target: f64,
    pub abs_err: f64,
    /// `abs_err/|target|`, or `abs_err` itself when the target is zero.
    pub rel_err: f64,
    /// `−Δln(rel_err)/Δln(V₀)` against the previous rung; absent on the first rung.
    pub empirical_order: Option<f64>,
}

/// Finite-well force matrix elements against the infinite-well closed form along a `V₀` ladder.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub config: WellConfig,
    pub rows: Vec<ConvergenceRow>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairSummary {
    pub n: usize,
    pub j: usize,
    pub target: f64,
    pub final_v0: f64,
    pub final_rel_err: f64,
    pub monotone: bool,
    pub mean_order: Option<f64>,
}

/// `V₀` values from multiples of the infinite-well ground-state energy.
pub fn ladder_from_e1_multiples(cfg: &WellConfig, multiples: &[f64]) -> Result<Vec<f64>> {
    let e1 = eigenvalue(1, cfg)?;
    Ok(multiples.iter().map(|m| m * e1).collect())
}

/// Evaluate every `(n, j)` pair at every rung. Rungs are solved independently
/// and may run concurrently.
pub fn convergence_study(
    cfg: &WellConfig,
    pairs: &[(usize, usize)],
    ladder: &[f64],
    exec: Execution,
) -> Result<ConvergenceTable> {
    if pairs.is_empty() || ladder.is_empty() {
        return Err(Error::InvalidConfig("convergence study needs at least one pair and one rung".into()));
    }
    if ladder.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidConfig("barrier ladder must be strictly increasing".into()));
    }
    let targets = pairs.iter().map(|&(n, j)| force_matrix_element(n, j, cfg)).collect::<Result<Vec<_>>>()?;
    let levels_needed = pairs.iter().map(|&(n, j)| n.max(j)).max().unwrap_or(1);

    let rungs: Vec<Result<Vec<f64>>> = par::map(exec, ladder, |&v0| {
        let well = FiniteWell::new(v0, *cfg)?;
        let spectrum = solve_finite_well_levels(&well, levels_needed)?;
        pairs.iter().map(|&(n, j)| spectrum.force_matrix_element(n, j)).collect()
    });

    let mut rows = Vec::with_capacity(pairs.len() * ladder.len());
    let mut per_rung = Vec::with_capacity(ladder.len());
    for (v0, r) in ladder.iter().zip(rungs) {
        per_rung.push(r.map_err(|e| Error::InvalidConfig(format!("rung V0 = {v0}: {e}")))?);
    }
    for (p, &(n, j)) in pairs.iter().enumerate() {
        let target = targets[p];
        let mut prev: Option<(f64, f64)> = None;
        for (r, &v0) in ladder.iter().enumerate() {
            let finite_value = per_rung[r][p];
            let abs_err = (finite_value - target).abs();
            let rel_err = if target == 0.0 { abs_err } else { abs_err / target.abs() };
            let empirical_order =
                prev.and_then(|(pv, pe)| (pe > 0.0 && rel_err > 0.0).then(|| -(rel_err / pe).ln() / (v0 / pv).ln()));
            rows.push(ConvergenceRow { n, j, v0, finite_value, target, abs_err, rel_err, empirical_order });
            prev = Some((v0, rel_err));
        }
    }
    Ok(ConvergenceTable { config: *cfg, rows })
}

impl ConvergenceTable {
    pub fn rows_for(&self, n: usize, j: usize) -> impl Iterator<Item = &ConvergenceRow> {
        self.rows.iter().filter(move |r| r.n == n && r.j == j)
    }

    pub fn summaries(&self) -> Vec<PairSummary> {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for r in &self.rows {
            if !pairs.contains(&(r.n, r.j)) {
                pairs.push((r.n, r.j));
            }
        }
        pairs
            .into_iter()
            .map(|(n, j)| {
                let rows: Vec<&ConvergenceRow> = self.rows_for(n, j).collect();
                let last = rows[rows.len() - 1];
                let orders: Vec<f64> = rows.iter().filter_map(|r| r.empirical_order).collect();
                PairSummary {
                    n,
                    j,
                    target: last.target,
                    final_v0: last.v0,
                    final_rel_err: last.rel_err,
                    monotone: rows.windows(2).all(|w| w[1].rel_err < w[0].rel_err),
                    mean_order: (!orders.is_empty()).then(|| orders.iter().sum::<f64>() / orders.len() as f64),
                }
            })
            .collect()
    }

    /// Columns `n, j, V0, finite_value, target, abs_err, rel_err, empirical_order`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["n", "j", "V0", "finite_value", "target", "abs_err", "rel_err", "empirical_order"])?;
        for r in &self.rows {
            out.write_record([
                r.n.to_string(),
                r.j.to_string(),
                fmt17(r.v0),
                fmt17(r.finite_value),
                fmt17(r.target),
                fmt17(r.abs_err),
                fmt17(r.rel_err),
                r.empirical_order.map(fmt17).unwrap_or_default(),
            ])?;
        }
        out.flush()?;
        Ok(())
    }

    /// Rows plus per-pair summaries.
    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Doc<'a> {
            config: &'a WellConfig,
            rows: &'a [ConvergenceRow],
            summary: Vec<PairSummary>,
        }
        Ok(serde_json::to_string_pretty(&Doc { config: &self.config, rows: &self.rows, summary: self.summaries() })?)
    }
}
