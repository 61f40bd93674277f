use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

use crate::config::{Format, RunConfig};

/// Machine-readable float: 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Human-readable float: 6 significant digits, `%g` style.
pub fn fmt6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..6).contains(&exp) {
        let s = format!("{:.*}", (5 - exp) as usize, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.5e}")
    }
}

/// Open `path`, or stdout when absent.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::stdout().lock()),
    })
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    config: &'a RunConfig,
    config_digest: String,
    #[serde(flatten)]
    body: &'a T,
}

/// Pretty JSON with the run config and its digest alongside `body`.
pub fn write_json<T: Serialize>(w: &mut dyn Write, cfg: &RunConfig, body: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *w, &Envelope { config: cfg, config_digest: cfg.digest(), body })?;
    writeln!(w)?;
    Ok(())
}

/// Header plus rows of already formatted fields.
pub fn write_csv(w: &mut dyn Write, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header)?;
    for r in rows {
        out.write_record(&r)?;
    }
    out.flush()?;
    Ok(())
}

/// Right-aligned columns.
pub fn write_table(w: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (wd, cell) in widths.iter_mut().zip(r) {
            *wd = (*wd).max(cell.chars().count());
        }
    }
    let line =
        |cells: Vec<&str>| cells.iter().zip(&widths).map(|(c, wd)| format!("{c:>wd$}")).collect::<Vec<_>>().join("  ");
    writeln!(w, "{}", line(header.to_vec()))?;
    for r in rows {
        writeln!(w, "{}", line(r.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

/// Resolved output mode: explicit format, else inferred from the file extension, else human.
pub fn resolve_format(cfg: &RunConfig) -> Option<Format> {
    cfg.output.format.or_else(|| {
        let ext = cfg.output.path.as_deref()?.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            _ => None,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_digits() {
        assert_eq!(fmt6(4.934802200544679), "4.9348");
        assert_eq!(fmt6(39.47841760435743), "39.4784");
        assert_eq!(fmt6(-0.5), "-0.5");
        assert_eq!(fmt6(123456.7), "123457");
        assert_eq!(fmt6(1234567.8), "1.23457e6");
        assert_eq!(fmt6(1.5e-9), "1.50000e-9");
        assert_eq!(fmt6(0.0), "0");
    }

    #[test]
    fn seventeen_digits_round_trip() {
        for x in [std::f64::consts::PI, -1e-300, 4.0 * std::f64::consts::PI.powi(2)] {
            assert_eq!(fmt17(x).parse::<f64>().unwrap(), x);
        }
    }
}
