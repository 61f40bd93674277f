use std::fmt;

use serde::{Deserialize, Serialize};

use super::smooth::{snap, SmoothFn, Trig};
use crate::{Error, Result};

/// Which wall a boundary delta sits on: `δ(x)` or `δ(L − x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Site {
    Left,
    Right,
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Left => write!(f, "left (x = 0)"),
            Site::Right => write!(f, "right (x = L)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DistTerm {
    /// `smooth(x)·θ(x)·θ(L − x)`
    Windowed { smooth: SmoothFn },
    /// `coeff(x)·δ(x)` or `coeff(x)·δ(L − x)`
    BoundaryDelta { site: Site, coeff: SmoothFn },
}

/// How a delta sitting exactly on an integration endpoint is weighted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DeltaWeight {
    /// `∫₀ᴸ δ(x) dx = ∫₀ᴸ δ(L − x) dx = 1/2`.
    #[default]
    HalfAtWalls,
    /// Integrate over the whole line, so each delta counts fully.
    Full,
}

/// A distribution supported on `[0, L]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistExpr {
    #[serde(rename = "L")]
    length: f64,
    terms: Vec<DistTerm>,
}

impl DistExpr {
    pub fn zero(length: f64) -> Self {
        DistExpr { length, terms: Vec::new() }
    }

    pub fn windowed(length: f64, smooth: SmoothFn) -> Self {
        DistExpr { length, terms: vec![DistTerm::Windowed { smooth }] }
    }

    /// An unsifted delta; call [`DistExpr::sift`] to reduce its coefficient.
    pub fn delta(length: f64, site: Site, coeff: SmoothFn) -> Self {
        DistExpr { length, terms: vec![DistTerm::BoundaryDelta { site, coeff }] }
    }

    pub fn from_terms(length: f64, terms: Vec<DistTerm>) -> Self {
        DistExpr { length, terms }
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn terms(&self) -> &[DistTerm] {
        &self.terms
    }

    fn check_length(&self, other: &DistExpr) -> Result<()> {
        if self.length == other.length {
            Ok(())
        } else {
            Err(Error::LengthMismatch(self.length, other.length))
        }
    }

    /// Term concatenation; the result is not canonicalized.
    pub fn add(&self, other: &DistExpr) -> Result<DistExpr> {
        self.check_length(other)?;
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Ok(DistExpr { length: self.length, terms })
    }

    pub fn scale(&self, c: f64) -> DistExpr {
        let terms = self
            .terms
            .iter()
            .map(|t| match t {
                DistTerm::Windowed { smooth } => DistTerm::Windowed { smooth: smooth.scale(c) },
                DistTerm::BoundaryDelta { site, coeff } => {
                    DistTerm::BoundaryDelta { site: *site, coeff: coeff.scale(c) }
                }
            })
            .collect();
        DistExpr { length: self.length, terms }
    }

    /// Canonical form: delta coefficients replaced by their values at the
    /// delta's site, windowed parts merged (one per prefactor kind), zero terms dropped.
    pub fn sift(&self) -> Result<DistExpr> {
        let mut windows: Vec<SmoothFn> = Vec::new();
        let mut deltas = [(0.0_f64, 0.0_f64); 2];
        for term in &self.terms {
            match term {
                DistTerm::Windowed { smooth } => match windows.iter_mut().find(|w| w.pole == smooth.pole) {
                    Some(w) => *w = w.add(smooth)?,
                    None => windows.push(smooth.clone()),
                },
                DistTerm::BoundaryDelta { site, coeff } => {
                    let v = coeff.wall_limit(*site, self.length)?;
                    let slot = &mut deltas[*site as usize];
                    slot.0 += v;
                    slot.1 += v.abs();
                }
            }
        }
        let mut terms: Vec<DistTerm> = windows
            .into_iter()
            .map(|w| w.canonical())
            .filter(|w| !w.terms.is_empty())
            .map(|smooth| DistTerm::Windowed { smooth })
            .collect();
        for site in [Site::Left, Site::Right] {
            let (sum, mag) = deltas[site as usize];
            let c = snap(sum, mag);
            if c != 0.0 {
                terms.push(DistTerm::BoundaryDelta { site, coeff: SmoothFn::constant(c) });
            }
        }
        Ok(DistExpr { length: self.length, terms })
    }

    pub fn is_sifted(&self) -> bool {
        self.terms.iter().all(|t| match t {
            DistTerm::Windowed { .. } => true,
            DistTerm::BoundaryDelta { coeff, .. } => coeff.as_constant().is_some(),
        })
    }

    /// Merged windowed part without a rational prefactor.
    pub fn windowed_part(&self) -> SmoothFn {
        let terms = self
            .terms
            .iter()
            .filter_map(|t| match t {
                DistTerm::Windowed { smooth } if smooth.pole.is_none() => Some(smooth.terms.clone()),
                _ => None,
            })
            .flatten()
            .collect();
        SmoothFn::from_terms(terms).canonical()
    }

    /// Total sifted coefficient of the delta at `site` (zero when absent).
    pub fn delta_coefficient(&self, site: Site) -> Result<f64> {
        let mut sum = 0.0;
        for t in &self.terms {
            if let DistTerm::BoundaryDelta { site: s, coeff } = t {
                if *s == site {
                    sum += coeff.as_constant().ok_or(Error::UnsiftedDelta)?;
                }
            }
        }
        Ok(sum)
    }

    /// Derivative with `θ′(x) = δ(x)` and `d θ(L − x)/dx = −δ(L − x)`.
    ///
    /// New deltas are sifted on the spot. Any surviving delta in the input
    /// would differentiate to `δ′`, which is rejected.
    pub fn differentiate(&self) -> Result<DistExpr> {
        let canon = self.sift()?;
        let mut terms = Vec::new();
        for term in &canon.terms {
            match term {
                DistTerm::Windowed { smooth } => {
                    if smooth.pole.is_some() {
                        return Err(Error::PoleUnsupported("differentiation"));
                    }
                    terms.push(DistTerm::Windowed { smooth: smooth.derivative(self.length)? });
                    terms.push(DistTerm::BoundaryDelta { site: Site::Left, coeff: smooth.clone() });
                    terms.push(DistTerm::BoundaryDelta { site: Site::Right, coeff: smooth.scale(-1.0) });
                }
                DistTerm::BoundaryDelta { .. } => return Err(Error::DeltaDerivativeUnsupported),
            }
        }
        DistExpr { length: self.length, terms }.sift()
    }

    /// Multiply every term by `s` without sifting.
    pub fn multiply_unsifted(&self, s: &SmoothFn) -> Result<DistExpr> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(match t {
                    DistTerm::Windowed { smooth } => DistTerm::Windowed { smooth: smooth.mul(s)? },
                    DistTerm::BoundaryDelta { site, coeff } => {
                        DistTerm::BoundaryDelta { site: *site, coeff: coeff.mul(s)? }
                    }
                })
            })
            .collect::<Result<_>>()?;
        Ok(DistExpr { length: self.length, terms })
    }

    /// `e · s`, sifted.
    pub fn multiply(&self, s: &SmoothFn) -> Result<DistExpr> {
        self.multiply_unsifted(s)?.sift()
    }

    /// Product of two expressions, sifted.
    ///
    /// Windows are idempotent (`θ² = θ`) and absorbed by deltas sitting on the
    /// window's edge; a product of two deltas is rejected.
    pub fn multiply_expr(&self, other: &DistExpr) -> Result<DistExpr> {
        self.check_length(other)?;
        let mut terms = Vec::new();
        for a in &self.terms {
            for b in &other.terms {
                let t = match (a, b) {
                    (DistTerm::Windowed { smooth: f }, DistTerm::Windowed { smooth: g }) => {
                        DistTerm::Windowed { smooth: f.mul(g)? }
                    }
                    (DistTerm::Windowed { smooth: f }, DistTerm::BoundaryDelta { site, coeff })
                    | (DistTerm::BoundaryDelta { site, coeff }, DistTerm::Windowed { smooth: f }) => {
                        DistTerm::BoundaryDelta { site: *site, coeff: coeff.mul(f)? }
                    }
                    _ => return Err(Error::DeltaProductUnsupported),
                };
                terms.push(t);
            }
        }
        DistExpr { length: self.length, terms }.sift()
    }

    /// `∫₀ᴸ e(x) dx` for a sifted expression.
    ///
    /// Windowed trigonometric parts use exact antiderivatives; deltas
    /// contribute according to `weight`.
    pub fn integrate_over_well(&self, weight: DeltaWeight) -> Result<f64> {
        let delta_weight = match weight {
            DeltaWeight::HalfAtWalls => 0.5,
            DeltaWeight::Full => 1.0,
        };
        let mut total = 0.0;
        for term in &self.terms {
            match term {
                DistTerm::Windowed { smooth } => {
                    if smooth.pole.is_some() {
                        return Err(Error::PoleUnsupported("integration"));
                    }
                    total += integrate_trig(smooth, self.length);
                }
                DistTerm::BoundaryDelta { coeff, .. } => {
                    total += delta_weight * coeff.as_constant().ok_or(Error::UnsiftedDelta)?;
                }
            }
        }
        Ok(total)
    }

    /// Windowed part evaluated at `x` (zero outside the well).
    pub fn windowed_value(&self, x: f64) -> Result<f64> {
        if !(0.0..=self.length).contains(&x) {
            return Ok(0.0);
        }
        let mut v = 0.0;
        for t in &self.terms {
            if let DistTerm::Windowed { smooth } = t {
                v += smooth.eval(x, self.length)?;
            }
        }
        Ok(v)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn integrate_trig(f: &SmoothFn, length: f64) -> f64 {
    use super::Site::{Left, Right};
    f.canonical()
        .terms
        .iter()
        .map(|t| {
            if t.mode == 0 {
                return match t.func {
                    Trig::Cos => t.coeff * length,
                    Trig::Sin => 0.0,
                };
            }
            let k = t.wavenumber(length);
            // antiderivative of sin is −cos/k, of cos is sin/k; evaluate exactly at the walls
            let anti = super::smooth::TrigTerm::new(
                match t.func {
                    Trig::Sin => Trig::Cos,
                    Trig::Cos => Trig::Sin,
                },
                match t.func {
                    Trig::Sin => -t.coeff / k,
                    Trig::Cos => t.coeff / k,
                },
                t.mode,
                t.phase,
            );
            anti.wall_value(Right) - anti.wall_value(Left)
        })
        .sum()
}

impl fmt::Display for DistExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| match t {
                DistTerm::Windowed { smooth } => format!("{{{smooth}}}*[th(x)th(L-x)]"),
                DistTerm::BoundaryDelta { site, coeff } => {
                    let d = match site {
                        Site::Left => "d(0)",
                        Site::Right => "d(L)",
                    };
                    match coeff.as_constant() {
                        Some(c) => format!("{c}*[{d}]"),
                        None => format!("{{{coeff}}}*[{d}]"),
                    }
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
