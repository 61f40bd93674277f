//! Trigonometric polynomials on `[0, L]` with exact wall arithmetic.
//!
//! Every wavenumber is an integer multiple of `π/L` and every phase an integer
//! multiple of `π/2`, so values and slopes at `x = 0` and `x = L` are read off
//! a four-entry table instead of being computed in floating point. This is what
//! lets `sin(kₙL) = 0` and `cos(kₙL) = (−1)ⁿ` hold exactly.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::Site;
use crate::{Error, Result};

/// Relative size below which a sum of like terms is treated as exact cancellation.
pub(crate) const CANCEL_RTOL: f64 = 64.0 * f64::EPSILON;

/// Snap `sum` to zero when it is rounding noise relative to `magnitude`.
pub(crate) fn snap(sum: f64, magnitude: f64) -> f64 {
    if sum.abs() <= CANCEL_RTOL * magnitude {
        0.0
    } else {
        sum
    }
}

fn sin_quarter(q: i64) -> f64 {
    match q.rem_euclid(4) {
        0 | 2 => 0.0,
        1 => 1.0,
        _ => -1.0,
    }
}

fn cos_quarter(q: i64) -> f64 {
    sin_quarter(q + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Trig {
    Sin,
    Cos,
}

/// Rational prefactor attached to a [`SmoothFn`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pole {
    /// `1/x`, singular at the left wall.
    OverX,
    /// `1/(L − x)`, singular at the right wall.
    OverLMinusX,
}

impl Pole {
    pub fn singular_site(self) -> Site {
        match self {
            Pole::OverX => Site::Left,
            Pole::OverLMinusX => Site::Right,
        }
    }

    fn denominator(self, x: f64, length: f64) -> f64 {
        match self {
            Pole::OverX => x,
            Pole::OverLMinusX => length - x,
        }
    }
}

/// `coeff · f(mode·π·x/L + phase·π/2)` with `f` one of sin, cos.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrigTerm {
    pub func: Trig,
    #[serde(rename = "coefficient")]
    pub coeff: f64,
    #[serde(rename = "wavenumber_multiple")]
    pub mode: i64,
    #[serde(rename = "phase_quarter_turns", default)]
    pub phase: i64,
}

impl TrigTerm {
    pub fn new(func: Trig, coeff: f64, mode: i64, phase: i64) -> Self {
        TrigTerm { func, coeff, mode, phase }
    }

    pub fn wavenumber(&self, length: f64) -> f64 {
        self.mode as f64 * PI / length
    }

    pub fn value(&self, x: f64, length: f64) -> f64 {
        let angle = self.wavenumber(length) * x + self.phase as f64 * FRAC_PI_2;
        match self.func {
            Trig::Sin => self.coeff * angle.sin(),
            Trig::Cos => self.coeff * angle.cos(),
        }
    }

    /// Phase, in quarter turns, of the argument at the given wall.
    fn wall_quarter(&self, site: Site) -> i64 {
        match site {
            Site::Left => self.phase,
            Site::Right => self.phase + 2 * self.mode,
        }
    }

    /// Exact value at a wall.
    pub fn wall_value(&self, site: Site) -> f64 {
        let q = self.wall_quarter(site);
        match self.func {
            Trig::Sin => self.coeff * sin_quarter(q),
            Trig::Cos => self.coeff * cos_quarter(q),
        }
    }

    pub fn derivative(&self, length: f64) -> TrigTerm {
        let k = self.wavenumber(length);
        match self.func {
            Trig::Sin => TrigTerm { func: Trig::Cos, coeff: self.coeff * k, ..*self },
            Trig::Cos => TrigTerm { func: Trig::Sin, coeff: -self.coeff * k, ..*self },
        }
    }

    /// Rewrite to non-negative mode and zero phase; `None` if the term is identically zero.
    fn normalized(&self) -> Option<TrigTerm> {
        let (mut coeff, mut mode, mut phase) = (self.coeff, self.mode, self.phase);
        if mode < 0 {
            mode = -mode;
            phase = -phase;
            if self.func == Trig::Sin {
                coeff = -coeff;
            }
        }
        // cos(θ + qπ/2) = sin(θ + (q+1)π/2)
        let q = match self.func {
            Trig::Sin => phase,
            Trig::Cos => phase + 1,
        };
        let (func, sign) = match q.rem_euclid(4) {
            0 => (Trig::Sin, 1.0),
            1 => (Trig::Cos, 1.0),
            2 => (Trig::Sin, -1.0),
            _ => (Trig::Cos, -1.0),
        };
        coeff *= sign;
        if coeff == 0.0 || (mode == 0 && func == Trig::Sin) {
            return None;
        }
        Some(TrigTerm { func, coeff, mode, phase: 0 })
    }
}

/// Finite trigonometric sum, optionally divided by `x` or `L − x`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SmoothFn {
    pub terms: Vec<TrigTerm>,
    #[serde(default)]
    pub pole: Option<Pole>,
}

impl SmoothFn {
    pub fn zero() -> Self {
        SmoothFn::default()
    }

    pub fn constant(c: f64) -> Self {
        SmoothFn::from_terms(vec![TrigTerm::new(Trig::Cos, c, 0, 0)])
    }

    pub fn sin(coeff: f64, mode: i64) -> Self {
        SmoothFn::from_terms(vec![TrigTerm::new(Trig::Sin, coeff, mode, 0)])
    }

    pub fn cos(coeff: f64, mode: i64) -> Self {
        SmoothFn::from_terms(vec![TrigTerm::new(Trig::Cos, coeff, mode, 0)])
    }

    pub fn from_terms(terms: Vec<TrigTerm>) -> Self {
        SmoothFn { terms, pole: None }
    }

    pub fn with_pole(mut self, pole: Pole) -> Self {
        self.pole = Some(pole);
        self
    }

    /// The trigonometric numerator without any rational prefactor.
    pub fn numerator(&self) -> SmoothFn {
        SmoothFn::from_terms(self.terms.clone())
    }

    pub fn scale(&self, c: f64) -> SmoothFn {
        SmoothFn { terms: self.terms.iter().map(|t| TrigTerm { coeff: t.coeff * c, ..*t }).collect(), pole: self.pole }
    }

    pub fn add(&self, other: &SmoothFn) -> Result<SmoothFn> {
        if self.pole != other.pole {
            return Err(Error::PoleUnsupported("summing different rational prefactors"));
        }
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Ok(SmoothFn { terms, pole: self.pole })
    }

    /// Product via the product-to-sum identities; at most one factor may carry a pole.
    pub fn mul(&self, other: &SmoothFn) -> Result<SmoothFn> {
        let pole = match (self.pole, other.pole) {
            (Some(_), Some(_)) => return Err(Error::PoleProductUnsupported),
            (p, None) | (None, p) => p,
        };
        // constant factors scale without disturbing the other factor's representation
        if let Some(c) = self.numerator().as_constant() {
            return Ok(SmoothFn { pole, ..other.scale(c) });
        }
        if let Some(c) = other.numerator().as_constant() {
            return Ok(SmoothFn { pole, ..self.scale(c) });
        }
        let mut terms = Vec::with_capacity(2 * self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let c = 0.5 * a.coeff * b.coeff;
                let (dm, dq) = (a.mode - b.mode, a.phase - b.phase);
                let (sm, sq) = (a.mode + b.mode, a.phase + b.phase);
                let (diff, sum) = match (a.func, b.func) {
                    (Trig::Sin, Trig::Sin) => ((Trig::Cos, c), (Trig::Cos, -c)),
                    (Trig::Cos, Trig::Cos) => ((Trig::Cos, c), (Trig::Cos, c)),
                    (Trig::Sin, Trig::Cos) => ((Trig::Sin, c), (Trig::Sin, c)),
                    (Trig::Cos, Trig::Sin) => ((Trig::Sin, -c), (Trig::Sin, c)),
                };
                terms.push(TrigTerm::new(diff.0, diff.1, dm, dq));
                terms.push(TrigTerm::new(sum.0, sum.1, sm, sq));
            }
        }
        Ok(SmoothFn { terms, pole }.canonical())
    }

    /// Merge like terms into `Σ cᵢ sin(mᵢπx/L) + Σ dᵢ cos(mᵢπx/L)` with `mᵢ ≥ 0`.
    pub fn canonical(&self) -> SmoothFn {
        let mut acc: BTreeMap<(i64, Trig), (f64, f64)> = BTreeMap::new();
        for t in self.terms.iter().filter_map(TrigTerm::normalized) {
            let e = acc.entry((t.mode, t.func)).or_insert((0.0, 0.0));
            e.0 += t.coeff;
            e.1 += t.coeff.abs();
        }
        let terms = acc
            .into_iter()
            .filter_map(|((mode, func), (sum, mag))| {
                let c = snap(sum, mag);
                (c != 0.0).then(|| TrigTerm::new(func, c, mode, 0))
            })
            .collect();
        SmoothFn { terms, pole: self.pole }
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().terms.is_empty()
    }

    /// `Some(c)` when the function is the constant `c` with no prefactor.
    pub fn as_constant(&self) -> Option<f64> {
        if self.pole.is_some() {
            return None;
        }
        let c = self.canonical();
        match c.terms.as_slice() {
            [] => Some(0.0),
            [t] if t.mode == 0 && t.func == Trig::Cos => Some(t.coeff),
            _ => None,
        }
    }

    pub fn derivative(&self, length: f64) -> Result<SmoothFn> {
        if self.pole.is_some() {
            return Err(Error::PoleUnsupported("differentiation"));
        }
        let terms = self.terms.iter().filter(|t| t.mode != 0).map(|t| t.derivative(length)).collect();
        Ok(SmoothFn::from_terms(terms))
    }

    /// Value of the trigonometric numerator at a generic point.
    pub fn numerator_value(&self, x: f64, length: f64) -> f64 {
        self.terms.iter().map(|t| t.value(x, length)).sum()
    }

    /// Exact value of the numerator at a wall.
    pub fn numerator_at_wall(&self, site: Site) -> f64 {
        let (sum, mag) = self.terms.iter().fold((0.0, 0.0), |(s, m), t| {
            let v = t.wall_value(site);
            (s + v, m + v.abs())
        });
        snap(sum, mag)
    }

    /// Exact slope of the numerator at a wall.
    pub fn numerator_slope_at_wall(&self, site: Site, length: f64) -> f64 {
        let (sum, mag) = self.terms.iter().fold((0.0, 0.0), |(s, m), t| {
            let v = t.derivative(length).wall_value(site);
            (s + v, m + v.abs())
        });
        snap(sum, mag)
    }

    /// The value a delta at `site` sifts this coefficient to.
    ///
    /// Where the prefactor is singular at `site` the numerator must vanish there
    /// and the removable limit (l'Hôpital) is returned.
    pub fn wall_limit(&self, site: Site, length: f64) -> Result<f64> {
        let Some(pole) = self.pole else {
            return Ok(self.numerator_at_wall(site));
        };
        if pole.singular_site() != site {
            return Ok(self.numerator_at_wall(site) / length);
        }
        if self.numerator_at_wall(site) != 0.0 {
            return Err(Error::NonRemovableSingularity(site));
        }
        let slope = self.numerator_slope_at_wall(site, length);
        Ok(match pole {
            // f(x)/x → f'(0)
            Pole::OverX => slope,
            // f(x)/(L − x) → −f'(L)
            Pole::OverLMinusX => -slope,
        })
    }

    /// Pointwise value on `[0, L]`; at a singular wall the removable limit is used.
    pub fn eval(&self, x: f64, length: f64) -> Result<f64> {
        if x == 0.0 {
            return self.wall_limit(Site::Left, length);
        }
        if x == length {
            return self.wall_limit(Site::Right, length);
        }
        let num = self.numerator_value(x, length);
        Ok(match self.pole {
            Some(p) => num / p.denominator(x, length),
            None => num,
        })
    }

    /// Same function, each term re-expressed with its argument measured from the right wall.
    ///
    /// `f(mπx/L + qπ/2) = (−1)ᵐ f(mπ(x − L)/L + qπ/2)`, so `sin(kₙx)` becomes
    /// `cos(kₙL)·sin(kₙ(x − L))`.
    pub fn rewrite_about_right_wall(&self) -> SmoothFn {
        SmoothFn {
            terms: self
                .terms
                .iter()
                .map(|t| {
                    let parity = if t.mode.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                    TrigTerm::new(t.func, t.coeff * parity, t.mode, t.phase - 2 * t.mode)
                })
                .collect(),
            pole: self.pole,
        }
    }
}

impl fmt::Display for TrigTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.func {
            Trig::Sin => "sin",
            Trig::Cos => "cos",
        };
        if self.mode == 0 {
            let v = match self.func {
                Trig::Sin => sin_quarter(self.phase),
                Trig::Cos => cos_quarter(self.phase),
            };
            return write!(f, "{}", self.coeff * v);
        }
        let arg = if self.phase == -2 * self.mode {
            format!("{}*pi*(x-L)/L", self.mode)
        } else if self.phase == 0 {
            format!("{}*pi*x/L", self.mode)
        } else {
            format!("{}*pi*x/L + {}*pi/2", self.mode, self.phase)
        };
        write!(f, "{}*{}({})", self.coeff, name, arg)
    }
}

impl fmt::Display for SmoothFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = if self.terms.is_empty() {
            "0".to_string()
        } else {
            self.terms.iter().map(ToString::to_string).collect::<Vec<_>>().join(" + ")
        };
        match self.pole {
            None => write!(f, "{body}"),
            Some(Pole::OverX) => write!(f, "({body})/x"),
            Some(Pole::OverLMinusX) => write!(f, "({body})/(L-x)"),
        }
    }
}
