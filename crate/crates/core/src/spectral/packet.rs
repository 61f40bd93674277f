use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{Error, Result};

/// Largest allowed `|Σ|aₙ|² − 1|` unless the caller picks a tolerance.
pub const DEFAULT_NORM_TOLERANCE: f64 = 1e-12;

/// One `(n, Re aₙ, Im aₙ)` entry of a packet specification.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PacketEntry(pub usize, pub f64, pub f64);

/// Truncated expansion `Ψ(x, t) = Σₙ aₙ Ψₙ(x) e^{−iωₙt}`, `n = 1..=N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WavePacket {
    coeffs: Vec<Complex64>,
}

impl WavePacket {
    /// Coefficients `a₁..a_N`; rejected unless normalized within [`DEFAULT_NORM_TOLERANCE`].
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::with_tolerance(coeffs, DEFAULT_NORM_TOLERANCE)
    }

    pub fn with_tolerance(coeffs: Vec<Complex64>, tolerance: f64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidPacket("packet has no coefficients".into()));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidPacket("non-finite coefficient".into()));
        }
        let norm: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if (norm - 1.0).abs() > tolerance {
            return Err(Error::NormalizationViolation { norm, tolerance });
        }
        Ok(WavePacket { coeffs })
    }

    /// Rescale `coeffs` to unit norm.
    pub fn normalized(coeffs: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidPacket(format!("cannot normalize a packet of norm {norm}")));
        }
        let s = norm.sqrt().recip();
        Self::new(coeffs.into_iter().map(|c| c * s).collect())
    }

    /// The single eigenstate `Ψₙ`.
    pub fn eigenstate(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidQuantumNumber(0));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
        coeffs[n - 1] = Complex64::new(1.0, 0.0);
        Self::new(coeffs)
    }

    /// Build from sparse `(n, re, im)` entries; unlisted modes are zero.
    pub fn from_entries(entries: &[PacketEntry], renormalize: bool) -> Result<Self> {
        let max_n = entries.iter().map(|e| e.0).max().unwrap_or(0);
        if max_n == 0 {
            return match entries.first() {
                Some(_) => Err(Error::InvalidQuantumNumber(0)),
                None => Err(Error::InvalidPacket("packet has no entries".into())),
            };
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); max_n];
        let mut seen = vec![false; max_n];
        for &PacketEntry(n, re, im) in entries {
            if n == 0 {
                return Err(Error::InvalidQuantumNumber(0));
            }
            if std::mem::replace(&mut seen[n - 1], true) {
                return Err(Error::InvalidPacket(format!("mode {n} listed twice")));
            }
            coeffs[n - 1] = Complex64::new(re, im);
        }
        if renormalize {
            Self::normalized(coeffs)
        } else {
            Self::new(coeffs)
        }
    }

    pub fn entries(&self) -> Vec<PacketEntry> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm_sqr() > 0.0)
            .map(|(i, c)| PacketEntry(i + 1, c.re, c.im))
            .collect()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Truncation `N`.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Same state with `extra` zero modes appended.
    pub fn extended(&self, extra: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(self.len() + extra, Complex64::new(0.0, 0.0));
        WavePacket { coeffs }
    }

    /// Short hex digest of the nonzero coefficients, stable under zero-padding.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        for PacketEntry(n, re, im) in self.entries() {
            h.update((n as u64).to_le_bytes());
            h.update(re.to_bits().to_le_bytes());
            h.update(im.to_bits().to_le_bytes());
        }
        h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
    }
}

/// JSON array of `[n, re, im]` triples.
pub fn parse_packet_json(s: &str) -> Result<Vec<PacketEntry>> {
    serde_json::from_str(s).map_err(|e| Error::InvalidPacket(e.to_string()))
}

/// One `n re [im]` entry per line; commas also separate fields and `#` starts a comment.
pub fn parse_packet_text(s: &str) -> Result<Vec<PacketEntry>> {
    let mut out = Vec::new();
    for (lineno, raw) in s.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(|c: char| c == ',' || c.is_whitespace()).filter(|f| !f.is_empty()).collect();
        let err = |what: &str| Error::InvalidPacket(format!("line {}: {what}: {raw:?}", lineno + 1));
        if !(2..=3).contains(&fields.len()) {
            return Err(err("expected `n re [im]`"));
        }
        let n: usize = fields[0].parse().map_err(|_| err("bad mode number"))?;
        let re: f64 = fields[1].parse().map_err(|_| err("bad real part"))?;
        let im: f64 = match fields.get(2) {
            Some(f) => f.parse().map_err(|_| err("bad imaginary part"))?,
            None => 0.0,
        };
        out.push(PacketEntry(n, re, im));
    }
    Ok(out)
}
