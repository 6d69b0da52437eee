//! Evaluation grids over pair ratios or moduli.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::R_MAX;
use crate::composite::{pair_for_modulus, r_substitution};
use crate::error::{Error, Result};
use crate::means::PositivePair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GridKind {
    /// Pairs `(t, 1)` with `t` log-spaced in `[lo, hi]`.
    RatioLog,
    /// Moduli equally spaced in `[lo, hi]`.
    ModulusUniform,
    /// Moduli in the open interval `(lo, hi)`, spaced geometrically toward
    /// both ends.
    ModulusEndpointWeighted,
}

impl GridKind {
    pub fn token(&self) -> &'static str {
        match self {
            GridKind::RatioLog => "ratio-log",
            GridKind::ModulusUniform => "modulus-uniform",
            GridKind::ModulusEndpointWeighted => "modulus-endpoint",
        }
    }
}

/// Closest relative approach of an endpoint-weighted grid to either end.
pub const ENDPOINT_INSET: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub kind: GridKind,
    pub count: usize,
    pub lo: f64,
    pub hi: f64,
}

impl GridSpec {
    pub fn new(kind: GridKind, count: usize, lo: f64, hi: f64) -> Result<Self> {
        let spec = Self { kind, count, lo, hi };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidGrid(format!("{self}: {why}")));
        if self.count < 2 {
            return bad("count must be at least 2");
        }
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return bad("need finite lo < hi");
        }
        match self.kind {
            GridKind::RatioLog if self.lo <= 0.0 => bad("ratios must be positive"),
            GridKind::ModulusUniform if self.lo < 0.0 || self.hi >= 1.0 => {
                bad("moduli must lie in [0, 1)")
            }
            GridKind::ModulusEndpointWeighted if self.lo < 0.0 || self.hi > 1.0 => {
                bad("moduli must lie in [0, 1]")
            }
            _ => Ok(()),
        }
    }

    pub fn is_modulus(&self) -> bool {
        !matches!(self.kind, GridKind::RatioLog)
    }

    /// The raw grid values: ratios for `RatioLog`, moduli otherwise.
    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        match self.kind {
            GridKind::RatioLog => {
                let (l, h) = (self.lo.ln(), self.hi.ln());
                (0..n)
                    .map(|i| match i {
                        0 => self.lo,
                        _ if i == n - 1 => self.hi,
                        _ => (l + (h - l) * i as f64 / (n - 1) as f64).exp(),
                    })
                    .collect()
            }
            GridKind::ModulusUniform => {
                let step = (self.hi - self.lo) / (n - 1) as f64;
                (0..n)
                    .map(|i| if i == n - 1 { self.hi } else { self.lo + step * i as f64 })
                    .collect()
            }
            GridKind::ModulusEndpointWeighted => endpoint_weighted(self.lo, self.hi, n),
        }
    }

    /// Pairs for the grid. Moduli are mapped to `(a, 1)` with substitution
    /// modulus `r`, which needs `r < sqrt2/2`.
    pub fn pairs(&self) -> Result<Vec<PositivePair>> {
        match self.kind {
            GridKind::RatioLog => self.values().into_iter().map(|t| PositivePair::new(t, 1.0)).collect(),
            _ => self.values().into_iter().map(pair_for_modulus).collect(),
        }
    }

    /// Like [`GridSpec::pairs`], but a ratio grid draws its `count` ratios
    /// log-uniformly from `[lo, hi]` when a seed is given.
    pub fn pairs_seeded(&self, seed: Option<u64>) -> Result<Vec<PositivePair>> {
        match (self.kind, seed) {
            (GridKind::RatioLog, Some(seed)) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let (l, h) = (self.lo.ln(), self.hi.ln());
                (0..self.count)
                    .map(|_| PositivePair::new(rng.gen_range(l..=h).exp(), 1.0))
                    .collect()
            }
            _ => self.pairs(),
        }
    }

    /// Substitution moduli for the grid.
    pub fn moduli(&self) -> Result<Vec<f64>> {
        match self.kind {
            GridKind::RatioLog => Ok(self
                .pairs()?
                .iter()
                .map(|p| r_substitution(p).modulus.r())
                .collect()),
            _ => Ok(self.values()),
        }
    }

    /// Moduli restricted to the substitution range `(0, sqrt2/2)`.
    pub fn half_range_moduli(&self) -> Result<Vec<f64>> {
        let rs = self.moduli()?;
        if let Some(bad) = rs.iter().find(|&&r| !(r > 0.0 && r < R_MAX)) {
            return Err(Error::InvalidGrid(format!(
                "{self}: modulus {bad} outside (0, sqrt(2)/2)"
            )));
        }
        Ok(rs)
    }
}

/// Half the points approach `lo` and half approach `hi`, with offsets from
/// `ENDPOINT_INSET` up to half the width on a logarithmic scale.
fn endpoint_weighted(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let half = 0.5 * (hi - lo);
    let left = n.div_ceil(2);
    let right = n - left;
    let offset = |i: usize, k: usize| {
        if k <= 1 {
            return half;
        }
        let s = i as f64 / (k - 1) as f64;
        half * ENDPOINT_INSET.powf(1.0 - s)
    };
    let mut out: Vec<f64> = (0..left).map(|i| lo + offset(i, left)).collect();
    // skip the shared midpoint on the right-hand side
    out.extend((0..right).rev().map(|i| hi - offset(i, right + 1)));
    out
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.kind.token(), self.count, self.lo, self.hi)
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::InvalidGrid(format!("expected kind:count:lo:hi, got {s:?}"));
        if parts.len() != 4 {
            return Err(bad());
        }
        let kind = match parts[0] {
            "ratio-log" => GridKind::RatioLog,
            "modulus-uniform" => GridKind::ModulusUniform,
            "modulus-endpoint" => GridKind::ModulusEndpointWeighted,
            _ => return Err(bad()),
        };
        let count = parts[1].parse().map_err(|_| bad())?;
        let lo = parts[2].parse().map_err(|_| bad())?;
        let hi = parts[3].parse().map_err(|_| bad())?;
        GridSpec::new(kind, count, lo, hi)
    }
}

/// `n` pairs with both entries log-uniform in `[lo, hi]`, reproducible from
/// `seed`.
pub fn random_pairs(seed: u64, n: usize, lo: f64, hi: f64) -> Vec<PositivePair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (l, h) = (lo.ln(), hi.ln());
    (0..n)
        .map(|_| {
            let a = rng.gen_range(l..=h).exp();
            let b = rng.gen_range(l..=h).exp();
            PositivePair::new(a, b).expect("exp of a finite value is positive")
        })
        .collect()
}
