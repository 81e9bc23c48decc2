use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constants::Constants;
use crate::error::{invalid, Error, Result};

/// The displayed bounds that can be evaluated. Each kind reads a fixed subset
/// of [`BoundParams`]:
///
/// | kind | uses |
/// |---|---|
/// | `Thm1FirstOrder` | n, delta, d, er_s |
/// | `Thm4Realizable` | n, delta |
/// | `Thm4Mean` | n |
/// | `BandLogFree` | n, delta, band |
/// | `BandInSample` | n, delta, er_s |
/// | `DyadicCorollary` | n (>= 3), delta, er_s |
/// | `Thm3Target` | n, d, er_s |
/// | `Thm7Target` | n (>= 16), er_s |
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundKind {
    Thm1FirstOrder,
    Thm4Realizable,
    Thm4Mean,
    BandLogFree,
    BandInSample,
    DyadicCorollary,
    Thm3Target,
    Thm7Target,
}

impl BoundKind {
    pub const ALL: [BoundKind; 8] = [
        BoundKind::Thm1FirstOrder,
        BoundKind::Thm4Realizable,
        BoundKind::Thm4Mean,
        BoundKind::BandLogFree,
        BoundKind::BandInSample,
        BoundKind::DyadicCorollary,
        BoundKind::Thm3Target,
        BoundKind::Thm7Target,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Thm1FirstOrder => "first-order",
            BoundKind::Thm4Realizable => "realizable",
            BoundKind::Thm4Mean => "realizable-mean",
            BoundKind::BandLogFree => "band-log-free",
            BoundKind::BandInSample => "band-in-sample",
            BoundKind::DyadicCorollary => "dyadic-corollary",
            BoundKind::Thm3Target => "agnostic-lower",
            BoundKind::Thm7Target => "dyadic-lower",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundKind::ALL
            .into_iter()
            .find(|k| k.name() == s || format!("{k:?}").eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown bound kind `{s}`")))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    pub n: u64,
    pub delta: Option<f64>,
    pub d: Option<u64>,
    pub er_s: Option<f64>,
    pub band: Option<u32>,
}

impl BoundParams {
    pub fn new(n: u64) -> Self {
        Self {
            n,
            ..Self::default()
        }
    }

    pub fn delta(mut self, delta: f64) -> Self {
        self.delta = Some(delta);
        self
    }

    pub fn d(mut self, d: u64) -> Self {
        self.d = Some(d);
        self
    }

    pub fn er_s(mut self, er_s: f64) -> Self {
        self.er_s = Some(er_s);
        self
    }

    pub fn band(mut self, band: u32) -> Self {
        self.band = Some(band);
        self
    }

    fn need_delta(&self) -> Result<f64> {
        match self.delta {
            Some(d) if d > 0.0 && d < 1.0 => Ok(d),
            Some(d) => invalid(format!("delta = {d} outside (0, 1)")),
            None => invalid("this bound needs delta"),
        }
    }

    fn need_d(&self) -> Result<f64> {
        match self.d {
            Some(d) if d >= 1 => Ok(d as f64),
            _ => invalid("this bound needs a positive dimension d"),
        }
    }

    fn need_er_s(&self) -> Result<f64> {
        match self.er_s {
            Some(e) if (0.0..=1.0).contains(&e) => Ok(e),
            Some(e) => invalid(format!("empirical error {e} outside [0, 1]")),
            None => invalid("this bound needs er_s"),
        }
    }

    fn need_band(&self) -> Result<f64> {
        match self.band {
            Some(i) => Ok(i as f64),
            None => invalid("this bound needs a band index"),
        }
    }
}

/// `x ln(e / x)`, continuously extended by `0` at `x = 0`.
fn x_ln_e_over_x(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * (1.0 - x.ln())
    }
}

pub fn bound_value(kind: BoundKind, params: &BoundParams, constants: &Constants) -> Result<f64> {
    let n = params.n;
    if n < 1 {
        return invalid("n must be at least 1");
    }
    let nf = n as f64;
    let c = |name: &str| constants.f64(name);
    let value = match kind {
        BoundKind::Thm1FirstOrder => {
            let (delta, d, er) = (params.need_delta()?, params.need_d()?, params.need_er_s()?);
            let l = (1.0 / delta).ln();
            let first = if er == 0.0 {
                0.0
            } else {
                ((d * x_ln_e_over_x(er) + er * l) / nf).sqrt()
            };
            c("thm1_c") * (first + (d * (nf / d).ln() + l) / nf)
        }
        BoundKind::Thm4Realizable => {
            let delta = params.need_delta()?;
            (c("thm4_log_numerator") / delta).ln() / nf
        }
        BoundKind::Thm4Mean => 2.0 / (nf + 1.0),
        BoundKind::BandLogFree => {
            let (delta, i) = (params.need_delta()?, params.need_band()?);
            let l = (1.0 / delta).ln();
            c("band_c") * ((2f64.powf(-i) * l / nf).sqrt() + l / nf)
        }
        BoundKind::BandInSample => {
            let (delta, er) = (params.need_delta()?, params.need_er_s()?);
            let l = (1.0 / delta).ln();
            c("band_in_sample_c") * ((er * l / nf).sqrt() + l / nf)
        }
        BoundKind::DyadicCorollary => {
            if n < 3 {
                return invalid("the corollary needs n >= 3 so that ln ln n > 0");
            }
            let (delta, er) = (params.need_delta()?, params.need_er_s()?);
            let l = (1.0 / delta).ln() + nf.ln().ln();
            c("dyadic_c") * ((er * l / nf).sqrt() + l / nf)
        }
        BoundKind::Thm3Target => {
            let (d, er) = (params.need_d()?, params.need_er_s()?);
            c("thm3_c") * (d * x_ln_e_over_x(er) / nf).sqrt()
        }
        BoundKind::Thm7Target => {
            if n < 16 {
                return invalid("the dyadic bound needs n >= 16");
            }
            let er = params.need_er_s()?;
            c("thm7_success_c") * (er * nf.ln().ln() / nf).sqrt()
        }
    };
    Ok(value)
}

/// Whether the case split behind the in-sample band bound goes through at
/// `(i, n, delta)`: if `2^-i >= c ln(1/delta)/n` then the log-free band
/// bound is at most `2^-(i+1)`. Returns `None` when the premise fails.
pub fn band_case_split(i: u32, n: u64, delta: f64, constants: &Constants) -> Result<Option<bool>> {
    let width = 2f64.powi(-(i as i32));
    if width < constants.f64("band_case_split_c") * (1.0 / delta).ln() / n as f64 {
        return Ok(None);
    }
    let v = bound_value(
        BoundKind::BandLogFree,
        &BoundParams::new(n).delta(delta).band(i),
        constants,
    )?;
    Ok(Some(v <= width / 2.0))
}
