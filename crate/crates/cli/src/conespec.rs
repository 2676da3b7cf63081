//! Cone specifications on the command line.
//!
//! Three forms are accepted:
//!
//! - `orthant:<D>` -- the nonnegative orthant in D dimensions
//! - `theta:<angle>` -- the 2-D sector of that angular width centered on the
//!   diagonal; the angle is given in radians, either as a float or as a
//!   multiple of pi like `pi/4` or `3pi/4`
//! - a path to a JSON file `{"dim": D, "rows": [[...], ...]}`
//!
//! The raw string is kept as the cone's identifier in output files.

use std::fs;
use std::path::PathBuf;

use vecopt::{ConeFamily, PolyhedralCone, beta_closed_form};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone)]
pub enum ConeKind {
    Orthant(usize),
    Theta(f64),
    File(PathBuf),
}

#[derive(Debug, Clone)]
pub struct ConeSpec {
    raw: String,
    pub kind: ConeKind,
}

impl ConeSpec {
    pub fn parse(raw: &str) -> CliResult<Self> {
        let kind = if let Some(dim) = raw.strip_prefix("orthant:") {
            let dim: usize = dim
                .parse()
                .map_err(|_| CliError::Usage(format!("bad orthant dimension '{dim}'")))?;
            ConeKind::Orthant(dim)
        } else if let Some(angle) = raw.strip_prefix("theta:") {
            ConeKind::Theta(parse_angle(angle)?)
        } else {
            ConeKind::File(PathBuf::from(raw))
        };
        Ok(ConeSpec {
            raw: raw.to_string(),
            kind,
        })
    }

    /// The identifier used in CSV/JSON output: the spec string as given.
    pub fn id(&self) -> &str {
        &self.raw
    }

    pub fn build(&self) -> CliResult<PolyhedralCone> {
        match &self.kind {
            ConeKind::Orthant(dim) => Ok(PolyhedralCone::orthant(*dim)?),
            ConeKind::Theta(angle) => Ok(PolyhedralCone::theta_cone(*angle)?),
            ConeKind::File(path) => {
                let text = fs::read_to_string(path).map_err(|e| {
                    CliError::Data(format!("cannot read cone file {}: {e}", path.display()))
                })?;
                serde_json::from_str(&text)
                    .map_err(|e| CliError::Data(format!("bad cone file {}: {e}", path.display())))
            }
        }
    }

    /// Exact distortion constant when the spec names a built-in family.
    pub fn closed_form_beta(&self) -> Option<f64> {
        let family = match &self.kind {
            ConeKind::Orthant(dim) => ConeFamily::Orthant(*dim),
            ConeKind::Theta(angle) => ConeFamily::Theta2D(*angle),
            ConeKind::File(_) => return None,
        };
        beta_closed_form(family).ok().map(|c| c.beta)
    }
}

/// Radians, either a plain float or `<k>pi/<d>` with both parts optional:
/// `pi/4`, `3pi/4`, `0.5pi`, `1.2`.
pub fn parse_angle(text: &str) -> CliResult<f64> {
    let bad = || CliError::Usage(format!("cannot parse angle '{text}'"));
    if let Some(pi_pos) = text.find("pi") {
        let (mult_str, rest) = (&text[..pi_pos], &text[pi_pos + 2..]);
        let mult: f64 = if mult_str.is_empty() {
            1.0
        } else {
            mult_str.parse().map_err(|_| bad())?
        };
        let div: f64 = if rest.is_empty() {
            1.0
        } else if let Some(d) = rest.strip_prefix('/') {
            d.parse().map_err(|_| bad())?
        } else {
            return Err(bad());
        };
        Ok(mult * std::f64::consts::PI / div)
    } else {
        text.parse().map_err(|_| bad())
    }
}
