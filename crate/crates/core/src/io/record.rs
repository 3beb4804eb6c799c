use std::path::Path;

use serde::{Deserialize, Serialize};

use super::write_atomic;
use crate::error::Result;
use crate::ode::{
    first_integral_residual, IntegratorCtrl, ModelParams, PhaseState, Profile, StepStats,
};

pub const CSV_HEADER: &str = "r,u,slope,v,psi,residual";

/// CSV with ten significant digits per value.
///
/// `shift` is subtracted from every height, so a profile computed for the
/// normalized problem is written in the frame of the original `lambda`.
pub fn profile_csv(p: &Profile, shift: f64) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::with_capacity(80 * (p.samples().len() + 1)));
    w.write_record(CSV_HEADER.split(','))?;
    for s in p.samples() {
        let res = first_integral_residual(s, p.params());
        w.write_record(
            [s.r, s.u - shift, s.slope(), s.v, s.angle(), res].map(|x| format!("{x:.9e}")),
        )?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}

pub fn export_csv(p: &Profile, shift: f64, path: impl AsRef<Path>) -> Result<()> {
    write_atomic(path, profile_csv(p, shift)?.as_bytes())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub step_stats: StepStats,
    pub max_first_integral_residual: f64,
    pub r_start: f64,
    pub r_end: f64,
    /// Vertical offset `lambda / kappa` subtracted from heights on display.
    pub height_shift: f64,
}

/// Structured profile file: parameters, controller settings, samples and diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileRecord {
    pub params: ModelParams,
    pub ctrl: Option<IntegratorCtrl>,
    pub samples: Vec<PhaseState>,
    pub diagnostics: Diagnostics,
}

impl ProfileRecord {
    pub fn to_profile(&self) -> Result<Profile> {
        Profile::from_parts(
            self.params,
            self.samples.clone(),
            self.diagnostics.step_stats,
        )
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        write_atomic(path, self.to_json()?.as_bytes())
    }
}

pub fn profile_record(p: &Profile, ctrl: Option<IntegratorCtrl>, shift: f64) -> ProfileRecord {
    ProfileRecord {
        params: *p.params(),
        ctrl,
        samples: p.samples().to_vec(),
        diagnostics: Diagnostics {
            step_stats: *p.step_stats(),
            max_first_integral_residual: p.max_first_integral_residual(),
            r_start: p.r_start(),
            r_end: p.r_end(),
            height_shift: shift,
        },
    }
}

/// Reads a [`ProfileRecord`] and rebuilds the profile.
pub fn import_json(path: impl AsRef<Path>) -> Result<(ProfileRecord, Profile)> {
    let text = std::fs::read_to_string(path)?;
    let rec: ProfileRecord = serde_json::from_str(&text)?;
    let p = rec.to_profile()?;
    Ok((rec, p))
}
