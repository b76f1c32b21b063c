use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::statekit::{overlap_c, MeasBasis};

/// Measurement angles used in the reference optical setup for `c = 0.5, 0.7, 0.9`.
const REFERENCE_ANGLES_DEG: [(f64, f64); 3] = [(0.5, 90.0), (0.7, 66.42), (0.9, 36.86)];

/// Allowed gap between a requested `c` and `cos²(θ/2)` before warning.
const OVERLAP_WARN_TOL: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// Experiment parameters. JSON keys match the CLI flag names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub tau_list: Vec<f64>,
    #[serde(rename = "ns")]
    pub n_s: usize,
    #[serde(rename = "ns_grid")]
    pub n_s_grid: Vec<usize>,
    pub repeats: usize,
    pub seed: u64,
    pub c_list: Vec<f64>,
    #[serde(rename = "shots")]
    pub shots_per_basis: u64,
    pub out: PathBuf,
    pub format: OutputFormat,
    pub plot: bool,
    pub dump_snapshots: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            tau_list: (0..=10).map(|i| i as f64 / 10.0).collect(),
            n_s: 2000,
            n_s_grid: vec![100, 200, 400, 600, 1000, 2000],
            repeats: 20,
            seed: 7,
            c_list: vec![0.5, 0.7, 0.9],
            shots_per_basis: 2000,
            out: PathBuf::from("out"),
            format: OutputFormat::Csv,
            plot: true,
            dump_snapshots: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldError {
    pub field: &'static str,
    pub reason: String,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.reason)
    }
}

/// A requested overlap together with the angle used to realize it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapSetting {
    pub c: f64,
    pub theta_deg: f64,
    /// `max |⟨a_i|b_j⟩|²` for `A = J(0)`, `B = J(θ)`.
    pub c_actual: f64,
}

impl OverlapSetting {
    pub fn new(c: f64) -> Self {
        let theta_deg = theta_for_overlap(c);
        let c_actual = overlap_c(&MeasBasis::from_angle(0.0), &MeasBasis::from_angle_deg(theta_deg));
        if (c_actual - c).abs() > OVERLAP_WARN_TOL {
            log::warn!("requested c = {c} but J(0), J({theta_deg}°) give c = {c_actual:.6}");
        }
        Self { c, theta_deg, c_actual }
    }

    pub fn basis_a(&self) -> MeasBasis {
        MeasBasis::from_angle(0.0)
    }

    pub fn basis_b(&self) -> MeasBasis {
        MeasBasis::from_angle_deg(self.theta_deg)
    }
}

/// Angle θ (degrees) with `c = cos²(θ/2)`; the reference angles are used
/// verbatim for `c ∈ {0.5, 0.7, 0.9}`.
pub fn theta_for_overlap(c: f64) -> f64 {
    REFERENCE_ANGLES_DEG
        .iter()
        .find(|(rc, _)| (rc - c).abs() < 1e-9)
        .map(|&(_, theta)| theta)
        .unwrap_or_else(|| (2.0 * c.sqrt().acos()).to_degrees())
}

impl ExperimentConfig {
    pub fn from_json_file(path: &Path) -> Result<Self, HarnessError> {
        let text = fs::read_to_string(path)
            .map_err(|source| HarnessError::ConfigRead { path: path.to_owned(), source })?;
        Self::from_json_str(&text).map_err(|source| HarnessError::ConfigParse { path: path.to_owned(), source })
    }

    pub fn from_json_str(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let mut errors = Vec::new();
        let mut fail = |field, reason: String| errors.push(FieldError { field, reason });

        if self.tau_list.is_empty() {
            fail("tau_list", "must not be empty".into());
        }
        for &tau in &self.tau_list {
            if !(0.0..=1.0).contains(&tau) {
                fail("tau_list", format!("{tau} is outside [0, 1]"));
            }
        }
        if self.n_s < 2 {
            fail("ns", format!("{} is below the minimum of 2", self.n_s));
        }
        if self.n_s_grid.is_empty() {
            fail("ns_grid", "must not be empty".into());
        }
        for &n in &self.n_s_grid {
            if n < 2 {
                fail("ns_grid", format!("{n} is below the minimum of 2"));
            }
        }
        if self.repeats == 0 {
            fail("repeats", "must be at least 1".into());
        }
        if self.shots_per_basis == 0 {
            fail("shots", "must be at least 1".into());
        }
        if self.c_list.is_empty() {
            fail("c_list", "must not be empty".into());
        }
        for &c in &self.c_list {
            if !(0.5..=1.0).contains(&c) {
                fail("c_list", format!("{c} is outside [0.5, 1]"));
            }
        }

        if errors.is_empty() {
            Ok(())
        } else {
            Err(HarnessError::InvalidConfig(errors))
        }
    }

    pub fn overlap_settings(&self) -> Vec<OverlapSetting> {
        self.c_list.iter().map(|&c| OverlapSetting::new(c)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let cfg = ExperimentConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.tau_list.len(), 11);
        assert_eq!(cfg.tau_list[3], 0.3);
    }

    #[test]
    fn validation_names_every_bad_field() {
        let cfg = ExperimentConfig {
            tau_list: vec![1.5],
            repeats: 0,
            c_list: vec![0.3],
            ..Default::default()
        };
        match cfg.validate() {
            Err(HarnessError::InvalidConfig(errs)) => {
                let fields: Vec<_> = errs.iter().map(|e| e.field).collect();
                assert_eq!(fields, ["tau_list", "repeats", "c_list"]);
                assert!(errs[0].to_string().contains("1.5"));
            }
            other => panic!("expected InvalidConfig, got {other:?}"),
        }
    }

    #[test]
    fn json_mirrors_flag_names() {
        let cfg = ExperimentConfig::from_json_str(r#"{"ns": 600, "shots": 100, "seed": 3, "format": "json"}"#).unwrap();
        assert_eq!(cfg.n_s, 600);
        assert_eq!(cfg.shots_per_basis, 100);
        assert_eq!(cfg.format, OutputFormat::Json);
        assert_eq!(cfg.repeats, 20);
        assert!(ExperimentConfig::from_json_str(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn reference_angles() {
        assert_eq!(theta_for_overlap(0.5), 90.0);
        assert_eq!(theta_for_overlap(0.7), 66.42);
        assert_eq!(theta_for_overlap(0.9), 36.86);
        assert!((theta_for_overlap(1.0)).abs() < 1e-12);
        let s = OverlapSetting::new(0.8);
        assert!((s.c_actual - 0.8).abs() < 1e-12);
        for c in [0.5, 0.7, 0.9] {
            assert!((OverlapSetting::new(c).c_actual - c).abs() < OVERLAP_WARN_TOL);
        }
    }
}
