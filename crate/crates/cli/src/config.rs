//! Run configuration: a flat JSON object of scalars and arrays, overlaid
//! with `--key value` pairs from the command line.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use vdwshock_core::regular_reflection::default_table_axes;
use vdwshock_core::thermo::{GasModel, ReferenceState};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub gamma: f64,
    pub btilde: f64,
    pub alpha_deg: f64,
    pub beta_i: f64,
    pub epsilon: f64,
    pub rho0: f64,
    pub p0: f64,
    pub theta0: f64,

    pub table_beta_i: Vec<f64>,
    pub table_btilde: Vec<f64>,

    pub field_x_min: f64,
    pub field_x_max: f64,
    pub field_x_count: usize,
    pub field_theta_count: usize,

    pub front_btilde_min: f64,
    pub front_btilde_max: f64,
    pub front_btilde_count: usize,
    /// Ray angle from the wedge face; must carry a shock.
    pub front_ray_deg: f64,
    pub front_radius: f64,
    pub front_time: f64,

    pub inner_r_min: f64,
    pub inner_r_max: f64,
    pub inner_r_count: usize,
    pub inner_theta_min: f64,
    pub inner_theta_max: f64,
    pub inner_theta_count: usize,

    pub output: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let (table_beta_i, table_btilde) = default_table_axes();
        Self {
            gamma: 1.4,
            btilde: 0.0,
            alpha_deg: 45.0,
            beta_i: 1.5,
            epsilon: 0.1,
            rho0: 1.0,
            p0: 1.0,
            theta0: 0.0,
            table_beta_i,
            table_btilde,
            field_x_min: 0.0,
            field_x_max: 1.5,
            field_x_count: 31,
            field_theta_count: 28,
            front_btilde_min: 0.0,
            front_btilde_max: 0.7,
            front_btilde_count: 15,
            front_ray_deg: 90.0,
            front_radius: 1.0,
            front_time: 1.0,
            inner_r_min: -3.0,
            inner_r_max: 6.0,
            inner_r_count: 19,
            inner_theta_min: -3.0,
            inner_theta_max: 3.0,
            inner_theta_count: 13,
            output: None,
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Splits `--key value` and `--key=value` pairs; dashes in keys become
/// underscores.
pub fn parse_overrides(args: &[String]) -> Result<Map<String, Value>> {
    let mut map = Map::new();
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let key = arg
            .strip_prefix("--")
            .ok_or_else(|| invalid(format!("expected --key, found `{arg}`")))?;
        let (key, raw) = match key.split_once('=') {
            Some((k, v)) => (k.to_string(), v.to_string()),
            None => {
                let v = it
                    .next()
                    .ok_or_else(|| invalid(format!("missing value for --{key}")))?;
                (key.to_string(), v.clone())
            }
        };
        // Bare words that are not JSON are taken as strings.
        let value = serde_json::from_str(&raw).unwrap_or(Value::String(raw));
        map.insert(key.replace('-', "_"), value);
    }
    Ok(map)
}

impl RunConfig {
    /// Builds a validated configuration from optional JSON text and
    /// overrides. Empty text means all defaults.
    pub fn from_sources(text: Option<&str>, overrides: Map<String, Value>) -> Result<Self> {
        let mut base = match text.map(str::trim) {
            Some(t) if !t.is_empty() => match serde_json::from_str::<Value>(t) {
                Ok(Value::Object(map)) => map,
                Ok(_) => return Err(invalid("configuration must be a JSON object")),
                Err(e) => {
                    return Err(invalid(format!(
                        "line {}, column {}: {e}",
                        e.line(),
                        e.column()
                    )))
                }
            },
            _ => Map::new(),
        };
        base.extend(overrides);
        let cfg: RunConfig = serde_json::from_value(Value::Object(base))
            .map_err(|e| invalid(format!("field error: {e}")))?;
        cfg.validate()
    }

    pub fn validate(self) -> Result<Self> {
        GasModel::new(self.gamma, self.btilde)
            .map_err(|e| invalid(format!("gamma/btilde: {e}")))?;
        if !(self.alpha_deg > 0.0 && self.alpha_deg < 90.0) {
            return Err(invalid(format!(
                "alpha_deg = {} must satisfy 0 < alpha < 90 (alpha < pi/2)",
                self.alpha_deg
            )));
        }
        if !(self.beta_i > 0.0 && self.beta_i.is_finite()) {
            return Err(invalid("beta_i must be positive"));
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return Err(invalid("epsilon must be non-negative"));
        }
        if !(self.rho0 > 0.0 && self.p0 > 0.0) {
            return Err(invalid("rho0 and p0 must be positive"));
        }
        if !self.theta0.is_finite() {
            return Err(invalid("theta0 must be finite"));
        }
        for (name, axis) in [
            ("table_beta_i", &self.table_beta_i),
            ("table_btilde", &self.table_btilde),
        ] {
            if axis.len() < 2 || !axis.windows(2).all(|w| w[1] > w[0]) {
                return Err(invalid(format!(
                    "{name} needs at least 2 increasing values"
                )));
            }
        }
        if self.table_btilde.iter().any(|b| !(0.0..1.0).contains(b)) {
            return Err(invalid("table_btilde values must lie in [0, 1)"));
        }
        let ranges = [
            (
                "field_x",
                self.field_x_min,
                self.field_x_max,
                self.field_x_count,
            ),
            (
                "front_btilde",
                self.front_btilde_min,
                self.front_btilde_max,
                self.front_btilde_count,
            ),
            (
                "inner_r",
                self.inner_r_min,
                self.inner_r_max,
                self.inner_r_count,
            ),
            (
                "inner_theta",
                self.inner_theta_min,
                self.inner_theta_max,
                self.inner_theta_count,
            ),
        ];
        for (name, lo, hi, n) in ranges {
            if n < 2 {
                return Err(invalid(format!("{name}_count = {n} must be at least 2")));
            }
            if !(lo < hi && lo.is_finite() && hi.is_finite()) {
                return Err(invalid(format!("{name}_min must be below {name}_max")));
            }
        }
        if self.field_theta_count < 2 {
            return Err(invalid("field_theta_count must be at least 2"));
        }
        if self.field_x_min < 0.0 {
            return Err(invalid("field_x_min must be non-negative"));
        }
        if !(self.front_btilde_min >= 0.0 && self.front_btilde_max < 1.0) {
            return Err(invalid("front_btilde range must lie in [0, 1)"));
        }
        if !(self.front_ray_deg > self.alpha_deg && self.front_ray_deg < 180.0 - self.alpha_deg) {
            return Err(invalid(format!(
                "front_ray_deg = {} must lie strictly between alpha and 180 - alpha (a shock ray)",
                self.front_ray_deg
            )));
        }
        if !(self.front_radius > 0.0 && self.front_time > 0.0) {
            return Err(invalid("front_radius and front_time must be positive"));
        }
        Ok(self)
    }

    pub fn gas(&self) -> GasModel {
        GasModel {
            gamma: self.gamma,
            btilde: self.btilde,
        }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha_deg.to_radians()
    }

    pub fn reference(&self) -> Result<ReferenceState> {
        Ok(ReferenceState::new(self.rho0, self.p0, &self.gas())?)
    }
}

/// `n` evenly spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| {
            if k + 1 == n {
                hi
            } else {
                lo + (hi - lo) * k as f64 / (n - 1) as f64
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn empty_input_gives_defaults() {
        let cfg = RunConfig::from_sources(Some("  "), Map::new()).unwrap();
        assert_eq!(cfg, RunConfig::default());
        assert_eq!(cfg.gamma, 1.4);
        assert_eq!(cfg.alpha_deg, 45.0);
        assert_eq!(cfg.epsilon, 0.1);
    }

    #[test]
    fn overrides_win_over_file() {
        let ov = parse_overrides(&args(&[
            "--btilde",
            "0.2",
            "--alpha-deg=30",
            "--output",
            "out.csv",
        ]))
        .unwrap();
        let cfg = RunConfig::from_sources(Some(r#"{"btilde": 0.1, "gamma": 1.3}"#), ov).unwrap();
        assert_eq!(cfg.btilde, 0.2);
        assert_eq!(cfg.gamma, 1.3);
        assert_eq!(cfg.alpha_deg, 30.0);
        assert_eq!(cfg.output.as_deref(), Some("out.csv"));
    }

    #[test]
    fn rejections_name_the_invariant() {
        let err = RunConfig::from_sources(Some(r#"{"btilde": 1.2}"#), Map::new()).unwrap_err();
        assert!(err.to_string().contains("btilde must be below 1"));
        assert_eq!(err.exit_code(), 2);
        let err = RunConfig::from_sources(Some(r#"{"alpha_deg": 90}"#), Map::new()).unwrap_err();
        assert!(err.to_string().contains("alpha < pi/2"));
        let err = RunConfig::from_sources(Some("{\n\"gamma\": ,}"), Map::new()).unwrap_err();
        assert!(err.to_string().contains("line 2"));
        let err = RunConfig::from_sources(Some(r#"{"gama": 1.4}"#), Map::new()).unwrap_err();
        assert!(err.to_string().contains("gama"));
        let err = RunConfig::from_sources(
            None,
            parse_overrides(&args(&["--field_x_count", "1"])).unwrap(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("at least 2"));
        assert!(parse_overrides(&args(&["gamma", "1.4"])).is_err());
        assert!(parse_overrides(&args(&["--gamma"])).is_err());
    }

    #[test]
    fn linspace_hits_both_ends() {
        let v = linspace(0.0, 1.5, 31);
        assert_eq!(v.len(), 31);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[30], 1.5);
        assert!((v[10] - 0.5).abs() < 1e-15);
    }
}
