//! The verification report and its JSON form.
//!
//! Keys are emitted in declaration order and reals are rounded to twelve
//! significant digits, so identical runs produce identical bytes.

use flatreach_core::reach::ReachKind;
use serde::{Serialize, Serializer};

use crate::pipeline::ComponentMeasurement;

/// Rounds to twelve significant digits; non-finite values become `null`.
fn sig12<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(round_sig12(*v))
    } else {
        s.serialize_none()
    }
}

fn sig12_opt<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(x) => sig12(x, s),
        None => s.serialize_none(),
    }
}

pub fn round_sig12(v: f64) -> f64 {
    format!("{v:.11e}").parse().expect("formatted float parses")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Overall {
    Pass,
    Fail,
    Vacuous,
}

/// Cut-metric energies (the functional the solver minimizes) of Σ = Ω, the
/// minimizer, and Σ = ∅.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Energies {
    #[serde(serialize_with = "sig12")]
    pub input: f64,
    #[serde(serialize_with = "sig12")]
    pub minimizer: f64,
    #[serde(serialize_with = "sig12")]
    pub empty: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentRecord {
    pub component_id: usize,
    #[serde(serialize_with = "sig12")]
    pub perimeter: f64,
    #[serde(serialize_with = "sig12")]
    pub max_curvature: f64,
    #[serde(serialize_with = "sig12")]
    pub reach_value: f64,
    pub reach_kind: &'static str,
    pub curvature_ok: bool,
    pub reach_ok: bool,
}

impl From<&ComponentMeasurement> for ComponentRecord {
    fn from(m: &ComponentMeasurement) -> Self {
        Self {
            component_id: m.id,
            perimeter: m.perimeter,
            max_curvature: m.max_curvature,
            reach_value: m.reach.value,
            reach_kind: match m.reach.kind {
                ReachKind::Bottleneck => "bottleneck",
                ReachKind::Focal => "focal",
            },
            curvature_ok: m.curvature_ok,
            reach_ok: m.reach_ok,
        }
    }
}

/// The run parameters, repeated in the report so it is self-describing.
/// Output paths are left out; they do not affect the measurements.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConfigEcho {
    pub input_path: String,
    pub input_kind: String,
    pub stencil: u32,
    pub smoothing_passes: usize,
    pub reach_method: String,
    pub seed: u64,
    #[serde(serialize_with = "sig12")]
    pub curvature_factor: f64,
    #[serde(serialize_with = "sig12")]
    pub reach_factor: f64,
    #[serde(serialize_with = "sig12")]
    pub window_scale: f64,
    #[serde(serialize_with = "sig12_opt")]
    pub raster_spacing: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    #[serde(serialize_with = "sig12")]
    pub lambda: f64,
    #[serde(serialize_with = "sig12")]
    pub c_hat: f64,
    #[serde(serialize_with = "sig12")]
    pub threshold: f64,
    pub energies: Energies,
    pub components: Vec<ComponentRecord>,
    pub overall: Overall,
    pub tool_version: String,
    pub config_echo: ConfigEcho,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round_sig12(0.221702233456789), 0.221702233457);
        assert_eq!(round_sig12(1.0 / 3.0), 0.333333333333);
        assert_eq!(round_sig12(12345.678901234567), 12345.6789012);
        assert_eq!(round_sig12(0.0), 0.0);
    }

    #[test]
    fn infinite_values_serialize_as_null() {
        let e = Energies {
            input: 1.0,
            minimizer: f64::INFINITY,
            empty: 2.5,
        };
        assert_eq!(
            serde_json::to_string(&e).unwrap(),
            r#"{"input":1.0,"minimizer":null,"empty":2.5}"#
        );
    }
}
