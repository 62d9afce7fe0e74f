//! Run reports in text and JSON form.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::arith::{render_decimal, render_fixed, render_fraction, Rat, Tier};
use crate::descent::LayerStats;
use crate::select::Algorithm;
use crate::verify::VerificationSummary;
use crate::volume::VolumeValue;

/// Significant digits of the decimal rendering of exact values.
pub const DECIMAL_DIGITS: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Diagnostics {
    pub polytope_dim: usize,
    pub ambient_dim: usize,
    pub extreme_rays: usize,
    pub support_forms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primal_cells: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_cells: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hollow_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generic_retries: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub descent_layers: Option<Vec<LayerStats>>,
    pub tier: Tier,
    pub overflow_restart: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationSummary>,
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeReport {
    pub algorithm: Algorithm,
    pub value: VolumeValue,
    pub grading_denominator: BigInt,
    /// `Vol P / d!` for a full-dimensional polytope in the default grading.
    pub euclidean_volume: Option<Rat>,
    /// Placing triangulation, one `T <k>: i1 … id` line per cell.
    pub triangulation: Option<String>,
    pub diagnostics: Diagnostics,
}

fn fraction_json(r: &Rat) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

impl VolumeReport {
    pub fn to_json(&self) -> Value {
        let (volume, pyramid) = match &self.value {
            VolumeValue::Exact(v) => (fraction_json(&v.polytope), fraction_json(&v.cone_pyramid)),
            VolumeValue::Fixed(f) => {
                let bound = render_fixed(&(f.error_bound.clone() * Rat::from_integer(num_traits::pow(BigInt::from(10), f.digits as usize))).to_integer(), f.digits);
                (
                    json!({ "decimal": f.polytope_decimal(), "error_bound": bound }),
                    json!({ "decimal": f.cone_pyramid_decimal(), "error_bound": bound }),
                )
            }
        };
        let mut out = json!({
            "algorithm": self.algorithm,
            "volume": volume,
            "volume_cone_pyramid": pyramid,
            "grading_denominator": self.grading_denominator.to_string().parse::<u64>().map(Value::from).unwrap_or_else(|_| Value::from(self.grading_denominator.to_string())),
            "diagnostics": serde_json::to_value(&self.diagnostics).expect("diagnostics serialize"),
        });
        if let Some(e) = &self.euclidean_volume {
            out["euclidean_volume"] = json!({
                "num": e.numer().to_string(),
                "den": e.denom().to_string(),
                "decimal": render_decimal(e, DECIMAL_DIGITS),
            });
        }
        out
    }

    /// The report without wall time; equal for equal inputs and options.
    pub fn deterministic_json(&self) -> Value {
        let mut v = self.to_json();
        v["diagnostics"]
            .as_object_mut()
            .expect("diagnostics object")
            .remove("wall_time_ms");
        v
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            let _ = writeln!(out, "{k:<22}{v}");
        };
        line("algorithm", self.algorithm.to_string());
        match &self.value {
            VolumeValue::Exact(v) => {
                line("volume", render_fraction(&v.polytope));
                line("volume (decimal)", render_decimal(&v.polytope, DECIMAL_DIGITS));
                line("cone pyramid volume", render_fraction(&v.cone_pyramid));
            }
            VolumeValue::Fixed(f) => {
                line("volume", f.polytope_decimal());
                line("cone pyramid volume", f.cone_pyramid_decimal());
                line("error bound", render_decimal(&f.error_bound, 3));
            }
        }
        line("grading denominator", self.grading_denominator.to_string());
        if let Some(e) = &self.euclidean_volume {
            line("euclidean volume", render_fraction(e));
            line("euclidean (decimal)", render_decimal(e, DECIMAL_DIGITS));
        }
        let d = &self.diagnostics;
        line("dimension", format!("{} in ambient dimension {}", d.polytope_dim, d.ambient_dim));
        line("extreme rays", d.extreme_rays.to_string());
        line("support forms", d.support_forms.to_string());
        if let Some(c) = d.primal_cells {
            line("triangulation size", c.to_string());
        }
        if let Some(c) = d.dual_cells {
            line("dual triangulation", c.to_string());
        }
        if let Some(c) = d.hollow_size {
            line("hollow triangulation", c.to_string());
        }
        if let Some(r) = d.generic_retries {
            line("generic retries", r.to_string());
        }
        if let Some(layers) = &d.descent_layers {
            for l in layers {
                line(
                    &format!("descent layer {}", l.dim),
                    format!("{} faces, {} simplicial", l.faces, l.simplicial),
                );
            }
        }
        line(
            "arithmetic",
            if d.overflow_restart {
                format!("{} (restarted after overflow)", d.tier)
            } else {
                d.tier.to_string()
            },
        );
        if let Some(v) = &d.verification {
            line(
                "verification",
                format!("passed: {} samples, {} cells", v.samples, v.cells),
            );
        }
        line("wall time", format!("{} ms", d.wall_time_ms));
        out
    }
}
