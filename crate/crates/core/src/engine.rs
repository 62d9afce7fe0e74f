//! One complete volume computation.

use std::time::Instant;

use num_bigint::BigInt;

use crate::arith::{with_restart, Rat, Scalar, Tier};
use crate::cone::ConeModel;
use crate::descent::descend;
use crate::error::{Error, Result};
use crate::input::ProblemInput;
use crate::lawrence::{volume_lawrence, LawrenceOptions, DEFAULT_MAX_RETRIES};
use crate::primal::volume_primal;
use crate::report::{Diagnostics, VolumeReport};
use crate::select::{auto_select, Algorithm};
use crate::verify::{verify, VerifyOptions};
use crate::volume::{FixedVolumes, Precision, VolumeValue};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOptions {
    /// `None` selects automatically.
    pub algorithm: Option<Algorithm>,
    pub precision: Precision,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    pub seed: u64,
    pub pattern_depth: usize,
    pub max_retries: usize,
    /// Skip the machine-word attempt.
    pub force_arbitrary: bool,
    pub euclidean: bool,
    /// Number of samples for the signed-indicator check, if requested.
    pub verify: Option<usize>,
    pub export_triangulation: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            algorithm: None,
            precision: Precision::Exact,
            threads: None,
            seed: 0,
            pattern_depth: 1,
            max_retries: DEFAULT_MAX_RETRIES,
            force_arbitrary: false,
            euclidean: false,
            verify: None,
            export_triangulation: false,
        }
    }
}

impl RunOptions {
    fn lawrence(&self) -> LawrenceOptions {
        LawrenceOptions {
            precision: self.precision,
            pattern_depth: self.pattern_depth,
            seed: self.seed,
            max_retries: self.max_retries,
        }
    }
}

fn finish(value: VolumeValue, precision: Precision) -> VolumeValue {
    match (value, precision) {
        (VolumeValue::Exact(v), Precision::Fixed(p)) => VolumeValue::Fixed(FixedVolumes::from_exact(&v, p)),
        (v, _) => v,
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, i| acc * i)
}

fn run_in<N: Scalar>(input: &ProblemInput, opts: &RunOptions) -> Result<VolumeReport> {
    let cone: ConeModel<N> = input.cone()?;
    let algorithm = opts.algorithm.unwrap_or_else(|| {
        auto_select(input.mode(), cone.dim(), cone.support_forms().len(), cone.generators().len())
    });
    let mut diagnostics = Diagnostics {
        polytope_dim: cone.dim() - 1,
        ambient_dim: input.ambient_dim,
        extreme_rays: cone.generators().len(),
        support_forms: cone.support_forms().len(),
        primal_cells: None,
        dual_cells: None,
        hollow_size: None,
        generic_retries: None,
        descent_layers: None,
        tier: N::TIER,
        overflow_restart: false,
        verification: None,
        wall_time_ms: 0,
    };
    let mut triangulation = None;
    let value = match algorithm {
        Algorithm::Primal => {
            let out = volume_primal(&cone, opts.export_triangulation)?;
            diagnostics.primal_cells = Some(out.cells);
            triangulation = out.triangulation.map(|t| t.to_text());
            finish(VolumeValue::Exact(out.volumes), opts.precision)
        }
        Algorithm::Descent => {
            let out = descend(&cone)?;
            diagnostics.descent_layers = Some(out.layers);
            finish(VolumeValue::Exact(out.volumes), opts.precision)
        }
        Algorithm::Lawrence => {
            let out = volume_lawrence(&cone, &opts.lawrence())?;
            diagnostics.dual_cells = Some(out.dual_cells);
            diagnostics.hollow_size = Some(out.hollow_size);
            diagnostics.generic_retries = Some(out.retries);
            out.value
        }
    };
    if let Some(samples) = opts.verify {
        let vopts = VerifyOptions {
            samples,
            seed: opts.seed,
            lawrence: opts.lawrence(),
            flip_cell: None,
            cross_check: true,
        };
        diagnostics.verification = Some(verify(&cone, &vopts)?);
    }
    let euclidean_volume = (opts.euclidean && input.has_default_grading() && cone.is_full_dim())
        .then(|| value.polytope() / Rat::from_integer(factorial(input.ambient_dim)));
    Ok(VolumeReport {
        algorithm,
        value,
        grading_denominator: cone.grading_denominator().to_bigint(),
        euclidean_volume,
        triangulation,
        diagnostics,
    })
}

/// Computes the volume, first in machine words and, after an overflow,
/// again from scratch in arbitrary precision.
pub fn run(input: &ProblemInput, opts: &RunOptions) -> Result<VolumeReport> {
    let body = || -> Result<VolumeReport> {
        let start = Instant::now();
        let (mut report, tier) = with_restart(opts.force_arbitrary, |tier| match tier {
            Tier::MachineWord => run_in::<i64>(input, opts),
            Tier::Arbitrary => run_in::<BigInt>(input, opts),
        })?;
        report.diagnostics.overflow_restart = tier == Tier::Arbitrary && !opts.force_arbitrary;
        report.diagnostics.wall_time_ms = start.elapsed().as_millis() as u64;
        Ok(report)
    };
    match opts.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InconsistentDimensions(format!("thread pool: {e}")))?
            .install(body),
        None => body(),
    }
}
