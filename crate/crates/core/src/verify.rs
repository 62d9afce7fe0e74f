//! Independent checks of a computed volume.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{convert_vec, to_big_vec, Rat, Scalar};
use crate::cone::ConeModel;
use crate::descent::descend;
use crate::error::{Error, Result};
use crate::lawrence::{volume_lawrence, LawrenceOptions, LawrencePlan, SignedCell};
use crate::primal::volume_primal;
use crate::select::Algorithm;
use crate::volume::VolumeValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub samples: usize,
    pub seed: u64,
    pub lawrence: LawrenceOptions,
    /// Negates the sign of one cell; used to check that faults are caught.
    pub flip_cell: Option<usize>,
    pub cross_check: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            samples: 1000,
            seed: 0,
            lawrence: LawrenceOptions::default(),
            flip_cell: None,
            cross_check: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct VerificationSummary {
    pub samples: usize,
    /// Accepted samples lying in `P`.
    pub inside: usize,
    /// Samples discarded for lying on a hyperplane of the decomposition.
    pub redrawn: usize,
    pub cells: usize,
    pub violations: usize,
    /// Exact `Vol P` of every algorithm, as `num/den`.
    pub algorithms: Vec<(Algorithm, String)>,
}

/// A sample where the signed indicator sum differs from the indicator of `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// The point `y / deg(y)` in ambient coordinates.
    pub point: Vec<Rat>,
    pub expected: i64,
    pub signed_sum: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IdentityCheck {
    pub checked: usize,
    pub inside: usize,
    pub redrawn: usize,
    pub witnesses: Vec<Witness>,
}

/// A homogeneous integer point near the cone over `P`: a random nonnegative
/// combination of the generators, perturbed so that roughly half the samples
/// fall outside.
fn sample_point(generators: &[Vec<BigInt>], rng: &mut ChaCha8Rng) -> Vec<BigInt> {
    let dim = generators[0].len();
    let mut y = vec![BigInt::from(0); dim];
    for g in generators {
        let w = BigInt::from(rng.gen_range(0..=16u32));
        for (a, b) in y.iter_mut().zip(g) {
            *a += &w * b;
        }
    }
    let scale = y.iter().map(|v| v.magnitude().clone()).max().unwrap_or_default();
    let scale = BigInt::from(scale) / 2 + 1;
    for a in y.iter_mut() {
        let r = BigInt::from(rng.gen_range(-1000i64..=1000));
        *a += &scale * r / 1000;
    }
    y
}

/// Checks `Σ (−1)^e ι_{R_δ}(x) = ι_P(x)` on random rational points.
pub fn signed_indicator_check<N: Scalar>(
    cone: &ConeModel<N>,
    cells: &[SignedCell<N>],
    samples: usize,
    seed: u64,
    flip_cell: Option<usize>,
) -> Result<IdentityCheck> {
    let gens: Vec<Vec<BigInt>> = cone.generators().iter().map(|g| to_big_vec(g)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = IdentityCheck::default();
    let max_attempts = 50 * samples.max(1);
    let mut attempts = 0;
    'sample: while out.checked < samples {
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::VerificationFailed(format!(
                "could not draw {samples} generic sample points"
            )));
        }
        let y: Vec<N> = convert_vec(&sample_point(&gens, &mut rng))?;
        let deg = cone.degree(&y)?;
        if !deg.is_positive() {
            out.redrawn += 1;
            continue;
        }
        let mut expected = 1;
        for f in cone.support_forms() {
            let v = N::dot(f, &y)?;
            if v.is_zero() {
                out.redrawn += 1;
                continue 'sample;
            }
            if v.is_negative() {
                expected = 0;
            }
        }
        let mut sum = 0i64;
        for (i, c) in cells.iter().enumerate() {
            match c.contains(&y)? {
                None => {
                    out.redrawn += 1;
                    continue 'sample;
                }
                Some(true) => {
                    let s = if flip_cell == Some(i) { -c.sign() } else { c.sign() };
                    sum += s as i64;
                }
                Some(false) => {}
            }
        }
        out.checked += 1;
        out.inside += expected as usize;
        if sum != expected {
            let amb = to_big_vec(&cone.to_ambient(&y)?);
            let d = deg.to_bigint();
            out.witnesses.push(Witness {
                point: amb.into_iter().map(|v| Rat::new(v, d.clone())).collect(),
                expected,
                signed_sum: sum,
            });
        }
    }
    Ok(out)
}

fn describe(w: &Witness) -> String {
    let pt: Vec<String> = w.point.iter().map(ToString::to_string).collect();
    format!("({}): signed sum {} but indicator {}", pt.join(", "), w.signed_sum, w.expected)
}

/// Runs the signed-indicator identity and, optionally, compares the exact
/// volumes of all three algorithms.
pub fn verify<N: Scalar>(cone: &ConeModel<N>, opts: &VerifyOptions) -> Result<VerificationSummary> {
    let plan = LawrencePlan::new(cone, &opts.lawrence)?;
    let cells = plan.cells(cone)?;
    let check = signed_indicator_check(cone, &cells, opts.samples, opts.seed, opts.flip_cell)?;
    if !check.witnesses.is_empty() {
        let shown: Vec<String> = check.witnesses.iter().take(5).map(describe).collect();
        return Err(Error::VerificationFailed(format!(
            "{} of {} sample points violate the signed decomposition; {}",
            check.witnesses.len(),
            check.checked,
            shown.join("; ")
        )));
    }
    let mut algorithms = Vec::new();
    if opts.cross_check {
        let exact = LawrenceOptions {
            precision: crate::volume::Precision::Exact,
            ..opts.lawrence
        };
        let lawrence = match volume_lawrence(cone, &exact)?.value {
            VolumeValue::Exact(v) => v.polytope,
            VolumeValue::Fixed(_) => unreachable!("exact precision requested"),
        };
        let values = [
            (Algorithm::Primal, volume_primal(cone, false)?.volumes.polytope),
            (Algorithm::Descent, descend(cone)?.volumes.polytope),
            (Algorithm::Lawrence, lawrence),
        ];
        algorithms = values.iter().map(|(a, v)| (*a, crate::arith::render_fraction(v))).collect();
        if values.iter().any(|(_, v)| *v != values[0].1) {
            let listed: Vec<String> = algorithms.iter().map(|(a, v)| format!("{a} {v}")).collect();
            return Err(Error::VerificationFailed(format!(
                "algorithms disagree: {}",
                listed.join(", ")
            )));
        }
    }
    Ok(VerificationSummary {
        samples: opts.samples,
        inside: check.inside,
        redrawn: check.redrawn,
        cells: cells.len(),
        violations: 0,
        algorithms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn square_passes() {
        let cone = corpus::cube(2).cone::<i64>().unwrap();
        let opts = VerifyOptions {
            samples: 100,
            ..Default::default()
        };
        let s = verify(&cone, &opts).unwrap();
        assert_eq!(s.cells, 4);
        assert!(s.inside > 0 && s.inside < 100);
    }

    #[test]
    fn injected_sign_flip_is_caught() {
        let cone = corpus::square_pyramid().cone::<i64>().unwrap();
        let opts = VerifyOptions {
            samples: 300,
            flip_cell: Some(0),
            cross_check: false,
            ..Default::default()
        };
        match verify(&cone, &opts) {
            Err(Error::VerificationFailed(msg)) => assert!(msg.contains("signed sum")),
            other => panic!("fault not detected: {other:?}"),
        }
    }
}
