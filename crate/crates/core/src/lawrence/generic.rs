use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::hollow::HollowFacet;
use super::piggyback::StarCells;
use crate::arith::{to_big_vec, Scalar};
use crate::error::{Error, Result};

/// Coefficient range of the first candidate pair; doubled on every retry.
pub const INITIAL_COEFFICIENT_RANGE: u64 = 8;
pub const DEFAULT_MAX_RETRIES: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericElement {
    pub omega: Vec<BigInt>,
    /// Candidate pairs rejected before `omega` was found.
    pub retries: usize,
}

/// Critical values of one pair of candidates over the star cells of one `δ`
/// with center `deg`.
enum Verdict {
    /// Both candidates lie on a common critical hyperplane.
    Rejected,
    /// Positive integers `a` with `a ℓ(ω_1) + ℓ(ω_2) = 0` for some `ℓ`.
    Forbidden(BTreeSet<BigInt>),
}

fn check_delta<N: Scalar>(
    forms: &[Vec<N>],
    h: &HollowFacet,
    deg: &[N],
    w1: &[N],
    w2: &[N],
) -> Result<Verdict> {
    let rays: Vec<&[N]> = h.rays().into_iter().map(|i| forms[i].as_slice()).collect();
    let omitted = h.omitted_positions();
    let star = StarCells::new(&rays, omitted[0], deg).map_err(|e| match e {
        Error::SingularMatrix => Error::DegenerateGrading,
        other => other,
    })?;
    let (b1, b2) = (star.values(w1)?, star.values(w2)?);
    let mut forbidden = BTreeSet::new();
    for &p in &omitted {
        let (v1, v2) = (star.cell_values(&b1, p)?, star.cell_values(&b2, p)?);
        for i in (0..star.dim()).filter(|&i| i != star.center_slot()) {
            match (v1[i].is_zero(), v2[i].is_zero()) {
                (true, true) => return Ok(Verdict::Rejected),
                (true, false) => {}
                _ => {
                    let (x, y) = (v1[i].to_bigint(), v2[i].to_bigint());
                    let (q, r) = (-&y).div_rem(&x);
                    if Zero::is_zero(&r) && Signed::is_positive(&q) {
                        forbidden.insert(q);
                    }
                }
            }
        }
    }
    Ok(Verdict::Forbidden(forbidden))
}

fn smallest_allowed(forbidden: &BTreeSet<BigInt>) -> BigInt {
    let mut a = BigInt::from(1);
    for f in forbidden {
        if *f == a {
            a += 1;
        } else if *f > a {
            break;
        }
    }
    a
}

fn random_interior(forms: &[Vec<BigInt>], rng: &mut ChaCha8Rng, range: u64) -> Vec<BigInt> {
    let dim = forms[0].len();
    let mut w = vec![BigInt::from(0); dim];
    for f in forms {
        let c = BigInt::from(rng.gen_range(1..=range));
        for (x, y) in w.iter_mut().zip(f) {
            *x += &c * y;
        }
    }
    w
}

/// An interior element `ω` of the dual cone off every critical hyperplane of
/// the star triangulation centered at `deg`.
///
/// Two random interior candidates `ω_1, ω_2` are tested together; unless both
/// lie on one critical hyperplane, `ω = a ω_1 + ω_2` with the smallest positive
/// integer `a` avoiding all of them is generic. Failed pairs are redrawn with
/// doubled coefficient range, at most `max_retries` times.
pub fn find_generic<N: Scalar>(
    forms: &[Vec<N>],
    hollow: &[HollowFacet],
    deg: &[N],
    seed: u64,
    max_retries: usize,
) -> Result<GenericElement> {
    let big_forms: Vec<Vec<BigInt>> = forms.iter().map(|f| to_big_vec(f)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut range = INITIAL_COEFFICIENT_RANGE;
    for retries in 0..=max_retries {
        let w1 = random_interior(&big_forms, &mut rng, range);
        let w2 = random_interior(&big_forms, &mut rng, range);
        let (n1, n2): (Vec<N>, Vec<N>) = (
            w1.iter().map(N::from_bigint).collect::<Result<_>>()?,
            w2.iter().map(N::from_bigint).collect::<Result<_>>()?,
        );
        let verdicts: Vec<Verdict> = hollow
            .par_iter()
            .map(|h| check_delta(forms, h, deg, &n1, &n2))
            .collect::<Result<_>>()?;
        let mut forbidden = BTreeSet::new();
        let mut rejected = false;
        for v in verdicts {
            match v {
                Verdict::Rejected => {
                    rejected = true;
                    break;
                }
                Verdict::Forbidden(f) => forbidden.extend(f),
            }
        }
        if !rejected {
            let a = smallest_allowed(&forbidden);
            let omega = w1.iter().zip(&w2).map(|(x, y)| &a * x + y).collect();
            return Ok(GenericElement { omega, retries });
        }
        range = range.saturating_mul(2);
    }
    Err(Error::ExhaustedCandidates(max_retries))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_allowed_skips_forbidden_run() {
        let f: BTreeSet<BigInt> = [1, 2, 3, 5].into_iter().map(BigInt::from).collect();
        assert_eq!(smallest_allowed(&f), BigInt::from(4));
        assert_eq!(smallest_allowed(&BTreeSet::new()), BigInt::from(1));
        let f: BTreeSet<BigInt> = [2, 3].into_iter().map(BigInt::from).collect();
        assert_eq!(smallest_allowed(&f), BigInt::from(1));
    }
}
