//! Lawrence's signed decomposition of the cone pyramid.
//!
//! A triangulation of the dual cone is reduced to its boundary (the hollow
//! triangulation), coned from a generic interior element `ω`, and every cell
//! of that star triangulation contributes a signed simplex volume.

mod evaluate;
mod generic;
mod hollow;
mod piggyback;
mod pyramid;

pub use evaluate::{evaluate_signed, signed_cells, signed_contribution, SignedCell};
pub use generic::{find_generic, GenericElement, DEFAULT_MAX_RETRIES, INITIAL_COEFFICIENT_RANGE};
pub use hollow::{hollow_triangulation, HollowFacet, Pattern};
pub use piggyback::{base_cell_det, piggyback_det_abs, piggyback_transfer, StarCells};
pub use pyramid::{pyramid_add, pyramid_finalize, AdditionPyramid, DEFAULT_CAPACITY};

use num_bigint::BigInt;

use crate::arith::Scalar;
use crate::cone::ConeModel;
use crate::error::Result;
use crate::triangulate::placing_triangulation;
use crate::volume::{Precision, VolumeValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LawrenceOptions {
    pub precision: Precision,
    pub pattern_depth: usize,
    pub seed: u64,
    pub max_retries: usize,
}

impl Default for LawrenceOptions {
    fn default() -> Self {
        Self {
            precision: Precision::Exact,
            pattern_depth: 1,
            seed: 0,
            max_retries: DEFAULT_MAX_RETRIES,
        }
    }
}

/// Everything needed to evaluate the signed decomposition.
#[derive(Debug, Clone)]
pub struct LawrencePlan<N> {
    /// Extreme rays of the dual cone, i.e. the support forms, in the order
    /// used by the triangulation.
    pub forms: Vec<Vec<N>>,
    pub dual_cells: usize,
    pub hollow: Vec<HollowFacet>,
    pub generic: GenericElement,
}

impl<N: Scalar> LawrencePlan<N> {
    pub fn new(cone: &ConeModel<N>, opts: &LawrenceOptions) -> Result<Self> {
        // the working coordinates of the cone are full dimensional by
        // construction, so the dual cone is pointed
        let mut forms = cone.support_forms().to_vec();
        forms.sort();
        let tri = placing_triangulation(&forms)?;
        let hollow = hollow_triangulation(&tri, opts.pattern_depth);
        let generic = find_generic(&forms, &hollow, cone.grading(), opts.seed, opts.max_retries)?;
        Ok(Self {
            forms,
            dual_cells: tri.len(),
            hollow,
            generic,
        })
    }

    /// `|Γ|`, the number of cells of the star triangulation.
    pub fn hollow_size(&self) -> usize {
        self.hollow.iter().map(HollowFacet::len).sum()
    }

    pub fn omega(&self) -> &[BigInt] {
        &self.generic.omega
    }

    pub fn cells(&self, cone: &ConeModel<N>) -> Result<Vec<SignedCell<N>>> {
        signed_cells(&self.forms, &self.hollow, cone.grading(), self.omega())
    }
}

#[derive(Debug, Clone)]
pub struct LawrenceOutcome {
    pub value: VolumeValue,
    pub dual_cells: usize,
    pub hollow_size: usize,
    pub retries: usize,
}

pub fn volume_lawrence<N: Scalar>(cone: &ConeModel<N>, opts: &LawrenceOptions) -> Result<LawrenceOutcome> {
    let plan = LawrencePlan::new(cone, opts)?;
    let value = evaluate_signed(
        &plan.forms,
        &plan.hollow,
        cone.grading(),
        plan.omega(),
        &cone.grading_denominator().to_bigint(),
        opts.precision,
    )?;
    Ok(LawrenceOutcome {
        value,
        dual_cells: plan.dual_cells,
        hollow_size: plan.hollow_size(),
        retries: plan.generic.retries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::primal::volume_primal;

    fn homogenized(points: &[Vec<i64>]) -> ConeModel<i64> {
        let n = points[0].len();
        let gens: Vec<Vec<i64>> = points
            .iter()
            .map(|p| p.iter().copied().chain(std::iter::once(1)).collect())
            .collect();
        let mut deg = vec![0; n + 1];
        deg[n] = 1;
        ConeModel::from_generators(&gens, &deg).unwrap()
    }

    fn exact(cone: &ConeModel<i64>) -> crate::volume::Volumes {
        match volume_lawrence(cone, &LawrenceOptions::default()).unwrap().value {
            VolumeValue::Exact(v) => v,
            VolumeValue::Fixed(_) => unreachable!(),
        }
    }

    #[test]
    fn unit_square_has_four_signed_cells() {
        let sq = homogenized(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        let plan = LawrencePlan::new(&sq, &LawrenceOptions::default()).unwrap();
        assert_eq!(plan.dual_cells, 2);
        assert_eq!(plan.hollow_size(), 4);
        let cells = plan.cells(&sq).unwrap();
        let plus = cells.iter().filter(|c| c.sign() == 1).count();
        assert_eq!((plus, cells.len() - plus), (2, 2));
        assert_eq!(exact(&sq).polytope, rat(2, 1));
    }

    #[test]
    fn simplex_and_cube_agree_with_primal() {
        let s = homogenized(&[vec![0, 0], vec![3, 1], vec![1, 2]]);
        assert_eq!(exact(&s), volume_primal(&s, false).unwrap().volumes);
        let cube: Vec<Vec<i64>> = (0..16).map(|b| (0..4).map(|i| (b >> i) & 1).collect()).collect();
        let cube = homogenized(&cube);
        assert_eq!(exact(&cube).polytope, rat(24, 1));
    }

    #[test]
    fn piggyback_evaluation_matches_inversion_cells() {
        let pts = vec![vec![0, 0, 0], vec![2, 0, 1], vec![0, 3, 0], vec![1, 1, 2], vec![2, 2, 1], vec![0, 1, 3]];
        let cone = homogenized(&pts);
        let plan = LawrencePlan::new(&cone, &LawrenceOptions::default()).unwrap();
        let mut sum = rat(0, 1);
        for c in plan.cells(&cone).unwrap() {
            sum += c.contribution().unwrap();
        }
        assert_eq!(sum, volume_primal(&cone, false).unwrap().volumes.cone_pyramid);
        assert_eq!(exact(&cone).cone_pyramid, sum);
    }

    #[test]
    fn fixed_precision_stays_within_bound() {
        let s = homogenized(&[vec![0, 0], vec![3, 1], vec![1, 2], vec![2, 3]]);
        let truth = volume_primal(&s, false).unwrap().volumes;
        for p in [0, 2, 7] {
            let opts = LawrenceOptions {
                precision: Precision::Fixed(p),
                ..Default::default()
            };
            let VolumeValue::Fixed(f) = volume_lawrence(&s, &opts).unwrap().value else {
                unreachable!()
            };
            use num_traits::Signed;
            assert!((f.polytope_value() - &truth.polytope).abs() <= f.error_bound);
            assert!((f.cone_pyramid_value() - &truth.cone_pyramid).abs() <= f.error_bound);
        }
    }
}
