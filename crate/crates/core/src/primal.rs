//! Volume as the sum of simplex volumes over a triangulation of the cone.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arith::{IntMatrix, Rat, Scalar};
use crate::cone::ConeModel;
use crate::error::{Error, Result};
use crate::lawrence::AdditionPyramid;
use crate::triangulate::{placing_triangulation_visit, SimplicialCone, Triangulation};
pub use crate::volume::Volumes;

/// `|det T| / (g_1 ⋯ g_d)` for rays given in a basis of their lattice.
pub fn simplex_volume_homogeneous<N: Scalar>(rays: &[Vec<N>], deg: &[N]) -> Result<Rat> {
    let m = IntMatrix::from_rows(rays, deg.len())?;
    let det = m.det()?;
    if det.is_zero() {
        return Err(Error::DegenerateSimplex);
    }
    simplex_volume_from_det(&det, rays, deg)
}

pub(crate) fn simplex_volume_from_det<N: Scalar>(det: &N, rays: &[Vec<N>], deg: &[N]) -> Result<Rat> {
    let mut denom = BigInt::from(1);
    for r in rays {
        let g = N::dot(deg, r)?;
        if !g.is_positive() {
            return Err(Error::NonPositiveDegree);
        }
        denom *= g.to_bigint();
    }
    Ok(Rat::new(det.abs()?.to_bigint(), denom))
}

#[derive(Debug, Clone)]
pub struct PrimalOutcome<N> {
    pub volumes: Volumes,
    pub cells: usize,
    /// Kept only on request; large cones have millions of cells.
    pub triangulation: Option<Triangulation<N>>,
}

/// Sums the simplex volumes of a stored triangulation of the cone.
pub fn triangulation_volume<N: Scalar>(tri: &Triangulation<N>, deg: &[N]) -> Result<Rat> {
    let pyr = tri
        .cells
        .par_iter()
        .try_fold(AdditionPyramid::default, |mut pyr, cell| -> Result<_> {
            let rays: Vec<Vec<N>> = cell.rays.iter().map(|&i| tri.generators[i].clone()).collect();
            let v = match &cell.det_abs {
                Some(d) => simplex_volume_from_det(d, &rays, deg)?,
                None => simplex_volume_homogeneous(&rays, deg)?,
            };
            pyr.push(v);
            Ok(pyr)
        })
        .try_reduce(AdditionPyramid::default, |a, b| Ok(a.merge(b)))?;
    Ok(pyr.finalize())
}

/// Volume from a placing triangulation of the cone, summed while the
/// triangulation is built.
pub fn volume_primal<N: Scalar>(cone: &ConeModel<N>, keep_triangulation: bool) -> Result<PrimalOutcome<N>> {
    let gens = cone.generators();
    let degrees: Vec<N> = gens.iter().map(|g| cone.degree(g)).collect::<Result<_>>()?;
    if degrees.iter().any(|d| !d.is_positive()) {
        return Err(Error::NonPositiveDegree);
    }
    let mut pyr = AdditionPyramid::default();
    let mut kept = Vec::new();
    let cells = placing_triangulation_visit(gens, |rays, det| {
        let mut denom = BigInt::from(1);
        for &r in rays {
            denom *= degrees[r].to_bigint();
        }
        pyr.push(Rat::new(det.to_bigint(), denom));
        if keep_triangulation {
            kept.push(SimplicialCone {
                rays: rays.to_vec(),
                det_abs: Some(det.clone()),
            });
        }
        Ok(())
    })?;
    Ok(PrimalOutcome {
        volumes: Volumes::from_pyramid(pyr.finalize(), &cone.grading_denominator().to_bigint()),
        cells,
        triangulation: keep_triangulation.then(|| Triangulation {
            generators: gens.to_vec(),
            cells: kept,
        }),
    })
}
