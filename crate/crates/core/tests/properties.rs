use num_bigint::BigInt;
use proptest::prelude::*;

use polyvol_core::arith::{Rat, Scalar};
use polyvol_core::cone::ConeModel;
use polyvol_core::descent::descend;
use polyvol_core::lawrence::{volume_lawrence, LawrenceOptions};
use polyvol_core::primal::volume_primal;
use polyvol_core::triangulate::placing_triangulation;
use polyvol_core::ProblemInput;

fn points(dim: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, dim), dim + 1..dim + 8)
}

fn cone_of(pts: &[Vec<i64>]) -> Option<ConeModel<i64>> {
    let input = ProblemInput::from_integer_vertices(pts).ok()?;
    input.cone().ok()
}

fn volumes_in<N: Scalar>(cone: &ConeModel<N>) -> polyvol_core::Result<[Rat; 3]> {
    Ok([
        volume_primal(cone, false)?.volumes.polytope,
        descend(cone)?.volumes.polytope,
        volume_lawrence(cone, &LawrenceOptions::default())?.value.polytope(),
    ])
}

/// Machine words first, big integers after an overflow, as the engine does.
fn volumes(cone: &ConeModel<i64>) -> [Rat; 3] {
    match volumes_in(cone) {
        Err(polyvol_core::Error::Overflow) => volumes_in(&cone.convert::<BigInt>().unwrap()).unwrap(),
        other => other.unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn algorithms_agree_on_random_hulls(pts in (2usize..=4).prop_flat_map(points)) {
        if let Some(cone) = cone_of(&pts) {
            let [p, d, l] = volumes(&cone);
            prop_assert_eq!(&p, &d);
            prop_assert_eq!(&p, &l);
        }
    }

    #[test]
    fn hull_volume_ignores_point_order(pts in points(3), rot in 0usize..16) {
        let Some(cone) = cone_of(&pts) else { return Ok(()) };
        let mut shuffled = pts.clone();
        shuffled.reverse();
        let n = shuffled.len();
        shuffled.rotate_left(rot % n);
        let other = cone_of(&shuffled).unwrap();
        prop_assert_eq!(
            volume_primal(&cone, false).unwrap().volumes,
            volume_primal(&other, false).unwrap().volumes
        );
    }

    #[test]
    fn triangulation_cells_are_nondegenerate_and_sum_up(pts in points(3)) {
        let Some(cone) = cone_of(&pts) else { return Ok(()) };
        let tri = placing_triangulation(cone.generators()).unwrap();
        let mut total = BigInt::from(0);
        for cell in &tri.cells {
            let rows: Vec<Vec<i64>> = cell.rays.iter().map(|&i| tri.generators[i].clone()).collect();
            let det = polyvol_core::arith::IntMatrix::from_rows(&rows, rows.len()).unwrap().det().unwrap();
            prop_assert_ne!(det, 0);
            if let Some(d) = &cell.det_abs {
                prop_assert_eq!(i64::abs(*d), i64::abs(det));
            }
            total += BigInt::from(i64::abs(det));
        }
        // generators sit at degree 1 in this embedding, so the determinants add up to the volume
        let degrees: Vec<i64> = tri.generators.iter().map(|g| cone.degree(g).unwrap()).collect();
        if degrees.iter().all(|&g| g == 1) {
            prop_assert_eq!(Rat::from_integer(total), volume_primal(&cone, false).unwrap().volumes.cone_pyramid);
        }
    }

    #[test]
    fn tiers_agree(pts in points(3)) {
        let Some(small) = cone_of(&pts) else { return Ok(()) };
        let big: ConeModel<BigInt> = small.convert().unwrap();
        prop_assert_eq!(volume_primal(&small, false).unwrap().volumes, volume_primal(&big, false).unwrap().volumes);
        prop_assert_eq!(descend(&small).unwrap().volumes, descend(&big).unwrap().volumes);
    }

    #[test]
    fn translation_keeps_volume(pts in points(2), shift in prop::collection::vec(-20i64..=20, 2)) {
        let Some(cone) = cone_of(&pts) else { return Ok(()) };
        let moved: Vec<Vec<i64>> = pts.iter().map(|p| vec![p[0] + shift[0], p[1] + shift[1]]).collect();
        let other = cone_of(&moved).unwrap();
        prop_assert_eq!(volumes(&cone), volumes(&other));
    }
}
