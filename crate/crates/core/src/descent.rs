//! Volume by descent in the face lattice.
//!
//! For a face `G` of the cone and a ray `v` of `G`, the pyramid over the
//! cross section of `G` decomposes into pyramids with apex `v / deg v` over
//! the facets of `G` not containing `v`:
//!
//! `V(G) = Σ_F  Ht_F(v / deg v) · V(F)`.
//!
//! Starting from the whole cone, faces are pushed layer by layer, merging
//! coefficients of faces reached along several paths. Simplicial faces are
//! closed with the determinant formula.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::arith::{
    content, independent_subset, lattice_basis_of_span, pivot_columns, IntMatrix, Rat, Scalar,
};
use crate::cone::ConeModel;
use crate::error::{Error, Result};
use crate::lawrence::AdditionPyramid;
use crate::primal::{simplex_volume_from_det, Volumes};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentFace {
    /// Support forms vanishing on the face.
    pub facet_indicator: FixedBitSet,
    /// Extreme rays of the cone lying in the face.
    pub vertex_set: FixedBitSet,
    pub dim: usize,
    pub coefficient: Rat,
}

/// Faces of one dimension, keyed by their facet indicator.
#[derive(Debug, Clone, Default)]
pub struct DescentLayer {
    pub dim: usize,
    pub faces: HashMap<FixedBitSet, DescentFace>,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct LayerStats {
    pub dim: usize,
    pub faces: usize,
    pub simplicial: usize,
    pub max_coefficient_bits: u64,
}

/// The vertex with the fewest facets of the face not containing it; ties go to
/// the smallest index.
pub fn select_vertex(vertices: &FixedBitSet, facets: &[FixedBitSet]) -> Result<usize> {
    vertices
        .ones()
        .map(|v| (facets.iter().filter(|f| !f.contains(v)).count(), v))
        .min()
        .map(|(_, v)| v)
        .ok_or(Error::EmptyFace)
}

/// Facets of a face as `(rays, representative support form)`, in order of the
/// representative.
fn facets_of(face: &DescentFace, incidence: &[FixedBitSet]) -> Vec<(FixedBitSet, usize)> {
    let mut cands: Vec<(FixedBitSet, usize)> = Vec::new();
    for (j, zeros) in incidence.iter().enumerate() {
        if face.facet_indicator.contains(j) {
            continue;
        }
        let mut s = face.vertex_set.clone();
        s.intersect_with(zeros);
        if s.is_clear() || s == face.vertex_set {
            continue;
        }
        if cands.iter().any(|(t, _)| *t == s) {
            continue;
        }
        cands.push((s, j));
    }
    let maximal: Vec<bool> = cands
        .iter()
        .map(|(s, _)| !cands.iter().any(|(t, _)| t != s && s.is_subset(t)))
        .collect();
    cands
        .into_iter()
        .zip(maximal)
        .filter(|(_, m)| *m)
        .map(|(c, _)| c)
        .collect()
}

fn closure(rays: &FixedBitSet, incidence: &[FixedBitSet]) -> FixedBitSet {
    let mut ind = FixedBitSet::with_capacity(incidence.len());
    for (j, zeros) in incidence.iter().enumerate() {
        if rays.is_subset(zeros) {
            ind.insert(j);
        }
    }
    ind
}

enum Expansion {
    Closed(Rat),
    Children(Vec<(FixedBitSet, FixedBitSet, Rat)>),
}

pub struct DescentSystem<'a, N> {
    cone: &'a ConeModel<N>,
    incidence: Vec<FixedBitSet>,
    layer: DescentLayer,
    closed: AdditionPyramid<Rat>,
    stats: Vec<LayerStats>,
}

impl<'a, N: Scalar> DescentSystem<'a, N> {
    pub fn new(cone: &'a ConeModel<N>) -> Result<Self> {
        let incidence = cone.form_incidence()?;
        let mut all = FixedBitSet::with_capacity(cone.generators().len());
        all.insert_range(..);
        let top = DescentFace {
            facet_indicator: FixedBitSet::with_capacity(incidence.len()),
            vertex_set: all,
            dim: cone.dim(),
            coefficient: Rat::from_integer(BigInt::from(1)),
        };
        let mut faces = HashMap::new();
        faces.insert(top.facet_indicator.clone(), top);
        Ok(Self {
            cone,
            incidence,
            layer: DescentLayer {
                dim: cone.dim(),
                faces,
            },
            closed: AdditionPyramid::default(),
            stats: Vec::new(),
        })
    }

    /// Faces not yet closed.
    pub fn frontier(&self) -> &DescentLayer {
        &self.layer
    }

    /// Sum of the contributions of the faces closed so far.
    pub fn closed_sum(&self) -> Rat {
        self.closed.clone().finalize()
    }

    pub fn stats(&self) -> &[LayerStats] {
        &self.stats
    }

    pub fn is_done(&self) -> bool {
        self.layer.faces.is_empty()
    }

    fn rays(&self, set: &FixedBitSet) -> Vec<Vec<N>> {
        set.ones().map(|i| self.cone.generators()[i].clone()).collect()
    }

    fn expand(&self, face: &DescentFace) -> Result<Expansion> {
        let rays = self.rays(&face.vertex_set);
        let dim = self.cone.dim();
        let independent = independent_subset(&rays, dim)?;
        debug_assert_eq!(independent.len(), face.dim, "face dimension drifted");
        let span: Vec<&Vec<N>> = independent.iter().map(|&i| &rays[i]).collect();
        let basis = lattice_basis_of_span(&span, dim)?;
        let deg = self.cone.grading();

        if rays.len() == face.dim {
            // |det T| from the pivot columns of the Hermite basis
            let pivots = pivot_columns(&basis);
            let restricted: Vec<Vec<N>> = rays
                .iter()
                .map(|r| pivots.iter().map(|&p| r[p].clone()).collect())
                .collect();
            let mut det = IntMatrix::from_rows(&restricted, face.dim)?.det()?;
            for (b, &p) in basis.iter().zip(&pivots) {
                det = det.div_exact(&b[p])?;
            }
            let vol = simplex_volume_from_det(&det, &rays, deg)?;
            return Ok(Expansion::Closed(&face.coefficient * vol));
        }

        let facets = facets_of(face, &self.incidence);
        let v = select_vertex(&face.vertex_set, &facets.iter().map(|(s, _)| s.clone()).collect::<Vec<_>>())?;
        let apex = &self.cone.generators()[v];
        let deg_v = N::dot(deg, apex)?.to_bigint();
        let mut children = Vec::new();
        for (facet_rays, j) in facets {
            if facet_rays.contains(v) {
                continue;
            }
            let form = &self.cone.support_forms()[j];
            // σ_j restricted to the lattice of the face is c·λ with λ primitive
            let values: Vec<N> = basis.iter().map(|b| N::dot(form, b)).collect::<Result<_>>()?;
            let c = content(&values)?.to_bigint();
            let height = N::dot(form, apex)?.abs()?.to_bigint();
            let coef = &face.coefficient * Rat::new(height, c * &deg_v);
            children.push((closure(&facet_rays, &self.incidence), facet_rays, coef));
        }
        Ok(Expansion::Children(children))
    }

    /// Processes the current layer and moves to the next one.
    pub fn step(&mut self) -> Result<()> {
        let faces: Vec<&DescentFace> = self.layer.faces.values().collect();
        let results: Vec<Expansion> = faces
            .par_iter()
            .map(|f| self.expand(f))
            .collect::<Result<_>>()?;
        let max_bits = faces
            .iter()
            .map(|f| f.coefficient.numer().bits().max(f.coefficient.denom().bits()))
            .max()
            .unwrap_or(0);
        let mut simplicial = 0;
        let next_dim = self.layer.dim - 1;
        let mut next: HashMap<FixedBitSet, DescentFace> = HashMap::new();
        for r in results {
            match r {
                Expansion::Closed(v) => {
                    simplicial += 1;
                    self.closed.push(v);
                }
                Expansion::Children(children) => {
                    for (key, vertex_set, coef) in children {
                        next.entry(key.clone())
                            .and_modify(|f| f.coefficient += &coef)
                            .or_insert(DescentFace {
                                facet_indicator: key,
                                vertex_set,
                                dim: next_dim,
                                coefficient: coef,
                            });
                    }
                }
            }
        }
        self.stats.push(LayerStats {
            dim: self.layer.dim,
            faces: self.layer.faces.len(),
            simplicial,
            max_coefficient_bits: max_bits,
        });
        self.layer = DescentLayer {
            dim: next_dim,
            faces: next,
        };
        Ok(())
    }

    pub fn run(mut self) -> Result<(Rat, Vec<LayerStats>)> {
        while !self.is_done() {
            self.step()?;
        }
        Ok((self.closed.finalize(), self.stats))
    }
}

#[derive(Debug, Clone)]
pub struct DescentOutcome {
    pub volumes: Volumes,
    pub layers: Vec<LayerStats>,
}

pub fn descend<N: Scalar>(cone: &ConeModel<N>) -> Result<DescentOutcome> {
    let (vp, layers) = DescentSystem::new(cone)?.run()?;
    Ok(DescentOutcome {
        volumes: Volumes::from_pyramid(vp, &cone.grading_denominator().to_bigint()),
        layers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::primal::volume_primal;

    fn bits(n: usize, ones: &[usize]) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(n);
        for &i in ones {
            b.insert(i);
        }
        b
    }

    #[test]
    fn vertex_selection_examples() {
        // square: facets {0,1},{1,2},{2,3},{3,0}; every vertex misses two
        let facets = vec![bits(4, &[0, 1]), bits(4, &[1, 2]), bits(4, &[2, 3]), bits(4, &[0, 3])];
        assert_eq!(select_vertex(&bits(4, &[0, 1, 2, 3]), &facets).unwrap(), 0);
        // triangle
        let facets = vec![bits(3, &[1, 2]), bits(3, &[0, 2]), bits(3, &[0, 1])];
        assert_eq!(select_vertex(&bits(3, &[0, 1, 2]), &facets).unwrap(), 0);
        assert_eq!(select_vertex(&bits(3, &[]), &facets), Err(Error::EmptyFace));
    }

    #[test]
    fn vertex_selection_matches_brute_force_on_facet_families() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(3..9);
            let facets: Vec<FixedBitSet> = (0..rng.gen_range(2..8))
                .map(|_| {
                    let ones: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
                    bits(n, &ones)
                })
                .collect();
            let all = bits(n, &(0..n).collect::<Vec<_>>());
            let counts: Vec<usize> = (0..n)
                .map(|v| facets.iter().filter(|f| !f.contains(v)).count())
                .collect();
            let best = *counts.iter().min().unwrap();
            let expected = counts.iter().position(|&c| c == best).unwrap();
            assert_eq!(select_vertex(&all, &facets).unwrap(), expected);
        }
    }

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

    #[test]
    fn square_and_octahedron() {
        let sq = homogenized(&[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(descend(&sq).unwrap().volumes.polytope, rat(2, 1));
        let mut oct = Vec::new();
        for i in 0..3 {
            for s in [-1, 1] {
                let mut p = vec![0; 3];
                p[i] = s;
                oct.push(p);
            }
        }
        let oct = homogenized(&oct);
        assert_eq!(descend(&oct).unwrap().volumes.polytope, rat(8, 1));
    }

    #[test]
    fn simplex_closes_immediately() {
        let s = homogenized(&[vec![0, 0], vec![3, 1], vec![1, 2]]);
        let out = descend(&s).unwrap();
        assert_eq!(out.layers.len(), 1);
        assert_eq!(out.layers[0].simplicial, 1);
        assert_eq!(out.volumes, volume_primal(&s, false).unwrap().volumes);
    }

    #[test]
    fn layers_have_decreasing_dimension_and_conserve_volume() {
        let pts = vec![
            vec![0, 0, 0],
            vec![2, 0, 0],
            vec![0, 3, 0],
            vec![1, 1, 2],
            vec![2, 2, 1],
            vec![0, 1, 3],
        ];
        let cone = homogenized(&pts);
        let total = volume_primal(&cone, false).unwrap().volumes.cone_pyramid;
        let mut sys = DescentSystem::new(&cone).unwrap();
        let mut expected_dim = cone.dim();
        while !sys.is_done() {
            let mut frontier_sum = sys.closed_sum();
            for face in sys.frontier().faces.values() {
                assert_eq!(face.dim, expected_dim);
                assert!(face.coefficient > rat(0, 1));
                let rays: Vec<Vec<i64>> =
                    face.vertex_set.ones().map(|i| cone.generators()[i].clone()).collect();
                let sub = ConeModel::from_generators(&rays, cone.grading()).unwrap();
                assert_eq!(sub.dim(), face.dim);
                frontier_sum += &face.coefficient * volume_primal(&sub, false).unwrap().volumes.cone_pyramid;
            }
            assert_eq!(frontier_sum, total);
            sys.step().unwrap();
            expected_dim -= 1;
        }
        assert_eq!(sys.closed_sum(), total);
    }
}
