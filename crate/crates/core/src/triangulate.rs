//! Placing triangulations of full-dimensional pointed cones.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{independent_subset, primitivize, IntMatrix, Scalar};
use crate::error::{Error, Result};

/// A simplicial cone of a triangulation: `d` generator indices, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialCone<N> {
    pub rays: Vec<usize>,
    /// `|det|` of the generator matrix, when known.
    pub det_abs: Option<N>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation<N> {
    pub generators: Vec<Vec<N>>,
    pub cells: Vec<SimplicialCone<N>>,
}

impl<N: Scalar> Triangulation<N> {
    pub fn dim(&self) -> usize {
        self.generators.first().map_or(0, Vec::len)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// One line per cell: `T <k>: i1 i2 … id`, 1-based.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.cells.iter().enumerate() {
            let _ = write!(out, "T {}:", k + 1);
            for i in &c.rays {
                let _ = write!(out, " {}", i + 1);
            }
            out.push('\n');
        }
        out
    }

    pub fn cell_matrix(&self, cell: &SimplicialCone<N>) -> Result<IntMatrix<N>> {
        let rows: Vec<&Vec<N>> = cell.rays.iter().map(|&i| &self.generators[i]).collect();
        IntMatrix::from_rows(&rows, self.dim())
    }
}

/// Inner normals of the facets of a simplicial cone: entry `j` vanishes on all
/// rays but `rays[j]` and is positive there. Also returns `|det|`.
fn cell_normals<N: Scalar>(generators: &[Vec<N>], rays: &[usize]) -> Result<(Vec<Vec<N>>, N)> {
    let dim = generators[0].len();
    let rows: Vec<&Vec<N>> = rays.iter().map(|&i| &generators[i]).collect();
    let (inv, d) = IntMatrix::from_rows(&rows, dim)?.invert_with_denominator()?;
    let normals = (0..dim)
        .map(|j| primitivize(&inv.column(j)))
        .collect::<Result<_>>()?;
    Ok((normals, d))
}

fn without(rays: &[usize], j: usize) -> Vec<usize> {
    rays.iter()
        .enumerate()
        .filter(|(k, _)| *k != j)
        .map(|(_, &r)| r)
        .collect()
}

fn with(rays: &[usize], g: usize) -> Vec<usize> {
    let mut out = rays.to_vec();
    let pos = out.partition_point(|&r| r < g);
    out.insert(pos, g);
    out
}

/// A simplex of the boundary of the current hull. `index` is the index of
/// the lattice spanned by its rays in the lattice of its hyperplane, so that
/// `|det(rays, x)| = index · |n·x|` for the primitive normal `n`.
struct BoundaryFacet<N> {
    rays: Vec<usize>,
    index: N,
}

/// A facet of the current hull: its boundary simplices and the inserted
/// generators on its hyperplane.
struct HullFacet<N> {
    simplices: Vec<BoundaryFacet<N>>,
    zeros: FixedBitSet,
}

struct Fresh<'a, N> {
    opposite: usize,
    parent: &'a [N],
    det: N,
}

struct Hull<'a, N> {
    generators: &'a [Vec<N>],
    inserted: FixedBitSet,
    facets: BTreeMap<Vec<N>, HullFacet<N>>,
}

impl<N: Scalar> Hull<'_, N> {
    fn add(&mut self, normal: Vec<N>, simplex: BoundaryFacet<N>) -> Result<()> {
        if let Some(f) = self.facets.get_mut(&normal) {
            f.simplices.push(simplex);
            return Ok(());
        }
        let mut zeros = FixedBitSet::with_capacity(self.generators.len());
        for i in self.inserted.ones() {
            if N::dot(&normal, &self.generators[i])?.is_zero() {
                zeros.insert(i);
            }
        }
        self.facets.insert(
            normal,
            HullFacet {
                simplices: vec![simplex],
                zeros,
            },
        );
        Ok(())
    }

    /// Normal of the new boundary simplex `ridge + g`, which replaces the
    /// visible simplex `ridge + opposite` with normal `parent`.
    ///
    /// The ridge lies on exactly one remaining hull facet `m`; the new normal
    /// is the combination of `parent` and `m` vanishing on `g`.
    fn horizon_normal(&self, ridge: &[usize], g: usize, fresh: &Fresh<'_, N>) -> Result<Vec<N>> {
        let gen = &self.generators[g];
        if !ridge.is_empty() {
            let mut found = self
                .facets
                .iter()
                .filter(|(_, f)| ridge.iter().all(|&r| f.zeros.contains(r)));
            if let (Some((m, _)), None) = (found.next(), found.next()) {
                let mg = N::dot(m, gen)?;
                let ng = N::dot(fresh.parent, gen)?;
                let n: Vec<N> = fresh
                    .parent
                    .iter()
                    .zip(m)
                    .map(|(a, b)| N::mul_sub(&mg, a, &ng, b))
                    .collect::<Result<_>>()?;
                return primitivize(&n);
            }
        }
        let rays = with(&with(ridge, g), fresh.opposite);
        let (normals, _) = cell_normals(self.generators, &rays)?;
        let pos = rays.iter().position(|&r| r == fresh.opposite).expect("opposite ray");
        Ok(normals[pos].clone())
    }
}

/// Placing triangulation of the cone generated by `generators`, inserting the
/// generators in the given order. Every cell is passed to `visit` together
/// with `|det|` of its rays; returns the number of cells.
///
/// The first simplex is formed greedily from the earliest independent
/// generators. Every later generator is joined to the boundary simplices on
/// the hull facets whose inner normal is negative on it; generators seeing no
/// facet (interior or boundary points of the hull) add no cells.
pub fn placing_triangulation_visit<N: Scalar>(
    generators: &[Vec<N>],
    mut visit: impl FnMut(&[usize], &N) -> Result<()>,
) -> Result<usize> {
    let Some(dim) = generators.first().map(Vec::len) else {
        return Err(Error::NotFullDim);
    };
    let init = independent_subset(generators, dim)?;
    if init.len() < dim || dim == 0 {
        return Err(Error::NotFullDim);
    }
    let mut hull = Hull {
        generators,
        inserted: FixedBitSet::with_capacity(generators.len()),
        facets: BTreeMap::new(),
    };
    hull.inserted.extend(init.iter().copied());
    let (normals, det) = cell_normals(generators, &init)?;
    for (j, n) in normals.into_iter().enumerate() {
        let index = det.div_exact(&N::dot(&n, &generators[init[j]])?)?;
        hull.add(
            n,
            BoundaryFacet {
                rays: without(&init, j),
                index,
            },
        )?;
    }
    visit(&init, &det)?;
    let mut cells = 1;

    // a ridge of a visible simplex survives as a new boundary simplex iff
    // the neighbouring simplex across it stays invisible; ridges shared by two
    // visible simplices are found by sorting fingerprints
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let zobrist: Vec<u64> = (0..generators.len()).map(|_| rng.gen()).collect();
    let fingerprint = |rays: &[usize]| rays.iter().fold(0u64, |acc, &r| acc ^ zobrist[r]);
    let mut ridges: Vec<(u64, usize, usize)> = Vec::new();
    let mut cell = Vec::with_capacity(dim);

    for (g, gen) in generators.iter().enumerate() {
        if hull.inserted.contains(g) {
            continue;
        }
        let mut visible = Vec::new();
        for (n, f) in hull.facets.iter_mut() {
            let v = N::dot(n, gen)?;
            if v.is_negative() {
                visible.push((n.clone(), v.neg()?));
            } else if v.is_zero() {
                f.zeros.insert(g);
            }
        }
        hull.inserted.insert(g);
        if visible.is_empty() {
            continue;
        }
        let mut simplices: Vec<(usize, BoundaryFacet<N>, N)> = Vec::new();
        for (k, (n, height)) in visible.iter().enumerate() {
            let facet = hull.facets.remove(n).expect("visible facet");
            for s in facet.simplices {
                let det = s.index.mul(height)?;
                cell.clear();
                cell.extend_from_slice(&s.rays);
                cell.insert(cell.partition_point(|&r| r < g), g);
                visit(&cell, &det)?;
                cells += 1;
                simplices.push((k, s, det));
            }
        }
        ridges.clear();
        for (i, (_, s, _)) in simplices.iter().enumerate() {
            let fp = fingerprint(&s.rays);
            for (j, &r) in s.rays.iter().enumerate() {
                ridges.push((fp ^ zobrist[r], i, j));
            }
        }
        ridges.sort_unstable();
        let same_ridge = |a: &(u64, usize, usize), b: &(u64, usize, usize)| {
            let (ra, rb) = (&simplices[a.1].1.rays, &simplices[b.1].1.rays);
            let ia = ra.iter().enumerate().filter(|(k, _)| *k != a.2).map(|(_, r)| r);
            let ib = rb.iter().enumerate().filter(|(k, _)| *k != b.2).map(|(_, r)| r);
            ia.eq(ib)
        };
        let mut survivors: Vec<(usize, usize)> = Vec::new();
        let mut start = 0;
        while start < ridges.len() {
            let mut end = start + 1;
            while end < ridges.len() && ridges[end].0 == ridges[start].0 {
                end += 1;
            }
            for a in start..end {
                if !(start..end).any(|b| b != a && same_ridge(&ridges[a], &ridges[b])) {
                    survivors.push((ridges[a].1, ridges[a].2));
                }
            }
            start = end;
        }
        survivors.sort_unstable();
        let mut added = Vec::with_capacity(survivors.len());
        for (i, j) in survivors {
            let (k, s, det) = &simplices[i];
            let ridge = without(&s.rays, j);
            let fresh = Fresh {
                opposite: s.rays[j],
                parent: &visible[*k].0,
                det: det.clone(),
            };
            let normal = hull.horizon_normal(&ridge, g, &fresh)?;
            let index = fresh.det.div_exact(&N::dot(&normal, &generators[fresh.opposite])?.abs()?)?;
            added.push((normal, with(&ridge, g), index));
        }
        for (normal, rays, index) in added {
            hull.add(normal, BoundaryFacet { rays, index })?;
        }
    }
    Ok(cells)
}

/// Placing triangulation with all cells stored.
pub fn placing_triangulation<N: Scalar>(generators: &[Vec<N>]) -> Result<Triangulation<N>> {
    let mut cells = Vec::new();
    placing_triangulation_visit(generators, |rays, det| {
        cells.push(SimplicialCone {
            rays: rays.to_vec(),
            det_abs: Some(det.clone()),
        });
        Ok(())
    })?;
    Ok(Triangulation {
        generators: generators.to_vec(),
        cells,
    })
}
