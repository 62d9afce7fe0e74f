use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::arith::Scalar;
use crate::triangulate::Triangulation;

/// A simplicial cone `δ` of the dual triangulation together with the rays of
/// `δ` whose omission leaves a facet on the boundary of the dual cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HollowFacet {
    pub delta: FixedBitSet,
    pub phi: FixedBitSet,
}

impl HollowFacet {
    /// Rays of `δ`, ascending.
    pub fn rays(&self) -> Vec<usize> {
        self.delta.ones().collect()
    }

    /// Positions within [`rays`](Self::rays) of the omitted rays.
    pub fn omitted_positions(&self) -> Vec<usize> {
        self.delta
            .ones()
            .enumerate()
            .filter(|(_, r)| self.phi.contains(*r))
            .map(|(p, _)| p)
            .collect()
    }

    /// Number of boundary facets carried by this cone.
    pub fn len(&self) -> usize {
        self.phi.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_clear()
    }
}

/// Leading ray indices shared by all facets of one chunk.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern(Vec<usize>);

impl Pattern {
    pub fn new(indices: Vec<usize>) -> Option<Self> {
        indices.windows(2).all(|w| w[0] < w[1]).then_some(Self(indices))
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    fn of(facet: &[usize], depth: usize) -> Self {
        Self(facet[..depth.min(facet.len())].to_vec())
    }
}

fn facet_without(rays: &[usize], pos: usize) -> Vec<usize> {
    rays.iter()
        .enumerate()
        .filter(|(k, _)| *k != pos)
        .map(|(_, &r)| r)
        .collect()
}

/// The facets of the cells of `tri` that lie in no second cell.
///
/// Facets are grouped by the pattern formed by their first `pattern_depth`
/// ray indices; chunks are handled one at a time so that only the facets of a
/// single pattern are held in memory. The result is ordered by cell.
pub fn hollow_triangulation<N: Scalar>(tri: &Triangulation<N>, pattern_depth: usize) -> Vec<HollowFacet> {
    let n = tri.generators.len();
    let cells: Vec<&[usize]> = tri.cells.iter().map(|c| c.rays.as_slice()).collect();
    let d = cells.first().map_or(0, |c| c.len());

    // a facet omitting position p of a cell has the leading indices of the
    // cell with p removed, so only positions up to the depth give distinct
    // patterns
    let mut chunks: BTreeMap<Pattern, Vec<usize>> = BTreeMap::new();
    for (k, rays) in cells.iter().enumerate() {
        for p in 0..=pattern_depth.min(d.saturating_sub(1)) {
            let pat = Pattern::of(&facet_without(rays, p), pattern_depth);
            let list = chunks.entry(pat).or_default();
            if list.last() != Some(&k) {
                list.push(k);
            }
        }
    }

    let mut phi: BTreeMap<usize, FixedBitSet> = BTreeMap::new();
    for (pat, members) in chunks {
        let found: Vec<Vec<(Vec<usize>, usize, usize)>> = members
            .par_iter()
            .map(|&k| {
                let rays = cells[k];
                (0..rays.len())
                    .filter_map(|p| {
                        let f = facet_without(rays, p);
                        (Pattern::of(&f, pattern_depth) == pat).then_some((f, k, rays[p]))
                    })
                    .collect()
            })
            .collect();
        let mut seen: HashMap<Vec<usize>, Option<(usize, usize)>> = HashMap::new();
        for (f, k, omitted) in found.into_iter().flatten() {
            seen.entry(f)
                .and_modify(|e| *e = None)
                .or_insert(Some((k, omitted)));
        }
        for (k, omitted) in seen.into_values().flatten() {
            phi.entry(k)
                .or_insert_with(|| FixedBitSet::with_capacity(n))
                .insert(omitted);
        }
    }

    phi.into_iter()
        .map(|(k, phi)| {
            let mut delta = FixedBitSet::with_capacity(n);
            delta.extend(cells[k].iter().copied());
            HollowFacet { delta, phi }
        })
        .collect()
}
