//! Internal visibility between vertices.
//!
//! Two vertices see each other when the open segment joining them lies in the
//! open interior of the polygon. A single boundary contact anywhere along the
//! segment breaks visibility, so adjacent vertices never see each other.

use alloc::collections::BTreeSet;

use crate::error::GeomError;
use crate::geom::{kernel, Polygon};

/// Unordered vertex pair, stored as `(min, max)`.
pub type Pair = (usize, usize);

pub fn pair(i: usize, j: usize) -> Pair {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisibilityGraph {
    n: usize,
    visible: BTreeSet<Pair>,
}

impl VisibilityGraph {
    /// Graph of `n` vertices with the given visible pairs, e.g. from a
    /// verifier certificate.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = Pair>) -> VisibilityGraph {
        VisibilityGraph { n, visible: pairs.into_iter().map(|(i, j)| pair(i, j)).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn visible_pairs(&self) -> &BTreeSet<Pair> {
        &self.visible
    }

    pub fn is_visible(&self, i: usize, j: usize) -> bool {
        self.visible.contains(&pair(i, j))
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        i != j && ((i + 1) % self.n == j || (j + 1) % self.n == i)
    }

    pub fn visible_count(&self) -> usize {
        self.visible.len()
    }

    /// C(n, 2) minus the number of visible pairs.
    pub fn nonvisible_count(&self) -> usize {
        self.n * (self.n - 1) / 2 - self.visible.len()
    }

    /// Each two of `i`, `j`, `k` form a visible pair or are adjacent.
    pub fn property_a(&self, i: usize, j: usize, k: usize) -> bool {
        let ok = |a: usize, b: usize| self.is_visible(a, b) || self.is_adjacent(a, b);
        ok(i, j) && ok(j, k) && ok(i, k)
    }
}

pub fn vertices_visible(poly: &Polygon, i: usize, j: usize) -> Result<bool, GeomError> {
    poly.check_index(i)?;
    poly.check_index(j)?;
    if i == j {
        return Err(GeomError::RepeatedIndex(i));
    }
    if poly.are_adjacent(i, j) {
        return Ok(false);
    }
    let v = poly.vertices();
    Ok(kernel::open_segment_interior(v, &v[i], &v[j]))
}

/// All visible pairs, by testing every vertex pair against every edge.
pub fn visibility_graph(poly: &Polygon) -> VisibilityGraph {
    VisibilityGraph {
        n: poly.len(),
        visible: kernel::visible_pairs(poly.vertices()).into_iter().collect(),
    }
}

pub fn nonvisible_pair_count(poly: &Polygon) -> usize {
    visibility_graph(poly).nonvisible_count()
}

pub fn property_a(poly: &Polygon, i: usize, j: usize, k: usize) -> Result<bool, GeomError> {
    for idx in [i, j, k] {
        poly.check_index(idx)?;
    }
    if i == j || j == k {
        return Err(GeomError::RepeatedIndex(j));
    }
    if i == k {
        return Err(GeomError::RepeatedIndex(i));
    }
    Ok(visibility_graph(poly).property_a(i, j, k))
}
