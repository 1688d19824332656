//! Enumeration of convex lattice polygons of a given type (i, b) up to
//! affine unimodular isomorphism.
//!
//! Strategy: a polygon of normalized area V fits, up to isomorphism, in a
//! square of side 2V, so every class has a representative whose lattice
//! points live in rows y = 0..2V, with the lowest row a run starting at
//! x = 0. Rows are enumerated bottom-up as runs (possibly with empty rows,
//! which can only follow single-point rows), pruned by convex
//! interpolation, and each leaf set is closure-checked and deduplicated by
//! canonical form.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::config::{LatticePolygon, Pt2};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CensusError {
    BoundaryRequired,
    BadQuery,
}

impl fmt::Display for CensusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CensusError::BoundaryRequired => {
                write!(f, "a boundary count is required when interior = 0")
            }
            CensusError::BadQuery => write!(f, "boundary count must be at least 3"),
        }
    }
}

impl core::error::Error for CensusError {}

/// Census query: interior count, optional boundary count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusQuery {
    pub interior: usize,
    pub boundary: Option<usize>,
}

/// Existence pre-filter: polygons of type (i, b) exist only when i = 0, or
/// i = 1 and 3 <= b <= 9, or i >= 2 and 3 <= b <= 2i + 6.
pub fn type_is_feasible(interior: usize, boundary: usize) -> bool {
    if boundary < 3 {
        return false;
    }
    match interior {
        0 => true,
        1 => boundary <= 9,
        i => boundary <= 2 * i + 6,
    }
}

/// Boundary counts compatible with a given interior count (None when
/// unbounded, i.e. interior = 0).
pub fn feasible_boundaries(interior: usize) -> Option<Vec<usize>> {
    match interior {
        0 => None,
        1 => Some((3..=9).collect()),
        i => Some((3..=2 * i + 6).collect()),
    }
}

/// One representative per isomorphism class of type (i, b), sorted by
/// canonical point list. Infeasible types give an empty list.
pub fn enumerate_type(interior: usize, boundary: usize) -> Vec<LatticePolygon> {
    if !type_is_feasible(interior, boundary) {
        return Vec::new();
    }
    let mut classes: BTreeMap<Vec<Pt2>, LatticePolygon> = BTreeMap::new();
    let volume = 2 * interior as i64 + boundary as i64 - 2;
    let mut dfs = Dfs {
        interior,
        boundary,
        volume,
        box_side: 2 * volume,
        target_points: interior + boundary,
        rows: Vec::new(),
        gaps_pending: 0,
        points_used: 0,
        classes: &mut classes,
    };
    dfs.run();
    classes.into_values().collect()
}

/// All classes for a query; interior 0 requires an explicit boundary.
pub fn enumerate_polygons(q: &CensusQuery) -> Result<Vec<LatticePolygon>, CensusError> {
    if let Some(b) = q.boundary {
        if b < 3 {
            return Err(CensusError::BadQuery);
        }
        return Ok(enumerate_type(q.interior, b));
    }
    let bs = feasible_boundaries(q.interior).ok_or(CensusError::BoundaryRequired)?;
    let mut out = Vec::new();
    for b in bs {
        out.extend(enumerate_type(q.interior, b));
    }
    Ok(out)
}

/// A zero-interior class: the exceptional triangle, the degenerate triangle
/// pyramids, and the trapezoids.
#[derive(Debug, Clone)]
pub struct ZeroInteriorEntry {
    pub polygon: LatticePolygon,
    pub pyramid: bool,
}

/// The zero-interior-point classification instantiated for edge parameters
/// up to `max_p`: triangles (0,0),(p,0),(0,1) (pyramids), the triangle
/// (0,0),(2,0),(0,2) and the trapezoids (0,0),(p,0),(q,1),(0,1).
pub fn zero_interior_families(max_p: i64) -> Vec<ZeroInteriorEntry> {
    assert!(max_p >= 1);
    let mut out = Vec::new();
    for p in 1..=max_p {
        out.push(ZeroInteriorEntry {
            polygon: LatticePolygon::from_points(&[[0, 0], [p, 0], [0, 1]]).unwrap(),
            pyramid: true,
        });
    }
    out.push(ZeroInteriorEntry {
        polygon: LatticePolygon::from_points(&[[0, 0], [2, 0], [0, 2]]).unwrap(),
        pyramid: false,
    });
    for p in 1..=max_p {
        for q in 1..=p {
            out.push(ZeroInteriorEntry {
                polygon: LatticePolygon::from_points(&[[0, 0], [p, 0], [q, 1], [0, 1]]).unwrap(),
                pyramid: false,
            });
        }
    }
    out
}

// ---------------------------------------------------------------------------
// row-run depth-first search
// ---------------------------------------------------------------------------

struct Dfs<'a> {
    interior: usize,
    boundary: usize,
    volume: i64,
    box_side: i64,
    target_points: usize,
    /// placed nonempty rows (y, l, r)
    rows: Vec<(i64, i64, i64)>,
    gaps_pending: i64,
    points_used: usize,
    classes: &'a mut BTreeMap<Vec<Pt2>, LatticePolygon>,
}

impl Dfs<'_> {
    fn run(&mut self) {
        // bottom row: a run starting at x = 0
        let max_len = (self.target_points as i64 - 1).min(self.volume);
        for len in 0..=max_len {
            self.rows.push((0, 0, len));
            self.points_used = (len + 1) as usize;
            self.descend();
            self.rows.pop();
        }
    }

    fn descend(&mut self) {
        if self.points_used == self.target_points {
            self.try_leaf();
            return;
        }
        let (top_y, top_l, top_r) = *self.rows.last().unwrap();
        let y_new = top_y + self.gaps_pending + 1;
        if y_new > self.box_side {
            return;
        }
        let budget = (self.target_points - self.points_used) as i64;

        // rows adjacent to a gap must be single points
        let max_len = if self.gaps_pending > 0 { 0 } else { budget - 1 };

        for l in -self.box_side..=self.box_side {
            for len in 0..=max_len {
                let r = l + len;
                if r > self.box_side {
                    break;
                }
                if !self.row_admissible(y_new, l, r) {
                    continue;
                }
                self.rows.push((y_new, l, r));
                self.points_used += (len + 1) as usize;
                let saved_gaps = self.gaps_pending;
                self.gaps_pending = 0;
                self.descend();
                self.gaps_pending = saved_gaps;
                self.points_used -= (len + 1) as usize;
                self.rows.pop();
            }
        }
        // open (or extend) a gap: only above a single-point row
        if top_l == top_r && top_y + self.gaps_pending + 1 < self.box_side {
            self.gaps_pending += 1;
            self.descend();
            self.gaps_pending -= 1;
        }
    }

    /// Necessary convexity conditions for appending the run [l3, r3] at
    /// level y3: for every placed row y1 and every level y1 < y2 < y3, the
    /// interpolated slice between rows y1 and y3 must have its lattice
    /// points inside the run at y2 (or contain none if y2 is a gap).
    fn row_admissible(&self, y3: i64, l3: i64, r3: i64) -> bool {
        for &(y1, l1, r1) in &self.rows {
            for y2 in (y1 + 1)..y3 {
                let d = y3 - y1;
                let t = y2 - y1;
                let lo = ceil_div(l1 * (d - t) + l3 * t, d);
                let hi = floor_div(r1 * (d - t) + r3 * t, d);
                match self.row_at(y2) {
                    Some((l2, r2)) => {
                        if lo < l2 || hi > r2 {
                            return false;
                        }
                    }
                    None => {
                        if lo <= hi {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn row_at(&self, y: i64) -> Option<(i64, i64)> {
        self.rows
            .iter()
            .find(|&&(ry, _, _)| ry == y)
            .map(|&(_, l, r)| (l, r))
    }

    fn try_leaf(&mut self) {
        if self.rows.len() < 2 {
            return;
        }
        let mut pts: Vec<Pt2> = Vec::with_capacity(self.target_points);
        for &(y, l, r) in &self.rows {
            for x in l..=r {
                pts.push([x, y]);
            }
        }
        let Ok(poly) = LatticePolygon::from_points(&pts) else {
            return;
        };
        // closure: the hull must have exactly the enumerated lattice points
        if poly.points().len() != self.target_points {
            return;
        }
        if poly.polygon_type() != (self.interior, self.boundary) {
            return;
        }
        debug_assert_eq!(poly.volume(), self.volume);
        let key = poly.canonical_key();
        self.classes
            .entry(key)
            .or_insert_with(|| poly.canonical_form());
    }
}

fn floor_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    -((-a).div_euclid(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{are_isomorphic, AffineUnimodularMap};

    #[test]
    fn feasibility_filter() {
        assert!(type_is_feasible(1, 9));
        assert!(!type_is_feasible(1, 10));
        assert!(type_is_feasible(2, 10));
        assert!(!type_is_feasible(2, 11));
        assert!(!type_is_feasible(3, 2));
        assert!(enumerate_type(1, 10).is_empty());
    }

    #[test]
    fn small_types() {
        // exactly one class of type (1,3): the reflexive triangle
        let t13 = enumerate_type(1, 3);
        assert_eq!(t13.len(), 1);
        assert_eq!(t13[0].volume(), 3);
        // type (0,3): the unimodular triangle
        let t03 = enumerate_type(0, 3);
        assert_eq!(t03.len(), 1);
        assert_eq!(t03[0].volume(), 1);
        // type (0,4): unit square and the (0,0),(2,0),(0,1) triangle
        let t04 = enumerate_type(0, 4);
        assert_eq!(t04.len(), 2);
    }

    #[test]
    fn census_classes_are_canonical_and_distinct() {
        let classes = enumerate_type(1, 5);
        for p in &classes {
            assert_eq!(p.polygon_type(), (1, 5));
            // canonical form is a fixed point
            assert_eq!(p.canonical_key(), p.canonical_form().canonical_key());
        }
        for i in 0..classes.len() {
            for j in (i + 1)..classes.len() {
                assert!(are_isomorphic(&classes[i], &classes[j]).is_none());
            }
        }
    }

    #[test]
    fn canonical_stable_under_unimodular_maps() {
        let g1 = AffineUnimodularMap::new([[1, 2], [0, 1]], [5, -1]).unwrap();
        let g2 = AffineUnimodularMap::new([[0, -1], [1, 0]], [-3, 2]).unwrap();
        for p in enumerate_type(1, 4) {
            for g in [&g1, &g2] {
                assert_eq!(p.apply(g).canonical_key(), p.canonical_key());
            }
        }
    }

    #[test]
    fn one_interior_point_census_has_16_classes() {
        let mut total = 0;
        for b in 3..=9 {
            total += enumerate_type(1, b).len();
        }
        assert_eq!(total, 16);
    }

    #[test]
    fn zero_interior_list() {
        let entries = zero_interior_families(3);
        // 3 pyramidal triangles + exceptional triangle + trapezoids
        // (1,1),(2,1),(2,2),(3,1),(3,2),(3,3)
        assert_eq!(entries.len(), 3 + 1 + 6);
        for e in &entries {
            assert_eq!(e.polygon.interior_count(), 0);
        }
        assert_eq!(entries.iter().filter(|e| e.pyramid).count(), 3);
    }
}
