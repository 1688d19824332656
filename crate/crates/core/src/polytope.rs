//! Cones and facet forms, simplex volumes, and unimodular triangulations
//! with extension.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::config::{
    cross, discrete_length, hull_ccw, points_collinear, ConfigError, LatticePolygon, PointConfig,
    Pt2,
};
use crate::exact_math::{primitive_part, Rational};
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    Degenerate,
    NotContained,
    InvalidTriangulation,
    Config(ConfigError),
}

impl fmt::Display for PolytopeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolytopeError::Degenerate => write!(f, "degenerate (collinear) input"),
            PolytopeError::NotContained => write!(f, "subpolygon is not contained in the polygon"),
            PolytopeError::InvalidTriangulation => write!(f, "triangulation is not valid"),
            PolytopeError::Config(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for PolytopeError {}

impl From<ConfigError> for PolytopeError {
    fn from(e: ConfigError) -> Self {
        PolytopeError::Config(e)
    }
}

/// Convex hull of planar integer points as a lattice polygon.
pub fn convex_hull(points: &[Pt2]) -> Result<LatticePolygon, PolytopeError> {
    LatticePolygon::from_points(points).map_err(|_| PolytopeError::Degenerate)
}

// ---------------------------------------------------------------------------
// cones and facet forms
// ---------------------------------------------------------------------------

/// The positive real span of a configuration, described by its primitive
/// inward facet forms: C(A) = { x : m_i(x) >= 0 for all i }.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    forms: Vec<Vec<i64>>,
}

impl Cone {
    pub fn forms(&self) -> &[Vec<i64>] {
        &self.forms
    }

    pub fn dim(&self) -> usize {
        self.forms.first().map_or(0, Vec::len)
    }

    /// Membership of an exact rational point.
    pub fn contains(&self, p: &[Rational]) -> bool {
        self.forms.iter().all(|m| {
            let mut acc = Rational::zero();
            for (c, x) in m.iter().zip(p) {
                acc += Rational::from_integer((*c).into()) * x;
            }
            !acc.is_negative()
        })
    }

    /// Membership of (num / den) with den > 0, all in integers.
    pub fn contains_scaled(&self, num: &[i64], _den: i64) -> bool {
        self.forms
            .iter()
            .all(|m| m.iter().zip(num).map(|(c, x)| c * x).sum::<i64>() >= 0)
    }
}

/// Primitive inward facet forms of C(A), sorted lexicographically.
///
/// For r = 3 the facets correspond to the edges of the polygon of A; for a
/// collinear configuration in Z^2 they are the two boundary rays.
pub fn facet_forms(a: &PointConfig) -> Result<Cone, PolytopeError> {
    let mut forms: Vec<Vec<i64>> = if a.dim() == 2 {
        let xs: Vec<i64> = a.points().iter().map(|p| p[0]).collect();
        let lo = *xs.iter().min().unwrap();
        let hi = *xs.iter().max().unwrap();
        if lo == hi {
            return Err(PolytopeError::Degenerate);
        }
        // rays through (lo,1) and (hi,1); inward forms x - lo*y and -x + hi*y
        vec![vec![1, -lo], vec![-1, hi]]
    } else {
        let shadow = a.shadow();
        if points_collinear(&shadow) {
            return Err(PolytopeError::Degenerate);
        }
        let hull = hull_ccw(&shadow).ok_or(PolytopeError::Degenerate)?;
        let n = hull.len();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let u = [hull[i][0], hull[i][1], 1i64];
            let w = [hull[(i + 1) % n][0], hull[(i + 1) % n][1], 1i64];
            // cross product of two cone generators; inward for CCW edges
            let m = [
                u[1] * w[2] - u[2] * w[1],
                u[2] * w[0] - u[0] * w[2],
                u[0] * w[1] - u[1] * w[0],
            ];
            out.push(primitive_part(&m, Some(&m)).expect("nonzero edge normal"));
        }
        out
    };
    forms.sort_unstable();
    debug_assert!(a
        .points()
        .iter()
        .all(|p| forms
            .iter()
            .all(|m| m.iter().zip(p).map(|(c, x)| c * x).sum::<i64>() >= 0)));
    Ok(Cone { forms })
}

/// Normalized volume: twice the Euclidean area for polygons, segment length
/// for collinear configurations.
pub fn simplex_volume(a: &PointConfig) -> Result<i64, PolytopeError> {
    if a.dim() == 2 || a.is_collinear() {
        let xs: Vec<i64> = a.points().iter().map(|p| p[0]).collect();
        if a.dim() == 3 {
            // collinear in the plane: length along the primitive direction
            let shadow = a.shadow();
            let mut sorted = shadow.clone();
            sorted.sort_unstable();
            return Ok(discrete_length(sorted[0], *sorted.last().unwrap()));
        }
        Ok(xs.iter().max().unwrap() - xs.iter().min().unwrap())
    } else {
        Ok(a.polygon()?.volume())
    }
}

// ---------------------------------------------------------------------------
// triangulations
// ---------------------------------------------------------------------------

/// A set of r-element index subsets of a point list forming a unimodular
/// triangulation (index pairs for segments, triples for polygons).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    pub cells: Vec<Vec<usize>>,
}

impl Triangulation {
    /// Full validity check against a polygon: unimodular cells, volumes
    /// summing to the polygon volume, every lattice point used as a vertex.
    pub fn validate(&self, poly: &LatticePolygon) -> Result<(), PolytopeError> {
        let pts = poly.points();
        let mut total = 0i64;
        let mut used = vec![false; pts.len()];
        for cell in &self.cells {
            if cell.len() != 3 {
                return Err(PolytopeError::InvalidTriangulation);
            }
            let (a, b, c) = (pts[cell[0]], pts[cell[1]], pts[cell[2]]);
            let area2 = cross(a, b, c).abs();
            if area2 != 1 {
                return Err(PolytopeError::InvalidTriangulation);
            }
            total += area2;
            for &i in cell {
                used[i] = true;
            }
            if !(poly.contains(a) && poly.contains(b) && poly.contains(c)) {
                return Err(PolytopeError::InvalidTriangulation);
            }
        }
        if total != poly.volume() || used.iter().any(|u| !u) {
            return Err(PolytopeError::InvalidTriangulation);
        }
        Ok(())
    }
}

fn point_index(pts: &[Pt2], p: Pt2) -> usize {
    pts.binary_search(&p).expect("lattice point of the polygon")
}

/// Deterministic unimodular triangulation of a lattice polygon. Cells are
/// index triples into `poly.points()` (which is sorted).
///
/// Splitting order: fan the hull from its first vertex, then recursively
/// split each triangle at its first interior lattice point (3-way) or,
/// failing that, at the first non-vertex boundary point (2-way), "first"
/// meaning the scan order of the sorted point list.
pub fn unimodular_triangulation(poly: &LatticePolygon) -> Triangulation {
    let pts = poly.points();
    let verts = poly.vertices();
    let mut stack: Vec<[Pt2; 3]> = (1..verts.len() - 1)
        .map(|i| [verts[0], verts[i], verts[i + 1]])
        .collect();
    let mut cells = Vec::new();
    while let Some(t) = stack.pop() {
        let [a, b, c] = t;
        debug_assert!(cross(a, b, c) > 0);
        let inside = |p: Pt2| cross(a, b, p) >= 0 && cross(b, c, p) >= 0 && cross(c, a, p) >= 0;
        let strict = |p: Pt2| cross(a, b, p) > 0 && cross(b, c, p) > 0 && cross(c, a, p) > 0;
        // first interior point in scan order
        if let Some(&p) = pts.iter().find(|&&p| strict(p)) {
            stack.push([a, b, p]);
            stack.push([b, c, p]);
            stack.push([c, a, p]);
            continue;
        }
        // first non-vertex boundary point in scan order
        if let Some(&p) = pts
            .iter()
            .find(|&&p| p != a && p != b && p != c && inside(p))
        {
            if cross(a, b, p) == 0 {
                stack.push([a, p, c]);
                stack.push([p, b, c]);
            } else if cross(b, c, p) == 0 {
                stack.push([b, p, a]);
                stack.push([p, c, a]);
            } else {
                stack.push([c, p, b]);
                stack.push([p, a, b]);
            }
            continue;
        }
        debug_assert_eq!(cross(a, b, c), 1);
        cells.push(vec![
            point_index(pts, a),
            point_index(pts, b),
            point_index(pts, c),
        ]);
    }
    cells.sort_unstable();
    let t = Triangulation { cells };
    debug_assert!(t.validate(poly).is_ok());
    t
}

/// Unimodular triangulation of a collinear height-1 configuration: the unit
/// sub-segments, as index pairs into the configuration's point list.
pub fn collinear_triangulation(a: &PointConfig) -> Result<Triangulation, PolytopeError> {
    if !a.is_collinear() || !a.is_normal() {
        return Err(PolytopeError::Degenerate);
    }
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_by_key(|&i| (a.point(i)[0], a.point(i).get(1).copied()));
    let cells = order.windows(2).map(|w| vec![w[0], w[1]]).collect();
    Ok(Triangulation { cells })
}

/// Extend a unimodular triangulation of `sub` to one of `poly` whose cell
/// set contains the original cells.
///
/// Missing lattice points are added one at a time, always choosing a point
/// whose hull extension swallows no other missing point; the new point is
/// then fanned to the visible chain of boundary lattice points.
pub fn extend_triangulation(
    sub: &LatticePolygon,
    t_sub: &Triangulation,
    poly: &LatticePolygon,
) -> Result<Triangulation, PolytopeError> {
    if !poly.contains_polygon(sub) {
        return Err(PolytopeError::NotContained);
    }
    t_sub
        .validate(sub)
        .map_err(|_| PolytopeError::InvalidTriangulation)?;

    let target_pts = poly.points();
    // re-index the existing cells into poly's point list
    let mut cells: Vec<Vec<usize>> = t_sub
        .cells
        .iter()
        .map(|cell| {
            cell.iter()
                .map(|&i| point_index(target_pts, sub.points()[i]))
                .collect()
        })
        .collect();

    let mut current = sub.clone();
    let mut missing: Vec<Pt2> = target_pts
        .iter()
        .copied()
        .filter(|&p| !current.contains(p))
        .collect();

    while !missing.is_empty() {
        // the point whose extension has the fewest lattice points swallows
        // no other missing point
        let (pos, _) = missing
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                let mut pts: Vec<Pt2> = current.points().to_vec();
                pts.push(v);
                let ext = LatticePolygon::from_points(&pts).expect("extension is 2-dimensional");
                (i, ext.points().len())
            })
            .min_by_key(|&(_, n)| n)
            .expect("missing nonempty");
        let v = missing.swap_remove(pos);

        // fan v to the visible part of the old boundary
        let cycle = current.boundary_cycle();
        let b = cycle.len();
        for i in 0..b {
            let u = cycle[i];
            let w = cycle[(i + 1) % b];
            if cross(u, w, v) < 0 {
                cells.push(vec![
                    point_index(target_pts, u),
                    point_index(target_pts, w),
                    point_index(target_pts, v),
                ]);
            }
        }
        let mut pts: Vec<Pt2> = current.points().to_vec();
        pts.push(v);
        current = LatticePolygon::from_points(&pts).expect("extension is 2-dimensional");
        debug_assert_eq!(
            current.points().len(),
            pts.len(),
            "extension must not swallow other lattice points"
        );
    }

    cells.sort_unstable();
    let t = Triangulation { cells };
    t.validate(poly)
        .map_err(|_| PolytopeError::InvalidTriangulation)?;
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn cfg3(pts: &[[i64; 3]]) -> PointConfig {
        PointConfig::new(3, pts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    fn poly(pts: &[Pt2]) -> LatticePolygon {
        LatticePolygon::from_points(pts).unwrap()
    }

    fn collinear(n: i64) -> PointConfig {
        PointConfig::new(2, (-1..=n - 2).map(|k| vec![k, 1]).collect()).unwrap()
    }

    #[test]
    fn hull_is_ccw_and_contains_input() {
        let pts = [[0, 0], [3, 1], [1, 3], [1, 1], [2, 2], [0, 3]];
        let h = convex_hull(&pts).unwrap();
        assert!(pts.iter().all(|&p| h.contains(p)));
        assert!(h.volume() > 0);
        assert!(convex_hull(&[[0, 0], [1, 1], [2, 2]]).is_err());
    }

    #[test]
    fn facet_forms_collinear() {
        // shifted to {-1..N-2}: forms x+y and -x+(N-2)y
        let n = 5;
        let cone = facet_forms(&collinear(n)).unwrap();
        assert_eq!(
            cone.forms(),
            &[vec![-1, n - 2], vec![1, 1]]
        );
    }

    #[test]
    fn facet_forms_unit_square() {
        let sq = cfg3(&[[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]]);
        let cone = facet_forms(&sq).unwrap();
        let expect: Vec<Vec<i64>> = vec![
            vec![-1, 0, 1],
            vec![0, -1, 1],
            vec![0, 1, 0],
            vec![1, 0, 0],
        ];
        assert_eq!(cone.forms(), &expect[..]);
        // each form vanishes on exactly two configuration points
        for m in cone.forms() {
            let zeros = sq
                .points()
                .iter()
                .filter(|p| m.iter().zip(p.iter()).map(|(c, x)| c * x).sum::<i64>() == 0)
                .count();
            assert_eq!(zeros, 2);
        }
    }

    #[test]
    fn facet_forms_triangle_family() {
        // triangle family with i = 2: -x1 - i x2 + i x3, 2x1 - x2 + x3,
        // -x1 + (i+1) x2 + i x3
        let i = 2i64;
        let mut pts: Vec<[i64; 3]> = vec![[-1, -1, 1], [0, 1, 1]];
        for k in 0..=i {
            pts.push([k, 0, 1]);
        }
        let cfg = cfg3(&pts);
        let cone = facet_forms(&cfg).unwrap();
        let mut expect = vec![
            vec![-1, -i, i],
            vec![2, -1, 1],
            vec![-1, i + 1, i],
        ];
        expect.sort_unstable();
        assert_eq!(cone.forms(), &expect[..]);
    }

    #[test]
    fn facet_forms_are_irredundant() {
        // dropping any one form strictly enlarges the feasible set on a
        // small grid around the cone
        for cfg in [
            cfg3(&[[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]]),
            cfg3(&[[-1, -1, 1], [0, 0, 1], [1, 0, 1], [0, 1, 1]]),
        ] {
            let cone = facet_forms(&cfg).unwrap();
            let forms = cone.forms();
            for skip in 0..forms.len() {
                let mut witness = false;
                'grid: for x in -4i64..=4 {
                    for y in -4i64..=4 {
                        for z in -4i64..=4 {
                            let p = [x, y, z];
                            let others = forms
                                .iter()
                                .enumerate()
                                .filter(|&(j, _)| j != skip)
                                .all(|(_, m)| m.iter().zip(&p).map(|(c, v)| c * v).sum::<i64>() >= 0);
                            let this =
                                forms[skip].iter().zip(&p).map(|(c, v)| c * v).sum::<i64>() >= 0;
                            if others && !this {
                                witness = true;
                                break 'grid;
                            }
                        }
                    }
                }
                assert!(witness, "form {skip} is redundant");
            }
        }
    }

    #[test]
    fn volume_examples() {
        let sq = cfg3(&[[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]]);
        assert_eq!(simplex_volume(&sq).unwrap(), 2);
        assert_eq!(simplex_volume(&collinear(4)).unwrap(), 3);
        // a type (3,5) polygon has volume 2*3+5-2 = 9
        let p = poly(&[[0, 0], [1, 0], [4, 1], [0, 2]]);
        assert_eq!(p.polygon_type(), (3, 5));
        assert_eq!(p.volume(), 9);
        // one interior point, 5 boundary points, an edge of length 2
        let p6 = poly(&[[-1, -1], [1, -1], [1, 0], [0, 1]]);
        assert_eq!(p6.polygon_type(), (1, 5));
        assert_eq!(p6.volume(), 5);
    }

    #[test]
    fn triangulation_examples() {
        let unit = poly(&[[0, 0], [1, 0], [0, 1]]);
        assert_eq!(unimodular_triangulation(&unit).cells.len(), 1);

        let t22 = poly(&[[0, 0], [2, 0], [0, 2]]);
        let t = unimodular_triangulation(&t22);
        assert_eq!(t.cells.len(), 4);
        t.validate(&t22).unwrap();

        // vertices (-1,-1),(1,0),(0,1): one interior point, volume 3
        let pa2 = poly(&[[-1, -1], [1, 0], [0, 1]]);
        assert_eq!(pa2.volume(), 3);
        let t = unimodular_triangulation(&pa2);
        assert_eq!(t.cells.len(), 3);
        t.validate(&pa2).unwrap();
    }

    #[test]
    fn extension_examples() {
        // identity extension
        let pa2 = poly(&[[-1, -1], [1, 0], [0, 1]]);
        let t = unimodular_triangulation(&pa2);
        let same = extend_triangulation(&pa2, &t, &pa2).unwrap();
        assert_eq!(same, t);

        // unit triangle inside the unit square: 2 cells, one of them the input
        let unit = poly(&[[0, 0], [1, 0], [0, 1]]);
        let sq = poly(&[[0, 0], [1, 0], [0, 1], [1, 1]]);
        let t1 = unimodular_triangulation(&unit);
        let ext = extend_triangulation(&unit, &t1, &sq).unwrap();
        assert_eq!(ext.cells.len(), 2);
        let unit_cell: Vec<usize> = t1.cells[0]
            .iter()
            .map(|&i| {
                sq.points()
                    .binary_search(&unit.points()[i])
                    .unwrap()
            })
            .collect();
        assert!(ext.cells.contains(&unit_cell));

        // triangle with one interior point extended into a volume-5 polygon
        let p6 = poly(&[[-1, -1], [1, -1], [1, 0], [0, 1]]);
        assert_eq!(p6.volume(), 5);
        let t = unimodular_triangulation(&pa2);
        let ext = extend_triangulation(&pa2, &t, &p6).unwrap();
        assert_eq!(ext.cells.len(), 5);
        ext.validate(&p6).unwrap();
        for cell in &t.cells {
            let mapped: Vec<usize> = cell
                .iter()
                .map(|&i| p6.points().binary_search(&pa2.points()[i]).unwrap())
                .collect();
            assert!(ext.cells.contains(&mapped));
        }

        // non-containment is rejected
        let far = poly(&[[10, 10], [11, 10], [10, 11]]);
        assert!(extend_triangulation(&far, &unimodular_triangulation(&far), &unit).is_err());
    }

    #[test]
    fn collinear_cells() {
        let t = collinear_triangulation(&collinear(4)).unwrap();
        assert_eq!(t.cells.len(), 3);
        for c in &t.cells {
            assert_eq!(c.len(), 2);
        }
    }
}
