//! Point configurations, their height-1 normalization, structural
//! predicates, and isomorphism / canonical forms of lattice polygons.
//!
//! A configuration is a finite spanning subset of Z^r (r = 2 or 3) lying in
//! the hyperplane x_r = 1. For r = 3 the configuration is identified with a
//! convex lattice polygon in the plane; polygons are compared up to affine
//! unimodular equivalence (det +-1 linear part plus integer translation).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::exact_math::{self, ExactMathError, IntMatrix};

pub type Pt2 = [i64; 2];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigError {
    BadDimension(usize),
    TooFewPoints,
    DuplicatePoint(Vec<i64>),
    NotHeightOne(Vec<i64>),
    DoesNotSpan,
    Degenerate,
    NotNormal,
    PickViolation,
    NotConvexPosition,
    Math(ExactMathError),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::BadDimension(r) => write!(f, "dimension must be 2 or 3, got {r}"),
            ConfigError::TooFewPoints => write!(f, "not enough points"),
            ConfigError::DuplicatePoint(p) => write!(f, "duplicate point {p:?}"),
            ConfigError::NotHeightOne(p) => write!(f, "point {p:?} is not at height 1"),
            ConfigError::DoesNotSpan => write!(f, "points do not span the full lattice"),
            ConfigError::Degenerate => write!(f, "degenerate (collinear) input"),
            ConfigError::NotNormal => write!(f, "configuration is not normal"),
            ConfigError::PickViolation => write!(f, "area does not match 2i + b - 2"),
            ConfigError::NotConvexPosition => write!(f, "vertices are not in convex position"),
            ConfigError::Math(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ConfigError {}

impl From<ExactMathError> for ConfigError {
    fn from(e: ExactMathError) -> Self {
        ConfigError::Math(e)
    }
}

// ---------------------------------------------------------------------------
// planar primitives
// ---------------------------------------------------------------------------

/// Twice the signed area of the triangle o, a, b. Positive when CCW.
pub(crate) fn cross(o: Pt2, a: Pt2, b: Pt2) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Strict convex hull (no collinear vertices), counterclockwise.
/// Returns None when all points are collinear.
pub(crate) fn hull_ccw(points: &[Pt2]) -> Option<Vec<Pt2>> {
    let mut pts: Vec<Pt2> = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return None;
    }
    let build = |iter: &mut dyn Iterator<Item = Pt2>| {
        let mut chain: Vec<Pt2> = Vec::new();
        for p in iter {
            while chain.len() >= 2 && cross(chain[chain.len() - 2], chain[chain.len() - 1], p) <= 0
            {
                chain.pop();
            }
            chain.push(p);
        }
        chain
    };
    let lower = build(&mut pts.iter().copied());
    let upper = build(&mut pts.iter().rev().copied());
    let mut hull = lower;
    hull.pop();
    hull.extend(upper);
    hull.pop();
    if hull.len() < 3 {
        return None;
    }
    Some(hull)
}

/// Twice the Euclidean area of a CCW vertex cycle (the simplex area).
pub(crate) fn shoelace2(verts: &[Pt2]) -> i64 {
    let n = verts.len();
    let mut acc = 0i64;
    for i in 0..n {
        let a = verts[i];
        let b = verts[(i + 1) % n];
        acc += a[0] * b[1] - a[1] * b[0];
    }
    acc
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::Integer::gcd(&a, &b)
}

/// Number of lattice points on the open segment (a, b) plus one
/// (the "discrete length" of the edge).
pub(crate) fn discrete_length(a: Pt2, b: Pt2) -> i64 {
    gcd((b[0] - a[0]).abs(), (b[1] - a[1]).abs())
}

// ---------------------------------------------------------------------------
// affine unimodular maps of the plane
// ---------------------------------------------------------------------------

/// x |-> lin * x + t with det(lin) = +-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineUnimodularMap {
    pub lin: [[i64; 2]; 2],
    pub t: [i64; 2],
}

impl AffineUnimodularMap {
    pub fn identity() -> Self {
        AffineUnimodularMap {
            lin: [[1, 0], [0, 1]],
            t: [0, 0],
        }
    }

    pub fn new(lin: [[i64; 2]; 2], t: [i64; 2]) -> Result<Self, ConfigError> {
        let m = AffineUnimodularMap { lin, t };
        if m.det().abs() != 1 {
            return Err(ConfigError::NotConvexPosition);
        }
        Ok(m)
    }

    pub fn det(&self) -> i64 {
        self.lin[0][0] * self.lin[1][1] - self.lin[0][1] * self.lin[1][0]
    }

    pub fn apply(&self, p: Pt2) -> Pt2 {
        [
            self.lin[0][0] * p[0] + self.lin[0][1] * p[1] + self.t[0],
            self.lin[1][0] * p[0] + self.lin[1][1] * p[1] + self.t[1],
        ]
    }

    /// self after `other` (i.e. x |-> self(other(x))).
    pub fn compose(&self, other: &AffineUnimodularMap) -> AffineUnimodularMap {
        let a = self.lin;
        let b = other.lin;
        let lin = [
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ];
        let t = [
            a[0][0] * other.t[0] + a[0][1] * other.t[1] + self.t[0],
            a[1][0] * other.t[0] + a[1][1] * other.t[1] + self.t[1],
        ];
        AffineUnimodularMap { lin, t }
    }

    pub fn inverse(&self) -> AffineUnimodularMap {
        let d = self.det();
        debug_assert!(d.abs() == 1);
        let inv = [
            [self.lin[1][1] * d, -self.lin[0][1] * d],
            [-self.lin[1][0] * d, self.lin[0][0] * d],
        ];
        let m = AffineUnimodularMap { lin: inv, t: [0, 0] };
        let ti = m.apply([self.t[0], self.t[1]]);
        AffineUnimodularMap {
            lin: inv,
            t: [-ti[0], -ti[1]],
        }
    }
}

// ---------------------------------------------------------------------------
// lattice polygons
// ---------------------------------------------------------------------------

/// Convex lattice polygon together with its full lattice-point set and type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolygon {
    /// Counterclockwise vertex cycle, no three consecutive collinear.
    vertices: Vec<Pt2>,
    /// Every lattice point of the closed polygon, sorted.
    points: Vec<Pt2>,
    interior: usize,
    boundary: usize,
}

impl LatticePolygon {
    /// Polygon spanned by an arbitrary finite point set (its convex hull).
    /// Fails on collinear input. The lattice-point set is recomputed from
    /// the hull, so it may be a strict superset of the input.
    pub fn from_points(input: &[Pt2]) -> Result<Self, ConfigError> {
        let vertices = hull_ccw(input).ok_or(ConfigError::Degenerate)?;
        Self::from_hull(vertices)
    }

    fn from_hull(vertices: Vec<Pt2>) -> Result<Self, ConfigError> {
        let area2 = shoelace2(&vertices);
        debug_assert!(area2 > 0);
        let (mut xmin, mut ymin, mut xmax, mut ymax) = (i64::MAX, i64::MAX, i64::MIN, i64::MIN);
        for v in &vertices {
            xmin = xmin.min(v[0]);
            ymin = ymin.min(v[1]);
            xmax = xmax.max(v[0]);
            ymax = ymax.max(v[1]);
        }
        let n = vertices.len();
        let mut points = Vec::new();
        let mut boundary = 0usize;
        for x in xmin..=xmax {
            for y in ymin..=ymax {
                let p = [x, y];
                let mut inside = true;
                let mut on_edge = false;
                for i in 0..n {
                    let c = cross(vertices[i], vertices[(i + 1) % n], p);
                    if c < 0 {
                        inside = false;
                        break;
                    }
                    if c == 0 {
                        on_edge = true;
                    }
                }
                if inside {
                    points.push(p);
                    if on_edge {
                        boundary += 1;
                    }
                }
            }
        }
        let interior = points.len() - boundary;
        // Pick cross-check: simplex area equals 2i + b - 2.
        if area2 != 2 * interior as i64 + boundary as i64 - 2 {
            return Err(ConfigError::PickViolation);
        }
        Ok(LatticePolygon {
            vertices,
            points,
            interior,
            boundary,
        })
    }

    /// Build from an explicit CCW vertex cycle; rejects non-convex cycles.
    pub fn from_vertices(verts: &[Pt2]) -> Result<Self, ConfigError> {
        let hull = hull_ccw(verts).ok_or(ConfigError::Degenerate)?;
        if hull.len() != verts.len() {
            return Err(ConfigError::NotConvexPosition);
        }
        Self::from_hull(hull)
    }

    pub fn vertices(&self) -> &[Pt2] {
        &self.vertices
    }

    /// All lattice points of the closed polygon, sorted lexicographically.
    pub fn points(&self) -> &[Pt2] {
        &self.points
    }

    pub fn interior_count(&self) -> usize {
        self.interior
    }

    pub fn boundary_count(&self) -> usize {
        self.boundary
    }

    /// (interior, boundary) lattice point counts.
    pub fn polygon_type(&self) -> (usize, usize) {
        (self.interior, self.boundary)
    }

    /// Normalized (simplex) area: twice the Euclidean area.
    pub fn volume(&self) -> i64 {
        shoelace2(&self.vertices)
    }

    pub fn contains(&self, p: Pt2) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| cross(self.vertices[i], self.vertices[(i + 1) % n], p) >= 0)
    }

    pub fn contains_polygon(&self, other: &LatticePolygon) -> bool {
        other.vertices.iter().all(|&v| self.contains(v))
    }

    /// Boundary lattice points in counterclockwise cyclic order, starting at
    /// the first vertex.
    pub fn boundary_cycle(&self) -> Vec<Pt2> {
        let n = self.vertices.len();
        let mut cycle = Vec::with_capacity(self.boundary);
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let len = discrete_length(a, b);
            let step = [(b[0] - a[0]) / len, (b[1] - a[1]) / len];
            for t in 0..len {
                cycle.push([a[0] + t * step[0], a[1] + t * step[1]]);
            }
        }
        cycle
    }

    /// Sorted multiset of discrete edge lengths (an isomorphism invariant).
    pub fn edge_lengths(&self) -> Vec<i64> {
        let n = self.vertices.len();
        let mut lens: Vec<i64> = (0..n)
            .map(|i| discrete_length(self.vertices[i], self.vertices[(i + 1) % n]))
            .collect();
        lens.sort_unstable();
        lens
    }

    pub fn apply(&self, g: &AffineUnimodularMap) -> LatticePolygon {
        let verts: Vec<Pt2> = self.vertices.iter().map(|&v| g.apply(v)).collect();
        LatticePolygon::from_points(&verts).expect("unimodular image of a polygon")
    }

    /// Canonical representative of the isomorphism class. Two polygons have
    /// equal canonical point lists iff they are isomorphic.
    pub fn canonical_form(&self) -> LatticePolygon {
        self.canonical_with_witness().0
    }

    /// Canonical form plus a map carrying `self` onto it.
    pub fn canonical_with_witness(&self) -> (LatticePolygon, AffineUnimodularMap) {
        let (key, g) = self.canonical_key_witness();
        let poly = LatticePolygon::from_points(&key).expect("canonical image");
        (poly, g)
    }

    /// The canonical sorted point list (cheap dedup key).
    pub fn canonical_key(&self) -> Vec<Pt2> {
        self.canonical_key_witness().0
    }

    fn canonical_key_witness(&self) -> (Vec<Pt2>, AffineUnimodularMap) {
        let cycle = self.boundary_cycle();
        let b = cycle.len();
        let mut best: Option<(Vec<Pt2>, AffineUnimodularMap)> = None;
        for i in 0..b {
            for dir in [1i64, -1] {
                let u = cycle[i];
                let w = cycle[(i as i64 + dir).rem_euclid(b as i64) as usize];
                let g = normalize_base_edge(self, u, w);
                let mut mapped: Vec<Pt2> = self.points.iter().map(|&p| g.apply(p)).collect();
                mapped.sort_unstable();
                if best.as_ref().is_none_or(|(k, _)| mapped < *k) {
                    best = Some((mapped, g));
                }
            }
        }
        best.expect("polygon has boundary points")
    }
}

/// Map sending u to the origin and w to (1,0), with the polygon in y >= 0
/// and the shear fixed by putting the topmost-then-leftmost point T into
/// 0 <= x_T < y_T.
fn normalize_base_edge(poly: &LatticePolygon, u: Pt2, w: Pt2) -> AffineUnimodularMap {
    let p = [w[0] - u[0], w[1] - u[1]];
    debug_assert_eq!(gcd(p[0].abs(), p[1].abs()), 1);
    let (g, a, bz) = extended_gcd(p[0], p[1]);
    debug_assert_eq!(g, 1);
    // rows (a, bz) and (-p1, p0): determinant a*p0 + bz*p1 = 1
    let mut lin = [[a, bz], [-p[1], p[0]]];
    // decide the side: some point of the polygon must get y > 0
    let side = poly
        .points
        .iter()
        .map(|&q| lin[1][0] * (q[0] - u[0]) + lin[1][1] * (q[1] - u[1]))
        .find(|&y| y != 0)
        .unwrap_or(1);
    if side < 0 {
        lin[1][0] = -lin[1][0];
        lin[1][1] = -lin[1][1];
    }
    let base = AffineUnimodularMap {
        lin,
        t: [
            -(lin[0][0] * u[0] + lin[0][1] * u[1]),
            -(lin[1][0] * u[0] + lin[1][1] * u[1]),
        ],
    };
    // canonical shear: top row of the image, leftmost point T, 0 <= x_T < y_T
    let mapped: Vec<Pt2> = poly.points.iter().map(|&q| base.apply(q)).collect();
    let ymax = mapped.iter().map(|q| q[1]).max().unwrap();
    debug_assert!(ymax > 0);
    let xt = mapped
        .iter()
        .filter(|q| q[1] == ymax)
        .map(|q| q[0])
        .min()
        .unwrap();
    let m = -xt.div_euclid(ymax);
    let shear = AffineUnimodularMap {
        lin: [[1, m], [0, 1]],
        t: [0, 0],
    };
    shear.compose(&base)
}

fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = num_integer::Integer::extended_gcd(&a, &b);
    (e.gcd, e.x, e.y)
}

/// A map carrying `p` onto `q` point-for-point, if the polygons are
/// isomorphic. Fast-rejects on cheap invariants first.
pub fn are_isomorphic(p: &LatticePolygon, q: &LatticePolygon) -> Option<AffineUnimodularMap> {
    if p.vertices.len() != q.vertices.len()
        || p.polygon_type() != q.polygon_type()
        || p.volume() != q.volume()
        || p.edge_lengths() != q.edge_lengths()
    {
        return None;
    }
    let (kp, gp) = p.canonical_key_witness();
    let (kq, gq) = q.canonical_key_witness();
    if kp != kq {
        return None;
    }
    let g = gq.inverse().compose(&gp);
    debug_assert!({
        let mut img: Vec<Pt2> = p.points.iter().map(|&x| g.apply(x)).collect();
        img.sort_unstable();
        img == q.points
    });
    Some(g)
}

// ---------------------------------------------------------------------------
// point configurations
// ---------------------------------------------------------------------------

/// A finite spanning subset of Z^r at height 1 (last coordinate 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfig {
    r: usize,
    points: Vec<Vec<i64>>,
}

impl PointConfig {
    pub fn new(r: usize, points: Vec<Vec<i64>>) -> Result<Self, ConfigError> {
        if r != 2 && r != 3 {
            return Err(ConfigError::BadDimension(r));
        }
        if points.len() < r {
            return Err(ConfigError::TooFewPoints);
        }
        for p in &points {
            if p.len() != r {
                return Err(ConfigError::BadDimension(p.len()));
            }
            if p[r - 1] != 1 {
                return Err(ConfigError::NotHeightOne(p.clone()));
            }
        }
        let mut seen = points.clone();
        seen.sort_unstable();
        for w in seen.windows(2) {
            if w[0] == w[1] {
                return Err(ConfigError::DuplicatePoint(w[0].clone()));
            }
        }
        let cfg = PointConfig { r, points };
        if !cfg.spans_lattice() {
            return Err(ConfigError::DoesNotSpan);
        }
        Ok(cfg)
    }

    pub fn dim(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[i64] {
        &self.points[i]
    }

    /// First r-1 coordinates of each point (the planar shadow).
    pub fn shadow(&self) -> Vec<Pt2> {
        assert_eq!(self.r, 3);
        self.points.iter().map(|p| [p[0], p[1]]).collect()
    }

    /// Z-span of the points is all of Z^r, tested via the gcd of the
    /// r x r minors of the point matrix.
    fn spans_lattice(&self) -> bool {
        let n = self.points.len();
        let r = self.r;
        let mut g: i64 = 0;
        let idxs: Vec<usize> = (0..n).collect();
        let mut pick = vec![0usize; r];
        fn rec(
            idxs: &[usize],
            pick: &mut [usize],
            depth: usize,
            start: usize,
            pts: &[Vec<i64>],
            g: &mut i64,
        ) {
            let r = pick.len();
            if *g == 1 {
                return;
            }
            if depth == r {
                let det = match r {
                    2 => {
                        let a = &pts[pick[0]];
                        let b = &pts[pick[1]];
                        a[0] * b[1] - a[1] * b[0]
                    }
                    3 => {
                        let a = &pts[pick[0]];
                        let b = &pts[pick[1]];
                        let c = &pts[pick[2]];
                        a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                            + a[2] * (b[0] * c[1] - b[1] * c[0])
                    }
                    _ => unreachable!(),
                };
                *g = num_integer::Integer::gcd(g, &det);
                return;
            }
            for i in start..idxs.len() {
                pick[depth] = idxs[i];
                rec(idxs, pick, depth + 1, i + 1, pts, g);
            }
        }
        rec(&idxs, &mut pick, 0, 0, &self.points, &mut g);
        g.abs() == 1
    }

    /// True iff removing some single point leaves the rest in an (r-2)-dim
    /// affine subspace. Configurations in Z^2 are never treated as pyramids.
    pub fn is_pyramid(&self) -> bool {
        if self.r == 2 {
            return false;
        }
        let n = self.points.len();
        for skip in 0..n {
            let rest: Vec<Pt2> = (0..n)
                .filter(|&i| i != skip)
                .map(|i| [self.points[i][0], self.points[i][1]])
                .collect();
            if points_collinear(&rest) {
                return true;
            }
        }
        false
    }

    /// Every lattice point of the convex hull (segment or polygon) belongs
    /// to the configuration.
    pub fn is_normal(&self) -> bool {
        if self.r == 2 {
            let xs: Vec<i64> = self.points.iter().map(|p| p[0]).collect();
            let (lo, hi) = (
                *xs.iter().min().unwrap(),
                *xs.iter().max().unwrap(),
            );
            return xs.len() as i64 == hi - lo + 1;
        }
        let shadow = self.shadow();
        if points_collinear(&shadow) {
            // segment in the plane: contiguity along the primitive direction
            return segment_is_saturated(&shadow);
        }
        match LatticePolygon::from_points(&shadow) {
            Ok(poly) => poly.points().len() == self.points.len(),
            Err(_) => false,
        }
    }

    /// True when the configuration is contained in an affine line of the
    /// height-1 hyperplane.
    pub fn is_collinear(&self) -> bool {
        if self.r == 2 {
            return true;
        }
        points_collinear(&self.shadow())
    }

    /// The polygon whose lattice points are exactly the planar shadow of a
    /// normal 3-dimensional configuration.
    pub fn polygon(&self) -> Result<LatticePolygon, ConfigError> {
        if self.r != 3 {
            return Err(ConfigError::BadDimension(self.r));
        }
        if !self.is_normal() {
            return Err(ConfigError::NotNormal);
        }
        let shadow = self.shadow();
        let poly = LatticePolygon::from_points(&shadow).map_err(|_| ConfigError::Degenerate)?;
        debug_assert_eq!(poly.points().len(), self.points.len());
        Ok(poly)
    }

    /// Configuration of all lattice points of a polygon, at height 1,
    /// in sorted order.
    pub fn from_polygon(poly: &LatticePolygon) -> PointConfig {
        let pts: Vec<Vec<i64>> = poly.points().iter().map(|p| vec![p[0], p[1], 1]).collect();
        PointConfig::new(3, pts).expect("polygon lattice points span")
    }

    /// Apply an affine unimodular planar map to a 3d configuration.
    pub fn apply_planar(&self, g: &AffineUnimodularMap) -> PointConfig {
        assert_eq!(self.r, 3);
        let pts: Vec<Vec<i64>> = self
            .points
            .iter()
            .map(|p| {
                let q = g.apply([p[0], p[1]]);
                vec![q[0], q[1], 1]
            })
            .collect();
        PointConfig::new(3, pts).expect("unimodular image spans")
    }
}

pub(crate) fn points_collinear(pts: &[Pt2]) -> bool {
    if pts.len() <= 2 {
        return true;
    }
    let o = pts[0];
    let dir = pts[1..]
        .iter()
        .find(|&&p| p != o)
        .copied();
    let Some(d) = dir else { return true };
    pts.iter().all(|&p| cross(o, d, p) == 0)
}

fn segment_is_saturated(pts: &[Pt2]) -> bool {
    // all points on a line; check they form a contiguous lattice run
    let mut sorted = pts.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != pts.len() {
        return false;
    }
    let a = sorted[0];
    let b = *sorted.last().unwrap();
    let len = discrete_length(a, b);
    sorted.len() as i64 == len + 1
}

/// Normalize a raw spanning configuration with height form `h` (h(a) = 1
/// for every point) into the hyperplane x_r = 1. Returns the unimodular
/// change of coordinates together with the transformed configuration.
pub fn height_one_normalize(
    raw: &[Vec<i64>],
    h: &[i64],
) -> Result<(IntMatrix, PointConfig), ConfigError> {
    let r = h.len();
    if r != 2 && r != 3 {
        return Err(ConfigError::BadDimension(r));
    }
    for a in raw {
        if a.len() != r {
            return Err(ConfigError::BadDimension(a.len()));
        }
        let val: i64 = a.iter().zip(h).map(|(x, c)| x * c).sum();
        if val != 1 {
            return Err(ConfigError::NotHeightOne(a.clone()));
        }
    }
    let m = exact_math::extend_to_basis(h)?;
    debug_assert!(m.det().abs() == BigInt::one());
    let mut mapped = Vec::with_capacity(raw.len());
    for a in raw {
        let v: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
        let img = m.apply(&v);
        let img64: Vec<i64> = img
            .iter()
            .map(|x| i64::try_from(x).expect("coordinates fit i64"))
            .collect();
        mapped.push(img64);
    }
    let cfg = PointConfig::new(r, mapped)?;
    Ok((m, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg3(pts: &[[i64; 3]]) -> PointConfig {
        PointConfig::new(3, pts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    fn square() -> PointConfig {
        cfg3(&[[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]])
    }

    #[test]
    fn gauss_configuration_normalizes_to_unit_square() {
        let raw = vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 1, -1],
        ];
        let (_, cfg) = height_one_normalize(&raw, &[1, 1, 1]).unwrap();
        assert!(cfg.points().iter().all(|p| p[2] == 1));
        let poly = cfg.polygon().unwrap();
        let target = square().polygon().unwrap();
        assert!(are_isomorphic(&poly, &target).is_some());
    }

    #[test]
    fn already_normalized_is_identity() {
        let raw: Vec<Vec<i64>> = square().points().to_vec();
        let (m, cfg) = height_one_normalize(&raw, &[0, 0, 1]).unwrap();
        assert_eq!(m, IntMatrix::identity(3));
        assert_eq!(cfg.points(), square().points());
    }

    #[test]
    fn r2_normalization() {
        let raw = vec![vec![1, 0], vec![0, 1]];
        let (_, cfg) = height_one_normalize(&raw, &[1, 1]).unwrap();
        assert!(cfg.points().iter().all(|p| p[1] == 1));
    }

    #[test]
    fn pyramid_examples() {
        // triangle (0,0),(p,0),(0,1) with all its lattice points: a pyramid
        let p = 4;
        let mut pts: Vec<Vec<i64>> = (0..=p).map(|k| vec![k, 0, 1]).collect();
        pts.push(vec![0, 1, 1]);
        let cfg = PointConfig::new(3, pts).unwrap();
        assert!(cfg.is_pyramid());
        assert!(!square().is_pyramid());
        // configurations in Z^2 are never pyramids
        let line = PointConfig::new(2, vec![vec![-1, 1], vec![0, 1]]).unwrap();
        assert!(!line.is_pyramid());
    }

    #[test]
    fn normality() {
        let a = PointConfig::new(2, vec![vec![-1, 1], vec![0, 1], vec![1, 1]]).unwrap();
        assert!(a.is_normal());
        // a gap on the segment breaks normality
        let b = PointConfig::new(2, vec![vec![-1, 1], vec![0, 1], vec![2, 1]]).unwrap();
        assert!(!b.is_normal());
        // {(-1,1),(1,1)} spans only an index-2 sublattice and is rejected
        assert!(PointConfig::new(2, vec![vec![-1, 1], vec![1, 1]]).is_err());
        // all 6 lattice points of the triangle (0,0),(2,0),(0,2)
        let t = cfg3(&[
            [0, 0, 1],
            [1, 0, 1],
            [2, 0, 1],
            [0, 1, 1],
            [1, 1, 1],
            [0, 2, 1],
        ]);
        assert!(t.is_normal());
        // drop an interior hull point: no longer normal
        let t2 = cfg3(&[[0, 0, 1], [2, 0, 1], [0, 2, 1], [1, 1, 1], [0, 1, 1]]);
        assert!(!t2.is_normal());
    }

    #[test]
    fn polygon_round_trip() {
        let t = square();
        let poly = t.polygon().unwrap();
        let back = PointConfig::from_polygon(&poly);
        let mut orig = t.points().to_vec();
        orig.sort_unstable();
        assert_eq!(back.points(), orig);
        assert_eq!(poly.polygon_type(), (0, 4));
        assert_eq!(poly.volume(), 2);
    }

    #[test]
    fn shear_image_is_isomorphic() {
        let poly = square().polygon().unwrap();
        let g = AffineUnimodularMap::new([[1, 1], [0, 1]], [3, -2]).unwrap();
        let img = poly.apply(&g);
        let w = are_isomorphic(&poly, &img).expect("isomorphic");
        let mut mapped: Vec<Pt2> = poly.points().iter().map(|&p| w.apply(p)).collect();
        mapped.sort_unstable();
        assert_eq!(mapped, img.points());
        assert_eq!(poly.canonical_key(), img.canonical_key());
    }

    #[test]
    fn area_mismatch_fast_reject() {
        let tri = LatticePolygon::from_points(&[[0, 0], [3, 0], [0, 2]]).unwrap();
        let sq = square().polygon().unwrap();
        assert!(are_isomorphic(&tri, &sq).is_none());
    }

    #[test]
    fn horn_h5_polygon_matches_quadrilateral() {
        // two height-1 presentations of the same quadrilateral class
        let raw = vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![2, -1, 0],
            vec![1, 1, -1],
        ];
        let (_, h5) = height_one_normalize(&raw, &[1, 1, 1]).unwrap();
        let a4 = cfg3(&[[0, -1, 1], [-1, 0, 1], [0, 0, 1], [1, 0, 1], [-1, 1, 1]]);
        let p = h5.polygon().unwrap();
        let q = a4.polygon().unwrap();
        assert!(are_isomorphic(&p, &q).is_some());
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(PointConfig::new(3, vec![vec![0, 0, 2], vec![1, 0, 1], vec![0, 1, 1]]).is_err());
        assert!(PointConfig::new(
            3,
            vec![vec![0, 0, 1], vec![0, 0, 1], vec![1, 0, 1]]
        )
        .is_err());
        // spans only an index-2 sublattice
        assert!(PointConfig::new(2, vec![vec![0, 1], vec![2, 1]]).is_err());
    }

    #[test]
    fn isomorphism_is_symmetric_and_pyramid_invariant() {
        let g = AffineUnimodularMap::new([[2, 1], [1, 1]], [4, -3]).unwrap();
        let pyr = cfg3(&[[0, 0, 1], [1, 0, 1], [2, 0, 1], [0, 1, 1]]);
        assert_eq!(pyr.is_pyramid(), pyr.apply_planar(&g).is_pyramid());
        assert_eq!(square().is_pyramid(), square().apply_planar(&g).is_pyramid());

        let p = square().polygon().unwrap();
        let q = p.apply(&g);
        let fwd = are_isomorphic(&p, &q).unwrap();
        let bwd = are_isomorphic(&q, &p).unwrap();
        let mut round: Vec<Pt2> = p.points().iter().map(|&x| bwd.apply(fwd.apply(x))).collect();
        round.sort_unstable();
        assert_eq!(round, p.points());
    }

    #[test]
    fn inverse_compose_identity() {
        let g = AffineUnimodularMap::new([[2, 1], [1, 1]], [5, -7]).unwrap();
        let gi = g.inverse();
        let id = g.compose(&gi);
        assert_eq!(id, AffineUnimodularMap::identity());
    }
}
