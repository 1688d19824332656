//! Resonance tests, apex points, signatures, the algebraicity criterion
//! over all conjugates, and one-parameter family verification.
//!
//! A parameter vector is algebraic for a configuration A exactly when every
//! conjugate k*beta (k coprime to the common denominator) attains the
//! maximal signature Vol(Q(A)). Signatures depend only on the floor tuple
//! of the facet forms, which keeps everything exact and finite.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::config::{ConfigError, PointConfig};
use crate::exact_math::{frac, primitive_part, Rational};
use crate::polytope::{facet_forms, simplex_volume, PolytopeError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HypergeoError {
    PyramidInput,
    NotNormal,
    ResonantParameter,
    DimensionMismatch { expected: usize, got: usize },
    ZeroDirection,
    UnsupportedDirection,
    DenominatorOverflow,
    Config(ConfigError),
    Polytope(PolytopeError),
}

impl fmt::Display for HypergeoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HypergeoError::PyramidInput => write!(f, "pyramidal configuration rejected"),
            HypergeoError::NotNormal => write!(f, "configuration must be normal"),
            HypergeoError::ResonantParameter => write!(f, "parameter vector is resonant"),
            HypergeoError::DimensionMismatch { expected, got } => {
                write!(f, "parameter dimension mismatch: expected {expected}, got {got}")
            }
            HypergeoError::ZeroDirection => write!(f, "family direction must be nonzero"),
            HypergeoError::UnsupportedDirection => {
                write!(f, "family direction must contain a +-1 entry")
            }
            HypergeoError::DenominatorOverflow => write!(f, "denominator too large"),
            HypergeoError::Config(e) => write!(f, "{e}"),
            HypergeoError::Polytope(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for HypergeoError {}

impl From<ConfigError> for HypergeoError {
    fn from(e: ConfigError) -> Self {
        HypergeoError::Config(e)
    }
}

impl From<PolytopeError> for HypergeoError {
    fn from(e: PolytopeError) -> Self {
        HypergeoError::Polytope(e)
    }
}

// ---------------------------------------------------------------------------
// parameter vectors
// ---------------------------------------------------------------------------

/// An exact rational parameter vector, normalized into [0,1)^r, together
/// with the least common denominator of its coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ParamVector {
    nums: Vec<i64>,
    den: i64,
}

impl ParamVector {
    /// Build from rational coordinates; fractional parts are taken.
    pub fn new(coords: &[Rational]) -> Result<Self, HypergeoError> {
        let mut den: i64 = 1;
        let fracs: Vec<Rational> = coords.iter().map(frac).collect();
        for c in &fracs {
            let d = i64::try_from(c.denom()).map_err(|_| HypergeoError::DenominatorOverflow)?;
            den = den
                .checked_mul(d / den.gcd(&d))
                .ok_or(HypergeoError::DenominatorOverflow)?;
        }
        let nums = fracs
            .iter()
            .map(|c| {
                let scale = BigInt::from(den) / c.denom();
                i64::try_from(&(c.numer() * scale)).map_err(|_| HypergeoError::DenominatorOverflow)
            })
            .collect::<Result<Vec<i64>, _>>()?;
        Ok(ParamVector { nums, den })
    }

    /// Build from scaled integers nums/den (den > 0); reduces to the least
    /// common denominator and normalizes into [0,1).
    pub fn from_scaled(nums: &[i64], den: i64) -> Self {
        assert!(den > 0);
        let reduced: Vec<i64> = nums.iter().map(|&n| n.rem_euclid(den)).collect();
        let g = reduced.iter().fold(den, |g, &n| g.gcd(&n));
        ParamVector {
            nums: reduced.iter().map(|&n| n / g).collect(),
            den: den / g,
        }
    }

    pub fn dim(&self) -> usize {
        self.nums.len()
    }

    /// Least common denominator D.
    pub fn denominator(&self) -> i64 {
        self.den
    }

    /// Scaled view: numerators over the common denominator.
    pub fn scaled(&self) -> (&[i64], i64) {
        (&self.nums, self.den)
    }

    pub fn coords(&self) -> Vec<Rational> {
        self.nums
            .iter()
            .map(|&n| Rational::new(BigInt::from(n), BigInt::from(self.den)))
            .collect()
    }

    /// frac(k * beta).
    pub fn conjugate(&self, k: i64) -> ParamVector {
        let nums: Vec<i64> = self
            .nums
            .iter()
            .map(|&n| ((k.rem_euclid(self.den) as i128 * n as i128) % self.den as i128) as i64)
            .collect();
        ParamVector::from_scaled(&nums, self.den)
    }

    /// All k in [1, D) coprime to D.
    pub fn coprime_residues(&self) -> Vec<i64> {
        if self.den == 1 {
            return vec![1];
        }
        (1..self.den).filter(|k| k.gcd(&self.den) == 1).collect()
    }

    /// Lexicographically smallest conjugate (the class representative).
    pub fn class_representative(&self) -> ParamVector {
        self.coprime_residues()
            .iter()
            .map(|&k| self.conjugate(k))
            .min()
            .expect("nonempty conjugate set")
    }
}

impl fmt::Display for ParamVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, n) in self.nums.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let g = n.gcd(&self.den);
            if self.den / g == 1 {
                write!(f, "{}", n / g)?;
            } else {
                write!(f, "{}/{}", n / g, self.den / g)?;
            }
        }
        write!(f, ")")
    }
}

/// The conjugacy class { frac(k*beta) : gcd(k, D) = 1 }, sorted.
pub fn conjugacy_class(beta: &ParamVector) -> Vec<ParamVector> {
    let mut out: Vec<ParamVector> = beta
        .coprime_residues()
        .iter()
        .map(|&k| beta.conjugate(k))
        .collect();
    out.sort();
    out.dedup();
    out
}

// ---------------------------------------------------------------------------
// the apex engine
// ---------------------------------------------------------------------------

/// Precomputed data for fast exact signature evaluation on one
/// configuration: facet forms, their values on the points, the volume and
/// a coordinate bound for the direct-definition scan.
#[derive(Debug, Clone)]
pub struct ApexEngine {
    r: usize,
    points: Vec<Vec<i64>>,
    forms: Vec<Vec<i64>>,
    /// form_values[j][i] = m_j(a_i)
    form_values: Vec<Vec<i64>>,
    volume: i64,
    box_bound: i64,
}

impl ApexEngine {
    pub fn new(a: &PointConfig) -> Result<Self, HypergeoError> {
        if !a.is_normal() {
            return Err(HypergeoError::NotNormal);
        }
        let cone = facet_forms(a)?;
        let forms: Vec<Vec<i64>> = cone.forms().to_vec();
        let points: Vec<Vec<i64>> = a.points().to_vec();
        let form_values = forms
            .iter()
            .map(|m| {
                points
                    .iter()
                    .map(|p| dot(m, p))
                    .collect::<Vec<i64>>()
            })
            .collect();
        let volume = simplex_volume(a)?;
        let maxc = points
            .iter()
            .flat_map(|p| p.iter())
            .map(|x| x.abs())
            .max()
            .unwrap_or(1);
        Ok(ApexEngine {
            r: a.dim(),
            points,
            forms,
            form_values,
            volume,
            box_bound: (a.dim() as i64) * maxc + 2,
        })
    }

    pub fn volume(&self) -> i64 {
        self.volume
    }

    pub fn forms(&self) -> &[Vec<i64>] {
        &self.forms
    }

    pub fn dim(&self) -> usize {
        self.r
    }

    /// Floor tuple of the facet forms at nums/den, or None when resonant.
    pub fn floors(&self, nums: &[i64], den: i64) -> Option<Vec<i64>> {
        let mut out = Vec::with_capacity(self.forms.len());
        for m in &self.forms {
            let d = dot(m, nums);
            if d.rem_euclid(den) == 0 {
                return None;
            }
            out.push(d.div_euclid(den));
        }
        Some(out)
    }

    /// The integer parts x of all apex points x + beta, from the floor
    /// tuple alone. Apex points lie in the height slices h(x) in 0..r-1.
    pub fn apex_x_from_floors(&self, floors: &[i64]) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for s in 0..self.r as i64 {
            self.slice_apex(floors, s, &mut out);
        }
        out
    }

    pub fn signature_from_floors(&self, floors: &[i64]) -> usize {
        self.apex_x_from_floors(floors).len()
    }

    /// Signature of nums/den, or None when resonant.
    pub fn signature_scaled(&self, nums: &[i64], den: i64) -> Option<usize> {
        self.floors(nums, den)
            .map(|f| self.signature_from_floors(&f))
    }

    /// Direct-definition apex scan over the bounding box: p = x + beta with
    /// p in C(A) and p - a outside C(A) for every a. Independent of the
    /// floor-tuple route; used as a cross-checking oracle.
    pub fn apex_x_brute_force(&self, nums: &[i64], den: i64) -> Vec<Vec<i64>> {
        let b = self.box_bound;
        let mut out = Vec::new();
        let mut x = vec![0i64; self.r];
        let in_cone = |p_scaled: &[i64]| -> bool {
            self.forms.iter().all(|m| dot(m, p_scaled) >= 0)
        };
        let mut ranges: Vec<(i64, i64)> = vec![(-b, b); self.r - 1];
        ranges.push((0, self.r as i64 - 1));
        let mut idx = vec![0i64; self.r];
        for (i, r) in ranges.iter().enumerate() {
            idx[i] = r.0;
        }
        'outer: loop {
            x.copy_from_slice(&idx);
            // p = x + nums/den, scaled by den
            let p: Vec<i64> = x.iter().zip(nums).map(|(xi, ni)| xi * den + ni).collect();
            if in_cone(&p) {
                let dominated = self.points.iter().all(|a| {
                    let shifted: Vec<i64> =
                        p.iter().zip(a).map(|(pi, ai)| pi - ai * den).collect();
                    !in_cone(&shifted)
                });
                if dominated {
                    out.push(x.clone());
                }
            }
            // odometer
            let mut i = 0;
            loop {
                if i == self.r {
                    break 'outer;
                }
                idx[i] += 1;
                if idx[i] <= ranges[i].1 {
                    break;
                }
                idx[i] = ranges[i].0;
                i += 1;
            }
        }
        out.sort_unstable();
        out
    }

    /// Integer points of one height slice of the shifted cone, filtered by
    /// the apex domination condition.
    fn slice_apex(&self, floors: &[i64], s: i64, out: &mut Vec<Vec<i64>>) {
        let n = self.forms.len();
        // constraints on y (the first r-1 coordinates):
        //   sum_j m[j][..r-1] . y  >=  -floors[j] - m[j][r-1] * s
        let cst: Vec<(Vec<i64>, i64)> = (0..n)
            .map(|j| {
                let m = &self.forms[j];
                (
                    m[..self.r - 1].to_vec(),
                    -floors[j] - m[self.r - 1] * s,
                )
            })
            .collect();
        if self.r == 2 {
            // one-dimensional slice
            let mut lo = i64::MIN;
            let mut hi = i64::MAX;
            for (m, c) in &cst {
                let a = m[0];
                match a.cmp(&0) {
                    core::cmp::Ordering::Greater => {
                        lo = lo.max(div_ceil(*c, a));
                    }
                    core::cmp::Ordering::Less => {
                        hi = hi.min(div_floor_i64(*c, a));
                    }
                    core::cmp::Ordering::Equal => {
                        if *c > 0 {
                            return;
                        }
                    }
                }
            }
            if lo == i64::MIN || hi == i64::MAX {
                return;
            }
            for y in lo..=hi {
                self.push_if_apex(&[y, s], floors, out);
            }
            return;
        }
        // two-dimensional slice: enumerate candidate vertices from
        // constraint pairs, then scan the integer bounding box
        let mut vxs: Vec<(i128, i128, i128)> = Vec::new(); // (num_x, num_y, den>0)
        for j in 0..n {
            for k in (j + 1)..n {
                let (mj, cj) = (&cst[j].0, cst[j].1 as i128);
                let (mk, ck) = (&cst[k].0, cst[k].1 as i128);
                let det = mj[0] as i128 * mk[1] as i128 - mj[1] as i128 * mk[0] as i128;
                if det == 0 {
                    continue;
                }
                let mut nx = cj * mk[1] as i128 - ck * mj[1] as i128;
                let mut ny = mj[0] as i128 * ck - mk[0] as i128 * cj;
                let mut d = det;
                if d < 0 {
                    nx = -nx;
                    ny = -ny;
                    d = -d;
                }
                let feasible = cst.iter().all(|(m, c)| {
                    m[0] as i128 * nx + m[1] as i128 * ny >= *c as i128 * d
                });
                if feasible {
                    vxs.push((nx, ny, d));
                }
            }
        }
        if vxs.is_empty() {
            return;
        }
        let fl = |n: i128, d: i128| -> i64 { n.div_euclid(d) as i64 };
        let cl = |n: i128, d: i128| -> i64 { -((-n).div_euclid(d)) as i64 };
        let x_lo = vxs.iter().map(|&(nx, _, d)| cl(nx, d)).min().unwrap();
        let x_hi = vxs.iter().map(|&(nx, _, d)| fl(nx, d)).max().unwrap();
        let y_lo = vxs.iter().map(|&(_, ny, d)| cl(ny, d)).min().unwrap();
        let y_hi = vxs.iter().map(|&(_, ny, d)| fl(ny, d)).max().unwrap();
        for x in x_lo..=x_hi {
            for y in y_lo..=y_hi {
                if cst.iter().all(|(m, c)| m[0] * x + m[1] * y >= *c) {
                    self.push_if_apex(&[x, y, s], floors, out);
                }
            }
        }
    }

    fn push_if_apex(&self, x: &[i64], floors: &[i64], out: &mut Vec<Vec<i64>>) {
        // for every a there must be a form with m(x) < m(a) - floor
        let n = self.forms.len();
        let mx: Vec<i64> = (0..n).map(|j| dot(&self.forms[j], x)).collect();
        let ok = (0..self.points.len())
            .all(|i| (0..n).any(|j| mx[j] < self.form_values[j][i] - floors[j]));
        if ok {
            out.push(x.to_vec());
        }
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn div_ceil(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    -((-a).div_euclid(b))
}

fn div_floor_i64(a: i64, b: i64) -> i64 {
    // floor(a / b) with b negative allowed via euclid on flipped signs
    if b > 0 {
        a.div_euclid(b)
    } else {
        (-a).div_euclid(-b)
    }
}

// ---------------------------------------------------------------------------
// public operations
// ---------------------------------------------------------------------------

fn check_dim(a: &PointConfig, beta: &ParamVector) -> Result<(), HypergeoError> {
    if a.dim() != beta.dim() {
        return Err(HypergeoError::DimensionMismatch {
            expected: a.dim(),
            got: beta.dim(),
        });
    }
    Ok(())
}

/// beta + Z^r misses every face of C(A): no facet form is integral at beta.
pub fn is_nonresonant(a: &PointConfig, beta: &ParamVector) -> Result<bool, HypergeoError> {
    check_dim(a, beta)?;
    let cone = facet_forms(a)?;
    let (nums, den) = beta.scaled();
    Ok(cone
        .forms()
        .iter()
        .all(|m| dot(m, nums).rem_euclid(den) != 0))
}

/// beta + Z^r misses every hyperplane spanned by r-1 independent points.
pub fn is_totally_nonresonant(a: &PointConfig, beta: &ParamVector) -> Result<bool, HypergeoError> {
    check_dim(a, beta)?;
    let (nums, den) = beta.scaled();
    let pts = a.points();
    if a.dim() == 2 {
        for p in pts {
            let normal = primitive_part(&[-p[1], p[0]], None).expect("nonzero point");
            if dot(&normal, nums).rem_euclid(den) == 0 {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            let (p, q) = (&pts[i], &pts[j]);
            let c = [
                p[1] * q[2] - p[2] * q[1],
                p[2] * q[0] - p[0] * q[2],
                p[0] * q[1] - p[1] * q[0],
            ];
            if c == [0, 0, 0] {
                continue; // linearly dependent pair
            }
            let normal = primitive_part(&c, None).expect("nonzero");
            if dot(&normal, nums).rem_euclid(den) == 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All apex points p = x + beta as exact rational vectors.
pub fn apex_points(a: &PointConfig, beta: &ParamVector) -> Result<Vec<Vec<Rational>>, HypergeoError> {
    check_dim(a, beta)?;
    let engine = ApexEngine::new(a)?;
    let (nums, den) = beta.scaled();
    let floors = engine.floors(nums, den).ok_or(HypergeoError::ResonantParameter)?;
    let xs = engine.apex_x_from_floors(&floors);
    let coords = beta.coords();
    Ok(xs
        .into_iter()
        .map(|x| {
            x.iter()
                .zip(&coords)
                .map(|(xi, b)| Rational::from_integer(BigInt::from(*xi)) + b)
                .collect()
        })
        .collect())
}

/// Number of apex points; always at most Vol(Q(A)).
pub fn signature(a: &PointConfig, beta: &ParamVector) -> Result<usize, HypergeoError> {
    Ok(apex_points(a, beta)?.len())
}

/// Outcome of the algebraicity test for one parameter vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Resonant,
    /// First conjugate with a signature deficit.
    Transcendental {
        witness_k: i64,
        witness_sigma: usize,
        volume: i64,
    },
    /// Every conjugate attains the volume; map k -> signature.
    Algebraic {
        signatures: Vec<(i64, usize)>,
        volume: i64,
    },
}

impl Verdict {
    pub fn is_algebraic(&self) -> bool {
        matches!(self, Verdict::Algebraic { .. })
    }
}

/// Full algebraicity test: non-resonance, then signature = Vol(Q(A)) for
/// every conjugate frac(k*beta) with gcd(k, D) = 1.
pub fn is_algebraic(a: &PointConfig, beta: &ParamVector) -> Result<Verdict, HypergeoError> {
    check_dim(a, beta)?;
    if a.is_pyramid() {
        return Err(HypergeoError::PyramidInput);
    }
    let engine = ApexEngine::new(a)?;
    Ok(is_algebraic_with_engine(&engine, beta))
}

pub fn is_algebraic_with_engine(engine: &ApexEngine, beta: &ParamVector) -> Verdict {
    let (nums, den) = beta.scaled();
    let vol = engine.volume();
    let mut signatures = Vec::new();
    for k in beta.coprime_residues() {
        let knums: Vec<i64> = nums
            .iter()
            .map(|&n| ((k as i128 * n as i128).rem_euclid(den as i128)) as i64)
            .collect();
        match engine.signature_scaled(&knums, den) {
            None => return Verdict::Resonant,
            Some(sig) => {
                if sig as i64 != vol {
                    return Verdict::Transcendental {
                        witness_k: k,
                        witness_sigma: sig,
                        volume: vol,
                    };
                }
                signatures.push((k, sig));
            }
        }
    }
    Verdict::Algebraic {
        signatures,
        volume: vol,
    }
}

// ---------------------------------------------------------------------------
// one-parameter families
// ---------------------------------------------------------------------------

/// A one-parameter family of parameter vectors frac(base + t * dir).
///
/// Canonical form: dir is primitive with its first nonzero entry positive
/// and contains a +-1 entry (the pivot, whose base coordinate is 0).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct FamilyPattern {
    base: ParamVector,
    dir: Vec<i64>,
}

impl FamilyPattern {
    pub fn new(base: &[Rational], dir: &[i64]) -> Result<Self, HypergeoError> {
        if dir.iter().all(|&d| d == 0) {
            return Err(HypergeoError::ZeroDirection);
        }
        let mut d = primitive_part(dir, None).expect("nonzero direction");
        if base.len() != d.len() {
            return Err(HypergeoError::DimensionMismatch {
                expected: d.len(),
                got: base.len(),
            });
        }
        let first = d.iter().find(|&&x| x != 0).copied().unwrap();
        if first < 0 {
            for x in &mut d {
                *x = -*x;
            }
        }
        let pivot = d
            .iter()
            .position(|&x| x.abs() == 1)
            .ok_or(HypergeoError::UnsupportedDirection)?;
        // reparametrize so the pivot coordinate of the base is 0
        let t0 = &base[pivot] * Rational::from_integer(BigInt::from(d[pivot]));
        let shifted: Vec<Rational> = base
            .iter()
            .zip(&d)
            .map(|(b, &di)| b - &t0 * Rational::from_integer(BigInt::from(di)))
            .collect();
        let base = ParamVector::new(&shifted)?;
        debug_assert!(base.scaled().0[pivot] == 0);
        Ok(FamilyPattern { base, dir: d })
    }

    pub fn base(&self) -> &ParamVector {
        &self.base
    }

    pub fn dir(&self) -> &[i64] {
        &self.dir
    }

    /// Member frac(base + t * dir).
    pub fn member(&self, t: &Rational) -> ParamVector {
        let coords: Vec<Rational> = self
            .base
            .coords()
            .iter()
            .zip(&self.dir)
            .map(|(b, &d)| b + t * Rational::from_integer(BigInt::from(d)))
            .collect();
        ParamVector::new(&coords).expect("small denominators")
    }

    /// The conjugate lines frac(k * base) + t * dir over k coprime to the
    /// base denominator. Every conjugate of every member lies on one of
    /// these lines, so the pattern is closed under conjugation by
    /// construction.
    pub fn orbit(&self) -> Vec<FamilyPattern> {
        let mut lines: Vec<FamilyPattern> = self
            .base
            .coprime_residues()
            .iter()
            .map(|&k| FamilyPattern {
                base: self.base.conjugate(k),
                dir: self.dir.clone(),
            })
            .collect();
        lines.sort();
        lines.dedup();
        lines
    }

    /// Representative key of the family up to conjugation.
    pub fn orbit_min(&self) -> FamilyPattern {
        self.orbit().into_iter().min().expect("nonempty orbit")
    }

    /// Does the conjugacy class of beta meet this family (some conjugate of
    /// beta lying on some orbit line)?
    pub fn contains_class(&self, beta: &ParamVector) -> bool {
        if beta.dim() != self.dir.len() {
            return false;
        }
        let pivot = self.dir.iter().position(|&x| x.abs() == 1).unwrap();
        for line in self.orbit() {
            let coords = beta.coords();
            let t = &coords[pivot] * Rational::from_integer(BigInt::from(self.dir[pivot]));
            if line.member(&t) == *beta {
                return true;
            }
        }
        false
    }
}

/// One verified sub-arc of the parameter circle for a family line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyArc {
    pub start: Rational,
    pub end: Rational,
    pub sample: ParamVector,
    pub sigma: usize,
    pub ok: bool,
}

/// Per-line verification data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyLineReport {
    pub base: ParamVector,
    pub arcs: Vec<FamilyArc>,
}

/// Outcome of family verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyVerdict {
    pub pattern: FamilyPattern,
    /// Resonant parameter values in [0,1) (the family breakpoints); every
    /// other parameter gives a non-resonant member.
    pub excluded: Vec<Rational>,
    pub volume: i64,
    pub lines: Vec<FamilyLineReport>,
    /// Entirely resonant line (degenerate pattern).
    pub resonant_line: bool,
    pub algebraic: bool,
}

/// Verify a one-parameter family: on every open arc between breakpoints of
/// every conjugate line, the signature is constant; the family is algebraic
/// iff every arc attains the volume. Soundness: the signature depends only
/// on the floor tuple of the facet forms, which is constant on arcs, and
/// conjugation permutes arcs of the orbit lines.
pub fn verify_family(a: &PointConfig, pattern: &FamilyPattern) -> Result<FamilyVerdict, HypergeoError> {
    if a.dim() != pattern.dir.len() {
        return Err(HypergeoError::DimensionMismatch {
            expected: a.dim(),
            got: pattern.dir.len(),
        });
    }
    if a.is_pyramid() {
        return Err(HypergeoError::PyramidInput);
    }
    let engine = ApexEngine::new(a)?;
    Ok(verify_family_with_engine(&engine, pattern))
}

pub fn verify_family_with_engine(engine: &ApexEngine, pattern: &FamilyPattern) -> FamilyVerdict {
    let vol = engine.volume();
    let mut lines = Vec::new();
    let mut excluded: Vec<Rational> = Vec::new();
    let mut resonant_line = false;
    let mut algebraic = true;

    for (idx, line) in pattern.orbit().into_iter().enumerate() {
        let base_coords = line.base.coords();
        let mut breakpoints: Vec<Rational> = Vec::new();
        for m in engine.forms() {
            let alpha = dot(m, &line.dir);
            let mut gamma = Rational::zero();
            for (c, b) in m.iter().zip(&base_coords) {
                gamma += Rational::from_integer(BigInt::from(*c)) * b;
            }
            if alpha == 0 {
                if gamma.is_integer() {
                    resonant_line = true;
                }
                continue;
            }
            // m(base + t dir) in Z  <=>  t = (z - gamma)/alpha, z in Z
            let step = Rational::new(BigInt::from(1), BigInt::from(alpha.abs()));
            let t0 = frac(&(-&gamma / Rational::from_integer(BigInt::from(alpha))));
            for j in 0..alpha.abs() {
                breakpoints.push(frac(
                    &(&t0 + &step * Rational::from_integer(BigInt::from(j))),
                ));
            }
        }
        if resonant_line {
            algebraic = false;
            break;
        }
        breakpoints.sort();
        breakpoints.dedup();
        if idx == 0 {
            excluded = breakpoints.clone();
        }

        let mut arcs = Vec::new();
        if breakpoints.is_empty() {
            let sample_t = Rational::new(BigInt::from(1), BigInt::from(2));
            let sample = line.member(&sample_t);
            let (nums, den) = sample.scaled();
            let sigma = engine.signature_scaled(nums, den).unwrap_or(usize::MAX);
            let ok = sigma as i64 == vol;
            algebraic &= ok;
            arcs.push(FamilyArc {
                start: Rational::zero(),
                end: Rational::from_integer(BigInt::from(1)),
                sample,
                sigma,
                ok,
            });
        } else {
            let nb = breakpoints.len();
            for i in 0..nb {
                let start = breakpoints[i].clone();
                let end = if i + 1 < nb {
                    breakpoints[i + 1].clone()
                } else {
                    &breakpoints[0] + Rational::from_integer(BigInt::from(1))
                };
                if start == end {
                    continue;
                }
                let mid = frac(&((&start + &end) / Rational::from_integer(BigInt::from(2))));
                let sample = line.member(&mid);
                let (nums, den) = sample.scaled();
                let sigma = engine
                    .signature_scaled(nums, den)
                    .expect("arc midpoint is non-resonant");
                let ok = sigma as i64 == vol;
                algebraic &= ok;
                arcs.push(FamilyArc {
                    start,
                    end: frac(&end),
                    sample,
                    sigma,
                    ok,
                });
            }
        }
        lines.push(FamilyLineReport {
            base: line.base.clone(),
            arcs,
        });
    }

    FamilyVerdict {
        pattern: pattern.clone(),
        excluded,
        volume: vol,
        lines,
        resonant_line,
        algebraic: algebraic && !resonant_line,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::rat;

    fn cfg3(pts: &[[i64; 3]]) -> PointConfig {
        PointConfig::new(3, pts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    fn collinear(n: i64) -> PointConfig {
        PointConfig::new(2, (-1..=n - 2).map(|k| vec![k, 1]).collect()).unwrap()
    }

    fn a2() -> PointConfig {
        cfg3(&[[-1, -1, 1], [0, 0, 1], [1, 0, 1], [0, 1, 1]])
    }

    /// Triangle family member with i collinear interior points.
    fn family_triangle(i: i64) -> PointConfig {
        let mut pts: Vec<Vec<i64>> = vec![vec![-1, -1, 1], vec![0, 1, 1]];
        for k in 0..=i {
            pts.push(vec![k, 0, 1]);
        }
        PointConfig::new(3, pts).unwrap()
    }

    fn pv(coords: &[Rational]) -> ParamVector {
        ParamVector::new(coords).unwrap()
    }

    #[test]
    fn param_vector_normalization() {
        let b = pv(&[rat(7, 6), rat(-1, 3)]);
        assert_eq!(b.scaled(), (&[1i64, 4][..], 6));
        let c = ParamVector::from_scaled(&[2, 4], 6);
        assert_eq!(c.scaled(), (&[1i64, 2][..], 3));
    }

    #[test]
    fn conjugacy() {
        let b = pv(&[rat(1, 3), rat(5, 6)]);
        let class = conjugacy_class(&b);
        assert_eq!(class.len(), 2);
        assert_eq!(class[0], pv(&[rat(1, 3), rat(5, 6)]));
        assert_eq!(class[1], pv(&[rat(2, 3), rat(1, 6)]));
        assert_eq!(b.conjugate(5), class[1]);
    }

    #[test]
    fn nonresonance_examples() {
        // N=4: (1/2,1/6) is non-resonant
        let b = pv(&[rat(1, 2), rat(1, 6)]);
        assert!(is_nonresonant(&collinear(4), &b).unwrap());
        // beta = 0 lies on every face
        let zero = pv(&[rat(0, 1), rat(0, 1)]);
        assert!(!is_nonresonant(&collinear(4), &zero).unwrap());
        // N=6: (1/3,5/6) is resonant (-x + 4y evaluates to 3)
        let b = pv(&[rat(1, 3), rat(5, 6)]);
        assert!(!is_nonresonant(&collinear(6), &b).unwrap());
        // N=5: (1/2,1/6) becomes resonant (-x + 3y evaluates to 0)
        assert!(!is_nonresonant(&collinear(5), &pv(&[rat(1, 2), rat(1, 6)])).unwrap());
    }

    #[test]
    fn non_totally_nonresonant_tuples_are_never_algebraic() {
        // (1/2, 1/6, 2/3) on the square is non-resonant but lies on the
        // hyperplane through (1,0,1) and (0,1,1), a face of any diagonal
        // triangulation: the solutions are transcendental
        let sq = cfg3(&[[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]]);
        let beta = pv(&[rat(1, 2), rat(1, 6), rat(2, 3)]);
        assert!(is_nonresonant(&sq, &beta).unwrap());
        assert!(!is_totally_nonresonant(&sq, &beta).unwrap());
        assert!(matches!(
            is_algebraic(&sq, &beta).unwrap(),
            Verdict::Transcendental { .. }
        ));
        // on the volume-5 pentagon the analogous line is outright resonant
        // (it lies on a cone facet)
        let a6 = cfg3(&[
            [-1, -1, 1],
            [0, -1, 1],
            [1, -1, 1],
            [0, 0, 1],
            [1, 0, 1],
            [0, 1, 1],
        ]);
        let b6 = pv(&[rat(1, 2), rat(1, 5), rat(1, 2)]);
        assert!(!is_nonresonant(&a6, &b6).unwrap());
        assert_eq!(is_algebraic(&a6, &b6).unwrap(), Verdict::Resonant);
    }

    #[test]
    fn total_nonresonance() {
        let sq = cfg3(&[[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]]);
        // (1/2, 1/6, 1/3): all pair-normals non-integral
        assert!(is_totally_nonresonant(&sq, &pv(&[rat(1, 2), rat(1, 6), rat(1, 3)])).unwrap());
        // beta1 - beta2 integral hits the hyperplane through (0,0,1),(1,1,1)
        assert!(!is_totally_nonresonant(&sq, &pv(&[rat(1, 3), rat(1, 3), rat(1, 2)])).unwrap());
        // beta3 = beta1 + beta2 puts beta on the plane through (1,0,1),(0,1,1)
        assert!(!is_totally_nonresonant(&sq, &pv(&[rat(1, 2), rat(1, 6), rat(2, 3)])).unwrap());
    }

    #[test]
    fn collinear_n2_always_one_apex() {
        let a = collinear(2);
        for b in [
            pv(&[rat(1, 3), rat(1, 7)]),
            pv(&[rat(4, 5), rat(2, 3)]),
            pv(&[rat(1, 2), rat(1, 4)]),
        ] {
            assert_eq!(signature(&a, &b).unwrap(), 1);
        }
    }

    #[test]
    fn triangle_family_apex_set() {
        // beta = (r, 1/2, 1/2) with 0 < r < 1/2: apex integer parts are
        // (k,0,1) for 0 <= k <= i-1 and (l,-1,1) for -1 <= l <= i-1
        for i in [1i64, 2, 3] {
            let a = family_triangle(i);
            let beta = pv(&[rat(1, 4), rat(1, 2), rat(1, 2)]);
            let engine = ApexEngine::new(&a).unwrap();
            let (nums, den) = beta.scaled();
            let floors = engine.floors(nums, den).unwrap();
            let mut xs = engine.apex_x_from_floors(&floors);
            xs.sort_unstable();
            let mut expect: Vec<Vec<i64>> = (0..i).map(|k| vec![k, 0, 1]).collect();
            expect.extend((-1..i).map(|l| vec![l, -1, 1]));
            expect.sort_unstable();
            assert_eq!(xs, expect);
            assert_eq!(xs.len() as i64, 2 * i + 1);
        }
    }

    #[test]
    fn apex_matches_brute_force() {
        let configs = [a2(), family_triangle(2), collinear(5).clone()];
        let betas = [
            vec![rat(1, 3), rat(2, 3), rat(1, 2)],
            vec![rat(1, 5), rat(1, 2), rat(1, 2)],
            vec![rat(1, 7), rat(3, 7), rat(2, 7)],
        ];
        for a in &configs {
            let engine = ApexEngine::new(a).unwrap();
            for b in &betas {
                let beta = pv(&b[..a.dim()]);
                let (nums, den) = beta.scaled();
                let Some(floors) = engine.floors(nums, den) else {
                    continue;
                };
                let mut fast = engine.apex_x_from_floors(&floors);
                fast.sort_unstable();
                assert_eq!(fast, engine.apex_x_brute_force(nums, den));
            }
        }
    }

    #[test]
    fn algebraic_verdicts() {
        // unit square with (1/2, 5/6, 2/3) is algebraic (both conjugates
        // carry two apex points)
        let sq = cfg3(&[[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]]);
        let v = is_algebraic(&sq, &pv(&[rat(1, 2), rat(5, 6), rat(2, 3)])).unwrap();
        assert!(v.is_algebraic());
        // hexagon with one interior point: +-(1/3,1/3,1/2) is algebraic
        let a9 = cfg3(&[
            [0, -1, 1],
            [1, -1, 1],
            [-1, 0, 1],
            [0, 0, 1],
            [1, 0, 1],
            [-1, 1, 1],
            [0, 1, 1],
        ]);
        let v = is_algebraic(&a9, &pv(&[rat(1, 3), rat(1, 3), rat(1, 2)])).unwrap();
        assert!(v.is_algebraic());
        // and (1/2,1/3,1/2) is not
        let v = is_algebraic(&a9, &pv(&[rat(1, 2), rat(1, 3), rat(1, 2)])).unwrap();
        assert!(!v.is_algebraic());
        // pyramids are rejected
        let pyr = cfg3(&[[0, 0, 1], [1, 0, 1], [2, 0, 1], [0, 1, 1]]);
        assert_eq!(
            is_algebraic(&pyr, &pv(&[rat(1, 2), rat(1, 3), rat(1, 5)])),
            Err(HypergeoError::PyramidInput)
        );
    }

    #[test]
    fn wide_trapezoids_reject_the_ladder_tuple() {
        // the tuple surviving the trapezoid ladder dies on both wider
        // trapezoids: resonant on (3,2), signature deficit on (4,1)
        let trapezoid = |p: i64, q: i64| {
            let mut pts: Vec<Vec<i64>> = (0..=p).map(|k| vec![k, 0, 1]).collect();
            pts.extend((0..=q).map(|k| vec![k, 1, 1]));
            PointConfig::new(3, pts).unwrap()
        };
        let beta = pv(&[rat(1, 6), rat(5, 6), rat(2, 3)]);
        // -x - y + 3z evaluates to 1, and -x - 3y + 4z to 0
        assert_eq!(is_algebraic(&trapezoid(3, 2), &beta).unwrap(), Verdict::Resonant);
        assert_eq!(is_algebraic(&trapezoid(4, 1), &beta).unwrap(), Verdict::Resonant);
        // while on the narrower trapezoids the same class is algebraic
        for (p, q) in [(2i64, 2i64), (3, 1)] {
            assert!(is_algebraic(&trapezoid(p, q), &beta).unwrap().is_algebraic());
        }
    }

    #[test]
    fn sigma_bounded_by_volume() {
        let a = a2();
        let engine = ApexEngine::new(&a).unwrap();
        for den in 2..12i64 {
            for n0 in 0..den {
                for n1 in 0..den {
                    for n2 in 0..den {
                        if let Some(s) = engine.signature_scaled(&[n0, n1, n2], den) {
                            assert!(s as i64 <= engine.volume());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn family_canonicalization() {
        // (t, t + 1/2, 1/2) and its shifted/reflected presentations agree
        let f1 = FamilyPattern::new(
            &[rat(0, 1), rat(1, 2), rat(1, 2)],
            &[1, 1, 0],
        )
        .unwrap();
        let f2 = FamilyPattern::new(
            &[rat(1, 3), rat(5, 6), rat(1, 2)],
            &[-1, -1, 0],
        )
        .unwrap();
        assert_eq!(f1, f2);
        assert!(FamilyPattern::new(&[rat(0, 1)], &[0]).is_err());
    }

    #[test]
    fn collinear_families() {
        // (t, 0) is algebraic for every N >= 2
        for n in 2..=8 {
            let f = FamilyPattern::new(&[rat(0, 1), rat(0, 1)], &[1, 0]).unwrap();
            let v = verify_family(&collinear(n), &f).unwrap();
            assert!(v.algebraic, "family (t,0) must pass for N={n}");
            assert_eq!(v.excluded, vec![rat(0, 1)]);
        }
        // (1/2, t) is algebraic for N = 3 but fails for N = 4
        let f = FamilyPattern::new(&[rat(1, 2), rat(0, 1)], &[0, 1]).unwrap();
        assert!(verify_family(&collinear(3), &f).unwrap().algebraic);
        assert!(!verify_family(&collinear(4), &f).unwrap().algebraic);
    }

    #[test]
    fn triangle_family_parameter_line() {
        // (t, 1/2, 1/2) passes for the triangle family with sigma = 2i+1
        for i in 1..=4i64 {
            let a = family_triangle(i);
            let f = FamilyPattern::new(
                &[rat(0, 1), rat(1, 2), rat(1, 2)],
                &[1, 0, 0],
            )
            .unwrap();
            let v = verify_family(&a, &f).unwrap();
            assert!(v.algebraic);
            assert_eq!(v.excluded, vec![rat(0, 1), rat(1, 2)]);
            for line in &v.lines {
                for arc in &line.arcs {
                    assert_eq!(arc.sigma as i64, 2 * i + 1);
                }
            }
        }
    }

    #[test]
    fn conjugate_line_orbit() {
        // (1/3, 2/3, t): the conjugate line has base (2/3, 1/3, 0)
        let f = FamilyPattern::new(&[rat(1, 3), rat(2, 3), rat(0, 1)], &[0, 0, 1]).unwrap();
        let orbit = f.orbit();
        assert_eq!(orbit.len(), 2);
        let v = verify_family(&a2(), &f).unwrap();
        assert!(v.algebraic);
        assert_eq!(v.lines.len(), 2);
        // class membership catches conjugates on the other line
        assert!(f.contains_class(&pv(&[rat(2, 3), rat(1, 3), rat(1, 4)])));
        assert!(!f.contains_class(&pv(&[rat(1, 3), rat(1, 3), rat(1, 4)])));
    }
}
