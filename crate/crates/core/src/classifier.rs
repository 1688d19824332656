//! The end-to-end classification pipeline: exhaustive bounded-denominator
//! parameter search with conjugacy deduplication and family detection,
//! machine-derived interlacing cells, subpolygon reduction certificates,
//! and the decision procedure for whether a configuration admits algebraic
//! parameters.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::config::{are_isomorphic, AffineUnimodularMap, LatticePolygon, PointConfig};
use crate::exact_math::Rational;
use crate::hypergeo::{
    verify_family_with_engine, ApexEngine, FamilyPattern, FamilyVerdict, HypergeoError,
    ParamVector,
};
use crate::named;
use crate::polytope::{extend_triangulation, unimodular_triangulation, Triangulation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifierError {
    PyramidInput,
    NotNormal,
    BadDmax(i64),
    Hypergeo(HypergeoError),
}

impl fmt::Display for ClassifierError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifierError::PyramidInput => write!(f, "pyramidal configuration rejected"),
            ClassifierError::NotNormal => write!(f, "configuration must be normal"),
            ClassifierError::BadDmax(d) => write!(f, "denominator bound must be >= 2, got {d}"),
            ClassifierError::Hypergeo(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ClassifierError {}

impl From<HypergeoError> for ClassifierError {
    fn from(e: HypergeoError) -> Self {
        ClassifierError::Hypergeo(e)
    }
}

// ---------------------------------------------------------------------------
// exact Fourier-Motzkin elimination (used for cell sampling)
// ---------------------------------------------------------------------------

/// coeffs . x + c0 >= 0 (or > 0 when strict).
#[derive(Debug, Clone)]
struct Ineq {
    coeffs: Vec<Rational>,
    c0: Rational,
    strict: bool,
}

fn eliminate_var(system: &[Ineq], var: usize) -> Option<Vec<Ineq>> {
    let mut lower: Vec<&Ineq> = Vec::new(); // coeff > 0
    let mut upper: Vec<&Ineq> = Vec::new(); // coeff < 0
    let mut rest: Vec<Ineq> = Vec::new();
    for iq in system {
        let c = &iq.coeffs[var];
        if c.is_zero() {
            rest.push(iq.clone());
        } else if c.is_positive() {
            lower.push(iq);
        } else {
            upper.push(iq);
        }
    }
    for lo in &lower {
        for hi in &upper {
            // scale so the var cancels: (-b) * lo + a * hi with a > 0 > b
            let a = lo.coeffs[var].clone();
            let b = hi.coeffs[var].clone();
            let mut coeffs = Vec::with_capacity(lo.coeffs.len());
            for (lc, hc) in lo.coeffs.iter().zip(&hi.coeffs) {
                coeffs.push(lc * (-&b) + hc * &a);
            }
            let c0 = &lo.c0 * (-&b) + &hi.c0 * &a;
            let strict = lo.strict || hi.strict;
            if coeffs.iter().all(Zero::is_zero) {
                if c0.is_negative() || (c0.is_zero() && strict) {
                    return None; // contradiction
                }
            } else {
                rest.push(Ineq { coeffs, c0, strict });
            }
        }
    }
    Some(rest)
}

/// Bounds for one variable after substituting known values; returns a
/// strictly interior sample, or None when infeasible.
fn solve_var(system: &[Ineq], var: usize, values: &[Rational]) -> Option<Rational> {
    let mut lo: Option<(Rational, bool)> = None;
    let mut hi: Option<(Rational, bool)> = None;
    for iq in system {
        let mut acc = iq.c0.clone();
        for (j, v) in values.iter().enumerate() {
            acc += &iq.coeffs[j] * v;
        }
        let a = &iq.coeffs[var];
        if a.is_zero() {
            if acc.is_negative() || (acc.is_zero() && iq.strict) {
                return None;
            }
            continue;
        }
        let bound = -acc / a;
        if a.is_positive() {
            // x >= bound (or >)
            if lo
                .as_ref()
                .is_none_or(|(b, s)| bound > *b || (bound == *b && (iq.strict && !s)))
            {
                lo = Some((bound, iq.strict));
            }
        } else if hi
            .as_ref()
            .is_none_or(|(b, s)| bound < *b || (bound == *b && (iq.strict && !s)))
        {
            hi = Some((bound, iq.strict));
        }
    }
    let one = Rational::one();
    match (lo, hi) {
        (None, None) => Some(Rational::zero()),
        (Some((l, _)), None) => Some(l + one),
        (None, Some((h, _))) => Some(h - one),
        (Some((l, ls)), Some((h, hs))) => {
            if l < h {
                Some((&l + &h) / (&one + &one))
            } else if l == h && !ls && !hs {
                Some(l)
            } else {
                None
            }
        }
    }
}

/// A strictly interior rational sample of the system, or None if infeasible.
fn fm_sample(system: Vec<Ineq>, nvars: usize) -> Option<Vec<Rational>> {
    let mut levels: Vec<Vec<Ineq>> = vec![system];
    for var in (1..nvars).rev() {
        let next = eliminate_var(levels.last().unwrap(), var)?;
        levels.push(next);
    }
    // levels[k] retains variables 0..nvars-k; solve bottom-up
    let mut values: Vec<Rational> = Vec::with_capacity(nvars);
    for var in 0..nvars {
        let level = &levels[nvars - 1 - var];
        let v = solve_var(level, var, &values)?;
        values.push(v);
    }
    Some(values)
}

fn fm_feasible(system: Vec<Ineq>, nvars: usize) -> bool {
    fm_sample(system, nvars).is_some()
}

// ---------------------------------------------------------------------------
// interlacing cells
// ---------------------------------------------------------------------------

/// One nonempty floor-tuple cell: the floors of the facet forms, a sample
/// parameter vector strictly inside the cell, and its signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterlacingCell {
    pub floors: Vec<i64>,
    pub sample: ParamVector,
    pub sigma: usize,
}

fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Base system: 0 <= beta_i < 1.
fn box_system(r: usize) -> Vec<Ineq> {
    let mut out = Vec::new();
    for i in 0..r {
        let mut coeffs = vec![Rational::zero(); r];
        coeffs[i] = Rational::one();
        out.push(Ineq {
            coeffs,
            c0: Rational::zero(),
            strict: false,
        });
        let mut neg = vec![Rational::zero(); r];
        neg[i] = -Rational::one();
        out.push(Ineq {
            coeffs: neg,
            c0: Rational::one(),
            strict: true,
        });
    }
    out
}

fn floor_band(form: &[i64], floor: i64) -> [Ineq; 2] {
    let coeffs: Vec<Rational> = form.iter().map(|&c| rational(c)).collect();
    let neg: Vec<Rational> = form.iter().map(|&c| rational(-c)).collect();
    [
        // m(beta) - floor > 0
        Ineq {
            coeffs,
            c0: rational(-floor),
            strict: true,
        },
        // floor + 1 - m(beta) > 0
        Ineq {
            coeffs: neg,
            c0: rational(floor + 1),
            strict: true,
        },
    ]
}

/// Enumerate all achievable floor tuples of the facet forms over beta in
/// [0,1)^r by exact linear feasibility, producing one strictly interior
/// sample and its signature per nonempty cell.
pub fn interlacing_cells(a: &PointConfig) -> Result<Vec<InterlacingCell>, ClassifierError> {
    let engine = ApexEngine::new(a)?;
    Ok(interlacing_cells_with_engine(&engine))
}

pub fn interlacing_cells_with_engine(engine: &ApexEngine) -> Vec<InterlacingCell> {
    let r = engine.dim();
    let forms = engine.forms().to_vec();
    let ranges: Vec<(i64, i64)> = forms
        .iter()
        .map(|m| {
            let neg: i64 = m.iter().filter(|&&c| c < 0).sum();
            let pos: i64 = m.iter().filter(|&&c| c > 0).sum();
            (neg - 1, pos)
        })
        .collect();
    let mut cells = Vec::new();
    let mut floors: Vec<i64> = Vec::new();
    rec_cells(engine, &forms, &ranges, r, &mut floors, &mut cells);
    cells
}

fn rec_cells(
    engine: &ApexEngine,
    forms: &[Vec<i64>],
    ranges: &[(i64, i64)],
    r: usize,
    floors: &mut Vec<i64>,
    out: &mut Vec<InterlacingCell>,
) {
    let depth = floors.len();
    if depth == forms.len() {
        let mut system = box_system(r);
        for (m, &f) in forms.iter().zip(floors.iter()) {
            system.extend(floor_band(m, f));
        }
        if let Some(sample) = fm_sample(system, r) {
            let beta = ParamVector::new(&sample).expect("bounded sample");
            let (nums, den) = beta.scaled();
            let got = engine.floors(nums, den).expect("interior sample");
            debug_assert_eq!(&got, floors);
            let sigma = engine.signature_from_floors(&got);
            out.push(InterlacingCell {
                floors: floors.clone(),
                sample: beta,
                sigma,
            });
        }
        return;
    }
    for f in ranges[depth].0..=ranges[depth].1 {
        floors.push(f);
        // prefix feasibility prune
        let mut system = box_system(r);
        for (m, &fl) in forms.iter().zip(floors.iter()) {
            system.extend(floor_band(m, fl));
        }
        if fm_feasible(system, r) {
            rec_cells(engine, forms, ranges, r, floors, out);
        }
        floors.pop();
    }
}

// ---------------------------------------------------------------------------
// bounded-denominator search
// ---------------------------------------------------------------------------

/// One algebraic conjugacy class found by the grid search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicClass {
    pub rep: ParamVector,
    /// signature per conjugate k (all equal to the volume)
    pub signatures: Vec<(i64, usize)>,
}

/// Scan of one exact denominator.
#[derive(Debug, Clone, Default)]
pub struct DenomScan {
    pub algebraic: Vec<AlgebraicClass>,
    pub resonant_classes: u64,
    pub transcendental_classes: u64,
    pub classes: u64,
}

/// Scan all parameter vectors with exact common denominator `den`:
/// resonance filter, conjugacy-class deduplication, then the full
/// all-conjugates signature test. Pure and independent per denominator.
pub fn scan_denominator(engine: &ApexEngine, den: i64) -> DenomScan {
    let r = engine.dim();
    let vol = engine.volume();
    let units: Vec<i64> = if den == 1 {
        vec![1]
    } else {
        (1..den).filter(|k| k.gcd(&den) == 1).collect()
    };
    let phi = units.len() as u64;
    let mut scan = DenomScan::default();
    let mut resonant_tuples: u64 = 0;

    let mut nums = vec![0i64; r];
    'outer: loop {
        let g = nums.iter().fold(den, |g, &n| g.gcd(&n));
        if g == 1 || den == 1 {
            match engine.floors(&nums, den) {
                None => resonant_tuples += 1,
                Some(floors) => {
                    if is_class_rep(&nums, den, &units) {
                        scan.classes += 1;
                        let sigma = engine.signature_from_floors(&floors);
                        if sigma as i64 != vol {
                            scan.transcendental_classes += 1;
                        } else {
                            let mut sigs = vec![(1i64, sigma)];
                            let mut ok = true;
                            for &k in units.iter().skip(1) {
                                let knums: Vec<i64> =
                                    nums.iter().map(|&n| mul_mod(k, n, den)).collect();
                                match engine.signature_scaled(&knums, den) {
                                    Some(s) if s as i64 == vol => sigs.push((k, s)),
                                    _ => {
                                        ok = false;
                                        break;
                                    }
                                }
                            }
                            if ok {
                                scan.algebraic.push(AlgebraicClass {
                                    rep: ParamVector::from_scaled(&nums, den),
                                    signatures: sigs,
                                });
                            } else {
                                scan.transcendental_classes += 1;
                            }
                        }
                    }
                }
            }
        }
        // odometer over [0, den)^r
        let mut i = 0;
        loop {
            if i == r {
                break 'outer;
            }
            nums[i] += 1;
            if nums[i] < den {
                break;
            }
            nums[i] = 0;
            i += 1;
        }
    }
    // conjugation acts freely on exact-denominator tuples (orbit size phi)
    debug_assert_eq!(resonant_tuples % phi, 0);
    scan.classes += resonant_tuples / phi;
    scan.resonant_classes = resonant_tuples / phi;
    scan
}

fn mul_mod(k: i64, n: i64, den: i64) -> i64 {
    ((k as i128 * n as i128).rem_euclid(den as i128)) as i64
}

/// Is `nums` the lexicographically least tuple of its conjugacy orbit?
fn is_class_rep(nums: &[i64], den: i64, units: &[i64]) -> bool {
    for &k in units.iter().skip(1) {
        for (i, &n) in nums.iter().enumerate() {
            let kn = mul_mod(k, n, den);
            match kn.cmp(&nums[i]) {
                core::cmp::Ordering::Less => return false,
                core::cmp::Ordering::Greater => break,
                core::cmp::Ordering::Equal => {}
            }
        }
    }
    true
}

/// Report of a bounded-denominator search over one configuration.
#[derive(Debug, Clone)]
pub struct SearchReport {
    pub dmax: i64,
    pub volume: i64,
    /// Verified one-parameter families (empty when detection is skipped).
    pub families: Vec<FamilyVerdict>,
    /// Algebraic classes not covered by any verified family.
    pub isolated: Vec<AlgebraicClass>,
    pub resonant_classes: u64,
    pub transcendental_classes: u64,
    pub classes_checked: u64,
    /// True when every non-resonant class in the grid was algebraic.
    pub all_nonresonant_algebraic: bool,
}

impl SearchReport {
    pub fn has_algebraic(&self) -> bool {
        !self.families.is_empty() || !self.isolated.is_empty()
    }
}

fn check_searchable(a: &PointConfig, dmax: i64) -> Result<ApexEngine, ClassifierError> {
    if dmax < 2 {
        return Err(ClassifierError::BadDmax(dmax));
    }
    if !a.is_normal() {
        return Err(ClassifierError::NotNormal);
    }
    if a.is_pyramid() {
        return Err(ClassifierError::PyramidInput);
    }
    Ok(ApexEngine::new(a)?)
}

/// Exhaustive search over all parameter vectors with common denominator at
/// most `dmax`, deduplicated by conjugacy class, plus verified-family
/// detection when `detect_families` is set.
pub fn search_betas(
    a: &PointConfig,
    dmax: i64,
    detect_families: bool,
) -> Result<SearchReport, ClassifierError> {
    let engine = check_searchable(a, dmax)?;
    let scans: Vec<DenomScan> = (1..=dmax).map(|d| scan_denominator(&engine, d)).collect();
    Ok(assemble_report(&engine, dmax, scans, detect_families))
}

/// Build the engine for external (e.g. parallel) drivers.
pub fn search_engine(a: &PointConfig, dmax: i64) -> Result<ApexEngine, ClassifierError> {
    check_searchable(a, dmax)
}

/// Merge per-denominator scans into a report (the scans may have been
/// computed in parallel by the caller).
pub fn assemble_report(
    engine: &ApexEngine,
    dmax: i64,
    scans: Vec<DenomScan>,
    detect_families: bool,
) -> SearchReport {
    let mut algebraic: Vec<AlgebraicClass> = Vec::new();
    let mut resonant = 0u64;
    let mut transcendental = 0u64;
    let mut classes = 0u64;
    for s in scans {
        algebraic.extend(s.algebraic);
        resonant += s.resonant_classes;
        transcendental += s.transcendental_classes;
        classes += s.classes;
    }
    algebraic.sort_by(|a, b| a.rep.cmp(&b.rep));

    let families = if detect_families && engine.volume() >= 2 {
        detect_families_from_grid(engine, &algebraic, dmax)
    } else {
        Vec::new()
    };

    let isolated: Vec<AlgebraicClass> = algebraic
        .into_iter()
        .filter(|c| !families.iter().any(|f| f.pattern.contains_class(&c.rep)))
        .collect();

    SearchReport {
        dmax,
        volume: engine.volume(),
        families,
        isolated,
        resonant_classes: resonant,
        transcendental_classes: transcendental,
        classes_checked: classes,
        all_nonresonant_algebraic: transcendental == 0,
    }
}

/// All primitive directions with entries in [-2,2], at least one entry of
/// absolute value 1, first nonzero entry positive.
fn family_directions(r: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut d = vec![-2i64; r];
    'outer: loop {
        let first = d.iter().find(|&&x| x != 0).copied().unwrap_or(0);
        if first > 0 && d.iter().any(|&x| x.abs() == 1) && crate::exact_math::gcd_slice(&d) == 1 {
            out.push(d.clone());
        }
        let mut i = 0;
        loop {
            if i == r {
                break 'outer;
            }
            d[i] += 1;
            if d[i] <= 2 {
                break;
            }
            d[i] = -2;
            i += 1;
        }
    }
    out
}

/// Candidate family lines are generated through every algebraic class
/// representative in every admissible direction; cheap membership lookups
/// against the grid results discard almost all of them, and survivors are
/// verified exactly arc by arc.
fn detect_families_from_grid(
    engine: &ApexEngine,
    algebraic: &[AlgebraicClass],
    dmax: i64,
) -> Vec<FamilyVerdict> {
    let r = engine.dim();
    let mut known: BTreeSet<ParamVector> = BTreeSet::new();
    for c in algebraic {
        for k in c.rep.coprime_residues() {
            known.insert(c.rep.conjugate(k));
        }
    }
    let dirs = family_directions(r);
    let mut seen: BTreeSet<FamilyPattern> = BTreeSet::new();
    let mut verified: Vec<FamilyVerdict> = Vec::new();
    for class in algebraic {
        let coords = class.rep.coords();
        for dir in &dirs {
            let Ok(pattern) = FamilyPattern::new(&coords, dir) else {
                continue;
            };
            let key = pattern.orbit_min();
            if !seen.insert(key.clone()) {
                continue;
            }
            if !prefilter_line(engine, &key, dmax, &known) {
                continue;
            }
            let verdict = verify_family_with_engine(engine, &key);
            if verdict.algebraic {
                verified.push(verdict);
            }
        }
    }
    verified.sort_by(|a, b| a.pattern.cmp(&b.pattern));
    verified
}

/// Necessary condition via grid lookups: every small-denominator member of
/// the line must be resonant or known-algebraic, and at least three members
/// must be known-algebraic.
fn prefilter_line(
    engine: &ApexEngine,
    pattern: &FamilyPattern,
    dmax: i64,
    known: &BTreeSet<ParamVector>,
) -> bool {
    let mut hits = 0usize;
    for q in 1..=12i64 {
        for p in 0..q {
            if p.gcd(&q) != 1 {
                continue;
            }
            let member = pattern.member(&Rational::new(BigInt::from(p), BigInt::from(q)));
            if member.denominator() > dmax {
                continue;
            }
            let (nums, den) = member.scaled();
            if engine.floors(nums, den).is_none() {
                continue; // resonant member: excluded from the family
            }
            if known.contains(&member) {
                hits += 1;
            } else {
                return false; // non-resonant member known transcendental
            }
        }
    }
    hits >= 3
}

// ---------------------------------------------------------------------------
// subpolygon reduction
// ---------------------------------------------------------------------------

/// A library of polygons known to admit no algebraic parameters.
#[derive(Debug, Clone, Default)]
pub struct NoGoLibrary {
    entries: Vec<(String, LatticePolygon)>,
}

impl NoGoLibrary {
    pub fn new() -> Self {
        NoGoLibrary {
            entries: Vec::new(),
        }
    }

    /// The built-in entries: the exceptional triangle and the two
    /// one-interior-point configurations with no algebraic parameters.
    pub fn standard() -> Self {
        let mut lib = NoGoLibrary::new();
        lib.push("A_1", &named::a1().polygon().expect("polygon"));
        lib.push("A_6", &named::a6().polygon().expect("polygon"));
        lib.push("A_8", &named::a8().polygon().expect("polygon"));
        lib
    }

    pub fn push(&mut self, name: &str, polygon: &LatticePolygon) {
        self.entries
            .push((String::from(name), polygon.canonical_form()));
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn lookup(&self, canonical: &LatticePolygon) -> Option<(&str, &LatticePolygon)> {
        self.entries
            .iter()
            .find(|(_, p)| p.points() == canonical.points())
            .map(|(n, p)| (n.as_str(), p))
    }
}

/// Certificate that a configuration reduces to a no-go subconfiguration:
/// the subpolygon, the isomorphism onto the library member, and a
/// unimodular triangulation of the subpolygon extended to the whole
/// polygon (which is what makes the reduction sound).
#[derive(Debug, Clone)]
pub struct ReductionCertificate {
    pub library_name: String,
    /// indices into the configuration's point list
    pub sub_points: Vec<usize>,
    pub witness: AffineUnimodularMap,
    pub sub_triangulation: Triangulation,
    pub extended_triangulation: Triangulation,
}

/// Search the convex subpolygons of P(A), smallest point count first, for
/// one isomorphic to a library member.
pub fn find_reducing_subconfig(
    a: &PointConfig,
    library: &NoGoLibrary,
) -> Result<Option<ReductionCertificate>, ClassifierError> {
    if !a.is_normal() {
        return Err(ClassifierError::NotNormal);
    }
    let poly = a.polygon().map_err(HypergeoError::from)?;
    let pts = poly.points();
    let n = pts.len();
    if n > 24 || library.is_empty() {
        return Ok(None); // subset enumeration is for census-sized inputs
    }
    let mut seen: BTreeSet<Vec<[i64; 2]>> = BTreeSet::new();
    let mut candidates: Vec<LatticePolygon> = Vec::new();
    for mask in 1u32..(1u32 << n) {
        if (mask.count_ones() as usize) < 3 {
            continue;
        }
        let subset: Vec<[i64; 2]> = (0..n)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| pts[i])
            .collect();
        let Ok(sub) = LatticePolygon::from_points(&subset) else {
            continue;
        };
        // keep only hulls spanned by their own vertex sets, and only
        // proper subpolygons (a self-reduction certifies nothing)
        if sub.vertices().len() != subset.len() || sub.points().len() == n {
            continue;
        }
        if seen.insert(sub.points().to_vec()) {
            candidates.push(sub);
        }
    }
    candidates.sort_by_key(|p| (p.points().len(), p.volume()));
    for sub in candidates {
        let canonical = sub.canonical_form();
        if let Some((name, target)) = library.lookup(&canonical) {
            let witness = are_isomorphic(&sub, target).expect("canonical forms match");
            let sub_tri = unimodular_triangulation(&sub);
            let extended = extend_triangulation(&sub, &sub_tri, &poly)
                .expect("subpolygon triangulations extend");
            let shadow = a.shadow();
            let sub_points: Vec<usize> = sub
                .points()
                .iter()
                .map(|p| shadow.iter().position(|q| q == p).expect("subset of A"))
                .collect();
            return Ok(Some(ReductionCertificate {
                library_name: String::from(name),
                sub_points,
                witness,
                sub_triangulation: sub_tri,
                extended_triangulation: extended,
            }));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// classification
// ---------------------------------------------------------------------------

/// Outcome of the classification of one configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Pyramidal configurations are excluded (their functions are smaller
    /// hypergeometric functions times a monomial).
    Pyramid,
    NoAlgebraicBeta,
    AlgebraicViaFamily(String),
    AlgebraicIsolated(Vec<ParamVector>),
}

/// How an empty result was certified.
#[derive(Debug, Clone)]
pub enum EmptinessEvidence {
    /// No floor-tuple cell attains the volume, so no parameter of any
    /// denominator can be algebraic.
    CellCensus { cells: usize, max_sigma: usize },
    /// A subpolygon reduces the question to a known-empty configuration.
    Reduction(ReductionCertificate),
    /// The exhaustive grid up to dmax found nothing (bound-conditional).
    BoundedSearch { dmax: i64 },
}

#[derive(Debug, Clone)]
pub struct ClassificationResult {
    pub outcome: Outcome,
    /// Named polygon this configuration is isomorphic to, when recognized.
    pub matched_name: Option<String>,
    pub polygon_type: Option<(usize, usize)>,
    pub volume: i64,
    pub report: Option<SearchReport>,
    pub emptiness: Option<EmptinessEvidence>,
}

/// Recognize a polygon among the named ones and the three families.
pub fn recognize_polygon(poly: &LatticePolygon) -> Option<String> {
    let key = poly.canonical_key();
    let (i, b) = poly.polygon_type();
    let i = i as i64;
    let b = b as i64;
    let mut candidates: Vec<(String, PointConfig)> = Vec::new();
    match (i, b) {
        (0, _) => {
            candidates.push((String::from("A_1"), named::a1()));
            for p in 1..=b - 3 {
                let q = b - 2 - p;
                if q >= 1 && p >= q {
                    candidates.push((format!("A^(1)_{{{p},{q}}}"), named::trapezoid(p, q)));
                }
            }
        }
        (_, 3) => {
            candidates.push((format!("A^(2)_{i}"), named::family_triangle(i)));
            candidates.push((String::from("A_11"), named::a11()));
        }
        (_, 4) => {
            for k in -1..=i {
                candidates.push((
                    format!("A^(3)_{{{i},{k}}}"),
                    named::family_quadrilateral(i, k),
                ));
            }
            candidates.push((String::from("A_10"), named::a10()));
        }
        (1, 5) => {
            candidates.push((String::from("A_6"), named::a6()));
            candidates.push((String::from("A_7"), named::a7()));
        }
        (1, 6) => {
            candidates.push((String::from("A_8"), named::a8()));
            candidates.push((String::from("A_9"), named::a9()));
        }
        _ => {}
    }
    for (name, cfg) in candidates {
        if let Ok(p) = cfg.polygon() {
            if p.canonical_key() == key {
                return Some(name);
            }
        }
    }
    None
}

/// Cap on the number of floor tuples worth enumerating for the cell-census
/// emptiness certificate.
const CELL_CENSUS_CAP: u64 = 300_000;

fn cell_count_estimate(engine: &ApexEngine) -> u64 {
    engine
        .forms()
        .iter()
        .map(|m| {
            let neg: i64 = m.iter().filter(|&&c| c < 0).sum();
            let pos: i64 = m.iter().filter(|&&c| c > 0).sum();
            (pos - neg + 2) as u64
        })
        .product()
}

/// Decide whether some parameter vector yields irreducible algebraic
/// solutions. `dmax` bounds the denominator grid used for searches and for
/// bound-conditional emptiness evidence.
pub fn classify(a: &PointConfig, dmax: i64) -> Result<ClassificationResult, ClassifierError> {
    classify_with_library(a, dmax, &NoGoLibrary::standard())
}

pub fn classify_with_library(
    a: &PointConfig,
    dmax: i64,
    library: &NoGoLibrary,
) -> Result<ClassificationResult, ClassifierError> {
    if dmax < 2 {
        return Err(ClassifierError::BadDmax(dmax));
    }
    if !a.is_normal() {
        return Err(ClassifierError::NotNormal);
    }
    if a.is_pyramid() || (a.dim() == 3 && a.is_collinear()) {
        return Ok(ClassificationResult {
            outcome: Outcome::Pyramid,
            matched_name: None,
            polygon_type: None,
            volume: crate::polytope::simplex_volume(a).map_err(HypergeoError::from)?,
            report: None,
            emptiness: None,
        });
    }

    // collinear configurations in Z^2: search directly (the free-parameter
    // family along the line always exists)
    if a.dim() == 2 {
        let report = search_betas(a, dmax, true)?;
        let outcome = outcome_from_report(&report);
        return Ok(ClassificationResult {
            outcome,
            matched_name: None,
            polygon_type: None,
            volume: report.volume,
            report: Some(report),
            emptiness: None,
        });
    }

    let poly = a.polygon().map_err(HypergeoError::from)?;
    let (i, b) = poly.polygon_type();
    let matched_name = recognize_polygon(&poly);
    let engine = ApexEngine::new(a)?;
    let volume = engine.volume();

    // reduction zone: one interior point with at least 7 boundary points,
    // or at least two interior points with at least 5 boundary points
    let in_zone = (i >= 1 && b >= 7) || (i >= 2 && b >= 5);
    if in_zone {
        let (emptiness, report) = certify_empty(a, &engine, dmax, library)?;
        if let Some(rep) = &report {
            if rep.has_algebraic() {
                // cannot happen for valid inputs; report the finding honestly
                let outcome = outcome_from_report(rep);
                return Ok(ClassificationResult {
                    outcome,
                    matched_name,
                    polygon_type: Some((i, b)),
                    volume,
                    report,
                    emptiness: None,
                });
            }
        }
        return Ok(ClassificationResult {
            outcome: Outcome::NoAlgebraicBeta,
            matched_name,
            polygon_type: Some((i, b)),
            volume,
            report,
            emptiness,
        });
    }

    // full bounded search with family detection
    let report = search_betas(a, dmax, true)?;
    if report.has_algebraic() {
        let outcome = outcome_from_report(&report);
        return Ok(ClassificationResult {
            outcome,
            matched_name,
            polygon_type: Some((i, b)),
            volume,
            report: Some(report),
            emptiness: None,
        });
    }
    let (emptiness, _) = certify_empty(a, &engine, dmax, library)?;
    Ok(ClassificationResult {
        outcome: Outcome::NoAlgebraicBeta,
        matched_name,
        polygon_type: Some((i, b)),
        volume,
        report: Some(report),
        emptiness,
    })
}

fn outcome_from_report(report: &SearchReport) -> Outcome {
    if let Some(f) = report.families.first() {
        Outcome::AlgebraicViaFamily(format_family(f))
    } else if !report.isolated.is_empty() {
        Outcome::AlgebraicIsolated(report.isolated.iter().map(|c| c.rep.clone()).collect())
    } else {
        Outcome::NoAlgebraicBeta
    }
}

pub fn format_family(f: &FamilyVerdict) -> String {
    format!("{} + t*{:?}", f.pattern.base(), f.pattern.dir())
}

/// Emptiness certificates in order of strength: reduction to a library
/// no-go and cell census are unconditional, the bounded search is not.
fn certify_empty(
    a: &PointConfig,
    engine: &ApexEngine,
    dmax: i64,
    library: &NoGoLibrary,
) -> Result<(Option<EmptinessEvidence>, Option<SearchReport>), ClassifierError> {
    if let Some(cert) = find_reducing_subconfig(a, library)? {
        return Ok((Some(EmptinessEvidence::Reduction(cert)), None));
    }
    if cell_count_estimate(engine) <= CELL_CENSUS_CAP {
        let cells = interlacing_cells_with_engine(engine);
        let max_sigma = cells.iter().map(|c| c.sigma).max().unwrap_or(0);
        if (max_sigma as i64) < engine.volume() {
            return Ok((
                Some(EmptinessEvidence::CellCensus {
                    cells: cells.len(),
                    max_sigma,
                }),
                None,
            ));
        }
    }
    let report = search_betas(a, dmax, false)?;
    let evidence = if report.has_algebraic() {
        None
    } else {
        Some(EmptinessEvidence::BoundedSearch { dmax })
    };
    Ok((evidence, Some(report)))
}

/// Map a parameter vector through the height-1 lift of a planar affine
/// unimodular map (used to transport search data along polygon
/// isomorphisms).
pub fn transport_param(g: &AffineUnimodularMap, beta: &ParamVector) -> ParamVector {
    let c = beta.coords();
    assert_eq!(c.len(), 3);
    let lift = |row: [i64; 2], t: i64| -> Rational {
        &c[0] * rational(row[0]) + &c[1] * rational(row[1]) + &c[2] * rational(t)
    };
    ParamVector::new(&[lift(g.lin[0], g.t[0]), lift(g.lin[1], g.t[1]), c[2].clone()])
        .expect("small denominators")
}
