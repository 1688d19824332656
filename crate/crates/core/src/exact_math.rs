//! Exact integer and rational linear algebra used by every other module.
//!
//! All arithmetic here is exact: rationals are kept reduced eagerly so that
//! comparisons, floors and fractional parts are trivially correct, and the
//! integer matrices carry arbitrary-precision entries.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Euclid, One, Signed, Zero};

/// Exact rational number, always reduced, denominator positive.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactMathError {
    ZeroVector,
    NonPrimitiveVector,
    DimensionMismatch { expected: usize, got: usize },
    ParseError(String),
}

impl fmt::Display for ExactMathError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactMathError::ZeroVector => write!(f, "zero vector not allowed"),
            ExactMathError::NonPrimitiveVector => {
                write!(f, "vector entries must have gcd 1")
            }
            ExactMathError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            ExactMathError::ParseError(s) => write!(f, "cannot parse rational: {s}"),
        }
    }
}

impl core::error::Error for ExactMathError {}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parse "p/q" or "p". Lossless round trip with `Display`.
pub fn parse_rational(s: &str) -> Result<Rational, ExactMathError> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| ExactMathError::ParseError(String::from(s)))
}

/// Exact floor of a rational, as a BigInt.
pub fn floor_big(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

/// Exact floor, for values known to fit in i64.
pub fn floor_i64(q: &Rational) -> i64 {
    i64::try_from(&floor_big(q)).expect("floor exceeds i64 range")
}

/// Fractional part, in [0, 1).
pub fn frac(q: &Rational) -> Rational {
    q - Rational::from_integer(floor_big(q))
}

/// Exact floor of an integer linear form evaluated at a rational vector.
pub fn floor_eval(form: &[i64], beta: &[Rational]) -> Result<i64, ExactMathError> {
    if form.len() != beta.len() {
        return Err(ExactMathError::DimensionMismatch {
            expected: form.len(),
            got: beta.len(),
        });
    }
    let mut acc = Rational::zero();
    for (c, b) in form.iter().zip(beta) {
        acc += Rational::from_integer(BigInt::from(*c)) * b;
    }
    Ok(floor_i64(&acc))
}

/// gcd of a slice of i64, nonnegative.
pub fn gcd_slice(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Divide by the gcd of the entries. Default sign convention: first nonzero
/// entry positive. An orientation vector may be supplied instead; the result
/// is then oriented so that its dot product with the orientation is >= 0.
pub fn primitive_part(v: &[i64], orientation: Option<&[i64]>) -> Result<Vec<i64>, ExactMathError> {
    let g = gcd_slice(v);
    if g == 0 {
        return Err(ExactMathError::ZeroVector);
    }
    let mut out: Vec<i64> = v.iter().map(|x| x / g).collect();
    let flip = match orientation {
        Some(o) => {
            let dot: i64 = out.iter().zip(o).map(|(a, b)| a * b).sum();
            dot < 0
        }
        None => {
            let first = out.iter().find(|&&x| x != 0).copied().unwrap_or(0);
            first < 0
        }
    };
    if flip {
        for x in &mut out {
            *x = -*x;
        }
    }
    Ok(out)
}

/// Dense integer matrix with arbitrary-precision entries, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(x);
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum::<BigInt>()
            })
            .collect()
    }

    /// Exact determinant by cofactor expansion; matrices here are tiny (r <= 3).
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        match self.rows {
            0 => BigInt::one(),
            1 => self[(0, 0)].clone(),
            n => {
                let mut acc = BigInt::zero();
                for j in 0..n {
                    let mut minor = IntMatrix::zero(n - 1, n - 1);
                    for i in 1..n {
                        let mut jj = 0;
                        for k in 0..n {
                            if k == j {
                                continue;
                            }
                            minor[(i - 1, jj)] = self[(i, k)].clone();
                            jj += 1;
                        }
                    }
                    let term = &self[(0, j)] * minor.det();
                    if j % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                acc
            }
        }
    }
}

impl core::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

/// Complete a primitive integer vector to a basis of Z^r.
///
/// Returns an r x r matrix with determinant +-1 whose last row is `v`.
/// Built from an extended-gcd cascade: elementary row operations reduce `v`
/// to the last unit vector while the inverse operations accumulate on an
/// identity matrix, so `C * e_r = v` with `C` unimodular; the result is `C^T`
/// transposed back into row convention.
pub fn extend_to_basis(v: &[i64]) -> Result<IntMatrix, ExactMathError> {
    let r = v.len();
    if r == 0 || v.iter().all(|&x| x == 0) {
        return Err(ExactMathError::ZeroVector);
    }
    if gcd_slice(v) != 1 {
        return Err(ExactMathError::NonPrimitiveVector);
    }

    let mut w: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
    // Invariant: c * w == v, with c unimodular.
    let mut c = IntMatrix::identity(r);

    // Reduce entries 0..r-1 into entry r-1 by repeated Euclid steps.
    for i in 0..r - 1 {
        // Make w[i] zero using w[r-1] (extended gcd of the pair).
        loop {
            if w[i].is_zero() {
                break;
            }
            if w[r - 1].is_zero() {
                // swap rows i and r-1 of w; columns i and r-1 of c
                w.swap(i, r - 1);
                for row in 0..r {
                    let a = c[(row, i)].clone();
                    let b = c[(row, r - 1)].clone();
                    c[(row, i)] = b;
                    c[(row, r - 1)] = a;
                }
                continue;
            }
            let q = w[i].div_euclid(&w[r - 1]);
            // w[i] -= q * w[r-1]  (row op E); inverse column op on c:
            // col[r-1] += q * col[i]
            let delta = &q * &w[r - 1];
            w[i] -= delta;
            for row in 0..r {
                let add = &q * &c[(row, i)];
                c[(row, r - 1)] += add;
            }
            if !w[i].is_zero() {
                w.swap(i, r - 1);
                for row in 0..r {
                    let a = c[(row, i)].clone();
                    let b = c[(row, r - 1)].clone();
                    c[(row, i)] = b;
                    c[(row, r - 1)] = a;
                }
            }
        }
    }
    // Now w = (0, ..., 0, g) with g = +-1 since v is primitive.
    if w[r - 1].is_negative() {
        w[r - 1] = -w[r - 1].clone();
        for row in 0..r {
            c[(row, r - 1)] = -c[(row, r - 1)].clone();
        }
    }
    debug_assert!(w[r - 1].is_one());

    // c * e_r = v, so v is the last column of c; transpose to row convention.
    let mut m = IntMatrix::zero(r, r);
    for i in 0..r {
        for j in 0..r {
            m[(i, j)] = c[(j, i)].clone();
        }
    }
    debug_assert_eq!(m.det().abs(), BigInt::one());
    Ok(m)
}
