//! Exact rational linear algebra.
//!
//! Everything geometric in this crate goes through [`Rat`], [`QVector`] and
//! [`QMatrix`]. There is no floating point anywhere: comparisons are exact and
//! a solve either succeeds exactly or reports why it cannot.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rat::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

/// Serializes a rational as its `p/q` string, for `#[serde(serialize_with)]`.
pub fn serialize_rat<S: Serializer>(x: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QVector(Vec<Rat>);

impl QVector {
    pub fn new(entries: Vec<Rat>) -> Self {
        QVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        QVector(vec![Rat::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rat::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        QVector(xs.iter().map(|&x| rat(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rat> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &QVector) -> Rat {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, c: &Rat) -> QVector {
        QVector(self.0.iter().map(|x| x * c).collect())
    }

    /// `self + c * other`
    pub fn axpy(&self, c: &Rat, other: &QVector) -> QVector {
        QVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + c * b)
                .collect(),
        )
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }

    /// The primitive integer vector on the same ray (denominators cleared,
    /// gcd divided out). The zero vector is returned unchanged.
    pub fn primitive(&self) -> QVector {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|x| (x * Rat::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints
            .iter()
            .filter(|x| !x.is_zero())
            .fold(BigInt::zero(), |acc, x| acc.gcd(x));
        QVector(
            ints.into_iter()
                .map(|x| Rat::from_integer(x / &g))
                .collect(),
        )
    }

    /// `Some(c)` with `self = c * other`, when the vectors are parallel and `other` is nonzero.
    pub fn ratio_to(&self, other: &QVector) -> Option<Rat> {
        let pivot = other.0.iter().position(|x| !x.is_zero())?;
        let c = &self.0[pivot] / &other.0[pivot];
        self.0
            .iter()
            .zip(&other.0)
            .all(|(a, b)| *a == &c * b)
            .then_some(c)
    }

    /// Entries as small integers, when they all are.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|x| {
                if x.is_integer() {
                    x.to_integer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }
}

impl Index<usize> for QVector {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl Add for &QVector {
    type Output = QVector;
    fn add(self, rhs: &QVector) -> QVector {
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &QVector {
    type Output = QVector;
    fn sub(self, rhs: &QVector) -> QVector {
        QVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &QVector {
    type Output = QVector;
    fn neg(self) -> QVector {
        QVector(self.0.iter().map(|a| -a).collect())
    }
}

impl FromIterator<Rat> for QVector {
    fn from_iter<I: IntoIterator<Item = Rat>>(iter: I) -> Self {
        QVector(iter.into_iter().collect())
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for QVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|x| x.to_string()))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: Vec<QVector>,
    ncols: usize,
}

impl QMatrix {
    pub fn from_rows(rows: Vec<QVector>) -> Result<Self> {
        let ncols = rows.first().map_or(0, QVector::dim);
        if let Some(bad) = rows.iter().find(|r| r.dim() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                found: bad.dim(),
            });
        }
        Ok(QMatrix { rows, ncols })
    }

    pub fn from_columns(cols: &[QVector]) -> Result<Self> {
        Self::from_rows(cols.to_vec()).map(|m| m.transpose())
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| QVector::from_ints(r)).collect())
            .expect("rectangular literal")
    }

    pub fn identity(n: usize) -> Self {
        QMatrix {
            rows: (0..n).map(|i| QVector::unit(n, i)).collect(),
            ncols: n,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &QVector {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> QVector {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix {
            rows: (0..self.ncols).map(|j| self.column(j)).collect(),
            ncols: self.rows.len(),
        }
    }

    pub fn mul_vec(&self, x: &QVector) -> QVector {
        self.rows.iter().map(|r| r.dot(x)).collect()
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        let cols: Vec<QVector> = (0..other.ncols).map(|j| other.column(j)).collect();
        QMatrix {
            rows: self
                .rows
                .iter()
                .map(|r| cols.iter().map(|c| r.dot(c)).collect())
                .collect(),
            ncols: other.ncols,
        }
    }

    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<Rat>> = self.rows.iter().map(|r| r.0.clone()).collect();
        reduce(&mut a, self.ncols).len()
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        let n = self.nrows();
        if n != self.ncols {
            return None;
        }
        let mut a: Vec<Vec<Rat>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.0.clone();
                row.extend(QVector::unit(n, i).0);
                row
            })
            .collect();
        let pivots = reduce(&mut a, n);
        if pivots.len() < n {
            return None;
        }
        Some(QMatrix {
            rows: a.into_iter().map(|r| QVector(r[n..].to_vec())).collect(),
            ncols: n,
        })
    }

    pub fn determinant(&self) -> Rat {
        assert_eq!(
            self.nrows(),
            self.ncols,
            "determinant of a non-square matrix"
        );
        let n = self.ncols;
        let mut a: Vec<Vec<Rat>> = self.rows.iter().map(|r| r.0.clone()).collect();
        let mut det = Rat::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Rat::zero();
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det *= &pivot;
            let (top, bottom) = a.split_at_mut(col + 1);
            let pivot_row = &top[col];
            for row in bottom.iter_mut().filter(|r| !r[col].is_zero()) {
                let f = &row[col] / &pivot;
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &f * p;
                }
            }
        }
        det
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.rows.iter())
    }
}

/// Reduced row echelon form over the first `ncols` columns, in place.
/// Returns the pivot columns; rows beyond `pivots.len()` are zero on those columns.
fn reduce(a: &mut [Vec<Rat>], ncols: usize) -> Vec<usize> {
    let m = a.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m {
            break;
        }
        let Some(p) = (row..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, row);
        let inv = a[row][col].recip();
        for x in &mut a[row][col..] {
            *x *= &inv;
        }
        let pivot_row = a[row].clone();
        for (r, other) in a.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (x, p) in other[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &f * p;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Ranks of a linear system `A x = b`, used to tell "no solution" from
/// "infinitely many".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    pub augmented_rank: usize,
    pub unknowns: usize,
}

impl RankReport {
    pub fn is_consistent(&self) -> bool {
        self.rank == self.augmented_rank
    }

    pub fn is_unique(&self) -> bool {
        self.is_consistent() && self.rank == self.unknowns
    }
}

fn augmented(a: &QMatrix, b: &QVector) -> Result<Vec<Vec<Rat>>> {
    if a.nrows() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.dim(),
        });
    }
    Ok(a.rows
        .iter()
        .zip(b.iter())
        .map(|(r, bi)| {
            let mut row = r.0.clone();
            row.push(bi.clone());
            row
        })
        .collect())
}

pub fn rank_report(a: &QMatrix, b: &QVector) -> Result<RankReport> {
    let mut aug = augmented(a, b)?;
    let pivots = reduce(&mut aug, a.ncols() + 1);
    let augmented_rank = pivots.len();
    let rank = pivots.iter().filter(|&&c| c < a.ncols()).count();
    Ok(RankReport {
        rank,
        augmented_rank,
        unknowns: a.ncols(),
    })
}

/// The unique solution of `A x = b`, or `None` when the system is
/// inconsistent or underdetermined (see [`rank_report`]).
pub fn solve_linear(a: &QMatrix, b: &QVector) -> Result<Option<QVector>> {
    let n = a.ncols();
    let mut aug = augmented(a, b)?;
    let pivots = reduce(&mut aug, n + 1);
    if pivots.len() != n || pivots.iter().any(|&c| c >= n) {
        return Ok(None);
    }
    Ok(Some(aug.iter().take(n).map(|r| r[n].clone()).collect()))
}

/// A basis of `{x : A x = 0}`.
pub fn null_space(a: &QMatrix) -> Vec<QVector> {
    let n = a.ncols();
    let mut rows: Vec<Vec<Rat>> = a.rows.iter().map(|r| r.0.clone()).collect();
    let pivots = reduce(&mut rows, n);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = QVector::zeros(n);
            v.0[free] = Rat::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v.0[pc] = -rows[r][free].clone();
            }
            v
        })
        .collect()
}

/// A nonzero `λ` with `Σ λ_i vs_i = 0`, normalized so its first nonzero entry
/// is `+1`; `None` when the vectors are independent.
pub fn linear_dependence(vs: &[QVector]) -> Result<Option<QVector>> {
    let first = vs
        .first()
        .ok_or(Error::Empty("linear_dependence needs vectors"))?;
    if let Some(bad) = vs.iter().find(|v| v.dim() != first.dim()) {
        return Err(Error::DimensionMismatch {
            expected: first.dim(),
            found: bad.dim(),
        });
    }
    let a = QMatrix::from_columns(vs)?;
    Ok(null_space(&a).into_iter().next().map(|v| {
        let lead = v
            .iter()
            .find(|x| !x.is_zero())
            .cloned()
            .expect("nonzero kernel vector");
        v.scale(&lead.recip())
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeCoefficients {
    pub coefficients: QVector,
    /// `strict[i]` iff coefficient `i` is strictly positive.
    pub strict: Vec<bool>,
}

impl ConeCoefficients {
    pub fn is_interior(&self) -> bool {
        self.strict.iter().all(|&s| s)
    }
}

/// Membership of `x` in the simplicial cone spanned by `generators`.
pub fn in_cone(generators: &[QVector], x: &QVector) -> Result<Option<ConeCoefficients>> {
    if generators.is_empty() {
        return Err(Error::Empty("in_cone needs generators"));
    }
    let a = QMatrix::from_columns(generators)?;
    if a.nrows() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: x.dim(),
        });
    }
    if a.rank() < generators.len() {
        return Err(Error::NotSimplicial);
    }
    let Some(c) = solve_linear(&a, x)? else {
        return Ok(None);
    };
    if c.iter().any(Signed::is_negative) {
        return Ok(None);
    }
    let strict = c.iter().map(Signed::is_positive).collect();
    Ok(Some(ConeCoefficients {
        coefficients: c,
        strict,
    }))
}
