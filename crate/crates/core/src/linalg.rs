//! Exact rational scalars and dense square matrices.
//!
//! All public indices are 1-based. Minors are computed by Bareiss elimination
//! on the selected submatrix; the LDU decomposition is plain Gaussian
//! elimination without pivoting, which is exactly what the leading-principal
//! minor condition licenses.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

/// Arbitrary-precision rational number, always held in lowest terms with a
/// positive denominator.
pub type ExactScalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("row and column sets differ in size ({rows} vs {cols})")]
    SizeMismatch { rows: usize, cols: usize },
    #[error("index {index} outside [1, {n}]")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("index set is not strictly increasing: {0:?}")]
    NotIncreasing(Vec<usize>),
    #[error("leading principal minor of order {order} vanishes; matrix has no Gaussian decomposition")]
    NotInG0 { order: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("malformed matrix: {0}")]
    Malformed(String),
    #[error("cannot parse rational {0:?}")]
    BadScalar(String),
}

/// Parses `"p"` or `"p/q"`; the result is reduced.
pub fn parse_scalar(text: &str) -> Result<ExactScalar, LinalgError> {
    let t = text.trim();
    if t.is_empty() {
        return Err(LinalgError::BadScalar(text.to_string()));
    }
    BigRational::from_str(t).map_err(|_| LinalgError::BadScalar(text.to_string()))
}

pub fn int(v: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(p: i64, q: i64) -> ExactScalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Strictly increasing list of 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(indices: Vec<usize>) -> Result<Self, LinalgError> {
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices.first() == Some(&0) {
            return Err(LinalgError::NotIncreasing(indices));
        }
        Ok(IndexSet(indices))
    }

    /// Builds a set from arbitrary (possibly unsorted) distinct indices.
    pub fn from_unsorted<I: IntoIterator<Item = usize>>(items: I) -> Result<Self, LinalgError> {
        let mut v: Vec<usize> = items.into_iter().collect();
        v.sort_unstable();
        Self::new(v)
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// The interval `[lo, hi]`, empty when `hi < lo`.
    pub fn interval(lo: usize, hi: usize) -> Self {
        IndexSet((lo..=hi).collect())
    }

    /// All `k`-element subsets of `[1, n]` in lexicographic order.
    pub fn subsets(n: usize, k: usize) -> Vec<IndexSet> {
        let mut out = Vec::new();
        if k > n {
            return out;
        }
        let mut cur: Vec<usize> = (1..=k).collect();
        loop {
            out.push(IndexSet(cur.clone()));
            let Some(pos) = (0..k).rev().find(|&p| cur[p] < n - k + p + 1) else {
                return out;
            };
            cur[pos] += 1;
            for q in pos + 1..k {
                cur[q] = cur[q - 1] + 1;
            }
        }
    }

    /// Elements of `self` not in `other`.
    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.0.iter().copied().filter(|i| !other.contains(*i)).collect())
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.0.iter().copied().filter(|i| other.contains(*i)).collect())
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    /// `self ∪ {i}`; `None` if `i` is already present.
    pub fn with(&self, i: usize) -> Option<Self> {
        match self.0.binary_search(&i) {
            Ok(_) => None,
            Err(pos) => {
                let mut v = self.0.clone();
                v.insert(pos, i);
                Some(IndexSet(v))
            }
        }
    }

    pub fn union(&self, other: &IndexSet) -> Option<Self> {
        let mut out = self.clone();
        for i in other.iter() {
            out = out.with(i)?;
        }
        Some(out)
    }

    /// Whether the indices are consecutive.
    pub fn is_solid(&self) -> bool {
        self.0.windows(2).all(|w| w[1] == w[0] + 1)
    }

    fn check(&self, n: usize) -> Result<(), LinalgError> {
        match self.0.iter().find(|&&i| i == 0 || i > n) {
            Some(&index) => Err(LinalgError::IndexOutOfRange { index, n }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for IndexSet {
    /// Digits run together for indices below 10 (`134`), comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let sep = if self.0.iter().all(|&i| i < 10) { "" } else { "," };
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(sep))
    }
}

/// Dense `n × n` matrix of exact rationals, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<ExactScalar>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be at least 1");
        Matrix {
            n,
            data: vec![ExactScalar::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 1..=n {
            m.set(i, i, ExactScalar::one());
        }
        m
    }

    pub fn diagonal(values: &[ExactScalar]) -> Self {
        let mut m = Self::zeros(values.len());
        for (k, v) in values.iter().enumerate() {
            m.set(k + 1, k + 1, v.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        if n == 0 {
            return Err(LinalgError::Malformed("empty matrix".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(LinalgError::Malformed(format!(
                "row of length {} in a {}x{} matrix",
                bad.len(),
                n,
                n
            )));
        }
        Ok(Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor from small integers; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect();
        Self::from_rows(rows).expect("square integer matrix")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &ExactScalar {
        &self.data[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactScalar) {
        self.data[(i - 1) * self.n + (j - 1)] = v;
    }

    pub fn rows(&self) -> Vec<Vec<ExactScalar>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.n);
        for i in 1..=self.n {
            for j in 1..=self.n {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn multiply(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.n != other.n {
            return Err(LinalgError::DimensionMismatch(self.n, other.n));
        }
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 1..=n {
            for k in 1..=n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 1..=n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = &out.data[(i - 1) * n + (j - 1)];
                        out.data[(i - 1) * n + (j - 1)] = cur + a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ExactScalar) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n)
    }

    /// Minor with row set `rows` and column set `cols`; the empty minor is 1.
    pub fn minor(&self, rows: &IndexSet, cols: &IndexSet) -> Result<ExactScalar, LinalgError> {
        if rows.len() != cols.len() {
            return Err(LinalgError::SizeMismatch {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        rows.check(self.n)?;
        cols.check(self.n)?;
        let sub: Vec<Vec<ExactScalar>> = rows
            .iter()
            .map(|i| cols.iter().map(|j| self.get(i, j).clone()).collect())
            .collect();
        Ok(bareiss_determinant(sub))
    }

    pub fn determinant(&self) -> ExactScalar {
        bareiss_determinant(self.rows())
    }

    /// Leading principal minor `Δ_{[1,k],[1,k]}`.
    pub fn leading_minor(&self, k: usize) -> ExactScalar {
        let s = IndexSet::interval(1, k);
        self.minor(&s, &s).expect("leading minor indices are in range")
    }

    /// Gaussian decomposition `x = L·D·U` with `L` unit lower triangular,
    /// `D` diagonal and `U` unit upper triangular.
    pub fn ldu(&self) -> Result<Ldu, LinalgError> {
        let n = self.n;
        let mut a = self.rows();
        let mut lower = Matrix::identity(n);
        for k in 0..n {
            if a[k][k].is_zero() {
                return Err(LinalgError::NotInG0 { order: k + 1 });
            }
            for i in (k + 1)..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let factor = &a[i][k] / &a[k][k];
                for j in k..n {
                    let delta = &factor * &a[k][j];
                    a[i][j] -= delta;
                }
                lower.set(i + 1, k + 1, factor);
            }
        }
        // `a` is now upper triangular with the pivots on its diagonal.
        let mut diag = Matrix::zeros(n);
        let mut upper = Matrix::identity(n);
        for i in 0..n {
            diag.set(i + 1, i + 1, a[i][i].clone());
            for j in (i + 1)..n {
                upper.set(i + 1, j + 1, &a[i][j] / &a[i][i]);
            }
        }
        Ok(Ldu {
            lower,
            diag,
            upper,
        })
    }

    /// Exact inverse by Gauss-Jordan elimination with row pivoting.
    pub fn inverse(&self) -> Result<Matrix, LinalgError> {
        let n = self.n;
        let mut a = self.rows();
        let mut inv = Matrix::identity(n).rows();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(LinalgError::Singular)?;
            a.swap(pivot, col);
            inv.swap(pivot, col);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] /= &p;
                inv[col][j] /= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let da = &f * &a[col][j];
                    a[r][j] -= da;
                    let di = &f * &inv[col][j];
                    inv[r][j] -= di;
                }
            }
        }
        Matrix::from_rows(inv)
    }

    /// `{"n": n, "entries": [["p/q", ...], ...]}` with canonical rationals.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Vec<String>> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect())
            .collect();
        json!({ "n": self.n, "entries": entries })
    }

    pub fn from_json(value: &Value) -> Result<Matrix, LinalgError> {
        let entries = value
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| LinalgError::Malformed("missing \"entries\" array".into()))?;
        let mut rows = Vec::with_capacity(entries.len());
        for row in entries {
            let row = row
                .as_array()
                .ok_or_else(|| LinalgError::Malformed("row is not an array".into()))?;
            let parsed = row
                .iter()
                .map(|e| match e {
                    Value::String(s) => parse_scalar(s),
                    Value::Number(num) => parse_scalar(&num.to_string()),
                    other => Err(LinalgError::BadScalar(other.to_string())),
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(parsed);
        }
        let m = Matrix::from_rows(rows)?;
        if let Some(n) = value.get("n") {
            if n.as_u64() != Some(m.n as u64) {
                return Err(LinalgError::Malformed(format!(
                    "declared n = {} but entries are {}x{}",
                    n, m.n, m.n
                )));
            }
        }
        Ok(m)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        self.multiply(rhs).expect("matrix dimensions agree")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ldu {
    pub lower: Matrix,
    pub diag: Matrix,
    pub upper: Matrix,
}

/// Fraction-free elimination. Over the rationals every division is exact, and
/// intermediate entries stay minors of the input.
fn bareiss_determinant(mut a: Vec<Vec<ExactScalar>>) -> ExactScalar {
    let m = a.len();
    if m == 0 {
        return ExactScalar::one();
    }
    let mut sign_flip = false;
    let mut prev = ExactScalar::one();
    for k in 0..m.saturating_sub(1) {
        if a[k][k].is_zero() {
            match ((k + 1)..m).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return ExactScalar::zero(),
            }
        }
        for i in (k + 1)..m {
            for j in (k + 1)..m {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[m - 1][m - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Whether `v > 0`.
pub fn is_positive(v: &ExactScalar) -> bool {
    v.is_positive()
}
