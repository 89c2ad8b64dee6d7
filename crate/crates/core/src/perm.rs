//! Permutations of `[1, n]` in one-line notation.
//!
//! Products compose right to left: `(a * b)(j) = a(b(j))`, so the permutation
//! matrix `(δ_{i, w(j)})` of a product is the product of the matrices.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use thiserror::Error;

use crate::linalg::{ExactScalar, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("not a permutation of 1..{n}: {values:?}")]
    NotBijective { n: usize, values: Vec<usize> },
    #[error("cannot parse permutation {0:?}")]
    Parse(String),
    #[error("permutations of different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("simple reflection s_{index} does not exist in S_{n}")]
    BadReflection { index: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self, PermError> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || seen[v] {
                return Err(PermError::NotBijective {
                    n,
                    values: one_line,
                });
            }
            seen[v] = true;
        }
        Ok(Permutation(one_line))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    /// The longest element `w_o = n (n-1) ... 1`.
    pub fn longest_element(n: usize) -> Self {
        Permutation((1..=n).rev().collect())
    }

    /// The simple transposition `s_i = (i, i+1)`.
    pub fn simple(n: usize, i: usize) -> Result<Self, PermError> {
        let mut p = Self::identity(n);
        p.swap_positions(i)?;
        Ok(p)
    }

    /// Product `s_{i_1} ... s_{i_m}`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self, PermError> {
        let mut p = Self::identity(n);
        for &i in word {
            p.swap_positions(i)?;
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `w(i)`, 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// Right multiplication by `s_i`, i.e. swapping the entries at positions `i`, `i+1`.
    fn swap_positions(&mut self, i: usize) -> Result<(), PermError> {
        let n = self.n();
        if i == 0 || i >= n {
            return Err(PermError::BadReflection { index: i, n });
        }
        self.0.swap(i - 1, i);
        Ok(())
    }

    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.n() != other.n() {
            return Err(PermError::SizeMismatch(self.n(), other.n()));
        }
        Ok(Permutation(
            other.0.iter().map(|&j| self.apply(j)).collect(),
        ))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (k, &v) in self.0.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Permutation(inv)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.0;
        (0..w.len())
            .map(|i| ((i + 1)..w.len()).filter(|&j| w[i] > w[j]).count())
            .sum()
    }

    /// Image of a set of indices, sorted.
    pub fn image(&self, set: &crate::linalg::IndexSet) -> crate::linalg::IndexSet {
        crate::linalg::IndexSet::from_unsorted(set.iter().map(|i| self.apply(i)))
            .expect("a permutation maps a set to a set")
    }

    /// All reduced words, sorted lexicographically.
    ///
    /// Enumeration strips a right descent at each step, so the cost is
    /// proportional to the number of reduced words; intended for `n <= 6`.
    pub fn reduced_words(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut suffix = Vec::with_capacity(self.length());
        collect_reduced_words(&mut self.clone(), &mut suffix, &mut out);
        out.sort();
        out
    }

    /// The lexicographically smallest reduced word.
    pub fn first_reduced_word(&self) -> Vec<usize> {
        // Every left descent starts some reduced word, so taking the smallest
        // one at each step is lexicographically minimal.
        let mut inv = self.inverse();
        let mut word = Vec::with_capacity(self.length());
        while let Some(i) = (1..inv.n()).find(|&i| inv.apply(i) > inv.apply(i + 1)) {
            inv.0.swap(i - 1, i);
            word.push(i);
        }
        word
    }

    pub fn is_reduced_word(&self, word: &[usize]) -> bool {
        word.len() == self.length()
            && Permutation::from_word(self.n(), word).ok().as_ref() == Some(self)
    }

    /// Right weak order: `ℓ(w) = ℓ(w') + ℓ(w'^{-1} w)`.
    pub fn weak_order_leq(&self, w: &Permutation) -> Result<bool, PermError> {
        let rest = self.inverse().compose(w)?;
        Ok(w.length() == self.length() + rest.length())
    }

    /// The permutation matrix `(δ_{i, w(j)})`.
    pub fn matrix(&self) -> Matrix {
        let n = self.n();
        let mut m = Matrix::zeros(n);
        for j in 1..=n {
            m.set(self.apply(j), j, ExactScalar::one());
        }
        m
    }

    /// The signed representative `w̄`: the permutation matrix with an entry
    /// negated whenever an odd number of nonzero entries lie strictly below
    /// and strictly to the left of it.
    pub fn signed_representative(&self) -> Matrix {
        let n = self.n();
        let mut m = Matrix::zeros(n);
        for j in 1..=n {
            let row = self.apply(j);
            // Nonzero entries in columns c < j sit at rows w(c); count those below.
            let below_left = (1..j).filter(|&c| self.apply(c) > row).count();
            let v = if below_left % 2 == 1 {
                -ExactScalar::one()
            } else {
                ExactScalar::one()
            };
            m.set(row, j, v);
        }
        m
    }

    /// The second representative `w̿ = ((w̄)^{-1})^T`.
    pub fn double_bar_representative(&self) -> Matrix {
        self.signed_representative()
            .inverse()
            .expect("signed permutation matrices are invertible")
            .transpose()
    }

    /// All permutations of `[1, n]` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

fn collect_reduced_words(w: &mut Permutation, suffix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if w.is_identity() {
        out.push(suffix.iter().rev().copied().collect());
        return;
    }
    for i in 1..w.n() {
        if w.apply(i) > w.apply(i + 1) {
            w.0.swap(i - 1, i);
            suffix.push(i);
            collect_reduced_words(w, suffix, out);
            suffix.pop();
            w.0.swap(i - 1, i);
        }
    }
}

impl fmt::Display for Permutation {
    /// Digit string for `n <= 9`, comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n() <= 9 { "" } else { "," };
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(sep))
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let values: Option<Vec<usize>> = if s.contains(',') {
            s.split(',').map(|p| p.trim().parse().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
        };
        match values {
            Some(v) if !v.is_empty() => Permutation::new(v),
            _ => Err(PermError::Parse(s.to_string())),
        }
    }
}
