//! Sparse multivariate polynomials with big-integer coefficients.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::linalg::ExactScalar;

/// A polynomial in `t_1..t_nvars`; terms are keyed by exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: HashMap<Vec<u32>, BigInt>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: HashMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// The variable `t_k` (1-based).
    pub fn var(nvars: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= nvars, "variable t{k} out of range");
        let mut e = vec![0; nvars];
        e[k - 1] = 1;
        Polynomial {
            nvars,
            terms: HashMap::from([(e, BigInt::one())]),
        }
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (i64, Vec<u32>)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e, BigInt::from(c));
        }
        p
    }

    /// Product of the listed variables (1-based, repeats allowed).
    pub fn monomial(nvars: usize, vars: &[usize]) -> Self {
        let mut e = vec![0; nvars];
        for &k in vars {
            e[k - 1] += 1;
        }
        Polynomial {
            nvars,
            terms: HashMap::from([(e, BigInt::one())]),
        }
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        match self.terms.entry(e) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    /// True when every stored coefficient is a positive integer.
    pub fn is_subtraction_free(&self) -> bool {
        self.terms.values().all(|c| c > &BigInt::zero())
    }

    /// Terms in print order: total degree ascending, then exponent vectors
    /// lexicographically descending.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &BigInt)> {
        let mut out: Vec<_> = self.terms.iter().collect();
        out.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        out
    }

    /// Substitutes `values[k - 1]` for `t_k`.
    pub fn evaluate(&self, values: &[ExactScalar]) -> Result<ExactScalar, usize> {
        if values.len() != self.nvars {
            return Err(values.len());
        }
        let mut total = ExactScalar::zero();
        for (e, c) in &self.terms {
            let mut term = ExactScalar::from_integer(c.clone());
            for (k, &p) in e.iter().enumerate() {
                if p > 0 {
                    term *= Pow::pow(&values[k], p);
                }
            }
            total += term;
        }
        Ok(total)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.sorted_terms() {
            let negative = c < &BigInt::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            first = false;
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(k, &p)| {
                    if p == 1 {
                        format!("t{}", k + 1)
                    } else {
                        format!("t{}^{p}", k + 1)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
