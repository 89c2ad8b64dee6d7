//! The planar network of a scheme and minors as sums over vertex-disjoint
//! path families.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{ExactScalar, IndexSet, Matrix};
use crate::poly::Polynomial;
use crate::schemes::{FactorizationScheme, Kind, SchemeSymbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetworkError {
    #[error("row set has {rows} elements but column set has {cols}")]
    SizeMismatch { rows: usize, cols: usize },
    #[error("index {index} outside [1, {n}]")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("expected {expected} parameters, got {got}")]
    ArityMismatch { expected: usize, got: usize },
}

/// One elementary piece of the network. `edge` is the 1-based index of the
/// weight `t_edge` carried by the piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fragment {
    pub kind: Kind,
    pub index: usize,
    pub edge: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarNetwork {
    n: usize,
    fragments: Vec<Fragment>,
}

pub fn build_network(scheme: &FactorizationScheme) -> PlanarNetwork {
    PlanarNetwork::from_word(scheme.n(), scheme.word())
}

trait Weight: Clone {
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
}

impl Weight for Polynomial {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

impl Weight for ExactScalar {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
}

impl PlanarNetwork {
    /// Network of an arbitrary word (it need not be a valid scheme).
    pub fn from_word(n: usize, word: &[SchemeSymbol]) -> Self {
        let fragments = word
            .iter()
            .enumerate()
            .map(|(k, s)| Fragment {
                kind: s.kind,
                index: s.index,
                edge: k + 1,
            })
            .collect();
        PlanarNetwork { n, fragments }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn fragments(&self) -> &[Fragment] {
        &self.fragments
    }

    /// Number of weighted edges, i.e. of parameters.
    pub fn edge_count(&self) -> usize {
        self.fragments.len()
    }

    fn check_sets(&self, rows: &IndexSet, cols: &IndexSet) -> Result<(), NetworkError> {
        if rows.len() != cols.len() {
            return Err(NetworkError::SizeMismatch {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        for &i in rows.as_slice().iter().chain(cols.as_slice()) {
            if i == 0 || i > self.n {
                return Err(NetworkError::IndexOutOfRange { index: i, n: self.n });
            }
        }
        Ok(())
    }

    /// Sweeps the fragments left to right. A state is the set of wires
    /// holding a path, as a bitmask; each state carries the total weight of
    /// the partial families reaching it.
    fn transfer<W: Weight>(&self, sources: &IndexSet, unit: W, weight: impl Fn(usize) -> W) -> BTreeMap<u32, W> {
        let start: u32 = sources.iter().map(|i| 1u32 << (i - 1)).sum();
        let mut states = BTreeMap::from([(start, unit)]);
        for frag in &self.fragments {
            let w = weight(frag.edge);
            let mut next: BTreeMap<u32, W> = BTreeMap::new();
            let mut put = |mask: u32, value: W| match next.get_mut(&mask) {
                Some(slot) => *slot = slot.plus(&value),
                None => {
                    next.insert(mask, value);
                }
            };
            for (&mask, value) in &states {
                let lo = 1u32 << (frag.index - 1);
                match frag.kind {
                    Kind::H => {
                        if mask & lo != 0 {
                            put(mask, value.times(&w));
                        } else {
                            put(mask, value.clone());
                        }
                    }
                    Kind::E => {
                        // up-diagonal from wire i to wire i+1
                        let hi = lo << 1;
                        put(mask, value.clone());
                        if mask & lo != 0 && mask & hi == 0 {
                            put(mask ^ lo ^ hi, value.times(&w));
                        }
                    }
                    Kind::F => {
                        // down-diagonal from wire i+1 to wire i
                        let hi = lo << 1;
                        put(mask, value.clone());
                        if mask & hi != 0 && mask & lo == 0 {
                            put(mask ^ lo ^ hi, value.times(&w));
                        }
                    }
                }
            }
            states = next;
        }
        states
    }

    /// Sum over vertex-disjoint families from sources `rows` to sinks `cols`.
    pub fn symbolic_minor(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Polynomial, NetworkError> {
        self.check_sets(rows, cols)?;
        let l = self.edge_count();
        let target: u32 = cols.iter().map(|i| 1u32 << (i - 1)).sum();
        let states = self.transfer(rows, Polynomial::one(l), |k| Polynomial::var(l, k));
        Ok(states.get(&target).cloned().unwrap_or_else(|| Polynomial::zero(l)))
    }

    pub fn symbolic_entry(&self, i: usize, j: usize) -> Result<Polynomial, NetworkError> {
        let (r, c) = (
            IndexSet::new(vec![i]).map_err(|_| NetworkError::IndexOutOfRange { index: i, n: self.n })?,
            IndexSet::new(vec![j]).map_err(|_| NetworkError::IndexOutOfRange { index: j, n: self.n })?,
        );
        self.symbolic_minor(&r, &c)
    }

    /// Numeric weight of all families from `rows` to `cols` at parameters `t`.
    pub fn evaluate_minor(&self, rows: &IndexSet, cols: &IndexSet, t: &[ExactScalar]) -> Result<ExactScalar, NetworkError> {
        self.check_sets(rows, cols)?;
        self.check_arity(t)?;
        let target: u32 = cols.iter().map(|i| 1u32 << (i - 1)).sum();
        let states = self.transfer(rows, ExactScalar::one(), |k| t[k - 1].clone());
        Ok(states.get(&target).cloned().unwrap_or_else(ExactScalar::zero))
    }

    fn check_arity(&self, t: &[ExactScalar]) -> Result<(), NetworkError> {
        if t.len() != self.edge_count() {
            return Err(NetworkError::ArityMismatch {
                expected: self.edge_count(),
                got: t.len(),
            });
        }
        Ok(())
    }
}

/// The matrix whose `(i, j)` entry is the weight of all paths from source
/// `i` to sink `j`.
pub fn evaluate_network(network: &PlanarNetwork, t: &[ExactScalar]) -> Result<Matrix, NetworkError> {
    network.check_arity(t)?;
    let n = network.n();
    let mut m = Matrix::zeros(n);
    for i in 1..=n {
        let src = IndexSet::new(vec![i]).expect("singleton");
        let states = network.transfer(&src, ExactScalar::one(), |k| t[k - 1].clone());
        for (mask, value) in states {
            let j = mask.trailing_zeros() as usize + 1;
            m.set(i, j, value);
        }
    }
    Ok(m)
}

pub fn evaluate(poly: &Polynomial, t: &[ExactScalar]) -> Result<ExactScalar, NetworkError> {
    poly.evaluate(t).map_err(|got| NetworkError::ArityMismatch {
        expected: poly.nvars(),
        got,
    })
}
