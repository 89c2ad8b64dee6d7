//! Bruhat and double Bruhat cells of invertible matrices.

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{IndexSet, Matrix};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruhatError {
    #[error("matrix is singular")]
    Singular,
    #[error("permutation has size {perm} but matrix has size {matrix}")]
    DimensionMismatch { perm: usize, matrix: usize },
}

fn nonsingular(x: &Matrix) -> Result<(), BruhatError> {
    if x.determinant().is_zero() {
        Err(BruhatError::Singular)
    } else {
        Ok(())
    }
}

fn cell_test(x: &Matrix, w: &Permutation) -> bool {
    let n = x.n();
    let image = |items: Vec<usize>| w.image(&IndexSet::from_unsorted(items).expect("distinct indices"));
    for i in 1..n {
        let cols = IndexSet::interval(1, i);
        if x.minor(&image((1..=i).collect()), &cols).expect("square").is_zero() {
            return false;
        }
    }
    for i in 1..=n {
        let cols = IndexSet::interval(1, i);
        for j in i + 1..=n {
            if w.apply(i) < w.apply(j) {
                let rows = image((1..i).chain([j]).collect());
                if !x.minor(&rows, &cols).expect("square").is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether `x` lies in `B w B` (upper triangular `B`).
pub fn in_bruhat_cell(x: &Matrix, w: &Permutation) -> Result<bool, BruhatError> {
    if w.n() != x.n() {
        return Err(BruhatError::DimensionMismatch {
            perm: w.n(),
            matrix: x.n(),
        });
    }
    nonsingular(x)?;
    Ok(cell_test(x, w))
}

/// The unique `w` with `x` in `B w B`, found by testing every permutation.
pub fn bruhat_cell_of(x: &Matrix) -> Result<Permutation, BruhatError> {
    nonsingular(x)?;
    Ok(Permutation::all(x.n())
        .into_iter()
        .find(|w| cell_test(x, w))
        .expect("the Bruhat cells cover GL_n"))
}

/// `(u, v)` with `x` in `B u B ∩ B_- v B_-`.
pub fn double_cell_of(x: &Matrix) -> Result<(Permutation, Permutation), BruhatError> {
    let u = bruhat_cell_of(x)?;
    let v = bruhat_cell_of(&x.transpose())?.inverse();
    Ok((u, v))
}

/// Whether all leading principal minors are nonzero.
pub fn in_g0(x: &Matrix) -> bool {
    (1..=x.n()).all(|k| !x.leading_minor(k).is_zero())
}
