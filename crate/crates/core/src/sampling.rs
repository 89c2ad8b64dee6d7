//! Random rationals, matrices, reduced words and schemes for tests and fuzzing.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::linalg::{ratio, ExactScalar, Matrix};
use crate::perm::Permutation;
use crate::schemes::{FactorizationScheme, Kind, SchemeSymbol};

/// `p/q` with `p ∈ [-9, 9]`, `q ∈ [1, 9]`.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> ExactScalar {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9))
}

/// `p/q` with `p, q ∈ [1, 9]`.
pub fn positive_rational<R: Rng + ?Sized>(rng: &mut R) -> ExactScalar {
    ratio(rng.gen_range(1..=9), rng.gen_range(1..=9))
}

/// A nonzero `p/q` of either sign.
pub fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R) -> ExactScalar {
    let v = positive_rational(rng);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

pub fn small_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    let rows = (0..n).map(|_| (0..n).map(|_| small_rational(rng)).collect()).collect();
    Matrix::from_rows(rows).expect("square")
}

pub fn positive_params<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<ExactScalar> {
    (0..len).map(|_| positive_rational(rng)).collect()
}

pub fn nonzero_params<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<ExactScalar> {
    (0..len).map(|_| nonzero_rational(rng)).collect()
}

/// A reduced word for `w`, built by stripping random right descents.
pub fn random_reduced_word<R: Rng + ?Sized>(rng: &mut R, w: &Permutation) -> Vec<usize> {
    let n = w.n();
    let mut cur = w.one_line().to_vec();
    let mut rev = Vec::new();
    loop {
        let descents: Vec<usize> = (1..n).filter(|&i| cur[i - 1] > cur[i]).collect();
        let Some(&i) = descents.choose(rng) else {
            break;
        };
        cur.swap(i - 1, i);
        rev.push(i);
    }
    rev.reverse();
    rev
}

pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Permutation {
    let mut v: Vec<usize> = (1..=n).collect();
    v.shuffle(rng);
    Permutation::new(v).expect("shuffle of 1..n")
}

/// A random shuffle of random reduced words for `v` (E-part) and `u`
/// (F-part) with the H-symbols in random order and positions.
pub fn random_scheme<R: Rng + ?Sized>(rng: &mut R, u: &Permutation, v: &Permutation) -> FactorizationScheme {
    let n = u.n();
    let e = random_reduced_word(rng, v);
    let f = random_reduced_word(rng, u);
    let mut h: Vec<usize> = (1..=n).collect();
    h.shuffle(rng);
    let mut kinds: Vec<Kind> = std::iter::repeat_n(Kind::E, e.len())
        .chain(std::iter::repeat_n(Kind::F, f.len()))
        .chain(std::iter::repeat_n(Kind::H, n))
        .collect();
    kinds.shuffle(rng);
    let (mut ei, mut fi, mut hi) = (e.into_iter(), f.into_iter(), h.into_iter());
    let word = kinds
        .into_iter()
        .map(|k| match k {
            Kind::E => SchemeSymbol::e(ei.next().unwrap()),
            Kind::F => SchemeSymbol::f(fi.next().unwrap()),
            Kind::H => SchemeSymbol::h(hi.next().unwrap()),
        })
        .collect();
    FactorizationScheme::new(n, word).expect("random scheme is valid")
}
