//! Total positivity tests: all minors, chamber-minor criteria, chamber-set
//! criteria and the two solid-minor families.

use num_traits::Signed;
use serde_json::{json, Value};
use thiserror::Error;

use crate::bruhat::{double_cell_of, BruhatError};
use crate::linalg::{ExactScalar, IndexSet, Matrix};
use crate::perm::Permutation;
use crate::schemes::{enumerate_isotopy_types, Arrangement, FactorizationScheme, IsotopyGraph, SchemeSymbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PositivityError {
    #[error("matrix lies in G^({found_u},{found_v}), not G^({u},{v})")]
    WrongCell {
        u: Permutation,
        v: Permutation,
        found_u: Permutation,
        found_v: Permutation,
    },
    #[error(transparent)]
    Bruhat(#[from] BruhatError),
}

pub type Minor = (IndexSet, IndexSet);

/// A minor that failed a positivity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub rows: IndexSet,
    pub cols: IndexSet,
    pub value: ExactScalar,
}

impl Witness {
    pub fn to_json(&self) -> Value {
        json!({
            "I": self.rows.as_slice(),
            "J": self.cols.as_slice(),
            "value": self.value.to_string(),
        })
    }
}

/// Every pair `(I, J)` with `|I| = |J| ≥ 1`.
pub fn all_minors(n: usize) -> Vec<Minor> {
    let mut out = Vec::new();
    for k in 1..=n {
        let sets = IndexSet::subsets(n, k);
        for i in &sets {
            for j in &sets {
                out.push((i.clone(), j.clone()));
            }
        }
    }
    out
}

/// First minor in `family` failing `ok`.
fn first_failure<'a, I, F>(x: &Matrix, family: I, ok: F) -> Option<Witness>
where
    I: IntoIterator<Item = &'a Minor>,
    F: Fn(&ExactScalar) -> bool,
{
    family.into_iter().find_map(|(r, c)| {
        let value = x.minor(r, c).expect("family minors are square");
        (!ok(&value)).then(|| Witness {
            rows: r.clone(),
            cols: c.clone(),
            value,
        })
    })
}

/// First non-positive minor of `family`, if any.
pub fn family_witness(x: &Matrix, family: &[Minor]) -> Option<Witness> {
    first_failure(x, family, |v| v.is_positive())
}

pub fn tnn_witness(x: &Matrix) -> Option<Witness> {
    first_failure(x, &all_minors(x.n()), |v| !v.is_negative())
}

pub fn tp_witness(x: &Matrix) -> Option<Witness> {
    family_witness(x, &all_minors(x.n()))
}

pub fn is_tnn(x: &Matrix) -> bool {
    tnn_witness(x).is_none()
}

pub fn is_tp(x: &Matrix) -> bool {
    tp_witness(x).is_none()
}

fn check_cell(x: &Matrix, u: &Permutation, v: &Permutation) -> Result<(), PositivityError> {
    let (found_u, found_v) = double_cell_of(x)?;
    if &found_u != u || &found_v != v {
        return Err(PositivityError::WrongCell {
            u: u.clone(),
            v: v.clone(),
            found_u,
            found_v,
        });
    }
    Ok(())
}

pub fn chamber_criterion_witness(scheme: &FactorizationScheme, x: &Matrix) -> Result<Option<Witness>, PositivityError> {
    check_cell(x, scheme.u(), scheme.v())?;
    let family = Arrangement::new(scheme).chamber_minor_family();
    Ok(family_witness(x, &family))
}

/// Positivity of `Δ_{uI(C), v⁻¹J(C)}(x)` over all chambers but the bottom one.
pub fn chamber_criterion(scheme: &FactorizationScheme, x: &Matrix) -> Result<bool, PositivityError> {
    Ok(chamber_criterion_witness(scheme, x)?.is_none())
}

/// Nonempty `w`-chamber sets: sets containing, with each `j`, every `i < j`
/// with `w(i) < w(j)`.
pub fn w_chamber_sets(w: &Permutation) -> Vec<IndexSet> {
    let n = w.n();
    (1..=n)
        .flat_map(|k| IndexSet::subsets(n, k))
        .filter(|s| {
            s.iter()
                .all(|j| (1..j).all(|i| w.apply(i) > w.apply(j) || s.contains(i)))
        })
        .collect()
}

/// `F(u, v)`: pairs of a `u⁻¹`-chamber set and a `v`-chamber set of equal size.
pub fn chamber_set_family(u: &Permutation, v: &Permutation) -> Vec<Minor> {
    let rows = w_chamber_sets(&u.inverse());
    let cols = w_chamber_sets(v);
    let mut out = Vec::new();
    for i in &rows {
        for j in cols.iter().filter(|j| j.len() == i.len()) {
            out.push((i.clone(), j.clone()));
        }
    }
    out
}

pub fn chamber_set_criterion_witness(
    u: &Permutation,
    v: &Permutation,
    x: &Matrix,
) -> Result<Option<Witness>, PositivityError> {
    check_cell(x, u, v)?;
    Ok(family_witness(x, &chamber_set_family(u, v)))
}

pub fn chamber_set_criterion(u: &Permutation, v: &Permutation, x: &Matrix) -> Result<bool, PositivityError> {
    Ok(chamber_set_criterion_witness(u, v, x)?.is_none())
}

/// Solid minors with `1 ∈ I ∪ J`, and solid minors with
/// `min(I) + max(J) ∈ {n, n+1}`.
pub fn fekete_families(n: usize) -> (Vec<Minor>, Vec<Minor>) {
    let mut first = Vec::new();
    let mut second = Vec::new();
    for k in 1..=n {
        for a in 1..=n + 1 - k {
            for b in 1..=n + 1 - k {
                let (i, j) = (IndexSet::interval(a, a + k - 1), IndexSet::interval(b, b + k - 1));
                if a == 1 || b == 1 {
                    first.push((i.clone(), j.clone()));
                }
                let s = a + b + k - 1;
                if s == n || s == n + 1 {
                    second.push((i, j));
                }
            }
        }
    }
    (first, second)
}

/// The scheme with the lexicographically minimal reduced word for `w_o` as
/// E-part, the same word as F-part, all E before F, and the H-part last.
pub fn fekete_scheme_1(n: usize) -> FactorizationScheme {
    let word = Permutation::longest_element(n).first_reduced_word();
    FactorizationScheme::from_parts(n, &word, &word).expect("valid scheme")
}

/// Same parts as [`fekete_scheme_1`], with each `e_k` immediately followed by
/// the matching `f_k`.
pub fn fekete_scheme_2(n: usize) -> FactorizationScheme {
    let word = Permutation::longest_element(n).first_reduced_word();
    let symbols = word
        .iter()
        .flat_map(|&i| [SchemeSymbol::e(i), SchemeSymbol::f(i)])
        .chain((1..=n).map(SchemeSymbol::h))
        .collect();
    FactorizationScheme::new(n, symbols).expect("valid scheme")
}

fn gl3_letter(m: &Minor) -> Option<char> {
    let key: (Vec<usize>, Vec<usize>) = (m.0.as_slice().to_vec(), m.1.as_slice().to_vec());
    let table: [(&[usize], &[usize], char); 14] = [
        (&[1], &[1], 'a'),
        (&[1], &[2], 'b'),
        (&[2], &[1], 'c'),
        (&[2], &[2], 'd'),
        (&[2], &[3], 'e'),
        (&[3], &[2], 'f'),
        (&[3], &[3], 'g'),
        (&[2, 3], &[2, 3], 'A'),
        (&[2, 3], &[1, 3], 'B'),
        (&[1, 3], &[2, 3], 'C'),
        (&[1, 3], &[1, 3], 'D'),
        (&[1, 3], &[1, 2], 'E'),
        (&[1, 2], &[1, 3], 'F'),
        (&[1, 2], &[1, 2], 'G'),
    ];
    table
        .iter()
        .find(|(r, c, _)| key.0 == *r && key.1 == *c)
        .map(|&(_, _, ch)| ch)
}

/// Label of a `GL_3` criterion in the letter notation: the non-peripheral
/// minors, lowercase letters first.
pub fn gl3_label(family: &[Minor]) -> String {
    let mut letters: Vec<char> = family.iter().filter_map(gl3_letter).collect();
    letters.sort_by_key(|c| (c.is_uppercase(), *c));
    letters.into_iter().collect()
}

/// The 34 `GL_3` total positivity criteria with their adjacency, and each
/// node's letter label.
pub fn gl3_criteria_catalog() -> (IsotopyGraph, Vec<String>) {
    let w = Permutation::longest_element(3);
    let graph = enumerate_isotopy_types(&w, &w);
    let labels = graph.nodes.iter().map(|node| gl3_label(&node.family)).collect();
    (graph, labels)
}
