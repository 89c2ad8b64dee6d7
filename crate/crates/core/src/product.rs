//! Elementary Jacobi matrices, the product map and the H-commutation rules.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{ExactScalar, Matrix};
use crate::schemes::{apply_move, FactorizationScheme, Kind, Move, MoveKind, SchemeSymbol};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("expected {expected} parameters, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("diagonal factor at position {position} is zero")]
    ZeroDiagonal { position: usize },
    #[error("no commutation rule applies at position {position}")]
    NotApplicable { position: usize },
}

/// `I + t E_{i,i+1}` for E, `I + t E_{i+1,i}` for F, `I + (t - 1) E_{i,i}` for H.
pub fn elementary(n: usize, symbol: SchemeSymbol, t: &ExactScalar) -> Result<Matrix, ProductError> {
    let mut m = Matrix::identity(n);
    let i = symbol.index;
    match symbol.kind {
        Kind::E => m.set(i, i + 1, t.clone()),
        Kind::F => m.set(i + 1, i, t.clone()),
        Kind::H => {
            if t.is_zero() {
                return Err(ProductError::ZeroDiagonal { position: 0 });
            }
            m.set(i, i, t.clone());
        }
    }
    Ok(m)
}

fn check(scheme: &FactorizationScheme, t: &[ExactScalar]) -> Result<(), ProductError> {
    if t.len() != scheme.len() {
        return Err(ProductError::ArityMismatch {
            expected: scheme.len(),
            got: t.len(),
        });
    }
    for (k, (s, v)) in scheme.word().iter().zip(t).enumerate() {
        if s.kind == Kind::H && v.is_zero() {
            return Err(ProductError::ZeroDiagonal { position: k + 1 });
        }
    }
    Ok(())
}

/// `x_{i_1}(t_1) ... x_{i_l}(t_l)`, applied as row operations from the right.
pub fn product(scheme: &FactorizationScheme, t: &[ExactScalar]) -> Result<Matrix, ProductError> {
    check(scheme, t)?;
    let n = scheme.n();
    let mut m = Matrix::identity(n);
    for (s, v) in scheme.word().iter().zip(t) {
        let i = s.index;
        match s.kind {
            // right multiplication by I + v E_{i,i+1}: col(i+1) += v col(i)
            Kind::E => {
                for r in 1..=n {
                    let add = m.get(r, i) * v;
                    if !add.is_zero() {
                        let cur = m.get(r, i + 1) + add;
                        m.set(r, i + 1, cur);
                    }
                }
            }
            Kind::F => {
                for r in 1..=n {
                    let add = m.get(r, i + 1) * v;
                    if !add.is_zero() {
                        let cur = m.get(r, i) + add;
                        m.set(r, i, cur);
                    }
                }
            }
            Kind::H => {
                for r in 1..=n {
                    let cur = m.get(r, i) * v;
                    m.set(r, i, cur);
                }
            }
        }
    }
    Ok(m)
}

/// Factor by which the E/F parameter changes when an H symbol moves from
/// its right to its left: `x_k(a) x_(j)(b) = x_(j)(b) x_k(a * factor)`.
fn pass_factor(ef: SchemeSymbol, h: SchemeSymbol, b: &ExactScalar) -> ExactScalar {
    let (i, j) = (ef.index, h.index);
    let inv = || ExactScalar::one() / b;
    match ef.kind {
        Kind::E if j == i => inv(),
        Kind::E if j == i + 1 => b.clone(),
        Kind::F if j == i => b.clone(),
        Kind::F if j == i + 1 => inv(),
        _ => ExactScalar::one(),
    }
}

/// Swaps the adjacent symbols at `position` and `position + 1` when one of
/// them is an H symbol, rewriting the parameters so the product is unchanged.
pub fn commute_h(
    scheme: &FactorizationScheme,
    t: &[ExactScalar],
    position: usize,
) -> Result<(FactorizationScheme, Vec<ExactScalar>), ProductError> {
    check(scheme, t)?;
    let word = scheme.word();
    if position == 0 || position >= word.len() {
        return Err(ProductError::NotApplicable { position });
    }
    let (p, q) = (position - 1, position);
    let (a, b) = (word[p], word[q]);
    let (ta, tb) = (&t[p], &t[q]);
    let (new_first, new_second) = match (a.kind, b.kind) {
        (Kind::H, Kind::H) => (tb.clone(), ta.clone()),
        (Kind::E | Kind::F, Kind::H) => (tb.clone(), ta * pass_factor(a, b, tb)),
        (Kind::H, Kind::E | Kind::F) => (tb / pass_factor(b, a, ta), ta.clone()),
        _ => return Err(ProductError::NotApplicable { position }),
    };
    let swapped = apply_move(scheme, Move::new(MoveKind::Trivial2, position))
        .map_err(|_| ProductError::NotApplicable { position })?;
    let mut out = t.to_vec();
    out[p] = new_first;
    out[q] = new_second;
    Ok((swapped, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, ratio};
    use crate::schemes::RUNNING_EXAMPLE;

    fn gl2() -> FactorizationScheme {
        FactorizationScheme::parse("h1 f1 h2 e1").unwrap()
    }

    #[test]
    fn elementary_shapes() {
        let t = int(5);
        assert_eq!(
            elementary(2, SchemeSymbol::e(1), &t).unwrap(),
            Matrix::from_i64(&[&[1, 5], &[0, 1]])
        );
        assert_eq!(elementary(2, SchemeSymbol::h(2), &int(1)).unwrap(), Matrix::identity(2));
        assert_eq!(elementary(2, SchemeSymbol::f(1), &int(0)).unwrap(), Matrix::identity(2));
        assert!(elementary(2, SchemeSymbol::h(1), &int(0)).is_err());
    }

    #[test]
    fn product_matches_elementary_chain() {
        let s = FactorizationScheme::parse(RUNNING_EXAMPLE).unwrap();
        let t: Vec<_> = (1..=13).map(|k| ratio(k, 3)).collect();
        let mut expect = Matrix::identity(4);
        for (sym, v) in s.word().iter().zip(&t) {
            expect = &expect * &elementary(4, *sym, v).unwrap();
        }
        assert_eq!(product(&s, &t).unwrap(), expect);
    }

    #[test]
    fn gl2_closed_form() {
        let t: Vec<_> = [2, 3, 5, 7].into_iter().map(int).collect();
        assert_eq!(product(&gl2(), &t).unwrap(), Matrix::from_i64(&[&[2, 14], &[3, 26]]));
    }

    #[test]
    fn arity_and_zero_diagonal() {
        assert_eq!(
            product(&gl2(), &[int(1)]),
            Err(ProductError::ArityMismatch { expected: 4, got: 1 })
        );
        let t = vec![int(0), int(1), int(1), int(1)];
        assert_eq!(product(&gl2(), &t), Err(ProductError::ZeroDiagonal { position: 1 }));
    }

    #[test]
    fn commutation_rules() {
        let (a, b) = (int(6), int(4));
        let s = FactorizationScheme::parse("e1 h1 h2").unwrap();
        let (s2, t2) = commute_h(&s, &[a.clone(), b.clone(), int(1)], 1).unwrap();
        assert_eq!(s2.to_string(), "h1 e1 h2");
        assert_eq!(t2[..2], [b.clone(), ratio(3, 2)]);

        let s = FactorizationScheme::parse("f1 h1 h2").unwrap();
        let (s2, t2) = commute_h(&s, &[a.clone(), b.clone(), int(1)], 1).unwrap();
        assert_eq!(s2.to_string(), "h1 f1 h2");
        assert_eq!(t2[..2], [b.clone(), int(24)]);

        let s = FactorizationScheme::parse("e1 h3 h1 h2 h4").unwrap();
        let (s2, t2) = commute_h(&s, &[a.clone(), b.clone(), int(1), int(1), int(1)], 1).unwrap();
        assert_eq!(s2.to_string(), "h3 e1 h1 h2 h4");
        assert_eq!(t2[..2], [b, a]);
    }

    #[test]
    fn commutation_preserves_product() {
        let s = FactorizationScheme::parse(RUNNING_EXAMPLE).unwrap();
        let t: Vec<_> = (1..=13).map(|k| ratio(k + 1, 2)).collect();
        let x = product(&s, &t).unwrap();
        for position in 1..s.len() {
            if let Ok((s2, t2)) = commute_h(&s, &t, position) {
                assert_eq!(product(&s2, &t2).unwrap(), x, "position {position}");
            }
        }
        assert!(commute_h(&s, &t, 1).is_err());
    }
}
