//! Recovering factorization parameters from a matrix through the twisted
//! chamber minors, and the inverse monomial map.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{ExactScalar, IndexSet, Matrix};
use crate::schemes::{Arrangement, BigChamber, Boundary, ChamberType, FactorizationScheme, Kind};
use crate::twist::{TwistContext, TwistError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Twist(#[from] TwistError),
    #[error("chamber minor Δ_{{{rows},{cols}}}(x') vanishes")]
    ZeroMinor { rows: IndexSet, cols: IndexSet },
    #[error("recovered parameter t{position} is zero")]
    ZeroParameter { position: usize },
    #[error("parameter t{position} is zero")]
    ZeroInput { position: usize },
    #[error("expected {expected} parameters, got {got}")]
    ArityMismatch { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The chamber minors `M_C = Δ_{I(C),J(C)}(x')`, indexed by chamber id.
#[derive(Debug, Clone)]
pub struct ChamberMinors<'a> {
    arr: &'a Arrangement,
    values: Vec<ExactScalar>,
}

impl<'a> ChamberMinors<'a> {
    pub fn new(arr: &'a Arrangement, xprime: &Matrix) -> Self {
        let values = arr
            .chambers()
            .iter()
            .map(|c| xprime.minor(&c.rows, &c.cols).expect("chamber sets have equal size"))
            .collect();
        ChamberMinors { arr, values }
    }

    pub fn value(&self, id: usize) -> &ExactScalar {
        &self.values[id]
    }

    /// `M_C`, refusing zero so it can be used as a factor of a monomial.
    fn factor(&self, id: usize) -> Result<&ExactScalar, SolverError> {
        let v = &self.values[id];
        if v.is_zero() {
            let c = &self.arr.chambers()[id];
            return Err(SolverError::ZeroMinor {
                rows: c.rows.clone(),
                cols: c.cols.clone(),
            });
        }
        Ok(v)
    }

    /// `Π_i`: FE chambers of level `i` over EF chambers of level `i`.
    pub fn pi(&self, level: usize) -> Result<ExactScalar, SolverError> {
        if level == 0 {
            return Ok(ExactScalar::one());
        }
        let mut acc = ExactScalar::one();
        for c in self.arr.chambers_on_level(level) {
            match c.chamber_type {
                ChamberType::FE => acc *= self.factor(c.id)?,
                ChamberType::EF => acc /= self.factor(c.id)?,
                _ => {}
            }
        }
        Ok(acc)
    }

    /// `𝓜^right` or `𝓜^left` of a big chamber.
    pub fn big_chamber_monomial(&self, bc: &BigChamber, side: Side) -> Result<ExactScalar, SolverError> {
        let level = self.arr.chambers_on_level(bc.level);
        let (k, l) = match bc.part {
            Kind::E => (Kind::E, Kind::F),
            _ => (Kind::F, Kind::E),
        };
        let ty = |a: Kind, b: Kind| ChamberType::from_kinds(a, b);
        let (end, others, num_ty, den_ty, skip_tilde) = match side {
            Side::Right => {
                let end = &level[bc.last];
                let stuck = k == Kind::E && end.right == Boundary::RightBorder;
                (end, &level[bc.last + 1..], ty(l, k), ty(k, l), stuck)
            }
            Side::Left => {
                let end = &level[bc.first];
                let stuck = k == Kind::F && end.left == Boundary::LeftBorder;
                (end, &level[..bc.first], ty(k, l), ty(l, k), stuck)
            }
        };
        let mut acc = if skip_tilde {
            ExactScalar::one()
        } else {
            self.factor(end.id)?.clone()
        };
        for c in others {
            if c.chamber_type == num_ty {
                acc *= self.factor(c.id)?;
            } else if c.chamber_type == den_ty {
                acc /= self.factor(c.id)?;
            }
        }
        Ok(acc)
    }

    /// The parameter of the crossing at word position `position`.
    pub fn parameter(&self, scheme: &FactorizationScheme, position: usize) -> Result<ExactScalar, SolverError> {
        let arr = self.arr;
        let c = *arr.crossing(position);
        if c.kind == Kind::H {
            let lhs = self.pi(c.index)?;
            let rhs = self.pi(c.index - 1)?;
            if rhs.is_zero() {
                return Err(SolverError::ZeroParameter { position });
            }
            return Ok(lhs / rhs);
        }
        let i = c.index;
        let opp = |line: usize| {
            if scheme.h_position(line) > position {
                Side::Left
            } else {
                Side::Right
            }
        };
        let (upper_side, lower_side) = (opp(i + 1), opp(i));
        let a = arr.big_chamber_at(i + 1, c.kind, position);
        let d = arr.big_chamber_at(i - 1, c.kind, position);
        let (b, cc) = arr.big_chambers_beside(position);
        let num = self.big_chamber_monomial(&a, upper_side)? * self.big_chamber_monomial(&d, lower_side)?;
        let den = self.big_chamber_monomial(&b, upper_side)? * self.big_chamber_monomial(&cc, lower_side)?;
        if den.is_zero() {
            return Err(SolverError::ZeroParameter { position });
        }
        Ok(num / den)
    }
}

/// Factorization parameters of `x` along `scheme`.
pub fn solve(scheme: &FactorizationScheme, x: &Matrix) -> Result<Vec<ExactScalar>, SolverError> {
    let ctx = TwistContext::new(scheme.u(), scheme.v());
    let xprime = ctx.apply(x)?;
    solve_twisted(scheme, &xprime)
}

/// As [`solve`], starting from an already twisted matrix.
pub fn solve_twisted(scheme: &FactorizationScheme, xprime: &Matrix) -> Result<Vec<ExactScalar>, SolverError> {
    let arr = Arrangement::new(scheme);
    let minors = ChamberMinors::new(&arr, xprime);
    let mut t = Vec::with_capacity(scheme.len());
    for position in 1..=scheme.len() {
        let v = minors.parameter(scheme, position)?;
        if v.is_zero() {
            return Err(SolverError::ZeroParameter { position });
        }
        t.push(v);
    }
    Ok(t)
}

/// For every chamber, the positions `k` whose parameters multiply to
/// `Δ_{I(C),J(C)}(x')⁻¹`.
pub fn chamber_monomials(scheme: &FactorizationScheme) -> Vec<Vec<usize>> {
    let arr = Arrangement::new(scheme);
    let len = arr.len();
    arr.chambers()
        .iter()
        .map(|ch| {
            let anchor = ch.left.position(len);
            arr.crossings()
                .iter()
                .filter(|c| {
                    let right = c.position > anchor;
                    match c.kind {
                        Kind::E if right => {
                            let (a, b) = arr.crossing_lines(c.position);
                            ch.cols.contains(a) != ch.cols.contains(b)
                        }
                        Kind::F if !right => {
                            let (a, b) = arr.crossing_lines(c.position);
                            ch.rows.contains(a) != ch.rows.contains(b)
                        }
                        Kind::H if right => ch.cols.contains(arr.e_line_before(c.position, c.index)),
                        Kind::H => ch.rows.contains(arr.f_line_before(c.position, c.index)),
                        _ => false,
                    }
                })
                .map(|c| c.position)
                .collect()
        })
        .collect()
}

/// `Δ_{I(C),J(C)}(x')` for each chamber as a monomial in the parameters.
pub fn chamber_values_from_parameters(
    scheme: &FactorizationScheme,
    t: &[ExactScalar],
) -> Result<Vec<ExactScalar>, SolverError> {
    if t.len() != scheme.len() {
        return Err(SolverError::ArityMismatch {
            expected: scheme.len(),
            got: t.len(),
        });
    }
    if let Some(k) = t.iter().position(|v| v.is_zero()) {
        return Err(SolverError::ZeroInput { position: k + 1 });
    }
    Ok(chamber_monomials(scheme)
        .into_iter()
        .map(|ks| {
            let prod: ExactScalar = ks.iter().map(|&k| t[k - 1].clone()).product();
            prod.recip()
        })
        .collect())
}
