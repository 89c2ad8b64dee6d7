use std::fmt;

use super::{FactorizationScheme, Kind, SchemeError, SchemeSymbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    /// Swap of two commuting adjacent symbols; keeps the isotopy type.
    Trivial2,
    /// `k_i k_j k_i -> k_j k_i k_j` with `|i - j| = 1`, within one part.
    Braid3,
    /// `e_i f_i <-> f_i e_i`.
    Mixed2,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A move anchored at a 1-based word position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    pub kind: MoveKind,
    pub position: usize,
}

impl Move {
    pub fn new(kind: MoveKind, position: usize) -> Self {
        Move { kind, position }
    }
}

fn trivial_pair(a: SchemeSymbol, b: SchemeSymbol) -> bool {
    match (a.kind, b.kind) {
        (Kind::H, _) | (_, Kind::H) => true,
        (Kind::E, Kind::E) | (Kind::F, Kind::F) => a.index.abs_diff(b.index) >= 2,
        _ => a.index != b.index,
    }
}

fn rewrite(word: &[SchemeSymbol], mv: Move) -> Option<Vec<SchemeSymbol>> {
    let p = mv.position.checked_sub(1)?;
    let mut out = word.to_vec();
    match mv.kind {
        MoveKind::Trivial2 => {
            let (a, b) = (*word.get(p)?, *word.get(p + 1)?);
            if !trivial_pair(a, b) {
                return None;
            }
            out.swap(p, p + 1);
        }
        MoveKind::Mixed2 => {
            let (a, b) = (*word.get(p)?, *word.get(p + 1)?);
            let mixed = matches!((a.kind, b.kind), (Kind::E, Kind::F) | (Kind::F, Kind::E));
            if !mixed || a.index != b.index {
                return None;
            }
            out.swap(p, p + 1);
        }
        MoveKind::Braid3 => {
            let (a, b, c) = (*word.get(p)?, *word.get(p + 1)?, *word.get(p + 2)?);
            if a != c || a.kind != b.kind || a.kind == Kind::H || a.index.abs_diff(b.index) != 1 {
                return None;
            }
            out[p] = b;
            out[p + 1] = a;
            out[p + 2] = b;
        }
    }
    Some(out)
}

/// Applies `mv`, returning a scheme of the same type and length.
pub fn apply_move(scheme: &FactorizationScheme, mv: Move) -> Result<FactorizationScheme, SchemeError> {
    let word = rewrite(scheme.word(), mv).ok_or(SchemeError::MoveNotApplicable {
        kind: mv.kind,
        position: mv.position,
    })?;
    FactorizationScheme::new(scheme.n(), word)
}

/// Every move applicable to the scheme, ordered by position then kind.
pub fn applicable_moves(scheme: &FactorizationScheme) -> Vec<Move> {
    let mut out = Vec::new();
    for position in 1..=scheme.len() {
        for kind in [MoveKind::Trivial2, MoveKind::Braid3, MoveKind::Mixed2] {
            let mv = Move::new(kind, position);
            if rewrite(scheme.word(), mv).is_some() {
                out.push(mv);
            }
        }
    }
    out
}
