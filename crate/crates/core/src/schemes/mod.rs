//! Factorization schemes and their double pseudoline arrangements.
//!
//! A scheme is a word over `e1..e(n-1)` (upper elementary factors),
//! `f1..f(n-1)` (lower elementary factors) and `h1..hn` (diagonal factors).
//! Its E-subword is a reduced word for `v`, its F-subword a reduced word for
//! `u`, and its H-subword uses every `h_i` exactly once.

mod arrangement;
mod isotopy;
mod moves;
mod render;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::Permutation;

pub use arrangement::{Arrangement, BigChamber, Boundary, Chamber, ChamberType, Crossing};
pub use isotopy::{enumerate_isotopy_types, isotopy_key, key_difference, IsotopyGraph, IsotopyKey, IsotopyNode};
pub use moves::{apply_move, applicable_moves, Move, MoveKind};
pub use render::{render_ascii, render_svg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    E,
    F,
    H,
}

impl Kind {
    pub fn letter(self) -> char {
        match self {
            Kind::E => 'e',
            Kind::F => 'f',
            Kind::H => 'h',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SchemeSymbol {
    pub kind: Kind,
    pub index: usize,
}

impl SchemeSymbol {
    pub fn e(index: usize) -> Self {
        SchemeSymbol { kind: Kind::E, index }
    }

    pub fn f(index: usize) -> Self {
        SchemeSymbol { kind: Kind::F, index }
    }

    pub fn h(index: usize) -> Self {
        SchemeSymbol { kind: Kind::H, index }
    }
}

impl fmt::Display for SchemeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("bad token {0:?}")]
    BadToken(String),
    #[error("E-subword {0:?} is not a reduced word")]
    NotReducedE(Vec<usize>),
    #[error("F-subword {0:?} is not a reduced word")]
    NotReducedF(Vec<usize>),
    #[error("H-subword {0:?} is not a permutation of 1..n")]
    BadHPart(Vec<usize>),
    #[error("empty scheme")]
    Empty,
    #[error("{kind} move not applicable at position {position}")]
    MoveNotApplicable { kind: MoveKind, position: usize },
}

/// A validated factorization scheme of type `(u, v)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactorizationScheme {
    n: usize,
    word: Vec<SchemeSymbol>,
    u: Permutation,
    v: Permutation,
}

impl FactorizationScheme {
    /// Validates `word` as a scheme for `GL_n`.
    pub fn new(n: usize, word: Vec<SchemeSymbol>) -> Result<Self, SchemeError> {
        if n == 0 {
            return Err(SchemeError::Empty);
        }
        for s in &word {
            let ok = match s.kind {
                Kind::E | Kind::F => s.index >= 1 && s.index < n,
                Kind::H => s.index >= 1 && s.index <= n,
            };
            if !ok {
                return Err(SchemeError::BadToken(s.to_string()));
            }
        }
        let sub = |k: Kind| -> Vec<usize> {
            word.iter().filter(|s| s.kind == k).map(|s| s.index).collect()
        };
        let (e_word, f_word, h_word) = (sub(Kind::E), sub(Kind::F), sub(Kind::H));
        let v = Permutation::from_word(n, &e_word).map_err(|_| SchemeError::NotReducedE(e_word.clone()))?;
        if v.length() != e_word.len() {
            return Err(SchemeError::NotReducedE(e_word));
        }
        let u = Permutation::from_word(n, &f_word).map_err(|_| SchemeError::NotReducedF(f_word.clone()))?;
        if u.length() != f_word.len() {
            return Err(SchemeError::NotReducedF(f_word));
        }
        let mut hs = h_word.clone();
        hs.sort_unstable();
        if hs != (1..=n).collect::<Vec<_>>() {
            return Err(SchemeError::BadHPart(h_word));
        }
        Ok(FactorizationScheme { n, word, u, v })
    }

    /// Parses whitespace-separated `e<i>`, `f<i>`, `h<i>` tokens. The
    /// dimension is the largest H index (every `h_i` must appear).
    pub fn parse(text: &str) -> Result<Self, SchemeError> {
        let word = parse_tokens(text)?;
        let n = word
            .iter()
            .filter(|s| s.kind == Kind::H)
            .map(|s| s.index)
            .max()
            .ok_or_else(|| SchemeError::BadHPart(vec![]))?;
        Self::new(n, word)
    }

    /// Parses tokens for an explicit dimension.
    pub fn parse_with_n(n: usize, text: &str) -> Result<Self, SchemeError> {
        Self::new(n, parse_tokens(text)?)
    }

    /// E-part, then F-part, then `h1..hn`.
    pub fn from_parts(n: usize, e_word: &[usize], f_word: &[usize]) -> Result<Self, SchemeError> {
        let word = e_word
            .iter()
            .map(|&i| SchemeSymbol::e(i))
            .chain(f_word.iter().map(|&i| SchemeSymbol::f(i)))
            .chain((1..=n).map(SchemeSymbol::h))
            .collect();
        Self::new(n, word)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn word(&self) -> &[SchemeSymbol] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// The permutation spelled by the F-part.
    pub fn u(&self) -> &Permutation {
        &self.u
    }

    /// The permutation spelled by the E-part.
    pub fn v(&self) -> &Permutation {
        &self.v
    }

    pub fn scheme_type(&self) -> (Permutation, Permutation) {
        (self.u.clone(), self.v.clone())
    }

    pub fn part(&self, kind: Kind) -> Vec<usize> {
        self.word
            .iter()
            .filter(|s| s.kind == kind)
            .map(|s| s.index)
            .collect()
    }

    /// Word position (1-based) of `h_i`.
    pub fn h_position(&self, line: usize) -> usize {
        self.word
            .iter()
            .position(|s| *s == SchemeSymbol::h(line))
            .map(|p| p + 1)
            .expect("every h_i occurs in a valid scheme")
    }
}

fn parse_tokens(text: &str) -> Result<Vec<SchemeSymbol>, SchemeError> {
    text.split_whitespace()
        .map(|tok| {
            let mut chars = tok.chars();
            let kind = match chars.next().map(|c| c.to_ascii_lowercase()) {
                Some('e') => Kind::E,
                Some('f') => Kind::F,
                Some('h') => Kind::H,
                _ => return Err(SchemeError::BadToken(tok.to_string())),
            };
            let index: usize = chars
                .as_str()
                .parse()
                .map_err(|_| SchemeError::BadToken(tok.to_string()))?;
            if index == 0 {
                return Err(SchemeError::BadToken(tok.to_string()));
            }
            Ok(SchemeSymbol { kind, index })
        })
        .collect()
}

impl fmt::Display for FactorizationScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self.word.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", toks.join(" "))
    }
}

impl FromStr for FactorizationScheme {
    type Err = SchemeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

/// The scheme used as the running example throughout the tests:
/// type `(4312, 4213)` in `GL_4`.
pub const RUNNING_EXAMPLE: &str = "f2 e1 h3 f3 e3 e2 f1 h1 f2 e1 h4 h2 f1";
