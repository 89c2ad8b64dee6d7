use std::fmt;

use crate::linalg::IndexSet;
use crate::perm::Permutation;

use super::{FactorizationScheme, Kind};

/// A crossing of the rigged arrangement. H-crossings are the bullets on
/// horizontal lines; `index` is the level for E/F and the line for H.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub kind: Kind,
    pub index: usize,
    /// 1-based position in the scheme word.
    pub position: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// Fictitious E-crossing at the left border.
    LeftBorder,
    /// Fictitious F-crossing at the right border.
    RightBorder,
    Crossing { kind: Kind, position: usize },
}

impl Boundary {
    pub fn kind(&self) -> Kind {
        match *self {
            Boundary::LeftBorder => Kind::E,
            Boundary::RightBorder => Kind::F,
            Boundary::Crossing { kind, .. } => kind,
        }
    }

    /// Horizontal coordinate: 0 for the left border, `len + 1` for the right.
    pub fn position(&self, len: usize) -> usize {
        match *self {
            Boundary::LeftBorder => 0,
            Boundary::RightBorder => len + 1,
            Boundary::Crossing { position, .. } => position,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChamberType {
    EE,
    EF,
    FE,
    FF,
}

impl ChamberType {
    pub fn from_kinds(left: Kind, right: Kind) -> Self {
        match (left, right) {
            (Kind::E, Kind::E) => ChamberType::EE,
            (Kind::E, Kind::F) => ChamberType::EF,
            (Kind::F, Kind::E) => ChamberType::FE,
            (Kind::F, Kind::F) => ChamberType::FF,
            _ => unreachable!("chamber endpoints are E or F crossings"),
        }
    }
}

impl fmt::Display for ChamberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chamber {
    /// Index into [`Arrangement::chambers`].
    pub id: usize,
    /// 0 for the bottom chamber, `n` for the top one.
    pub level: usize,
    /// Left-to-right ordinal within the level.
    pub ordinal: usize,
    pub left: Boundary,
    pub right: Boundary,
    pub chamber_type: ChamberType,
    /// `I(C)`: labels of F-lines passing below the chamber.
    pub rows: IndexSet,
    /// `J(C)`: labels of E-lines passing below the chamber.
    pub cols: IndexSet,
}

/// A chamber of the E- or F-subarrangement alone, given as the run of small
/// chambers `first..=last` on its level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BigChamber {
    pub part: Kind,
    pub level: usize,
    pub first: usize,
    pub last: usize,
}

/// The double pseudoline arrangement of a scheme, with the H-part kept as
/// bullets.
#[derive(Debug, Clone)]
pub struct Arrangement {
    n: usize,
    len: usize,
    u: Permutation,
    v: Permutation,
    crossings: Vec<Crossing>,
    chambers: Vec<Chamber>,
    /// `level_start[i]` is the id of the first chamber on level `i`.
    level_start: Vec<usize>,
    /// `e_states[k][p - 1]`: label of the E-line at height `p` after `k` symbols.
    e_states: Vec<Vec<usize>>,
    f_states: Vec<Vec<usize>>,
}

impl Arrangement {
    pub fn new(scheme: &FactorizationScheme) -> Self {
        let n = scheme.n();
        let len = scheme.len();
        let word = scheme.word();

        // E-lines are labelled bottom-up at the left end and traced forward.
        let mut e_states = Vec::with_capacity(len + 1);
        let mut cur: Vec<usize> = (1..=n).collect();
        e_states.push(cur.clone());
        for s in word {
            if s.kind == Kind::E {
                cur.swap(s.index - 1, s.index);
            }
            e_states.push(cur.clone());
        }

        // F-lines are labelled bottom-up at the right end and traced backward.
        let mut f_states = vec![Vec::new(); len + 1];
        let mut cur: Vec<usize> = (1..=n).collect();
        f_states[len] = cur.clone();
        for k in (0..len).rev() {
            let s = word[k];
            if s.kind == Kind::F {
                cur.swap(s.index - 1, s.index);
            }
            f_states[k] = cur.clone();
        }

        let crossings: Vec<Crossing> = word
            .iter()
            .enumerate()
            .map(|(k, s)| Crossing {
                kind: s.kind,
                index: s.index,
                position: k + 1,
            })
            .collect();

        let below = |states: &Vec<Vec<usize>>, time: usize, level: usize| {
            IndexSet::from_unsorted(states[time][..level].iter().copied())
                .expect("wire labels are distinct")
        };

        let mut chambers = Vec::with_capacity(len + 1);
        let mut level_start = Vec::with_capacity(n + 1);
        let push = |chambers: &mut Vec<Chamber>, level, ordinal, left: Boundary, right: Boundary| {
            let time = left.position(len);
            let id = chambers.len();
            chambers.push(Chamber {
                id,
                level,
                ordinal,
                left,
                right,
                chamber_type: ChamberType::from_kinds(left.kind(), right.kind()),
                rows: below(&f_states, time, level),
                cols: below(&e_states, time, level),
            });
        };

        level_start.push(0);
        push(&mut chambers, 0, 0, Boundary::LeftBorder, Boundary::RightBorder);
        for level in 1..n {
            level_start.push(chambers.len());
            let mut left = Boundary::LeftBorder;
            let mut ordinal = 0;
            for c in crossings
                .iter()
                .filter(|c| c.kind != Kind::H && c.index == level)
            {
                let right = Boundary::Crossing {
                    kind: c.kind,
                    position: c.position,
                };
                push(&mut chambers, level, ordinal, left, right);
                ordinal += 1;
                left = right;
            }
            push(&mut chambers, level, ordinal, left, Boundary::RightBorder);
        }
        if n >= 1 {
            level_start.push(chambers.len());
            push(&mut chambers, n, 0, Boundary::LeftBorder, Boundary::RightBorder);
        }

        Arrangement {
            n,
            len,
            u: scheme.u().clone(),
            v: scheme.v().clone(),
            crossings,
            chambers,
            level_start,
            e_states,
            f_states,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Length of the underlying scheme word.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing(&self, position: usize) -> &Crossing {
        &self.crossings[position - 1]
    }

    /// All chambers: bottom, then each level left to right, then top.
    pub fn chambers(&self) -> &[Chamber] {
        &self.chambers
    }

    pub fn chambers_on_level(&self, level: usize) -> &[Chamber] {
        let start = self.level_start[level];
        let end = self
            .level_start
            .get(level + 1)
            .copied()
            .unwrap_or(self.chambers.len());
        &self.chambers[start..end]
    }

    pub fn bottom(&self) -> &Chamber {
        &self.chambers[0]
    }

    pub fn top(&self) -> &Chamber {
        self.chambers.last().expect("arrangement has a top chamber")
    }

    /// Left-end labels of the F-lines (bottom-up).
    pub fn f_labels_left(&self) -> &[usize] {
        &self.f_states[0]
    }

    /// Right-end labels of the E-lines (bottom-up).
    pub fn e_labels_right(&self) -> &[usize] {
        &self.e_states[self.len]
    }

    /// Label of the E-line at height `line` just before word position `position`.
    pub fn e_line_before(&self, position: usize, line: usize) -> usize {
        self.e_states[position - 1][line - 1]
    }

    pub fn f_line_before(&self, position: usize, line: usize) -> usize {
        self.f_states[position - 1][line - 1]
    }

    /// The two pseudoline labels meeting at an E- or F-crossing.
    pub fn crossing_lines(&self, position: usize) -> (usize, usize) {
        let c = self.crossing(position);
        let state = match c.kind {
            Kind::E => &self.e_states[position - 1],
            Kind::F => &self.f_states[position - 1],
            Kind::H => panic!("H-crossings are not line crossings"),
        };
        (state[c.index - 1], state[c.index])
    }

    /// `(u·I(C), v⁻¹·J(C))`: the minor the chamber contributes to a criterion.
    pub fn criterion_minor(&self, chamber: &Chamber) -> (IndexSet, IndexSet) {
        (
            self.u.image(&chamber.rows),
            self.v.inverse().image(&chamber.cols),
        )
    }

    /// The family `F(i)`: criterion minors of every chamber except the bottom.
    pub fn chamber_minor_family(&self) -> Vec<(IndexSet, IndexSet)> {
        self.chambers[1..]
            .iter()
            .map(|c| self.criterion_minor(c))
            .collect()
    }

    /// Big chambers of one part on a level, left to right.
    pub fn big_chambers(&self, level: usize, part: Kind) -> Vec<BigChamber> {
        let small = self.chambers_on_level(level);
        let mut out = Vec::new();
        let mut first = 0;
        for (k, c) in small.iter().enumerate() {
            let closes = match c.right {
                Boundary::RightBorder => true,
                Boundary::Crossing { kind, .. } => kind == part,
                Boundary::LeftBorder => unreachable!(),
            };
            if closes {
                out.push(BigChamber {
                    part,
                    level,
                    first,
                    last: k,
                });
                first = k + 1;
            }
        }
        out
    }

    /// The big chamber of `part` on `level` whose horizontal span contains
    /// word position `position` (which must not be a boundary of it).
    pub fn big_chamber_at(&self, level: usize, part: Kind, position: usize) -> BigChamber {
        let small = self.chambers_on_level(level);
        *self
            .big_chambers(level, part)
            .iter()
            .find(|bc| {
                small[bc.first].left.position(self.len) < position
                    && position < small[bc.last].right.position(self.len)
            })
            .expect("big chambers of a level cover the strip")
    }

    /// The big chambers ending and starting at an E/F crossing.
    pub fn big_chambers_beside(&self, position: usize) -> (BigChamber, BigChamber) {
        let c = *self.crossing(position);
        let bcs = self.big_chambers(c.index, c.kind);
        let small = self.chambers_on_level(c.index);
        let k = bcs
            .iter()
            .position(|bc| small[bc.last].right == Boundary::Crossing { kind: c.kind, position })
            .expect("the crossing closes a big chamber of its own part");
        (bcs[k], bcs[k + 1])
    }

    pub fn small_chambers<'a>(&'a self, bc: &BigChamber) -> &'a [Chamber] {
        &self.chambers_on_level(bc.level)[bc.first..=bc.last]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::RUNNING_EXAMPLE;

    fn set(s: &str) -> IndexSet {
        IndexSet::from_unsorted(s.chars().map(|c| c.to_digit(10).unwrap() as usize)).unwrap()
    }

    fn running() -> Arrangement {
        Arrangement::new(&FactorizationScheme::parse(RUNNING_EXAMPLE).unwrap())
    }

    #[test]
    fn running_example_chamber_sets() {
        let arr = running();
        let sets: Vec<Vec<(IndexSet, IndexSet)>> = (1..4)
            .map(|l| {
                arr.chambers_on_level(l)
                    .iter()
                    .map(|c| (c.rows.clone(), c.cols.clone()))
                    .collect()
            })
            .collect();
        let expect = |pairs: &[(&str, &str)]| -> Vec<(IndexSet, IndexSet)> {
            pairs.iter().map(|(a, b)| (set(a), set(b))).collect()
        };
        assert_eq!(
            sets[0],
            expect(&[("3", "1"), ("3", "2"), ("2", "2"), ("2", "4"), ("1", "4")])
        );
        assert_eq!(
            sets[1],
            expect(&[("34", "12"), ("23", "12"), ("23", "24"), ("12", "24")])
        );
        assert_eq!(sets[2], expect(&[("234", "123"), ("123", "123"), ("123", "124")]));
        assert_eq!(arr.top().rows, set("1234"));
        assert_eq!(arr.bottom().cols, IndexSet::empty());
        assert_eq!(arr.chambers().len(), 14);
    }

    #[test]
    fn running_example_chamber_types() {
        use ChamberType::*;
        let arr = running();
        let types = |l| -> Vec<ChamberType> {
            arr.chambers_on_level(l).iter().map(|c| c.chamber_type).collect()
        };
        assert_eq!(types(0), vec![EF]);
        assert_eq!(types(1), vec![EE, EF, FE, EF, FF]);
        assert_eq!(types(2), vec![EF, FE, EF, FF]);
        assert_eq!(types(3), vec![EF, FE, EF]);
        assert_eq!(types(4), vec![EF]);
    }

    #[test]
    fn running_example_line_labels() {
        let arr = running();
        assert_eq!(arr.f_labels_left(), &[3, 4, 2, 1]);
        assert_eq!(arr.e_labels_right(), &[4, 2, 1, 3]);
    }

    #[test]
    fn running_example_criterion_family() {
        let arr = running();
        let family: Vec<String> = arr
            .chamber_minor_family()
            .iter()
            .map(|(i, j)| format!("{i},{j}"))
            .collect();
        assert_eq!(
            family,
            vec![
                "1,3", "1,2", "3,2", "3,1", "4,1", "12,23", "13,23", "13,12", "34,12", "123,234",
                "134,234", "134,123", "1234,1234"
            ]
        );
    }

    #[test]
    fn no_crossings() {
        let arr = Arrangement::new(&FactorizationScheme::parse("h1 h2").unwrap());
        let c = arr.chambers();
        assert_eq!(c.len(), 3);
        assert_eq!((c[0].rows.clone(), c[0].cols.clone()), (IndexSet::empty(), IndexSet::empty()));
        assert_eq!((c[1].rows.clone(), c[1].cols.clone()), (set("1"), set("1")));
        assert_eq!((c[2].rows.clone(), c[2].cols.clone()), (set("12"), set("12")));
        assert_eq!(c[1].chamber_type, ChamberType::EF);
    }

    #[test]
    fn big_chambers_of_running_example() {
        let arr = running();
        // level 2 F-part: crossings f2@1 and f2@9 split the strip in three
        let f2 = arr.big_chambers(2, Kind::F);
        assert_eq!(f2.len(), 3);
        assert_eq!((f2[1].first, f2[1].last), (1, 2));
        // E-part of level 1 has two crossings
        assert_eq!(arr.big_chambers(1, Kind::E).len(), 3);
        let (b, c) = arr.big_chambers_beside(9);
        assert_eq!((b.first, b.last, c.first, c.last), (1, 2, 3, 3));
        let a = arr.big_chamber_at(3, Kind::F, 9);
        assert_eq!((a.first, a.last), (1, 2));
        let d = arr.big_chamber_at(1, Kind::F, 9);
        assert_eq!((d.first, d.last), (2, 3));
        assert_eq!(arr.crossing_lines(9), (3, 1));
    }

    #[test]
    fn gl2_families() {
        // F-part first: the bounded chamber gives x22.
        let arr = Arrangement::new(&FactorizationScheme::parse("h1 f1 h2 e1").unwrap());
        let fam: Vec<String> = arr
            .chamber_minor_family()
            .iter()
            .map(|(i, j)| format!("{i},{j}"))
            .collect();
        assert_eq!(fam, vec!["1,2", "2,2", "2,1", "12,12"]);
        // E-part first: the bounded chamber gives x11.
        let arr = Arrangement::new(&FactorizationScheme::parse("h1 e1 f1 h2").unwrap());
        let fam: Vec<String> = arr
            .chamber_minor_family()
            .iter()
            .map(|(i, j)| format!("{i},{j}"))
            .collect();
        assert_eq!(fam, vec!["1,2", "1,1", "2,1", "12,12"]);
    }
}
