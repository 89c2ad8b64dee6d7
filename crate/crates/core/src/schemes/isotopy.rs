use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;

use crate::linalg::IndexSet;
use crate::perm::Permutation;

use super::moves::{apply_move, applicable_moves, MoveKind};
use super::{Arrangement, FactorizationScheme, Kind, SchemeSymbol};

/// Sorted multiset of chamber-set pairs `(I(C), J(C))` over all chambers.
pub type IsotopyKey = Vec<(IndexSet, IndexSet)>;

pub fn isotopy_key(scheme: &FactorizationScheme) -> IsotopyKey {
    let arr = Arrangement::new(scheme);
    let mut key: IsotopyKey = arr
        .chambers()
        .iter()
        .map(|c| (c.rows.clone(), c.cols.clone()))
        .collect();
    key.sort();
    key
}

#[derive(Debug, Clone)]
pub struct IsotopyNode {
    pub key: IsotopyKey,
    /// First scheme reached by the search with this key (H-part at the end).
    pub representative: FactorizationScheme,
    /// The criterion family `F(i)` of the representative, sorted.
    pub family: Vec<(IndexSet, IndexSet)>,
}

#[derive(Debug, Clone)]
pub struct IsotopyGraph {
    pub u: Permutation,
    pub v: Permutation,
    /// Sorted by key.
    pub nodes: Vec<IsotopyNode>,
    /// Pairs `(a, b)` with `a < b`, sorted.
    pub edges: Vec<(usize, usize)>,
}

/// The pairs in `a` but not in `b` and vice versa, as multisets.
pub fn key_difference(a: &IsotopyKey, b: &IsotopyKey) -> (IsotopyKey, IsotopyKey) {
    let (mut i, mut j) = (0, 0);
    let (mut only_a, mut only_b) = (Vec::new(), Vec::new());
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                only_a.push(x.clone());
                i += 1;
            }
            (Some(_), Some(y)) => {
                only_b.push(y.clone());
                j += 1;
            }
            (Some(x), None) => {
                only_a.push(x.clone());
                i += 1;
            }
            (None, Some(y)) => {
                only_b.push(y.clone());
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    (only_a, only_b)
}

fn with_h_tail(n: usize, ef: &[SchemeSymbol]) -> FactorizationScheme {
    let word = ef.iter().copied().chain((1..=n).map(SchemeSymbol::h)).collect();
    FactorizationScheme::new(n, word).expect("moves keep schemes valid")
}

fn sorted_family(scheme: &FactorizationScheme) -> Vec<(IndexSet, IndexSet)> {
    let mut fam = Arrangement::new(scheme).chamber_minor_family();
    fam.sort();
    fam
}

/// Enumerates the isotopy types of schemes of type `(u, v)` by a breadth-first
/// search over E/F words closed under all moves. H-symbols carry no chambers,
/// so they are parked at the end of every word.
pub fn enumerate_isotopy_types(u: &Permutation, v: &Permutation) -> IsotopyGraph {
    let n = u.n();
    let seed = FactorizationScheme::from_parts(n, &v.first_reduced_word(), &u.first_reduced_word())
        .expect("first reduced words form a valid scheme");
    let strip = |s: &FactorizationScheme| -> Vec<SchemeSymbol> {
        s.word().iter().copied().filter(|c| c.kind != Kind::H).collect()
    };

    let mut seen: HashSet<Vec<SchemeSymbol>> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut by_key: BTreeMap<IsotopyKey, FactorizationScheme> = BTreeMap::new();
    let mut key_edges: BTreeSet<(IsotopyKey, IsotopyKey)> = BTreeSet::new();

    let start = strip(&seed);
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(ef) = queue.pop_front() {
        let scheme = with_h_tail(n, &ef);
        let key = isotopy_key(&scheme);
        by_key.entry(key.clone()).or_insert_with(|| scheme.clone());
        for mv in applicable_moves(&scheme) {
            let next = apply_move(&scheme, mv).expect("applicable move");
            let next_ef = strip(&next);
            if mv.kind != MoveKind::Trivial2 {
                let next_key = isotopy_key(&next);
                if next_key != key {
                    let pair = if key < next_key {
                        (key.clone(), next_key)
                    } else {
                        (next_key, key.clone())
                    };
                    key_edges.insert(pair);
                }
            }
            if seen.insert(next_ef.clone()) {
                queue.push_back(next_ef);
            }
        }
    }

    let index: BTreeMap<&IsotopyKey, usize> = by_key.keys().enumerate().map(|(i, k)| (k, i)).collect();
    let edges = key_edges.iter().map(|(a, b)| (index[a], index[b])).collect();
    let nodes = by_key
        .iter()
        .map(|(key, rep)| IsotopyNode {
            key: key.clone(),
            representative: rep.clone(),
            family: sorted_family(rep),
        })
        .collect();
    IsotopyGraph {
        u: u.clone(),
        v: v.clone(),
        nodes,
        edges,
    }
}

impl IsotopyGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, node: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == node {
                    Some(b)
                } else if b == node {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(a) = stack.pop() {
            for b in self.neighbors(a) {
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Minors shared by every node's family.
    pub fn common_minors(&self) -> Vec<(IndexSet, IndexSet)> {
        let Some(first) = self.nodes.first() else {
            return Vec::new();
        };
        first
            .family
            .iter()
            .filter(|m| self.nodes.iter().all(|node| node.family.contains(m)))
            .cloned()
            .collect()
    }

    pub fn to_dot_with<F: Fn(&IsotopyNode) -> String>(&self, label: F) -> String {
        let mut out = String::from("graph isotopy {\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", label(node).replace('"', "\\\""));
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -- n{b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_dot(&self) -> String {
        self.to_dot_with(|node| {
            node.family
                .iter()
                .map(|(i, j)| format!("D{i},{j}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schemes::{Move, RUNNING_EXAMPLE};

    fn scheme(s: &str) -> FactorizationScheme {
        FactorizationScheme::parse(s).unwrap()
    }

    #[test]
    fn trivial_moves_keep_key() {
        let s = scheme(RUNNING_EXAMPLE);
        for mv in applicable_moves(&s) {
            if mv.kind == MoveKind::Trivial2 {
                assert_eq!(isotopy_key(&apply_move(&s, mv).unwrap()), isotopy_key(&s));
            }
        }
    }

    #[test]
    fn braid_changes_one_pair() {
        let s = scheme("e1 e2 e1 h1 h2 h3");
        let t = apply_move(&s, Move::new(MoveKind::Braid3, 1)).unwrap();
        let (a, b) = key_difference(&isotopy_key(&s), &isotopy_key(&t));
        assert_eq!((a.len(), b.len()), (1, 1));
    }

    #[test]
    fn gl2_has_two_types() {
        let w = Permutation::longest_element(2);
        let g = enumerate_isotopy_types(&w, &w);
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edges, vec![(0, 1)]);
        assert!(g.is_connected());
    }

    #[test]
    fn identity_type_is_a_single_node() {
        let e = Permutation::identity(3);
        let g = enumerate_isotopy_types(&e, &e);
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.nodes[0].family.len(), 3);
    }

    #[test]
    fn gl3_longest_has_34_types() {
        let w = Permutation::longest_element(3);
        let g = enumerate_isotopy_types(&w, &w);
        assert_eq!(g.node_count(), 34);
        assert!(g.is_connected());
        assert!(g.nodes.iter().all(|node| node.family.len() == 9));
        for &(a, b) in &g.edges {
            let (x, y) = key_difference(&g.nodes[a].key, &g.nodes[b].key);
            assert_eq!((x.len(), y.len()), (1, 1));
        }
        let dot = g.to_dot();
        assert!(dot.starts_with("graph isotopy {"));
        assert_eq!(dot.matches(" -- ").count(), g.edge_count());
    }
}
