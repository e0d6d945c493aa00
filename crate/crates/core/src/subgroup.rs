//! Finitely generated subgroups as folded core graphs.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::word::{Alphabet, Letter, Word};

/// Folded (deterministic, co-deterministic) core graph with base state 0.
///
/// States are numbered breadth-first from the base, scanning letters in
/// canonical order, so two graphs of the same subgroup compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StallingsGraph {
    rank: usize,
    transitions: Vec<BTreeMap<Letter, usize>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            // keep the smaller index so the base (0) is always a root
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.0[hi] = lo;
        }
    }
}

impl StallingsGraph {
    /// Folds the wedge of generator loops and prunes it to its core.
    /// Identity generators are skipped.
    pub fn build(generators: &[Word], rank: usize) -> StallingsGraph {
        let mut edges: Vec<(usize, Letter, usize)> = Vec::new();
        let mut n_states = 1;
        for g in generators.iter().filter(|g| !g.is_identity()) {
            let letters = g.letters();
            let mut prev = 0;
            for (i, &l) in letters.iter().enumerate() {
                let next = if i + 1 == letters.len() {
                    0
                } else {
                    n_states += 1;
                    n_states - 1
                };
                edges.push((prev, l, next));
                prev = next;
            }
        }

        let mut uf = UnionFind((0..n_states).collect());
        loop {
            let mut merged = false;
            let mut out: HashMap<(usize, Letter), usize> = HashMap::new();
            for &(s, l, t) in &edges {
                let (s, t) = (uf.find(s), uf.find(t));
                for (from, letter, to) in [(s, l, t), (t, l.inverse(), s)] {
                    match out.get(&(from, letter)) {
                        Some(&existing) => {
                            let existing = uf.find(existing);
                            if existing != uf.find(to) {
                                uf.union(existing, to);
                                merged = true;
                            }
                        }
                        None => {
                            out.insert((from, letter), to);
                        }
                    }
                }
            }
            if !merged {
                break;
            }
        }

        let mut transitions: Vec<BTreeMap<Letter, usize>> = vec![BTreeMap::new(); n_states];
        for &(s, l, t) in &edges {
            let (s, t) = (uf.find(s), uf.find(t));
            transitions[s].insert(l, t);
            transitions[t].insert(l.inverse(), s);
        }

        // prune hanging trees: non-base states of degree <= 1
        let mut alive: Vec<bool> = (0..n_states).map(|s| uf.find(s) == s).collect();
        let mut queue: VecDeque<usize> = (1..n_states)
            .filter(|&s| alive[s] && transitions[s].len() <= 1)
            .collect();
        while let Some(s) = queue.pop_front() {
            if !alive[s] {
                continue;
            }
            alive[s] = false;
            let out: Vec<(Letter, usize)> = transitions[s].iter().map(|(&l, &t)| (l, t)).collect();
            transitions[s].clear();
            for (l, t) in out {
                transitions[t].remove(&l.inverse());
                if t != 0 && alive[t] && transitions[t].len() <= 1 {
                    queue.push_back(t);
                }
            }
        }

        StallingsGraph::canonical(rank, &transitions)
    }

    fn canonical(rank: usize, transitions: &[BTreeMap<Letter, usize>]) -> StallingsGraph {
        let mut number: HashMap<usize, usize> = HashMap::new();
        let mut order = vec![0usize];
        number.insert(0, 0);
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            for &t in transitions[s].values() {
                if let std::collections::hash_map::Entry::Vacant(e) = number.entry(t) {
                    e.insert(order.len());
                    order.push(t);
                }
            }
            i += 1;
        }
        let transitions = order
            .iter()
            .map(|&s| {
                transitions[s]
                    .iter()
                    .map(|(&l, t)| (l, number[t]))
                    .collect()
            })
            .collect();
        StallingsGraph { rank, transitions }
    }

    pub fn trivial(rank: usize) -> StallingsGraph {
        StallingsGraph {
            rank,
            transitions: vec![BTreeMap::new()],
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    /// Number of (undirected) edges.
    pub fn edge_count(&self) -> usize {
        self.transitions.iter().map(|t| t.len()).sum::<usize>() / 2
    }

    /// Rank of the subgroup: `E - V + 1`.
    pub fn subgroup_rank(&self) -> usize {
        self.edge_count() + 1 - self.state_count()
    }

    pub fn step(&self, state: usize, letter: Letter) -> Option<usize> {
        self.transitions[state].get(&letter).copied()
    }

    /// Reads a letter sequence from `state`; `None` if the path leaves the graph.
    pub fn read(&self, state: usize, letters: &[Letter]) -> Option<usize> {
        letters.iter().try_fold(state, |s, &l| self.step(s, l))
    }

    pub fn contains(&self, g: &Word) -> bool {
        self.read(0, g.letters()) == Some(0)
    }

    /// All elements of length `<= max_length`, shortest first, then in
    /// canonical letter order.
    pub fn enumerate_elements(&self, max_length: usize) -> Vec<Word> {
        let mut found = Vec::new();
        let mut path: Vec<Letter> = Vec::new();
        self.enumerate_from(0, &mut path, max_length, &mut found);
        found.sort_by(|a: &Word, b: &Word| {
            a.len()
                .cmp(&b.len())
                .then_with(|| a.letters().cmp(b.letters()))
        });
        found
    }

    fn enumerate_from(&self, state: usize, path: &mut Vec<Letter>, left: usize, found: &mut Vec<Word>) {
        if state == 0 {
            found.push(Word::from_reduced(path.clone()));
        }
        if left == 0 {
            return;
        }
        for (&l, &t) in &self.transitions[state] {
            if path.last() == Some(&l.inverse()) {
                continue;
            }
            path.push(l);
            self.enumerate_from(t, path, left - 1, found);
            path.pop();
        }
    }

    /// Finds `k` with `[p c^k q]` in the subgroup, preferring the smallest
    /// `|k|` and positive `k` on ties.
    ///
    /// Small `|k|` are tested directly. Past that threshold the product is
    /// `A c^m B` without cancellation, so the answer depends only on the
    /// state reached after `A c^m`, which cycles or dies within
    /// `state_count` steps.
    pub fn coset_power_membership(&self, p: &Word, c: &Word, q: &Word) -> Option<i64> {
        if c.is_identity() {
            return self.contains(&p.concat(q)).then_some(0);
        }
        let dec = c.cyclic_reduce().expect("nonidentity");
        let p = p.concat(&dec.conjugator);
        let q = dec.conjugator.inverse().concat(q);
        let c = dec.core;

        let jp = (p.len() / c.len() + 2) as i64;
        let jq = (q.len() / c.len() + 2) as i64;
        let threshold = jp + jq;

        for k in std::iter::once(0).chain((1..threshold).flat_map(|k| [k, -k])) {
            if self.contains(&p.concat(&c.pow(k)).concat(&q)) {
                return Some(k);
            }
        }

        let forward = self.periodic_tail_hit(&p, &c, &q, jp, jq);
        let backward = self.periodic_tail_hit(&p, &c.inverse(), &q, jp, jq);
        match (forward, backward) {
            (Some(m), Some(n)) if n < m => Some(-(threshold + n)),
            (Some(m), _) => Some(threshold + m),
            (None, Some(n)) => Some(-(threshold + n)),
            (None, None) => None,
        }
    }

    /// Smallest `m >= 0` with `[p c^jp] c^m [c^jq q]` in the subgroup.
    fn periodic_tail_hit(&self, p: &Word, c: &Word, q: &Word, jp: i64, jq: i64) -> Option<i64> {
        let head = p.concat(&c.pow(jp));
        let tail = c.pow(jq).concat(q);
        let mut state = self.read(0, head.letters())?;
        let mut seen = vec![false; self.state_count()];
        for m in 0.. {
            if seen[state] {
                return None;
            }
            seen[state] = true;
            if self.read(state, tail.letters()) == Some(0) {
                return Some(m);
            }
            state = self.read(state, c.letters())?;
        }
        unreachable!()
    }

    /// DOT rendering: one node per state, positive-letter edges.
    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut out = String::from("digraph core {\n  rankdir=LR;\n");
        for s in 0..self.state_count() {
            let shape = if s == 0 { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  s{s} [label=\"{s}\", shape={shape}];");
        }
        for (s, t) in self.transitions.iter().enumerate() {
            for (&l, &target) in t {
                if l.is_positive() {
                    let _ = writeln!(
                        out,
                        "  s{s} -> s{target} [label=\"{}\"];",
                        alphabet.name(l.generator())
                    );
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Alphabet {
        Alphabet::standard(4).unwrap()
    }

    fn ws(list: &[&str]) -> Vec<Word> {
        list.iter().map(|s| f4().parse(s).unwrap()).collect()
    }

    fn w(s: &str) -> Word {
        f4().parse(s).unwrap()
    }

    fn fix_phi() -> StallingsGraph {
        StallingsGraph::build(&ws(&["a", "b a b^-1", "c a c^-1"]), 4)
    }

    #[test]
    fn two_generator_graph() {
        let h = StallingsGraph::build(&ws(&["a", "b a b^-1"]), 4);
        assert_eq!(h.state_count(), 2);
        assert_eq!(h.step(0, Letter::gen(0)), Some(0));
        assert_eq!(h.step(0, Letter::gen(1)), Some(1));
        assert_eq!(h.step(1, Letter::gen(0)), Some(1));
        assert_eq!(h.edge_count(), 3);
    }

    #[test]
    fn empty_generators_give_trivial_graph() {
        let h = StallingsGraph::build(&[], 4);
        assert_eq!(h, StallingsGraph::trivial(4));
        let h = StallingsGraph::build(&[Word::identity()], 4);
        assert_eq!(h.state_count(), 1);
        assert_eq!(h.edge_count(), 0);
    }

    #[test]
    fn fixed_subgroup_of_phi_has_three_states() {
        let h = fix_phi();
        assert_eq!(h.state_count(), 3);
        assert_eq!(h.subgroup_rank(), 3);
    }

    #[test]
    fn folding_merges_shared_prefixes() {
        // a<b, b^2>a^-1 = a<b>a^-1: one a-edge and a b-loop
        let h = StallingsGraph::build(&ws(&["a b a^-1", "a b^2 a^-1"]), 2);
        assert_eq!(h.state_count(), 2);
        assert_eq!(h.subgroup_rank(), 1);
        assert!(h.contains(&w("a b a^-1")));
        assert!(!h.contains(&w("b")));
    }

    #[test]
    fn membership_examples() {
        let h = fix_phi();
        assert!(h.contains(&w("b a^3 b^-1 a^-1")));
        assert!(h.contains(&Word::identity()));
        assert!(!h.contains(&w("d")));
        assert!(!h.contains(&w("b")));
    }

    #[test]
    fn enumerate_examples() {
        let a = StallingsGraph::build(&ws(&["a"]), 4);
        assert_eq!(
            a.enumerate_elements(2),
            ws(&["", "a", "a^-1", "a^2", "a^-2"])
        );
        assert_eq!(StallingsGraph::trivial(4).enumerate_elements(5), ws(&[""]));
        let fix_delta = StallingsGraph::build(&ws(&["a", "b a b^-1"]), 2);
        assert!(fix_delta.enumerate_elements(3).contains(&w("b a b^-1")));
    }

    #[test]
    fn coset_power_examples() {
        let a = StallingsGraph::build(&ws(&["a"]), 4);
        assert_eq!(a.coset_power_membership(&Word::identity(), &w("a"), &w("a^-3")), Some(0));
        // k = 0 gives b b^-1 = 1
        assert_eq!(a.coset_power_membership(&w("b"), &w("a"), &w("b^-1")), Some(0));
        assert_eq!(a.coset_power_membership(&w("b"), &w("a"), &w("b^-2")), None);
        assert_eq!(a.coset_power_membership(&w("b"), &w("a"), &Word::identity()), None);
        let h = fix_phi();
        assert_eq!(h.coset_power_membership(&w("b"), &w("a^-1"), &w("b^-1")), Some(0));
    }

    #[test]
    fn coset_power_beyond_direct_range() {
        let alph = Alphabet::standard(2).unwrap();
        let p = |s: &str| alph.parse(s).unwrap();
        // [a b^(1+2k) a^-1] in <a b^25 a^-1> iff 1 + 2k = 0 mod 25
        let h = StallingsGraph::build(&[p("a b^25 a^-1")], 2);
        assert_eq!(h.coset_power_membership(&p("a b"), &p("b^2"), &p("a^-1")), Some(12));
        assert_eq!(h.coset_power_membership(&p("a b^-1"), &p("b^2"), &p("a^-1")), Some(-12));
        assert_eq!(h.coset_power_membership(&p("a b"), &p("b^2"), &p("a")), None);
        let h = StallingsGraph::build(&[p("a b a b a b")], 2);
        assert_eq!(h.coset_power_membership(&p("a b a b"), &p("a b"), &Word::identity()), Some(1));
    }

    #[test]
    fn coset_power_with_non_cyclically_reduced_period() {
        let h = fix_phi();
        assert_eq!(h.coset_power_membership(&w("c"), &w("b a b^-1"), &w("d")), None);
        assert_eq!(h.coset_power_membership(&Word::identity(), &w("b a b^-1"), &w("d")), None);
        // a b^(k+1) a^-1 in <a b^3 a^-1> iff k = -1 mod 3
        let h3 = StallingsGraph::build(&ws(&["a b^3 a^-1"]), 4);
        assert_eq!(h3.coset_power_membership(&Word::identity(), &w("a b a^-1"), &w("a b a^-1")), Some(-1));
        assert_eq!(h.coset_power_membership(&Word::identity(), &w("b a b^-1"), &Word::identity()), Some(0));
    }

    #[test]
    fn dot_lists_positive_edges() {
        let h = StallingsGraph::build(&ws(&["a", "b a b^-1"]), 4);
        let dot = h.to_dot(&f4());
        assert_eq!(dot.matches("->").count(), 3);
        assert!(dot.contains("s0 -> s1 [label=\"b\"]"));
    }
}
