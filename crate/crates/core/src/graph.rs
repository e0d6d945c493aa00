//! Dynamics graphs: limit points grouped into isoglossy classes under the
//! fixed subgroup, joined by edges from backward to forward limits.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::automorphism::AutoPair;
use crate::dynamics::{omega_limit, omega_limit_backward, IterationConfig, LimitPoint, LimitResult};
use crate::error::Result;
use crate::subgroup::StallingsGraph;
use crate::word::{Alphabet, Letter, Word};

/// Default search radius over the fixed subgroup for comparisons involving
/// prefix approximations.
pub const DEFAULT_SEARCH_BOUND: usize = 8;

/// Outcome of an isoglossy test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Isogloss {
    No,
    /// Decided exactly (both points rational).
    Exact,
    /// Found by bounded search on prefixes.
    Approximate,
}

impl Isogloss {
    pub fn holds(self) -> bool {
        self != Isogloss::No
    }
}

/// Tests whether `X = gY` for some `g` in the subgroup `H`.
pub fn isogloss(h: &StallingsGraph, x: &LimitPoint, y: &LimitPoint, search_bound: usize) -> Isogloss {
    match (x, y) {
        (LimitPoint::Rational(_), LimitPoint::Rational(_)) => isogloss_with(h, &[], x, y),
        _ => isogloss_with(h, &h.enumerate_elements(search_bound), x, y),
    }
}

/// `elements` is the bounded enumeration of `H`, used only when a point is
/// a prefix approximation.
fn isogloss_with(h: &StallingsGraph, elements: &[Word], x: &LimitPoint, y: &LimitPoint) -> Isogloss {
    if let (LimitPoint::Rational(x), LimitPoint::Rational(y)) = (x, y) {
        let c = x.period();
        let d = y.period();
        if c.len() != d.len() {
            return Isogloss::No;
        }
        // With c = c1 c2 and d = c2 c1, p c^∞ = p c1 d^∞, so X = gY exactly
        // when g = [p c^m c1 q^-1] for some m.
        let n = c.len();
        let Some(split) = (0..n).find(|&i| &c.rotate_left(i) == d) else {
            return Isogloss::No;
        };
        let c1 = c.prefix(split);
        let q = c1.concat(&y.head().inverse());
        return match h.coset_power_membership(x.head(), c, &q) {
            Some(_) => Isogloss::Exact,
            None => Isogloss::No,
        };
    }
    let cert = |p: &LimitPoint, other: &LimitPoint| match p {
        LimitPoint::PrefixApprox { prefix, .. } => prefix.clone(),
        LimitPoint::Rational(r) => {
            let pad = elements.iter().map(Word::len).max().unwrap_or(0);
            r.prefix(other.certified_length().unwrap_or(0) + 2 * pad + 2)
        }
    };
    let xp = cert(x, y);
    let yp = cert(y, x);
    let needed = xp.len().min(yp.len()) / 2;
    for g in elements {
        if g.len() >= yp.len() {
            continue;
        }
        let z = g.concat(&yp);
        let n = z.len().min(xp.len());
        if n >= needed && n > 0 && z.common_prefix_len(&xp) >= n {
            return Isogloss::Approximate;
        }
    }
    Isogloss::No
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoglossyClass {
    /// The first member discovered.
    pub representative: LimitPoint,
    pub members: Vec<LimitPoint>,
    /// Some membership was decided by bounded search.
    pub approximate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    /// Seeds producing this edge, sorted by their text form.
    pub labels: Vec<Word>,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedDiagnostic {
    pub seed: Word,
    pub message: String,
}

/// A sample-based under-approximation of the dynamics graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicsGraph {
    pub alphabet: Alphabet,
    pub vertices: Vec<IsoglossyClass>,
    pub edges: Vec<Edge>,
    /// Seeds fixed by the automorphism (they contribute no edge).
    pub fixed_seeds: Vec<Word>,
    /// Seeds whose limits could not be resolved.
    pub diagnostics: Vec<SeedDiagnostic>,
}

/// All nonidentity reduced words of length at most 2, in shortlex order.
pub fn default_seeds(rank: usize) -> Vec<Word> {
    let mut out: Vec<Word> = Letter::all(rank).map(Word::letter).collect();
    for x in Letter::all(rank) {
        for y in Letter::all(rank) {
            if y != x.inverse() {
                out.push(Word::reduce([x, y]));
            }
        }
    }
    out
}

/// Builds the dynamics graph from the limits of `seeds`.
pub fn build_graph(phi: &AutoPair, fix_gens: &[Word], seeds: &[Word], cfg: &IterationConfig) -> Result<DynamicsGraph> {
    build_graph_with_bound(phi, fix_gens, seeds, cfg, DEFAULT_SEARCH_BOUND)
}

/// As [`build_graph`], with `search_bound` limiting the `Fix` elements tried
/// when a prefix approximation is compared.
pub fn build_graph_with_bound(
    phi: &AutoPair,
    fix_gens: &[Word],
    seeds: &[Word],
    cfg: &IterationConfig,
    search_bound: usize,
) -> Result<DynamicsGraph> {
    phi.verify_fixed_generators(fix_gens)?;
    for s in seeds {
        s.check_rank(phi.rank())?;
    }
    let h = StallingsGraph::build(fix_gens, phi.rank());
    let limits: Vec<(LimitResult, LimitResult)> = seeds
        .par_iter()
        .map(|g| Ok((omega_limit_backward(phi, g, cfg)?, omega_limit(phi, g, cfg)?)))
        .collect::<Result<_>>()?;

    let mut elements: Option<Vec<Word>> = None;
    let mut graph = DynamicsGraph {
        alphabet: phi.alphabet().clone(),
        vertices: Vec::new(),
        edges: Vec::new(),
        fixed_seeds: Vec::new(),
        diagnostics: Vec::new(),
    };
    let mut edge_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (seed, (back, fwd)) in seeds.iter().zip(limits) {
        if seed.is_identity() || phi.fixes(seed) {
            graph.fixed_seeds.push(seed.clone());
            continue;
        }
        let (Some(bp), Some(fp)) = (back.point(), fwd.point()) else {
            graph.diagnostics.push(SeedDiagnostic {
                seed: seed.clone(),
                message: unresolved_message(&back, &fwd),
            });
            continue;
        };
        let source = graph.classify(&h, &mut elements, search_bound, bp);
        let target = graph.classify(&h, &mut elements, search_bound, fp);
        let slot = *edge_index.entry((source, target)).or_insert_with(|| {
            graph.edges.push(Edge {
                source,
                target,
                labels: Vec::new(),
            });
            graph.edges.len() - 1
        });
        graph.edges[slot].labels.push(seed.clone());
    }
    let alphabet = graph.alphabet.clone();
    for e in &mut graph.edges {
        e.labels.sort_by_cached_key(|w| alphabet.format(w));
        e.labels.dedup();
    }
    Ok(graph)
}

fn unresolved_message(back: &LimitResult, fwd: &LimitResult) -> String {
    let describe = |r: &LimitResult| match r {
        LimitResult::FixedElement(_) => "reaches a fixed element".to_string(),
        LimitResult::Boundary { .. } => "converged".to_string(),
        LimitResult::NotConverged { diagnostics, .. } => diagnostics.reason.clone(),
    };
    format!("backward: {}; forward: {}", describe(back), describe(fwd))
}

impl DynamicsGraph {
    fn classify(
        &mut self,
        h: &StallingsGraph,
        elements: &mut Option<Vec<Word>>,
        search_bound: usize,
        point: &LimitPoint,
    ) -> usize {
        for (i, class) in self.vertices.iter_mut().enumerate() {
            let needs_search = !matches!(
                (&class.representative, point),
                (LimitPoint::Rational(_), LimitPoint::Rational(_))
            );
            let elems: &[Word] = if needs_search {
                elements.get_or_insert_with(|| h.enumerate_elements(search_bound))
            } else {
                &[]
            };
            match isogloss_with(h, elems, &class.representative, point) {
                Isogloss::No => {}
                verdict => {
                    if !class.members.contains(point) {
                        class.members.push(point.clone());
                    }
                    class.approximate |= verdict == Isogloss::Approximate;
                    return i;
                }
            }
        }
        self.vertices.push(IsoglossyClass {
            representative: point.clone(),
            members: vec![point.clone()],
            approximate: false,
        });
        self.vertices.len() - 1
    }

    /// Always true: the graph only reflects the sampled seeds.
    pub fn is_under_approximation(&self) -> bool {
        true
    }

    pub fn vertex_name(&self, v: usize) -> String {
        self.vertices[v].representative.format(&self.alphabet)
    }

    /// Index of the class containing `point`, decided with the default
    /// search bound.
    pub fn find_vertex(&self, fix: &StallingsGraph, point: &LimitPoint) -> Option<usize> {
        self.vertices.iter().position(|c| {
            isogloss(fix, &c.representative, point, DEFAULT_SEARCH_BOUND).holds()
        })
    }

    /// Number of weakly connected components.
    pub fn component_count(&self) -> usize {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.source), find(&mut parent, e.target));
            parent[a] = b;
        }
        (0..n).filter(|&v| find(&mut parent, v) == v).count()
    }

    /// First loop edge: its vertex and labels. A loop certifies a
    /// parabolic orbit.
    pub fn has_parabolic_loop(&self) -> Option<(usize, &[Word])> {
        self.edges
            .iter()
            .find(|e| e.is_loop())
            .map(|e| (e.source, e.labels.as_slice()))
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_loop()).count()
    }

    /// Graphviz rendering with deterministic ordering.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dynamics {\n  rankdir=LR;\n");
        for v in 0..self.vertices.len() {
            let _ = writeln!(out, "  v{v} [label=\"{}\"];", escape(&self.vertex_name(v)));
        }
        for e in &self.edges {
            let labels: Vec<String> = e.labels.iter().map(|w| self.alphabet.format(w)).collect();
            let _ = writeln!(
                out,
                "  v{} -> v{} [label=\"{}\"];",
                e.source,
                e.target,
                escape(&labels.join(", "))
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        let a = &self.alphabet;
        let vertices: Vec<Value> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut v = limit_point_json(&c.representative, a);
                v["id"] = json!(i);
                v["name"] = json!(self.vertex_name(i));
                v["approximate"] = json!(c.approximate);
                v["members"] = json!(c.members.len());
                v
            })
            .collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| {
                json!({
                    "source": e.source,
                    "target": e.target,
                    "labels": e.labels.iter().map(|w| a.format(w)).collect::<Vec<_>>(),
                    "loop": e.is_loop(),
                })
            })
            .collect();
        json!({
            "vertices": vertices,
            "edges": edges,
            "components": self.component_count(),
            "parabolic_loop": self.has_parabolic_loop().map(|(v, _)| self.vertex_name(v)),
            "under_approximation": self.is_under_approximation(),
            "fixed_seeds": self.fixed_seeds.iter().map(|w| a.format(w)).collect::<Vec<_>>(),
            "diagnostics": self
                .diagnostics
                .iter()
                .map(|d| json!({"seed": a.format(&d.seed), "message": d.message}))
                .collect::<Vec<_>>(),
        })
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// JSON form of a limit point.
pub fn limit_point_json(p: &LimitPoint, a: &Alphabet) -> Value {
    match p {
        LimitPoint::Rational(r) => json!({
            "kind": "rational",
            "head": a.format(r.head()),
            "period": a.format(r.period()),
            "text": r.format(a),
        }),
        LimitPoint::PrefixApprox { prefix, certified_length } => json!({
            "kind": "prefix-approx",
            "prefix": a.format(prefix),
            "certified_length": certified_length,
            "text": p.format(a),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::RationalPoint;

    fn f4() -> Alphabet {
        Alphabet::standard(4).unwrap()
    }

    fn w(s: &str) -> Word {
        f4().parse(s).unwrap()
    }

    fn rat(head: &str, period: &str) -> LimitPoint {
        LimitPoint::Rational(RationalPoint::new(&w(head), &w(period)).unwrap())
    }

    fn fix_phi() -> StallingsGraph {
        StallingsGraph::build(&[w("a"), w("b a b^-1"), w("c a c^-1")], 4)
    }

    #[test]
    fn rational_isogloss_examples() {
        let h = fix_phi();
        assert_eq!(isogloss(&h, &rat("b", "a"), &rat("b", "a"), 8), Isogloss::Exact);
        assert_eq!(isogloss(&h, &rat("", "a"), &rat("b", "a"), 8), Isogloss::No);
        assert_eq!(isogloss(&h, &rat("b a b^-1", "a"), &rat("", "a"), 8), Isogloss::Exact);
        assert_eq!(isogloss(&h, &rat("b", "a"), &rat("b", "a^-1"), 8), Isogloss::No);
        // (a b)^∞ = a (b a)^∞, so the periods differ by a rotation
        let h = StallingsGraph::build(&[w("a")], 4);
        assert_eq!(isogloss(&h, &rat("", "a b"), &rat("", "b a"), 8), Isogloss::Exact);
        let h = StallingsGraph::build(&[w("c")], 4);
        assert_eq!(isogloss(&h, &rat("", "a b"), &rat("", "b a"), 8), Isogloss::No);
    }

    fn phi1() -> AutoPair {
        AutoPair::parse(&f4(), &["a", "b a", "c a^2", "d c"], &["a", "b a^-1", "c a^-2", "d a^2 c^-1"]).unwrap()
    }

    #[test]
    fn figure_two_shape() {
        let seeds: Vec<Word> = ["b", "b^-1", "c", "c^-1", "d", "d^-1", "b c^-1", "b d^-1"]
            .iter()
            .map(|s| w(s))
            .collect();
        let g = build_graph(&phi1(), &[w("a"), w("b a b^-1"), w("c a c^-1")], &seeds, &IterationConfig::default()).unwrap();
        assert_eq!(g.vertices.len(), 8, "{}", g.to_dot());
        assert_eq!(g.edges.len(), 7);
        assert_eq!(g.component_count(), 3);
        assert_eq!(g.loop_count(), 1);
        let (v, labels) = g.has_parabolic_loop().unwrap();
        assert_eq!(g.vertex_name(v), "b (a^-1)^inf");
        assert_eq!(labels, &[w("b d^-1")]);
        assert_eq!(g.to_dot(), g.clone().to_dot());
    }

    #[test]
    fn north_south_graph() {
        let f2 = Alphabet::standard(2).unwrap();
        let a = f2.parse("a").unwrap();
        let inner = AutoPair::inner(f2.clone(), &a).unwrap();
        let seeds = vec![f2.parse("b").unwrap(), f2.parse("b^-1").unwrap()];
        let g = build_graph(&inner, &[a], &seeds, &IterationConfig::default()).unwrap();
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.vertex_name(g.edges[0].source), "(a^-1)^inf");
        assert_eq!(g.vertex_name(g.edges[0].target), "(a)^inf");
        assert!(g.has_parabolic_loop().is_none());
    }

    #[test]
    fn identity_graph_is_empty() {
        let id = AutoPair::identity(f4());
        let g = build_graph(&id, &f4().generators(), &default_seeds(4), &IterationConfig::default()).unwrap();
        assert!(g.edges.is_empty());
        assert!(g.vertices.is_empty());
        assert!(g.has_parabolic_loop().is_none());
    }

    #[test]
    fn unfixed_generator_aborts() {
        let err = build_graph(&phi1(), &[w("b")], &[w("d")], &IterationConfig::default());
        assert!(err.is_err());
    }
}
