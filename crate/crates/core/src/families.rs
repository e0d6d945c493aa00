//! Catalog of automorphism families with their known invariants, and the
//! Dehn twist classification on `F_2`.

use std::collections::BTreeMap;
use std::fmt;

use crate::automorphism::AutoPair;
use crate::dynamics::{LimitPoint, RationalPoint};
use crate::error::{Error, Result};
use crate::graph::{default_seeds, DynamicsGraph, Isogloss, DEFAULT_SEARCH_BOUND};
use crate::matrix::{squarefree_part, IntMatrix};
use crate::subgroup::StallingsGraph;
use crate::word::{Alphabet, Letter, Word};

fn alphabet(rank: usize) -> Alphabet {
    Alphabet::standard(rank).expect("rank >= 2")
}

fn parse_pair(rank: usize, forward: &[String], backward: &[String]) -> Result<AutoPair> {
    let f: Vec<&str> = forward.iter().map(String::as_str).collect();
    let b: Vec<&str> = backward.iter().map(String::as_str).collect();
    AutoPair::parse(&alphabet(rank), &f, &b)
}

fn check_k(k: i64) -> Result<()> {
    if k < 0 {
        return Err(Error::InvalidParameter(format!("k must be non-negative, got {k}")));
    }
    Ok(())
}

/// `φ_k` on `F_4 = <a,b,c,d>`: `a ↦ a, b ↦ ba, c ↦ ca^{k+1}, d ↦ dc`.
pub fn make_phi_k(k: i64) -> Result<AutoPair> {
    check_k(k)?;
    let k1 = k + 1;
    parse_pair(
        4,
        &["a".into(), "b a".into(), format!("c a^{k1}"), "d c".into()],
        &["a".into(), "b a^-1".into(), format!("c a^-{k1}"), format!("d a^{k1} c^-1")],
    )
}

/// Generators of `Fix(φ_k)`.
pub fn phi_k_fix_gens() -> Vec<Word> {
    let a = alphabet(4);
    ["a", "b a b^-1", "c a c^-1"]
        .iter()
        .map(|s| a.parse(s).expect("valid word"))
        .collect()
}

/// The seed set labelling the edges of the `φ_k` dynamics graph.
pub fn phi_k_seeds() -> Vec<Word> {
    let a = alphabet(4);
    ["b", "b^-1", "c", "c^-1", "d", "d^-1", "b c^-1", "b d^-1"]
        .iter()
        .map(|s| a.parse(s).expect("valid word"))
        .collect()
}

/// `α_k` on `F_5`: `φ_k` on `a, b, c, d` and `e ↦ e`.
pub fn make_alpha_k(k: i64) -> Result<AutoPair> {
    check_k(k)?;
    let k1 = k + 1;
    parse_pair(
        5,
        &["a".into(), "b a".into(), format!("c a^{k1}"), "d c".into(), "e".into()],
        &["a".into(), "b a^-1".into(), format!("c a^-{k1}"), format!("d a^{k1} c^-1"), "e".into()],
    )
}

/// Free product `φ_1 * θ * id` on `F_N`: generators 1–4 follow `φ_1`,
/// generators 5–6 follow `θ`, the rest are fixed.
pub fn make_beta(rank: usize, theta: &AutoPair) -> Result<AutoPair> {
    if rank < 6 {
        return Err(Error::InvalidParameter(format!("beta needs rank >= 6, got {rank}")));
    }
    if theta.rank() != 2 {
        return Err(Error::InvalidParameter("theta must be an automorphism of F_2".into()));
    }
    let phi = make_phi_k(1)?;
    let shift = |w: &Word, by: usize| {
        Word::reduce(
            w.letters()
                .iter()
                .map(|l| Letter::new(l.generator() + by, l.is_positive())),
        )
    };
    let assemble = |phi_images: &[Word], theta_images: &[Word]| {
        let mut images: Vec<Word> = phi_images.to_vec();
        images.extend(theta_images.iter().map(|w| shift(w, 4)));
        images.extend((6..rank).map(|g| Word::letter(Letter::gen(g))));
        images
    };
    let a = alphabet(rank);
    let forward = crate::automorphism::Endomorphism::new(
        a.clone(),
        assemble(phi.forward().images(), theta.forward().images()),
    )?;
    let backward = crate::automorphism::Endomorphism::new(
        a,
        assemble(phi.backward().images(), theta.backward().images()),
    )?;
    AutoPair::verify(forward, backward)
}

/// `i_{a^k} ∘ δ^n` on `F_2`: `a ↦ a, b ↦ a^k b a^{n-k}`.
pub fn make_twist(n: i64, k: i64) -> Result<AutoPair> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be nonzero".into()));
    }
    parse_pair(
        2,
        &["a".into(), format!("a^{k} b a^{}", n - k)],
        &["a".into(), format!("a^{} b a^{}", -k, k - n)],
    )
}

/// `δ^n`: `b ↦ b a^n`.
pub fn make_delta(n: i64) -> Result<AutoPair> {
    make_twist(n, 0)
}

/// The involution `a ↦ a^-1, b ↦ b^-1`.
pub fn make_sigma() -> AutoPair {
    parse_pair(2, &["a^-1".into(), "b^-1".into()], &["a^-1".into(), "b^-1".into()]).expect("involution")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwistCase {
    /// `k(n-k) = 0`
    TwoComponent,
    /// `k(n-k) < 0`
    NorthSouth,
    /// `k(n-k) > 0`
    SemiNorthSouth,
}

impl fmt::Display for TwistCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwistCase::TwoComponent => "two-component",
            TwistCase::NorthSouth => "north-south",
            TwistCase::SemiNorthSouth => "semi-north-south",
        })
    }
}

pub fn classify_twist(n: i64, k: i64) -> Result<TwistCase> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be nonzero".into()));
    }
    Ok(match (k * (n - k)).signum() {
        0 => TwistCase::TwoComponent,
        -1 => TwistCase::NorthSouth,
        _ => TwistCase::SemiNorthSouth,
    })
}

/// Generators of `Fix(i_{a^k} ∘ δ^n)`.
pub fn twist_fix_gens(n: i64, k: i64) -> Result<Vec<Word>> {
    let f2 = alphabet(2);
    let words: &[&str] = match classify_twist(n, k)? {
        TwistCase::TwoComponent if k == 0 => &["a", "b a b^-1"],
        TwistCase::TwoComponent => &["a", "b^-1 a b"],
        _ => &["a"],
    };
    Ok(words.iter().map(|s| f2.parse(s).expect("valid word")).collect())
}

/// Bounded search for `w` with `[w^-1 u δ^n(w)] = a^k`; returns `(w, k)`
/// for the shortlex-first witness of length at most `bound`.
pub fn twist_reduce(u: &Word, n: i64, bound: usize) -> Result<Option<(Word, i64)>> {
    let delta = make_delta(n)?;
    u.check_rank(2)?;
    let a = Letter::gen(0);
    let mut layer = vec![Word::identity()];
    for len in 0..=bound {
        for w in &layer {
            let z = w.inverse().concat(u).concat(&delta.apply(w)?);
            if z.letters().iter().all(|&l| l == a) {
                return Ok(Some((w.clone(), z.len() as i64)));
            }
            if z.letters().iter().all(|&l| l == a.inverse()) {
                return Ok(Some((w.clone(), -(z.len() as i64))));
            }
        }
        if len == bound {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|w| {
                Letter::all(2)
                    .filter(move |&x| w.last() != Some(x.inverse()))
                    .map(move |x| w.concat(&Word::letter(x)))
            })
            .collect();
    }
    Ok(None)
}

/// A hyperbolic automorphism of `F_2` shipped for building `β`.
#[derive(Debug, Clone)]
pub struct StockTheta {
    pub name: &'static str,
    pub pair: AutoPair,
}

/// Two hyperbolic automorphisms of `F_2`, with abelianizations
/// `[[2,1],[1,1]]` and `[[3,1],[2,1]]`.
pub fn stock_thetas() -> Vec<StockTheta> {
    vec![
        StockTheta {
            name: "theta1",
            pair: parse_pair(2, &["a b a".into(), "a b".into()], &["b^-1 a".into(), "a^-1 b^2".into()])
                .expect("verified inverse"),
        },
        StockTheta {
            name: "theta2",
            pair: parse_pair(2, &["a b a b a".into(), "b a".into()], &["a b^-2".into(), "b^3 a^-1".into()])
                .expect("verified inverse"),
        },
    ]
}

/// `[[t-1, 1], [t-2, 1]]` (determinant 1, trace `t`) for the smallest
/// `t >= 3` whose discriminant `t^2 - 4` has squarefree part `k`.
pub fn sample_sl2(k: i64, max_trace: i64) -> Option<IntMatrix> {
    (3..=max_trace)
        .find(|&t| squarefree_part(t * t - 4) == k)
        .map(|t| IntMatrix::from_rows(&[vec![t - 1, 1], vec![t - 2, 1]]).expect("square"))
}

/// Searches integer matrices `P` with entries in `[-bound, bound]` and
/// `det P = ±1` such that `A P = P B`. Returns the first found.
pub fn find_conjugator(a: &IntMatrix, b: &IntMatrix, bound: i64) -> Result<Option<IntMatrix>> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch(format!("{n} vs {}", b.dim())));
    }
    // Variables P[i][j] are assigned rows bottom-up, columns left to right.
    let order: Vec<(usize, usize)> = (0..n).rev().flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let mut position = vec![vec![0; n]; n];
    for (t, &(i, j)) in order.iter().enumerate() {
        position[i][j] = t;
    }
    // (A P - P B)[i][j] = sum_l A[i][l] P[l][j] - sum_m P[i][m] B[m][j]
    let mut checks: Vec<Vec<LinearCheck>> = vec![Vec::new(); order.len()];
    for i in 0..n {
        for j in 0..n {
            let mut coeffs: BTreeMap<(usize, usize), i64> = BTreeMap::new();
            for l in 0..n {
                *coeffs.entry((l, j)).or_default() += a.get(i, l);
                *coeffs.entry((i, l)).or_default() -= b.get(l, j);
            }
            let terms: LinearCheck = coeffs.into_iter().filter(|&(_, c)| c != 0).collect();
            if let Some(last) = terms.iter().map(|&((r, c), _)| position[r][c]).max() {
                checks[last].push(terms);
            }
        }
    }
    let mut p = IntMatrix::zeros(n);
    Ok(search(&order, &checks, 0, bound, &mut p))
}

/// Entry coefficients of one linear equation that must vanish.
type LinearCheck = Vec<((usize, usize), i64)>;

fn search(
    order: &[(usize, usize)],
    checks: &[Vec<LinearCheck>],
    t: usize,
    bound: i64,
    p: &mut IntMatrix,
) -> Option<IntMatrix> {
    if t == order.len() {
        return match p.determinant() {
            Ok(1) | Ok(-1) => Some(p.clone()),
            _ => None,
        };
    }
    let (i, j) = order[t];
    for v in -bound..=bound {
        p.set(i, j, v);
        let ok = checks[t]
            .iter()
            .all(|eq| eq.iter().map(|&((r, c), coef)| coef * p.get(r, c)).sum::<i64>() == 0);
        if ok {
            if let Some(found) = search(order, checks, t + 1, bound, p) {
                return Some(found);
            }
        }
    }
    p.set(i, j, 0);
    None
}

/// A family instance addressed by name and parameters, e.g. `phi_k:k=3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    PhiK { k: i64 },
    AlphaK { k: i64 },
    Beta { rank: usize, theta: usize },
    DeltaN { n: i64 },
    Twist { n: i64, k: i64 },
    Sigma,
    Inner { rank: usize, u: String },
    Identity { rank: usize },
}

/// An automorphism with its known fixed generators and documented seeds.
#[derive(Debug, Clone)]
pub struct Family {
    pub spec: FamilySpec,
    pub pair: AutoPair,
    pub fix_gens: Vec<Word>,
    pub seeds: Vec<Word>,
    pub parabolic_seed: Option<Word>,
}

impl FamilySpec {
    /// Parses `name` or `name:key=value,key=value`.
    pub fn parse(text: &str) -> Result<FamilySpec> {
        let (name, params) = text.split_once(':').unwrap_or((text, ""));
        let mut map: BTreeMap<&str, &str> = BTreeMap::new();
        for kv in params.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, got `{kv}`")))?;
            map.insert(k.trim(), v.trim());
        }
        let int = |key: &str, default: Option<i64>| -> Result<i64> {
            match map.get(key) {
                Some(v) => v
                    .parse()
                    .map_err(|_| Error::InvalidParameter(format!("{key}={v} is not an integer"))),
                None => default.ok_or_else(|| Error::InvalidParameter(format!("missing parameter `{key}`"))),
            }
        };
        let rank = |default: i64| -> Result<usize> {
            let r = int("N", Some(default))?;
            usize::try_from(r).map_err(|_| Error::InvalidParameter(format!("N={r}")))
        };
        let spec = match name.trim() {
            "phi_k" | "phi" => FamilySpec::PhiK { k: int("k", None)? },
            "alpha_k" | "alpha" => FamilySpec::AlphaK { k: int("k", None)? },
            "beta" => FamilySpec::Beta {
                rank: rank(6)?,
                theta: int("theta", Some(1))? as usize,
            },
            "delta_n" | "delta" => FamilySpec::DeltaN { n: int("n", Some(1))? },
            "twist" | "twist_nk" => FamilySpec::Twist {
                n: int("n", None)?,
                k: int("k", None)?,
            },
            "sigma" => FamilySpec::Sigma,
            "inner" => FamilySpec::Inner {
                rank: rank(2)?,
                u: map.get("u").copied().unwrap_or("").to_string(),
            },
            "identity" => FamilySpec::Identity { rank: rank(2)? },
            other => return Err(Error::UnknownFamily(other.to_string())),
        };
        Ok(spec)
    }

    pub fn build(&self) -> Result<Family> {
        let (pair, fix_gens, seeds, parabolic_seed) = match self {
            FamilySpec::PhiK { k } => {
                let bd = alphabet(4).parse("b d^-1")?;
                (make_phi_k(*k)?, phi_k_fix_gens(), phi_k_seeds(), Some(bd))
            }
            FamilySpec::AlphaK { k } => {
                let a = alphabet(5);
                let mut fix: Vec<Word> = phi_k_fix_gens();
                fix.push(a.parse("e")?);
                let seeds = phi_k_seeds();
                (make_alpha_k(*k)?, fix, seeds, Some(a.parse("b d^-1")?))
            }
            FamilySpec::Beta { rank, theta } => {
                let thetas = stock_thetas();
                let th = thetas
                    .get(theta.wrapping_sub(1))
                    .ok_or_else(|| Error::InvalidParameter(format!("theta={theta}; stock thetas are 1 and 2")))?;
                let mut fix = phi_k_fix_gens();
                fix.extend((6..*rank).map(|g| Word::letter(Letter::gen(g))));
                let seeds = phi_k_seeds();
                let bd = alphabet(*rank).parse("b d^-1")?;
                (make_beta(*rank, &th.pair)?, fix, seeds, Some(bd))
            }
            FamilySpec::DeltaN { n } => (make_delta(*n)?, twist_fix_gens(*n, 0)?, default_seeds(2), None),
            FamilySpec::Twist { n, k } => (make_twist(*n, *k)?, twist_fix_gens(*n, *k)?, default_seeds(2), None),
            FamilySpec::Sigma => (make_sigma(), Vec::new(), default_seeds(2), None),
            FamilySpec::Inner { rank, u } => {
                let a = Alphabet::standard(*rank)?;
                let u = a.parse(u)?;
                let fix = if u.is_identity() {
                    a.generators()
                } else {
                    vec![u.primitive_root()?.0]
                };
                (AutoPair::inner(a.clone(), &u)?, fix, default_seeds(*rank), None)
            }
            FamilySpec::Identity { rank } => {
                let a = Alphabet::standard(*rank)?;
                (AutoPair::identity(a.clone()), a.generators(), default_seeds(*rank), None)
            }
        };
        Ok(Family {
            spec: self.clone(),
            pair,
            fix_gens,
            seeds,
            parabolic_seed,
        })
    }
}

/// Expected shape of a dynamics graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphTemplate {
    pub vertices: Vec<LimitPoint>,
    /// `(source, target, labels that must appear on the edge)`.
    pub edges: Vec<(usize, usize, Vec<Word>)>,
    pub components: usize,
    pub loops: usize,
}

impl GraphTemplate {
    /// Checks counts, loops, and that every template edge appears between
    /// the matching classes with at least the listed labels.
    pub fn compare(&self, graph: &DynamicsGraph, fix: &StallingsGraph) -> std::result::Result<(), String> {
        if graph.vertices.len() != self.vertices.len() {
            return Err(format!("{} vertices, expected {}", graph.vertices.len(), self.vertices.len()));
        }
        if graph.edges.len() != self.edges.len() {
            return Err(format!("{} edges, expected {}", graph.edges.len(), self.edges.len()));
        }
        if graph.component_count() != self.components {
            return Err(format!("{} components, expected {}", graph.component_count(), self.components));
        }
        if graph.loop_count() != self.loops {
            return Err(format!("{} loops, expected {}", graph.loop_count(), self.loops));
        }
        let locate = |p: &LimitPoint| {
            graph.vertices.iter().position(|c| {
                crate::graph::isogloss(fix, &c.representative, p, DEFAULT_SEARCH_BOUND) != Isogloss::No
            })
        };
        let a = &graph.alphabet;
        for (s, t, labels) in &self.edges {
            let (Some(gs), Some(gt)) = (locate(&self.vertices[*s]), locate(&self.vertices[*t])) else {
                return Err(format!(
                    "no vertex for {} or {}",
                    self.vertices[*s].format(a),
                    self.vertices[*t].format(a)
                ));
            };
            let Some(edge) = graph.edges.iter().find(|e| e.source == gs && e.target == gt) else {
                return Err(format!(
                    "missing edge {} -> {}",
                    self.vertices[*s].format(a),
                    self.vertices[*t].format(a)
                ));
            };
            if let Some(l) = labels.iter().find(|l| !edge.labels.contains(l)) {
                return Err(format!("edge lacks label {}", a.format(l)));
            }
        }
        Ok(())
    }
}

fn rat(a: &Alphabet, head: &str, period: &str) -> LimitPoint {
    LimitPoint::Rational(
        RationalPoint::new(&a.parse(head).expect("valid"), &a.parse(period).expect("valid")).expect("nonidentity"),
    )
}

/// The first `len` letters of `X_k^+ = d c c a^{k+1} c a^{2k+2} ...`.
pub fn x_plus_prefix(k: i64, len: usize) -> Word {
    let mut letters = vec![Letter::gen(3), Letter::gen(2)];
    let mut j = 1;
    while letters.len() < len {
        letters.push(Letter::gen(2));
        letters.extend(std::iter::repeat_n(Letter::gen(0), j * (k as usize + 1)));
        j += 1;
    }
    Word::reduce(letters.into_iter().take(len))
}

/// The first `len` letters of `X_k^- = d a^{k+1} c^-1 a^{2k+2} c^-1 ...`.
pub fn x_minus_prefix(k: i64, len: usize) -> Word {
    let mut letters = vec![Letter::gen(3)];
    let mut j = 1;
    while letters.len() < len {
        letters.extend(std::iter::repeat_n(Letter::gen(0), j * (k as usize + 1)));
        letters.push(Letter::new(2, false));
        j += 1;
    }
    Word::reduce(letters.into_iter().take(len))
}

fn approx(w: Word) -> LimitPoint {
    let n = w.len();
    LimitPoint::PrefixApprox {
        prefix: w,
        certified_length: n,
    }
}

/// The graph shape the catalog predicts for a family.
pub fn expected_graph(spec: &FamilySpec) -> Result<GraphTemplate> {
    match spec {
        FamilySpec::PhiK { k } | FamilySpec::AlphaK { k } => {
            let a = if matches!(spec, FamilySpec::PhiK { .. }) { alphabet(4) } else { alphabet(5) };
            let w = |s: &str| a.parse(s).expect("valid");
            let vertices = vec![
                approx(x_minus_prefix(*k, 60)),
                approx(x_plus_prefix(*k, 60)),
                rat(&a, "", "a"),
                rat(&a, "", "a^-1"),
                rat(&a, "c", "a^-1"),
                rat(&a, "c", "a"),
                rat(&a, "b", "a^-1"),
                rat(&a, "b", "a"),
            ];
            Ok(GraphTemplate {
                vertices,
                edges: vec![
                    (0, 1, vec![w("d")]),
                    (2, 3, vec![w("b^-1"), w("c^-1")]),
                    (4, 5, vec![w("c")]),
                    (4, 3, vec![w("d^-1")]),
                    (6, 7, vec![w("b")]),
                    (7, 6, vec![w("b c^-1")]),
                    (6, 6, vec![w("b d^-1")]),
                ],
                components: 3,
                loops: 1,
            })
        }
        FamilySpec::Inner { rank, u } => {
            let a = Alphabet::standard(*rank)?;
            let u = a.parse(u)?;
            if u.is_identity() {
                return expected_graph(&FamilySpec::Identity { rank: *rank });
            }
            Ok(GraphTemplate {
                vertices: vec![
                    LimitPoint::Rational(RationalPoint::from_power(&u, false)?),
                    LimitPoint::Rational(RationalPoint::from_power(&u, true)?),
                ],
                edges: vec![(0, 1, Vec::new())],
                components: 1,
                loops: 0,
            })
        }
        FamilySpec::DeltaN { n } => expected_graph(&FamilySpec::Twist { n: *n, k: 0 }),
        FamilySpec::Twist { n, k } => {
            let a = alphabet(2);
            let w = |s: &str| a.parse(s).expect("valid");
            let s = n.signum();
            let (pos, neg) = if s > 0 { ("a", "a^-1") } else { ("a^-1", "a") };
            match classify_twist(*n, *k)? {
                TwistCase::TwoComponent if *k == 0 => Ok(GraphTemplate {
                    vertices: vec![rat(&a, "b", neg), rat(&a, "b", pos), rat(&a, "", pos), rat(&a, "", neg)],
                    edges: vec![(0, 1, vec![w("b")]), (2, 3, vec![w("b^-1")])],
                    components: 2,
                    loops: 0,
                }),
                TwistCase::TwoComponent => Ok(GraphTemplate {
                    vertices: vec![rat(&a, "", neg), rat(&a, "", pos), rat(&a, "b^-1", pos), rat(&a, "b^-1", neg)],
                    edges: vec![(0, 1, vec![w("b")]), (2, 3, vec![w("b^-1")])],
                    components: 2,
                    loops: 0,
                }),
                TwistCase::NorthSouth => {
                    let (src, dst) = if *k > 0 { ("a^-1", "a") } else { ("a", "a^-1") };
                    Ok(GraphTemplate {
                        vertices: vec![rat(&a, "", src), rat(&a, "", dst)],
                        edges: vec![(0, 1, vec![w("b"), w("b^-1")])],
                        components: 1,
                        loops: 0,
                    })
                }
                TwistCase::SemiNorthSouth => Ok(GraphTemplate {
                    vertices: vec![rat(&a, "", neg), rat(&a, "", pos)],
                    edges: vec![(0, 1, vec![w("b")]), (1, 0, vec![w("b^-1")])],
                    components: 1,
                    loops: 0,
                }),
            }
        }
        FamilySpec::Identity { .. } => Ok(GraphTemplate {
            vertices: Vec::new(),
            edges: Vec::new(),
            components: 0,
            loops: 0,
        }),
        FamilySpec::Beta { .. } | FamilySpec::Sigma => Err(Error::UnknownFamily(format!(
            "no expected graph is catalogued for {spec:?}"
        ))),
    }
}
