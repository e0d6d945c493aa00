//! Iteration of automorphisms on elements and boundary points: ω-limits by
//! prefix stabilization, rational limit recognition, parabolic detection,
//! growth classification and splitting certificates.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automorphism::AutoPair;
use crate::error::{Error, Result};
use crate::word::{common_prefix_len, Alphabet, Letter, Word};

/// Budgets for limit computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IterationConfig {
    pub max_iterations: usize,
    /// Length of common prefix required before a limit is declared.
    pub target_prefix: usize,
    /// Number of consecutive non-shrinking prefix steps required.
    pub stability_window: usize,
    pub max_word_length: usize,
    /// Minimum number of full periods for rational recognition.
    pub min_repeats: usize,
    pub period_bound: usize,
}

impl Default for IterationConfig {
    fn default() -> Self {
        IterationConfig {
            max_iterations: 300,
            target_prefix: 200,
            stability_window: 5,
            max_word_length: 1_000_000,
            min_repeats: 3,
            period_bound: 6,
        }
    }
}

impl IterationConfig {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("max_iterations", self.max_iterations),
            ("target_prefix", self.target_prefix),
            ("stability_window", self.stability_window),
            ("max_word_length", self.max_word_length),
            ("min_repeats", self.min_repeats),
            ("period_bound", self.period_bound),
        ];
        for (name, v) in fields {
            if v == 0 {
                return Err(Error::InvalidParameter(format!("{name} must be positive")));
            }
        }
        Ok(())
    }
}

/// The boundary point `head · period^∞` in canonical form: the period is
/// cyclically reduced and primitive, and the periodic tail starts as early
/// as possible (the head neither cancels against the period nor ends with
/// the period's last letter).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    head: Word,
    period: Word,
}

impl RationalPoint {
    /// Canonicalizes `head · period^∞`; `period` may be any nonidentity word.
    pub fn new(head: &Word, period: &Word) -> Result<RationalPoint> {
        let dec = period.cyclic_reduce()?;
        // (w c w^-1)^∞ = w c^∞
        let mut head: Vec<Letter> = head.concat(&dec.conjugator).letters().to_vec();
        let (root, _) = dec.core.primitive_root()?;
        let mut period: Vec<Letter> = root.letters().to_vec();
        while let (Some(&h), Some(&f), Some(&l)) = (head.last(), period.first(), period.last()) {
            if h == f.inverse() {
                head.pop();
                period.rotate_left(1);
            } else if h == l {
                head.pop();
                period.rotate_right(1);
            } else {
                break;
            }
        }
        Ok(RationalPoint {
            head: Word::from_reduced(head),
            period: Word::from_reduced(period),
        })
    }

    /// `u^∞` (or `u^-∞` when `positive` is false) for a nonidentity `u`.
    pub fn from_power(u: &Word, positive: bool) -> Result<RationalPoint> {
        let u = if positive { u.clone() } else { u.inverse() };
        RationalPoint::new(&Word::identity(), &u)
    }

    pub fn head(&self) -> &Word {
        &self.head
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    /// The primitive element `[p c p^-1]` whose positive end is this point.
    pub fn element(&self) -> Word {
        self.head.conjugate(&self.period)
    }

    /// First `n` letters of the infinite word.
    pub fn prefix(&self, n: usize) -> Word {
        let letters: Vec<Letter> = self
            .head
            .letters()
            .iter()
            .chain(self.period.letters().iter().cycle())
            .take(n)
            .copied()
            .collect();
        Word::from_reduced(letters)
    }

    /// The point `g · X`.
    pub fn translate(&self, g: &Word) -> RationalPoint {
        RationalPoint::new(&g.concat(&self.head), &self.period).expect("period is nonidentity")
    }

    /// Whether `∂φ` fixes this point. Exact: for primitive `u`, `∂φ(u^∞) = u^∞`
    /// iff `φ(u) = u`.
    pub fn is_fixed_by(&self, phi: &AutoPair) -> bool {
        phi.fixes(&self.element())
    }

    /// `head (period)^inf`, head omitted when empty.
    pub fn format(&self, alphabet: &Alphabet) -> String {
        let tail = format!("({})^inf", alphabet.format(&self.period));
        if self.head.is_identity() {
            tail
        } else {
            format!("{} {tail}", alphabet.format(&self.head))
        }
    }
}

impl fmt::Debug for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ({:?})^inf", self.head, self.period)
    }
}

/// A limit point: exactly known when rational, otherwise a certified prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitPoint {
    Rational(RationalPoint),
    PrefixApprox { prefix: Word, certified_length: usize },
}

impl LimitPoint {
    pub fn as_rational(&self) -> Option<&RationalPoint> {
        match self {
            LimitPoint::Rational(r) => Some(r),
            LimitPoint::PrefixApprox { .. } => None,
        }
    }

    /// First `n` letters (fewer for an approximation shorter than `n`).
    pub fn prefix(&self, n: usize) -> Word {
        match self {
            LimitPoint::Rational(r) => r.prefix(n),
            LimitPoint::PrefixApprox { prefix, .. } => prefix.prefix(n),
        }
    }

    /// Number of letters known to be correct (unbounded for rational points).
    pub fn certified_length(&self) -> Option<usize> {
        match self {
            LimitPoint::Rational(_) => None,
            LimitPoint::PrefixApprox { certified_length, .. } => Some(*certified_length),
        }
    }

    /// Canonical text; approximations show their first 12 letters.
    pub fn format(&self, alphabet: &Alphabet) -> String {
        match self {
            LimitPoint::Rational(r) => r.format(alphabet),
            LimitPoint::PrefixApprox { prefix, .. } => {
                format!("{} …", alphabet.format(&prefix.prefix(12)))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics {
    pub iterations: usize,
    pub last_length: usize,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LimitResult {
    /// The orbit reaches an element fixed by φ.
    FixedElement(Word),
    /// `prefix_length` is the common prefix of the last two iterates when
    /// the limit was declared (0 for a point that was already fixed).
    Boundary {
        point: LimitPoint,
        iterations: usize,
        prefix_length: usize,
    },
    NotConverged { best_prefix: Word, diagnostics: Diagnostics },
}

impl LimitResult {
    pub fn point(&self) -> Option<&LimitPoint> {
        match self {
            LimitResult::Boundary { point, .. } => Some(point),
            _ => None,
        }
    }

    pub fn rational(&self) -> Option<&RationalPoint> {
        self.point().and_then(LimitPoint::as_rational)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Parabolic(RationalPoint),
    NotParabolic(String),
    /// Limits that could not be compared exactly. `prefix_agreement` is
    /// the common prefix length when both limits are boundary points.
    Inconclusive { reason: String, prefix_agreement: Option<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicReport {
    pub seed: Word,
    pub forward: LimitResult,
    pub backward: LimitResult,
    pub verdict: Verdict,
}

fn check_word(phi: &AutoPair, g: &Word) -> Result<()> {
    g.check_rank(phi.rank())
}

/// `[φ^p(g)]`; negative `p` iterates the inverse.
pub fn iterate(phi: &AutoPair, g: &Word, p: i64, cfg: &IterationConfig) -> Result<Word> {
    check_word(phi, g)?;
    let e = if p < 0 { phi.backward() } else { phi.forward() };
    let mut w = g.clone();
    for i in 0..p.unsigned_abs() as usize {
        w = e.apply_unchecked(&w);
        if w.len() > cfg.max_word_length {
            return Err(Error::GrowthOverflow {
                iteration: i + 1,
                length: w.len(),
                limit: cfg.max_word_length,
            });
        }
    }
    Ok(w)
}

/// ω-limit of `g` under φ, approximated by the common prefix of
/// consecutive iterates.
pub fn omega_limit(phi: &AutoPair, g: &Word, cfg: &IterationConfig) -> Result<LimitResult> {
    check_word(phi, g)?;
    cfg.validate()?;
    let e = phi.forward();
    let mut prev = g.clone();
    let mut prev_common = 0usize;
    let mut streak = 0usize;
    let mut best = Word::identity();
    for i in 1..=cfg.max_iterations {
        let next = e.apply_unchecked(&prev);
        if next == prev {
            return Ok(LimitResult::FixedElement(next));
        }
        if next.len() > cfg.max_word_length {
            return Ok(LimitResult::NotConverged {
                best_prefix: best,
                diagnostics: Diagnostics {
                    iterations: i,
                    last_length: next.len(),
                    reason: Error::GrowthOverflow {
                        iteration: i,
                        length: next.len(),
                        limit: cfg.max_word_length,
                    }
                    .to_string(),
                },
            });
        }
        let common = common_prefix_len(prev.letters(), next.letters());
        if i > 1 && common >= prev_common {
            streak += 1;
        } else {
            streak = 0;
        }
        if common >= best.len() {
            best = next.prefix(common);
        }
        if common >= cfg.target_prefix && streak >= cfg.stability_window {
            let prefix = next.prefix(common);
            let point = match confirmed_rational(phi, &prefix, cfg) {
                Some(r) => LimitPoint::Rational(r),
                None => LimitPoint::PrefixApprox {
                    certified_length: prefix.len(),
                    prefix,
                },
            };
            return Ok(LimitResult::Boundary {
                point,
                iterations: i,
                prefix_length: common,
            });
        }
        prev_common = common;
        prev = next;
    }
    Ok(LimitResult::NotConverged {
        best_prefix: best,
        diagnostics: Diagnostics {
            iterations: cfg.max_iterations,
            last_length: prev.len(),
            reason: format!(
                "common prefix of consecutive iterates did not reach {} letters stably",
                cfg.target_prefix
            ),
        },
    })
}

/// ω-limit under φ^-1.
pub fn omega_limit_backward(phi: &AutoPair, g: &Word, cfg: &IterationConfig) -> Result<LimitResult> {
    omega_limit(&phi.inverse(), g, cfg)
}

/// Eventually periodic decompositions of `prefix`, ordered by period
/// length; for each period length the head is as short as possible.
fn rational_candidates(prefix: &Word, min_repeats: usize) -> Vec<RationalPoint> {
    let s = prefix.letters();
    let n = s.len();
    let mut out = Vec::new();
    for clen in 1..=n / min_repeats.max(1) {
        // smallest start such that s[i] == s[i + clen] for every i >= start
        let mut start = n - clen;
        while start > 0 && s[start - 1] == s[start - 1 + clen] {
            start -= 1;
        }
        let tail = n - start;
        if tail < min_repeats * clen || 2 * tail < n {
            continue;
        }
        let head = Word::from_reduced(s[..start].to_vec());
        let period = Word::from_reduced(s[start..start + clen].to_vec());
        if let Ok(r) = RationalPoint::new(&head, &period) {
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out
}

/// Recognizes `prefix` as the beginning of `p · c^∞` with at least
/// `min_repeats` periods covering at least half of the prefix. Prefers the
/// shortest period, then the shortest head.
pub fn recognize_rational(prefix: &Word, cfg: &IterationConfig) -> Option<RationalPoint> {
    rational_candidates(prefix, cfg.min_repeats).into_iter().next()
}

/// First recognized candidate that φ actually fixes.
fn confirmed_rational(phi: &AutoPair, prefix: &Word, cfg: &IterationConfig) -> Option<RationalPoint> {
    rational_candidates(prefix, cfg.min_repeats)
        .into_iter()
        .find(|r| r.is_fixed_by(phi))
}

/// ω-limit of the boundary point `X = p c^∞`, computed as the ω-limit of
/// the element `[p c p^-1]` unless X is already fixed.
pub fn omega_limit_rational(phi: &AutoPair, x: &RationalPoint, cfg: &IterationConfig) -> Result<LimitResult> {
    let u = x.element();
    check_word(phi, &u)?;
    if phi.fixes(&u) {
        return Ok(LimitResult::Boundary {
            point: LimitPoint::Rational(x.clone()),
            iterations: 0,
            prefix_length: 0,
        });
    }
    omega_limit(phi, &u, cfg)
}

/// Forward and backward limits of `seed`, with a parabolic verdict.
pub fn detect_parabolic(phi: &AutoPair, seed: &Word, cfg: &IterationConfig) -> Result<ParabolicReport> {
    check_word(phi, seed)?;
    if seed.is_identity() {
        return Err(Error::InvalidParameter("seed must not be the identity".into()));
    }
    let forward = omega_limit(phi, seed, cfg)?;
    let backward = omega_limit_backward(phi, seed, cfg)?;
    let verdict = parabolic_verdict(phi, seed, &forward, &backward, cfg);
    Ok(ParabolicReport {
        seed: seed.clone(),
        forward,
        backward,
        verdict,
    })
}

fn parabolic_verdict(
    phi: &AutoPair,
    seed: &Word,
    forward: &LimitResult,
    backward: &LimitResult,
    cfg: &IterationConfig,
) -> Verdict {
    if phi.fixes(seed) {
        return Verdict::NotParabolic("seed is fixed".into());
    }
    let (f, b) = match (forward, backward) {
        (LimitResult::NotConverged { .. }, _) | (_, LimitResult::NotConverged { .. }) => {
            return Verdict::Inconclusive {
                reason: "a limit did not converge within the budget".into(),
                prefix_agreement: None,
            }
        }
        (LimitResult::FixedElement(_), _) | (_, LimitResult::FixedElement(_)) => {
            return Verdict::NotParabolic("a limit is an element of the group".into())
        }
        (LimitResult::Boundary { point: f, .. }, LimitResult::Boundary { point: b, .. }) => (f, b),
    };
    match (f, b) {
        (LimitPoint::Rational(x), LimitPoint::Rational(y)) => {
            if x == y {
                Verdict::Parabolic(x.clone())
            } else {
                Verdict::NotParabolic("forward and backward limits differ".into())
            }
        }
        _ => {
            let n = [f, b]
                .iter()
                .filter_map(|x| x.certified_length())
                .max()
                .unwrap_or(0)
                .max(cfg.target_prefix);
            let agree = f.prefix(n).common_prefix_len(&b.prefix(n));
            if agree >= cfg.target_prefix {
                Verdict::Inconclusive {
                    reason: "limits agree on their certified prefixes but are not recognized as rational".into(),
                    prefix_agreement: Some(agree),
                }
            } else {
                Verdict::NotParabolic("forward and backward limits differ".into())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GrowthClass {
    Bounded,
    /// Fitted exponent of `|φ^p(g)| ~ p^degree`, rounded to 2 decimals.
    Polynomial { degree: f64 },
    /// Fitted `r` in `|φ^p(g)| ~ e^{r p}`.
    Exponential { rate: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowthReport {
    pub class: GrowthClass,
    /// `(p, |φ^p(g)|)` for every sampled `p`.
    pub samples: Vec<(usize, usize)>,
    pub polynomial_residual: f64,
    pub exponential_residual: f64,
    /// Sampling stopped early on the word-length budget.
    pub truncated: bool,
}

/// Slope, intercept and root-mean-square residual of a least-squares line.
fn least_squares(points: &[(f64, f64)]) -> (f64, f64, f64) {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let rss: f64 = points
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).powi(2))
        .sum();
    (slope, intercept, (rss / n).sqrt())
}

/// Classifies the growth of `|φ^p(g)|` for `p = 1..=p_max`.
pub fn growth_classify(phi: &AutoPair, g: &Word, p_max: usize, cfg: &IterationConfig) -> Result<GrowthReport> {
    check_word(phi, g)?;
    if p_max < 8 {
        return Err(Error::InvalidParameter("growth sampling needs p_max >= 8".into()));
    }
    let mut samples = Vec::with_capacity(p_max);
    let mut w = g.clone();
    let mut truncated = false;
    for p in 1..=p_max {
        w = phi.forward().apply_unchecked(&w);
        if w.len() > cfg.max_word_length {
            truncated = true;
            break;
        }
        samples.push((p, w.len()));
    }
    let half = samples.len() / 2;
    let first_max = samples[..half].iter().map(|s| s.1).max().unwrap_or(0);
    let tail = &samples[half..];
    let tail_max = tail.iter().map(|s| s.1).max().unwrap_or(0);
    if samples.len() < 4 || tail_max <= first_max || tail.iter().any(|s| s.1 == 0) {
        return Ok(GrowthReport {
            class: GrowthClass::Bounded,
            samples,
            polynomial_residual: 0.0,
            exponential_residual: 0.0,
            truncated,
        });
    }
    let loglog: Vec<(f64, f64)> = tail
        .iter()
        .map(|&(p, l)| ((p as f64).ln(), (l as f64).ln()))
        .collect();
    let loglin: Vec<(f64, f64)> = tail.iter().map(|&(p, l)| (p as f64, (l as f64).ln())).collect();
    let (degree, _, poly_res) = least_squares(&loglog);
    let (rate, _, exp_res) = least_squares(&loglin);
    let class = if poly_res <= exp_res {
        GrowthClass::Polynomial {
            degree: (degree * 100.0).round() / 100.0,
        }
    } else {
        GrowthClass::Exponential { rate }
    };
    Ok(GrowthReport {
        class,
        samples,
        polynomial_residual: poly_res,
        exponential_residual: exp_res,
        truncated,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplittingCheck {
    /// No cancellation at any junction for every `p <= p_max`.
    Holds { p_max: usize },
    /// Cancellation between bricks `junction` and `junction + 1` (1-based)
    /// after `p` iterations.
    Fails { p: usize, junction: usize },
}

impl SplittingCheck {
    pub fn holds(&self) -> bool {
        matches!(self, SplittingCheck::Holds { .. })
    }
}

/// Bounded certificate that `g_1 · ... · g_n` is a splitting for φ: checks
/// the junctions of `[φ^p(g_i)]` for `p = 0..=p_max`.
pub fn verify_splitting(phi: &AutoPair, bricks: &[Word], p_max: usize, cfg: &IterationConfig) -> Result<SplittingCheck> {
    if bricks.len() < 2 || bricks.iter().any(Word::is_identity) {
        return Err(Error::InvalidParameter(
            "a splitting needs at least two nonidentity bricks".into(),
        ));
    }
    for b in bricks {
        check_word(phi, b)?;
    }
    let mut images: Vec<Word> = bricks.to_vec();
    for p in 0..=p_max {
        if p > 0 {
            for img in images.iter_mut() {
                *img = phi.forward().apply_unchecked(img);
                if img.len() > cfg.max_word_length {
                    return Err(Error::GrowthOverflow {
                        iteration: p,
                        length: img.len(),
                        limit: cfg.max_word_length,
                    });
                }
            }
        }
        for i in 0..images.len() - 1 {
            if let (Some(x), Some(y)) = (images[i].last(), images[i + 1].first()) {
                if y == x.inverse() {
                    return Ok(SplittingCheck::Fails { p, junction: i + 1 });
                }
            }
        }
    }
    Ok(SplittingCheck::Holds { p_max })
}

/// Heuristic probe for boundary-periodic behaviour: the smallest `q <= bound`
/// such that the limit of `seed` under `φ^q` has period greater than one
/// under φ.
pub fn detect_boundary_period(phi: &AutoPair, seed: &Word, bound: usize, cfg: &IterationConfig) -> Result<Option<usize>> {
    check_word(phi, seed)?;
    for q in 1..=bound {
        let psi = phi.power(q as i64);
        let limit = omega_limit(&psi, seed, cfg)?;
        let Some(j) = (1..=q).find(|&j| fixed_after(phi, &limit, j)) else {
            continue;
        };
        if j > 1 {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// Whether `φ^j` fixes the limit described by `limit`.
fn fixed_after(phi: &AutoPair, limit: &LimitResult, j: usize) -> bool {
    let pj = phi.power(j as i64);
    match limit {
        LimitResult::FixedElement(g) => pj.fixes(g),
        LimitResult::Boundary { point: LimitPoint::Rational(r), .. } => r.is_fixed_by(&pj),
        LimitResult::Boundary {
            point: LimitPoint::PrefixApprox { prefix, .. },
            ..
        } => {
            let image = pj.forward().apply_unchecked(prefix);
            2 * image.common_prefix_len(prefix) >= prefix.len()
        }
        LimitResult::NotConverged { .. } => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Alphabet {
        Alphabet::standard(4).unwrap()
    }

    fn w(s: &str) -> Word {
        f4().parse(s).unwrap()
    }

    fn phi(k: i64) -> AutoPair {
        let k1 = k + 1;
        AutoPair::parse(
            &f4(),
            &["a", "b a", &format!("c a^{k1}"), "d c"],
            &["a", "b a^-1", &format!("c a^-{k1}"), &format!("d a^{k1} c^-1")],
        )
        .unwrap()
    }

    fn rp(head: &str, period: &str) -> RationalPoint {
        RationalPoint::new(&w(head), &w(period)).unwrap()
    }

    #[test]
    fn canonical_rational_forms() {
        assert_eq!(rp("b a^-3", "a^-1"), rp("b", "a^-1"));
        assert_eq!(rp("b a", "a^-1 b"), rp("b", "b a^-1"));
        assert_eq!(rp("", "b a^4 b^-1"), rp("b", "a"));
        assert_eq!(rp("", "a^3").period(), &w("a"));
        assert_eq!(rp("b a b^-1", "a").head(), &w("b a b^-1"));
        let x = rp("c", "a b");
        assert_eq!(x.head(), &w("c"));
        assert_eq!(x.period(), &w("a b"));
        assert_eq!(rp("c a b", "a b"), x);
        assert_eq!(rp("c a", "b a"), x);
    }

    #[test]
    fn rational_prefix_and_element() {
        let x = rp("b", "a^-1");
        assert_eq!(x.prefix(4), w("b a^-3"));
        assert_eq!(x.element(), w("b a^-1 b^-1"));
        assert_eq!(RationalPoint::from_power(&w("b a b^-1"), false).unwrap(), x);
        assert_eq!(x.format(&f4()), "b (a^-1)^inf");
    }

    #[test]
    fn recognize_examples() {
        let cfg = IterationConfig::default();
        let p = w("b").concat(&w("a^-1").pow(199));
        assert_eq!(recognize_rational(&p, &cfg), Some(rp("b", "a^-1")));
        assert_eq!(recognize_rational(&w("a").pow(200), &cfg), Some(rp("", "a")));
        let mut x_plus = w("d c");
        for j in 1..30 {
            x_plus = x_plus.concat(&w("c")).concat(&w("a").pow(2 * j));
        }
        assert_eq!(recognize_rational(&x_plus.prefix(200), &cfg), None);
    }

    #[test]
    fn iterate_examples() {
        let cfg = IterationConfig::default();
        let g = w("b d^-1");
        assert_eq!(iterate(&phi(1), &g, 3, &cfg).unwrap(), w("b a^-1 c^-1 a^-2 c^-1 c^-1 d^-1"));
        assert_eq!(iterate(&phi(1), &g, 0, &cfg).unwrap(), g);
        assert_eq!(iterate(&phi(1), &g, -2, &cfg).unwrap(), w("b a^-2 c a^-4 c a^-2 d^-1"));
        let tiny = IterationConfig {
            max_word_length: 10,
            ..cfg
        };
        assert!(matches!(
            iterate(&phi(1), &w("d"), 5, &tiny),
            Err(Error::GrowthOverflow { .. })
        ));
    }

    #[test]
    fn omega_examples() {
        let cfg = IterationConfig::default();
        let r = omega_limit(&phi(2), &w("b"), &cfg).unwrap();
        assert_eq!(r.rational(), Some(&rp("b", "a")));
        assert_eq!(omega_limit(&phi(2), &w("a"), &cfg).unwrap(), LimitResult::FixedElement(w("a")));
        let r = omega_limit_backward(&phi(2), &w("c"), &cfg).unwrap();
        assert_eq!(r.rational(), Some(&rp("c", "a^-1")));
        let r = omega_limit(&phi(2), &w("d"), &cfg).unwrap();
        match r.point() {
            Some(LimitPoint::PrefixApprox { prefix, certified_length }) => {
                assert!(*certified_length >= 200);
                assert!(prefix.starts_with(&w("d c c a^3 c a^6 c a^9")));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn omega_of_rational_points() {
        let cfg = IterationConfig::default();
        let x = rp("b", "a^-1");
        let r = omega_limit_rational(&phi(1), &x, &cfg).unwrap();
        assert_eq!(r.rational(), Some(&x));
        let inner = AutoPair::inner(f4(), &w("a")).unwrap();
        let r = omega_limit_rational(&inner, &rp("", "b"), &cfg).unwrap();
        assert_eq!(r.rational(), Some(&rp("", "a")));
    }

    #[test]
    fn parabolic_examples() {
        let cfg = IterationConfig::default();
        let rep = detect_parabolic(&phi(1), &w("b d^-1"), &cfg).unwrap();
        assert_eq!(rep.verdict, Verdict::Parabolic(rp("b", "a^-1")));
        let rep = detect_parabolic(&phi(1), &w("a"), &cfg).unwrap();
        assert!(matches!(rep.verdict, Verdict::NotParabolic(_)));
        let rep = detect_parabolic(&phi(1), &w("d"), &cfg).unwrap();
        assert!(matches!(rep.verdict, Verdict::NotParabolic(_)), "{:?}", rep.verdict);
    }

    #[test]
    fn splitting_examples() {
        let cfg = IterationConfig::default();
        let check = verify_splitting(&phi(2), &[w("b a c^-1"), w("d^-1")], 50, &cfg).unwrap();
        assert!(check.holds());
        let check = verify_splitting(&phi(1).inverse(), &[w("b"), w("d^-1")], 50, &cfg).unwrap();
        assert!(check.holds());
        let f2 = Alphabet::standard(2).unwrap();
        let delta = AutoPair::parse(&f2, &["a", "b a"], &["a", "b a^-1"]).unwrap();
        let b = f2.parse("b").unwrap();
        let a_inv = f2.parse("a^-1").unwrap();
        assert_eq!(
            verify_splitting(&delta, &[b, a_inv], 1, &cfg).unwrap(),
            SplittingCheck::Fails { p: 1, junction: 1 }
        );
    }

    #[test]
    fn growth_examples() {
        let cfg = IterationConfig::default();
        let rep = growth_classify(&phi(1), &w("d"), 40, &cfg).unwrap();
        match rep.class {
            GrowthClass::Polynomial { degree } => assert!((1.8..=2.2).contains(&degree), "{degree}"),
            other => panic!("{other:?}"),
        }
        let id = AutoPair::identity(f4());
        assert_eq!(growth_classify(&id, &w("b d"), 10, &cfg).unwrap().class, GrowthClass::Bounded);
    }

    #[test]
    fn boundary_period_examples() {
        let cfg = IterationConfig::default();
        let f2 = Alphabet::standard(2).unwrap();
        let sigma = AutoPair::parse(&f2, &["a^-1", "b^-1"], &["a^-1", "b^-1"]).unwrap();
        let b = f2.parse("b").unwrap();
        assert_eq!(detect_boundary_period(&sigma, &b, 6, &cfg).unwrap(), Some(2));
        assert_eq!(detect_boundary_period(&AutoPair::identity(f2), &b, 6, &cfg).unwrap(), None);
        assert_eq!(detect_boundary_period(&phi(1), &w("b d^-1"), 3, &cfg).unwrap(), None);
    }
}
