//! Freely reduced words over a ranked alphabet.
//!
//! A [`Word`] is always freely reduced: every constructor runs the
//! stack-based reduction, so no adjacent `x x^-1` pair can exist
//! downstream. The empty word is the identity element.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A generator or its inverse. Stored as `±(index + 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: usize, positive: bool) -> Letter {
        let raw = generator as i32 + 1;
        Letter(if positive { raw } else { -raw })
    }

    /// The positive letter of a generator (0-based).
    pub fn gen(generator: usize) -> Letter {
        Letter::new(generator, true)
    }

    /// 0-based generator index.
    pub fn generator(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    pub fn sign(self) -> i64 {
        if self.0 > 0 {
            1
        } else {
            -1
        }
    }

    pub fn inverse(self) -> Letter {
        Letter(-self.0)
    }

    /// Position in the order `a, a^-1, b, b^-1, ...` used for every
    /// canonical enumeration in the crate.
    pub fn order_key(self) -> usize {
        2 * self.generator() + usize::from(!self.is_positive())
    }

    /// All `2N` letters of a rank-`N` alphabet in canonical order.
    pub fn all(rank: usize) -> impl Iterator<Item = Letter> {
        (0..rank).flat_map(|g| [Letter::new(g, true), Letter::new(g, false)])
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order_key().cmp(&other.order_key())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = (b'a' + (self.generator() % 26) as u8) as char;
        if self.is_positive() {
            write!(f, "{name}")
        } else {
            write!(f, "{name}^-1")
        }
    }
}

/// Incremental free reduction. Pushing a letter either appends it or
/// cancels the current last letter, so reduction is O(1) per letter.
#[derive(Debug, Default, Clone)]
pub struct Reducer {
    stack: Vec<Letter>,
}

impl Reducer {
    pub fn new() -> Self {
        Reducer { stack: Vec::new() }
    }

    pub fn with_capacity(capacity: usize) -> Self {
        Reducer {
            stack: Vec::with_capacity(capacity),
        }
    }

    #[inline]
    pub fn push(&mut self, letter: Letter) {
        if self.stack.last() == Some(&letter.inverse()) {
            self.stack.pop();
        } else {
            self.stack.push(letter);
        }
    }

    pub fn extend<I: IntoIterator<Item = Letter>>(&mut self, letters: I) {
        for l in letters {
            self.push(l);
        }
    }

    pub fn len(&self) -> usize {
        self.stack.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stack.is_empty()
    }

    pub fn finish(self) -> Word {
        Word {
            letters: self.stack,
        }
    }
}

/// A freely reduced word, i.e. an element of the free group.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

/// `word = conjugator · core · conjugator^-1` with `core` cyclically reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicDecomposition {
    pub conjugator: Word,
    pub core: Word,
}

#[allow(clippy::len_without_is_empty)]
impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    pub fn letter(l: Letter) -> Word {
        Word { letters: vec![l] }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Word {
        let mut r = Reducer::new();
        r.extend(raw);
        r.finish()
    }

    /// Like [`Word::reduce`], rejecting letters outside a rank-`rank` alphabet.
    pub fn reduce_checked<I: IntoIterator<Item = Letter>>(raw: I, rank: usize) -> Result<Word> {
        let mut r = Reducer::new();
        for l in raw {
            if l.generator() >= rank {
                return Err(Error::AlphabetMismatch(format!(
                    "generator index {} outside rank {rank}",
                    l.generator() + 1
                )));
            }
            r.push(l);
        }
        Ok(r.finish())
    }

    pub(crate) fn from_reduced(letters: Vec<Letter>) -> Word {
        debug_assert!(letters.windows(2).all(|w| w[1] != w[0].inverse()));
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// Largest generator index + 1 used by the word (0 for the identity).
    pub fn max_rank(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.generator() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        if self.max_rank() > rank {
            return Err(Error::AlphabetMismatch(format!(
                "word uses generator {} but the alphabet has rank {rank}",
                self.max_rank()
            )));
        }
        Ok(())
    }

    /// The reduced product `[self · other]`.
    pub fn concat(&self, other: &Word) -> Word {
        let cancel = self
            .letters
            .iter()
            .rev()
            .zip(other.letters.iter())
            .take_while(|(x, y)| **y == x.inverse())
            .count();
        let mut letters = Vec::with_capacity(self.len() + other.len() - 2 * cancel);
        letters.extend_from_slice(&self.letters[..self.len() - cancel]);
        letters.extend_from_slice(&other.letters[cancel..]);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `[self^n]` for any integer `n`.
    pub fn pow(&self, n: i64) -> Word {
        if n < 0 {
            return self.inverse().pow(-n);
        }
        if n == 0 || self.is_identity() {
            return Word::identity();
        }
        let CyclicDecomposition { conjugator, core } =
            self.cyclic_reduce().expect("nonidentity word");
        let mut letters = Vec::with_capacity(2 * conjugator.len() + core.len() * n as usize);
        letters.extend_from_slice(&conjugator.letters);
        for _ in 0..n {
            letters.extend_from_slice(&core.letters);
        }
        letters.extend(conjugator.letters.iter().rev().map(|l| l.inverse()));
        Word { letters }
    }

    /// `[self · x · self^-1]`.
    pub fn conjugate(&self, x: &Word) -> Word {
        self.concat(x).concat(&self.inverse())
    }

    /// Splits the word as `w c w^-1` with `c` cyclically reduced and `w`
    /// the longest cancelling prefix.
    pub fn cyclic_reduce(&self) -> Result<CyclicDecomposition> {
        if self.is_identity() {
            return Err(Error::IdentityHasNoCore);
        }
        let n = self.len();
        let mut t = 0;
        // A reduced word never cancels across its middle, so the core is nonempty.
        while 2 * t + 1 < n && self.letters[n - 1 - t] == self.letters[t].inverse() {
            t += 1;
        }
        Ok(CyclicDecomposition {
            conjugator: Word::from_reduced(self.letters[..t].to_vec()),
            core: Word::from_reduced(self.letters[t..n - t].to_vec()),
        })
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(f), Some(l)) => self.len() == 1 || l != f.inverse(),
            _ => true,
        }
    }

    /// Returns `(root, power)` with `self = root^power` and `power` maximal.
    pub fn primitive_root(&self) -> Result<(Word, usize)> {
        let CyclicDecomposition { conjugator, core } = self.cyclic_reduce()?;
        let (core_root, power) = periodic_root(&core.letters);
        let root = conjugator.concat(&Word::from_reduced(core_root.to_vec())).concat(&conjugator.inverse());
        Ok((root, power))
    }

    /// Length of the longest common prefix (the Gromov product at the
    /// identity in the Cayley tree).
    pub fn common_prefix_len(&self, other: &Word) -> usize {
        common_prefix_len(&self.letters, &other.letters)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word::from_reduced(self.letters[..n.min(self.len())].to_vec())
    }

    pub fn starts_with(&self, other: &Word) -> bool {
        self.letters.starts_with(&other.letters)
    }

    pub fn ends_with(&self, other: &Word) -> bool {
        self.letters.ends_with(&other.letters)
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self, rank: usize) -> Vec<i64> {
        let mut sums = vec![0; rank];
        for l in &self.letters {
            sums[l.generator()] += l.sign();
        }
        sums
    }

    /// The first `n` letters of `self^∞` (self must be nonidentity).
    pub fn infinite_power_prefix(&self, n: usize) -> Word {
        let CyclicDecomposition { conjugator, core } =
            self.cyclic_reduce().expect("nonidentity word");
        let letters: Vec<Letter> = conjugator
            .letters
            .iter()
            .chain(core.letters.iter().cycle())
            .take(n)
            .copied()
            .collect();
        Word::from_reduced(letters)
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate_left(&self, k: usize) -> Word {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            letters.rotate_left(k % self.len());
        }
        Word::reduce(letters)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| format!("{l:?}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn common_prefix_len(u: &[Letter], v: &[Letter]) -> usize {
    u.iter().zip(v).take_while(|(x, y)| x == y).count()
}

/// Smallest block `r` with `letters = r^m`; returns `(r, m)`.
fn periodic_root(letters: &[Letter]) -> (&[Letter], usize) {
    let n = letters.len();
    for d in 1..=n {
        if n.is_multiple_of(d) && (d..n).all(|i| letters[i] == letters[i - d]) {
            return (&letters[..d], n / d);
        }
    }
    (letters, 1)
}

/// Ordered generator names. Names are whitespace-free and contain neither
/// `^` nor `;`, so the text syntax stays unambiguous.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Alphabet> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.len() < 2 {
            return Err(Error::InvalidAlphabet(format!(
                "rank must be at least 2, got {}",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty()
                || n.chars().any(|c| c.is_whitespace() || c == '^' || c == ';' || c == '{' || c == '}')
            {
                return Err(Error::InvalidAlphabet(format!("bad generator name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidAlphabet(format!("duplicate generator name `{n}`")));
            }
        }
        Ok(Alphabet { names })
    }

    /// `a, b, c, ...`; ranks above 26 continue as `x27, x28, ...`.
    pub fn standard(rank: usize) -> Result<Alphabet> {
        let names: Vec<String> = (0..rank)
            .map(|i| {
                if i < 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("x{}", i + 1)
                }
            })
            .collect();
        Alphabet::new(&names)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, generator: usize) -> &str {
        &self.names[generator]
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.generator(name)
            .map(Letter::gen)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    /// All generators as one-letter words.
    pub fn generators(&self) -> Vec<Word> {
        (0..self.rank()).map(|g| Word::letter(Letter::gen(g))).collect()
    }

    /// Parses whitespace-separated tokens `x` or `x^n` (braces around the
    /// exponent are tolerated). The empty string is the identity.
    pub fn parse(&self, text: &str) -> Result<Word> {
        let mut r = Reducer::new();
        for token in text.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                None => (token, 1i64),
                Some((name, e)) => {
                    let e = e.trim_start_matches('{').trim_end_matches('}');
                    let e = e.strip_prefix('+').unwrap_or(e);
                    let exp: i64 = e
                        .parse()
                        .map_err(|_| Error::MalformedExponent(token.to_string()))?;
                    (name, exp)
                }
            };
            let letter = self.letter(name)?;
            let letter = if exp < 0 { letter.inverse() } else { letter };
            for _ in 0..exp.unsigned_abs() {
                r.push(letter);
            }
        }
        Ok(r.finish())
    }

    /// Canonical spelling: maximal runs of one letter collapse to `x^n`.
    pub fn format(&self, word: &Word) -> String {
        let mut out = String::new();
        let letters = word.letters();
        let mut i = 0;
        while i < letters.len() {
            let l = letters[i];
            let mut j = i + 1;
            while j < letters.len() && letters[j] == l {
                j += 1;
            }
            let run = (j - i) as i64;
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(&self.names[l.generator()]);
            let exp = run * l.sign();
            if exp != 1 {
                out.push('^');
                out.push_str(&exp.to_string());
            }
            i = j;
        }
        out
    }

    pub fn format_letter(&self, l: Letter) -> String {
        self.format(&Word::letter(l))
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

    /// Rewrites until no adjacent inverse pair remains.
    fn naive_reduce(raw: &[Letter]) -> Vec<Letter> {
        let mut v = raw.to_vec();
        loop {
            let pos = v.windows(2).position(|p| p[1] == p[0].inverse());
            match pos {
                Some(i) => {
                    v.drain(i..i + 2);
                }
                None => return v,
            }
        }
    }

    #[test]
    fn reduce_examples() {
        let a = f4();
        let raw = |s: &str| -> Vec<Letter> {
            s.split_whitespace()
                .map(|t| a.parse(t).unwrap().letters()[0])
                .collect()
        };
        assert_eq!(Word::reduce(raw("a b b^-1 a")), w("a a"));
        assert_eq!(Word::reduce(vec![]), Word::identity());
        let input = raw("b a a^-1 a^-1 b^-1");
        let expected = naive_reduce(&input);
        assert_eq!(Word::reduce(input).letters(), &expected[..]);
        assert_eq!(a.format(&Word::reduce(raw("b a a^-1 a^-1 b^-1"))), "b a^-1 b^-1");
    }

    #[test]
    fn reduce_rejects_out_of_range() {
        let err = Word::reduce_checked([Letter::gen(0), Letter::gen(4)], 4).unwrap_err();
        assert!(matches!(err, Error::AlphabetMismatch(_)));
    }

    #[test]
    fn concat_examples() {
        assert_eq!(w("b").concat(&w("d^-1")), w("b d^-1"));
        assert_eq!(w("b a").concat(&w("a^-1 b^-1")), Word::identity());
        assert_eq!(w("b a^2").concat(&w("a^-2 c^-1")), w("b c^-1"));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w("d a^2 c^-1").inverse(), w("c a^-2 d^-1"));
        assert_eq!(Word::identity().inverse(), Word::identity());
        assert_eq!(w("b a^-1 b^-1").inverse(), w("b a b^-1"));
    }

    #[test]
    fn cyclic_reduce_examples() {
        let d = w("b a^4 b^-1").cyclic_reduce().unwrap();
        assert_eq!((d.conjugator, d.core), (w("b"), w("a^4")));
        let d = w("a").cyclic_reduce().unwrap();
        assert_eq!((d.conjugator, d.core), (Word::identity(), w("a")));
        let d = w("b a^-1 b^-1").cyclic_reduce().unwrap();
        assert_eq!((d.conjugator, d.core), (w("b"), w("a^-1")));
        assert_eq!(Word::identity().cyclic_reduce(), Err(Error::IdentityHasNoCore));
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(w("a^6").primitive_root().unwrap(), (w("a"), 6));
        assert_eq!(w("b a b^-1").primitive_root().unwrap(), (w("b a b^-1"), 1));
        assert_eq!(w("b a^4 b^-1").primitive_root().unwrap(), (w("b a b^-1"), 4));
        assert_eq!(w("a b a b").primitive_root().unwrap(), (w("a b"), 2));
        assert!(Word::identity().primitive_root().is_err());
    }

    #[test]
    fn common_prefix_examples() {
        assert_eq!(w("b a^-1 c^-1").common_prefix_len(&w("b a^-2 c^-1")), 2);
        let u = w("a b c^-1 d");
        assert_eq!(u.common_prefix_len(&u), u.len());
        assert_eq!(w("a").common_prefix_len(&w("b")), 0);
    }

    #[test]
    fn parse_and_format() {
        let a = f4();
        assert_eq!(a.parse("b a^-1 b^-1").unwrap().len(), 3);
        assert_eq!(a.parse("a^3").unwrap(), a.parse("a a a").unwrap());
        assert_eq!(a.format(&a.parse("a a a").unwrap()), "a^3");
        assert_eq!(a.format(&a.parse("d a^{2} c^{-1}").unwrap()), "d a^2 c^-1");
        assert_eq!(a.parse("").unwrap(), Word::identity());
        assert_eq!(a.parse("e"), Err(Error::UnknownSymbol("e".into())));
        assert_eq!(a.parse("a^x"), Err(Error::MalformedExponent("a^x".into())));
        assert_eq!(a.parse("a^"), Err(Error::MalformedExponent("a^".into())));
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(&["a"]).is_err());
        assert!(Alphabet::new(&["a", "a"]).is_err());
        assert!(Alphabet::new(&["a", "b^"]).is_err());
        assert!(Alphabet::new(&["x1", "x2", "x3"]).is_ok());
        assert_eq!(Alphabet::standard(28).unwrap().name(27), "x28");
    }

    #[test]
    fn pow_and_infinite_prefix() {
        assert_eq!(w("b a b^-1").pow(3), w("b a^3 b^-1"));
        assert_eq!(w("a b").pow(-2), w("b^-1 a^-1 b^-1 a^-1"));
        assert_eq!(w("b a b^-1").infinite_power_prefix(5), w("b a a a a"));
    }

    #[test]
    fn naive_oracle_agrees_exhaustively_on_short_rank2_sequences() {
        let letters: Vec<Letter> = Letter::all(2).collect();
        // every sequence of length <= 6 over the 4 letters of rank 2
        let mut stack: Vec<Vec<Letter>> = vec![vec![]];
        while let Some(seq) = stack.pop() {
            assert_eq!(Word::reduce(seq.clone()).letters(), &naive_reduce(&seq)[..]);
            if seq.len() < 6 {
                for &l in &letters {
                    let mut next = seq.clone();
                    next.push(l);
                    stack.push(next);
                }
            }
        }
    }
}
