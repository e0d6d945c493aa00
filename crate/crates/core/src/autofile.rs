//! Plain-text automorphism files.
//!
//! ```text
//! alphabet: a b c d
//! map a -> a
//! map b -> b a
//! ...
//! inv a -> a
//! inv b -> b a^-1
//! ...
//! fix: a; b a b^-1
//! seeds: b; b d^-1
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. `fix` and `seeds`
//! are optional and hold `;`-separated words.

use crate::automorphism::{AutoPair, Endomorphism};
use crate::error::{Error, Result};
use crate::families::Family;
use crate::word::{Alphabet, Word};

#[derive(Debug, Clone)]
pub struct AutoFile {
    pub pair: AutoPair,
    pub fix_gens: Vec<Word>,
    pub seeds: Vec<Word>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

impl AutoFile {
    pub fn parse(text: &str) -> Result<AutoFile> {
        let mut alphabet: Option<Alphabet> = None;
        let mut forward: Vec<Option<Word>> = Vec::new();
        let mut backward: Vec<Option<Word>> = Vec::new();
        let mut fix_gens = Vec::new();
        let mut seeds = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let at = |e: Error| parse_err(line_no, e.to_string());
            if let Some(rest) = line.strip_prefix("alphabet:") {
                if alphabet.is_some() {
                    return Err(parse_err(line_no, "alphabet declared twice"));
                }
                let names: Vec<&str> = rest.split_whitespace().collect();
                let a = Alphabet::new(&names).map_err(at)?;
                forward = vec![None; a.rank()];
                backward = vec![None; a.rank()];
                alphabet = Some(a);
                continue;
            }
            let a = alphabet
                .as_ref()
                .ok_or_else(|| parse_err(line_no, "the alphabet must be declared first"))?;
            if let Some(rest) = line.strip_prefix("fix:") {
                fix_gens.extend(parse_list(a, rest).map_err(at)?);
            } else if let Some(rest) = line.strip_prefix("seeds:") {
                seeds.extend(parse_list(a, rest).map_err(at)?);
            } else if let Some((kind, rest)) = line.split_once(char::is_whitespace) {
                let table = match kind {
                    "map" => &mut forward,
                    "inv" => &mut backward,
                    _ => return Err(parse_err(line_no, format!("unknown directive `{kind}`"))),
                };
                let (gen, image) = rest
                    .split_once("->")
                    .ok_or_else(|| parse_err(line_no, "expected `<generator> -> <word>`"))?;
                let g = a
                    .generator(gen.trim())
                    .ok_or_else(|| parse_err(line_no, format!("unknown generator `{}`", gen.trim())))?;
                if table[g].is_some() {
                    return Err(parse_err(line_no, format!("image of `{}` given twice", gen.trim())));
                }
                table[g] = Some(a.parse(image).map_err(at)?);
            } else {
                return Err(parse_err(line_no, format!("cannot parse `{line}`")));
            }
        }
        let end = text.lines().count();
        let a = alphabet.ok_or_else(|| parse_err(end, "missing `alphabet:` line"))?;
        let collect = |table: Vec<Option<Word>>, kind: &str| -> Result<Vec<Word>> {
            table
                .into_iter()
                .enumerate()
                .map(|(g, w)| w.ok_or_else(|| parse_err(end, format!("missing `{kind} {} -> ...`", a.name(g)))))
                .collect()
        };
        let forward = Endomorphism::new(a.clone(), collect(forward, "map")?)?;
        let backward = Endomorphism::new(a.clone(), collect(backward, "inv")?)?;
        let pair = AutoPair::verify(forward, backward)?;
        pair.verify_fixed_generators(&fix_gens)?;
        Ok(AutoFile { pair, fix_gens, seeds })
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.pair.alphabet()
    }

    /// Text form; `parse(to_text())` reproduces the same data.
    pub fn to_text(&self) -> String {
        let a = self.alphabet();
        let mut out = format!("alphabet: {}\n", a.names().join(" "));
        for line in self.pair.forward().describe() {
            out.push_str(&format!("map {line}\n"));
        }
        for line in self.pair.backward().describe() {
            out.push_str(&format!("inv {line}\n"));
        }
        let list = |ws: &[Word]| ws.iter().map(|w| a.format(w)).collect::<Vec<_>>().join("; ");
        if !self.fix_gens.is_empty() {
            out.push_str(&format!("fix: {}\n", list(&self.fix_gens)));
        }
        if !self.seeds.is_empty() {
            out.push_str(&format!("seeds: {}\n", list(&self.seeds)));
        }
        out
    }
}

impl From<Family> for AutoFile {
    fn from(f: Family) -> AutoFile {
        AutoFile {
            pair: f.pair,
            fix_gens: f.fix_gens,
            seeds: f.seeds,
        }
    }
}

/// `;`-separated words; empty entries are skipped.
pub fn parse_list(a: &Alphabet, text: &str) -> Result<Vec<Word>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| a.parse(s))
        .collect()
}
