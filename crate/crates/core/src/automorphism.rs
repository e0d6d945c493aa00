//! Endomorphisms given by generator images, and automorphisms certified
//! by an explicit inverse.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::word::{Alphabet, Reducer, Word};

#[derive(Clone, PartialEq, Eq)]
pub struct Endomorphism {
    alphabet: Alphabet,
    images: Vec<Word>,
    // images of inverse letters, cached for apply
    inverse_images: Vec<Word>,
}

impl Endomorphism {
    pub fn new(alphabet: Alphabet, images: Vec<Word>) -> Result<Endomorphism> {
        if images.len() != alphabet.rank() {
            return Err(Error::AlphabetMismatch(format!(
                "{} images for an alphabet of rank {}",
                images.len(),
                alphabet.rank()
            )));
        }
        for img in &images {
            img.check_rank(alphabet.rank())?;
        }
        let inverse_images = images.iter().map(Word::inverse).collect();
        Ok(Endomorphism {
            alphabet,
            images,
            inverse_images,
        })
    }

    /// Parses one image per generator, in alphabet order.
    pub fn parse(alphabet: &Alphabet, images: &[&str]) -> Result<Endomorphism> {
        let images = images
            .iter()
            .map(|s| alphabet.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Endomorphism::new(alphabet.clone(), images)
    }

    pub fn identity(alphabet: Alphabet) -> Endomorphism {
        let images = alphabet.generators();
        Endomorphism::new(alphabet, images).expect("generators are valid")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &Word {
        &self.images[generator]
    }

    /// The reduced image `[e(g)]`.
    pub fn apply(&self, g: &Word) -> Result<Word> {
        g.check_rank(self.rank())?;
        Ok(self.apply_unchecked(g))
    }

    pub(crate) fn apply_unchecked(&self, g: &Word) -> Word {
        let mut out = Reducer::with_capacity(g.len());
        for &l in g.letters() {
            let img = if l.is_positive() {
                &self.images[l.generator()]
            } else {
                &self.inverse_images[l.generator()]
            };
            out.extend(img.letters().iter().copied());
        }
        out.finish()
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        self.check_same_alphabet(other)?;
        let images = other.images.iter().map(|w| self.apply_unchecked(w)).collect();
        Endomorphism::new(self.alphabet.clone(), images)
    }

    pub fn fixes(&self, g: &Word) -> bool {
        g.check_rank(self.rank()).is_ok() && &self.apply_unchecked(g) == g
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| w.len() == 1 && w.letters()[0] == crate::word::Letter::gen(i))
    }

    /// Column `j` holds the exponent sums of the image of generator `j`.
    pub fn abelianize(&self) -> IntMatrix {
        let n = self.rank();
        let mut m = IntMatrix::zeros(n);
        for (j, img) in self.images.iter().enumerate() {
            for (i, s) in img.exponent_sums(n).into_iter().enumerate() {
                m.set(i, j, s);
            }
        }
        m
    }

    pub(crate) fn check_same_alphabet(&self, other: &Endomorphism) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "[{}] vs [{}]",
                self.alphabet.names().join(" "),
                other.alphabet.names().join(" ")
            )));
        }
        Ok(())
    }

    /// `x -> image` lines in alphabet order.
    pub fn describe(&self) -> Vec<String> {
        self.images
            .iter()
            .enumerate()
            .map(|(i, w)| format!("{} -> {}", self.alphabet.name(i), self.alphabet.format(w)))
            .collect()
    }
}

impl fmt::Debug for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.describe().join(", "))
    }
}

/// An automorphism together with its inverse; both compositions are
/// checked to be the identity on generators at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AutoPair {
    forward: Endomorphism,
    backward: Endomorphism,
}

impl AutoPair {
    pub fn verify(forward: Endomorphism, backward: Endomorphism) -> Result<AutoPair> {
        forward.check_same_alphabet(&backward)?;
        let alphabet = forward.alphabet().clone();
        for (direction, outer, inner) in [
            ("backward after forward", &backward, &forward),
            ("forward after backward", &forward, &backward),
        ] {
            for (i, g) in alphabet.generators().iter().enumerate() {
                let image = outer.apply_unchecked(inner.image(i));
                if &image != g {
                    return Err(Error::NotInverse {
                        direction,
                        generator: alphabet.name(i).to_string(),
                        image: alphabet.format(&image),
                    });
                }
            }
        }
        Ok(AutoPair { forward, backward })
    }

    pub fn parse(alphabet: &Alphabet, forward: &[&str], backward: &[&str]) -> Result<AutoPair> {
        AutoPair::verify(
            Endomorphism::parse(alphabet, forward)?,
            Endomorphism::parse(alphabet, backward)?,
        )
    }

    pub fn identity(alphabet: Alphabet) -> AutoPair {
        let id = Endomorphism::identity(alphabet);
        AutoPair {
            forward: id.clone(),
            backward: id,
        }
    }

    /// The inner automorphism `g -> u g u^-1`.
    pub fn inner(alphabet: Alphabet, u: &Word) -> Result<AutoPair> {
        u.check_rank(alphabet.rank())?;
        let forward = alphabet.generators().iter().map(|g| u.conjugate(g)).collect();
        let backward = alphabet
            .generators()
            .iter()
            .map(|g| u.inverse().conjugate(g))
            .collect();
        Ok(AutoPair {
            forward: Endomorphism::new(alphabet.clone(), forward)?,
            backward: Endomorphism::new(alphabet, backward)?,
        })
    }

    pub fn forward(&self) -> &Endomorphism {
        &self.forward
    }

    pub fn backward(&self) -> &Endomorphism {
        &self.backward
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.forward.alphabet()
    }

    pub fn rank(&self) -> usize {
        self.forward.rank()
    }

    pub fn inverse(&self) -> AutoPair {
        AutoPair {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    pub fn apply(&self, g: &Word) -> Result<Word> {
        self.forward.apply(g)
    }

    pub fn apply_inverse(&self, g: &Word) -> Result<Word> {
        self.backward.apply(g)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AutoPair) -> Result<AutoPair> {
        Ok(AutoPair {
            forward: self.forward.compose(&other.forward)?,
            backward: other.backward.compose(&self.backward)?,
        })
    }

    /// `psi ∘ self ∘ psi^-1`.
    pub fn conjugate_by(&self, psi: &AutoPair) -> Result<AutoPair> {
        psi.compose(self)?.compose(&psi.inverse())
    }

    /// `self^p`; negative powers use the inverse.
    pub fn power(&self, p: i64) -> AutoPair {
        let base = if p < 0 { self.inverse() } else { self.clone() };
        let mut acc = AutoPair::identity(self.alphabet().clone());
        for _ in 0..p.unsigned_abs() {
            acc = base.compose(&acc).expect("same alphabet");
        }
        acc
    }

    pub fn fixes(&self, g: &Word) -> bool {
        self.forward.fixes(g)
    }

    pub fn is_identity(&self) -> bool {
        self.forward.is_identity()
    }

    pub fn abelianize(&self) -> IntMatrix {
        self.forward.abelianize()
    }

    /// Checks that every listed word is fixed; reports the first that is not.
    pub fn verify_fixed_generators(&self, gens: &[Word]) -> Result<()> {
        for g in gens {
            let image = self.forward.apply(g)?;
            if &image != g {
                return Err(Error::NotFixed {
                    generator: self.alphabet().format(g),
                    image: self.alphabet().format(&image),
                });
            }
        }
        Ok(())
    }
}

/// `psi ∘ phi ∘ psi^-1`.
pub fn conjugate(phi: &AutoPair, psi: &AutoPair) -> Result<AutoPair> {
    phi.conjugate_by(psi)
}
