//! Random search for parabolic orbits. No answer is expected: this only
//! reports what the engine finds for products of elementary Nielsen moves.

use freedyn::dynamics::detect_parabolic;
use freedyn::{default_seeds, Alphabet, AutoPair, Endomorphism, IterationConfig, Letter, Verdict, Word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::CliError;

pub struct Finding {
    pub automorphism: Vec<String>,
    pub seed: String,
    pub verdict: String,
    pub detail: String,
}

pub struct Summary {
    pub rank: usize,
    pub samples: usize,
    pub seeds_tested: usize,
    pub parabolic: usize,
    pub inconclusive: usize,
    pub not_parabolic: usize,
    pub findings: Vec<Finding>,
}

impl Summary {
    pub fn to_json(&self) -> Value {
        json!({
            "rank": self.rank,
            "samples": self.samples,
            "seeds_tested": self.seeds_tested,
            "parabolic": self.parabolic,
            "inconclusive": self.inconclusive,
            "not_parabolic": self.not_parabolic,
            "findings": self.findings.iter().map(|f| json!({
                "automorphism": f.automorphism,
                "seed": f.seed,
                "verdict": f.verdict,
                "detail": f.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

/// One elementary move: `x_i -> x_i x_j^e` (right), `x_i -> x_j^e x_i`
/// (left), or `x_i -> x_i^-1`.
fn nielsen_move(alphabet: &Alphabet, rng: &mut StdRng) -> Result<AutoPair, CliError> {
    let rank = alphabet.rank();
    let gens = alphabet.generators();
    let i = rng.gen_range(0..rank);
    let mut forward = gens.clone();
    let mut backward = gens.clone();
    match rng.gen_range(0..5) {
        0 => {
            forward[i] = gens[i].inverse();
            backward[i] = gens[i].inverse();
        }
        kind => {
            let j = (i + rng.gen_range(1..rank)) % rank;
            let x = Word::letter(Letter::new(j, kind % 2 == 0));
            if kind <= 2 {
                forward[i] = gens[i].concat(&x);
                backward[i] = gens[i].concat(&x.inverse());
            } else {
                forward[i] = x.concat(&gens[i]);
                backward[i] = x.inverse().concat(&gens[i]);
            }
        }
    }
    Ok(AutoPair::verify(
        Endomorphism::new(alphabet.clone(), forward)?,
        Endomorphism::new(alphabet.clone(), backward)?,
    )?)
}

pub fn run(rank: usize, samples: usize, moves: usize, rng_seed: u64, cfg: &IterationConfig) -> Result<Summary, CliError> {
    if rank < 2 {
        return Err(CliError::Usage("explore needs rank at least 2".into()));
    }
    let alphabet = Alphabet::standard(rank)?;
    let mut rng = StdRng::seed_from_u64(rng_seed);
    let seeds = default_seeds(rank);
    let mut summary = Summary {
        rank,
        samples,
        seeds_tested: 0,
        parabolic: 0,
        inconclusive: 0,
        not_parabolic: 0,
        findings: Vec::new(),
    };
    for _ in 0..samples {
        let mut phi = AutoPair::identity(alphabet.clone());
        for _ in 0..moves {
            phi = phi.compose(&nielsen_move(&alphabet, &mut rng)?)?;
        }
        for seed in &seeds {
            summary.seeds_tested += 1;
            let report = detect_parabolic(&phi, seed, cfg)?;
            let (verdict, detail) = match &report.verdict {
                Verdict::Parabolic(x) => {
                    summary.parabolic += 1;
                    ("parabolic", x.format(&alphabet))
                }
                Verdict::Inconclusive { reason, .. } => {
                    summary.inconclusive += 1;
                    ("inconclusive", reason.clone())
                }
                Verdict::NotParabolic(_) => {
                    summary.not_parabolic += 1;
                    continue;
                }
            };
            summary.findings.push(Finding {
                automorphism: phi.forward().describe(),
                seed: alphabet.format(seed),
                verdict: verdict.to_string(),
                detail,
            });
        }
    }
    Ok(summary)
}
