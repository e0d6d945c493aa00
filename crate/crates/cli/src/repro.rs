//! Canned reproductions compared byte for byte with committed golden files.

use std::fmt::Write as _;

use freedyn::dynamics::{iterate, omega_limit, omega_limit_backward};
use freedyn::families::{make_phi_k, x_minus_prefix, x_plus_prefix};
use freedyn::{build_graph, Alphabet, FamilySpec, IterationConfig, LimitPoint, LimitResult};

use crate::{CliError, Outcome};

pub struct Repro {
    pub id: &'static str,
    pub title: &'static str,
    golden: &'static str,
    produce: fn() -> Result<String, CliError>,
}

pub const CATALOG: &[Repro] = &[
    Repro {
        id: "sec2",
        title: "iterates of b d^-1 under phi_1, p = -3..4",
        golden: include_str!("../golden/sec2.txt"),
        produce: sec2,
    },
    Repro {
        id: "omega",
        title: "omega-limits of b, c, d, b c^-1 and inverses under phi_1, phi_2",
        golden: include_str!("../golden/omega.txt"),
        produce: omega_table,
    },
    Repro {
        id: "matrix",
        title: "abelianized powers M_k^p for k = 1, 2 and p = 0..3",
        golden: include_str!("../golden/matrix.txt"),
        produce: matrices,
    },
    Repro {
        id: "fig1",
        title: "dynamics graph of the inner automorphism by a",
        golden: include_str!("../golden/fig1.dot"),
        produce: || graph("inner:u=a"),
    },
    Repro {
        id: "fig2",
        title: "dynamics graph of phi_1",
        golden: include_str!("../golden/fig2.dot"),
        produce: || graph("phi_k:k=1"),
    },
    Repro {
        id: "fig3",
        title: "dynamics graph of delta^2 (k(n-k) = 0)",
        golden: include_str!("../golden/fig3.dot"),
        produce: || graph("delta_n:n=2"),
    },
    Repro {
        id: "fig4",
        title: "dynamics graph of i_{a^-1} delta^2 (k(n-k) < 0)",
        golden: include_str!("../golden/fig4.dot"),
        produce: || graph("twist:n=2,k=-1"),
    },
    Repro {
        id: "fig5",
        title: "dynamics graph of i_a delta^3 (k(n-k) > 0)",
        golden: include_str!("../golden/fig5.dot"),
        produce: || graph("twist:n=3,k=1"),
    },
];

pub fn find(id: &str) -> Option<&'static Repro> {
    CATALOG.iter().find(|r| r.id == id)
}

impl Repro {
    pub fn output(&self) -> Result<String, CliError> {
        (self.produce)()
    }
}

/// Prints the reproduction and reports any difference from the golden file.
pub fn run(id: &str) -> Result<Outcome, CliError> {
    if id == "all" {
        let mut all_match = true;
        for r in CATALOG {
            let matches = r.output()? == r.golden;
            all_match &= matches;
            crate::emit(&format!("{:<8} {}\n", r.id, if matches { "ok" } else { "MISMATCH" }));
        }
        return Ok(if all_match { Outcome::Positive } else { Outcome::Negative });
    }
    let r = find(id).ok_or_else(|| CliError::Usage(format!("unknown repro id `{id}`; try `repro --list`")))?;
    let out = r.output()?;
    crate::emit(&out);
    match first_difference(&out, r.golden) {
        None => {
            eprintln!("repro {id}: matches golden");
            Ok(Outcome::Positive)
        }
        Some((line, got, want)) => {
            eprintln!("repro {id}: line {line} differs from golden\n  got:  {got}\n  want: {want}");
            Ok(Outcome::Negative)
        }
    }
}

fn first_difference(got: &str, want: &str) -> Option<(usize, String, String)> {
    let mut g = got.lines();
    let mut w = want.lines();
    for line in 1.. {
        match (g.next(), w.next()) {
            (None, None) => return None,
            (a, b) if a == b => continue,
            (a, b) => {
                let show = |s: Option<&str>| s.unwrap_or("<end of output>").to_string();
                return Some((line, show(a), show(b)));
            }
        }
    }
    unreachable!()
}

fn f4() -> Alphabet {
    Alphabet::standard(4).expect("rank 4")
}

fn sec2() -> Result<String, CliError> {
    let a = f4();
    let phi = make_phi_k(1)?;
    let g = a.parse("b d^-1")?;
    let cfg = IterationConfig::default();
    let mut out = String::new();
    for p in -3..=4 {
        let w = iterate(&phi, &g, p, &cfg)?;
        let _ = writeln!(out, "p={p:<2} {}", a.format(&w));
    }
    Ok(out)
}

fn describe_limit(r: &LimitResult, a: &Alphabet) -> String {
    match r {
        LimitResult::FixedElement(w) => format!("fixed element {}", a.format(w)),
        LimitResult::Boundary {
            point: LimitPoint::Rational(x),
            ..
        } => x.format(a),
        LimitResult::Boundary {
            point: LimitPoint::PrefixApprox { prefix, .. },
            ..
        } => format!("{} ...", a.format(&prefix.prefix(50))),
        LimitResult::NotConverged { diagnostics, .. } => format!("not converged ({})", diagnostics.reason),
    }
}

fn omega_table() -> Result<String, CliError> {
    let a = f4();
    let cfg = IterationConfig::default();
    let mut out = String::new();
    for k in [1, 2] {
        let phi = make_phi_k(k)?;
        for seed in ["b", "b^-1", "c", "c^-1", "d", "d^-1", "b c^-1"] {
            let g = a.parse(seed)?;
            let fwd = omega_limit(&phi, &g, &cfg)?;
            let bwd = omega_limit_backward(&phi, &g, &cfg)?;
            let _ = writeln!(out, "k={k} omega+({seed}) = {}", describe_limit(&fwd, &a));
            let _ = writeln!(out, "k={k} omega-({seed}) = {}", describe_limit(&bwd, &a));
        }
        let _ = writeln!(out, "k={k} X+ closed form = {} ...", a.format(&x_plus_prefix(k, 50)));
        let _ = writeln!(out, "k={k} X- closed form = {} ...", a.format(&x_minus_prefix(k, 50)));
    }
    Ok(out)
}

fn matrices() -> Result<String, CliError> {
    let mut out = String::new();
    for k in [1, 2] {
        let m = make_phi_k(k)?.abelianize();
        for p in 0..=3 {
            let _ = writeln!(out, "M_{k}^{p}");
            for row in m.pow(p)?.rows() {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
                let _ = writeln!(out, "  {}", cells.join(" "));
            }
        }
    }
    Ok(out)
}

fn graph(spec: &str) -> Result<String, CliError> {
    let fam = FamilySpec::parse(spec)?.build()?;
    let g = build_graph(&fam.pair, &fam.fix_gens, &fam.seeds, &IterationConfig::default())?;
    let mut out = format!(
        "// {spec}: {} vertices, {} edges, {} components, {} loops\n",
        g.vertices.len(),
        g.edges.len(),
        g.component_count(),
        g.loop_count()
    );
    out.push_str(&g.to_dot());
    Ok(out)
}
