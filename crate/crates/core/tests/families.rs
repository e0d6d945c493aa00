use freedyn::families::{
    find_conjugator, make_alpha_k, make_beta, make_delta, make_phi_k, make_twist, phi_k_fix_gens, sample_sl2,
    stock_thetas, twist_fix_gens,
};
use freedyn::graph::build_graph;
use freedyn::{
    classify_twist, default_seeds, dilatation_info, expected_graph, Alphabet, AutoPair, FamilySpec, IterationConfig,
    StallingsGraph,
};

fn pair_is_inverse(phi: &AutoPair) {
    let roundtrip = AutoPair::verify(phi.forward().clone(), phi.backward().clone());
    assert!(roundtrip.is_ok());
}

#[test]
fn catalog_grid_pairs_and_fixed_generators() {
    let a5 = Alphabet::standard(5).unwrap();
    for k in 0..=5 {
        let mut alpha_fix = phi_k_fix_gens();
        alpha_fix.push(a5.parse("e").unwrap());
        for p in 1..=5 {
            let phi = make_phi_k(k).unwrap().power(p);
            pair_is_inverse(&phi);
            phi.verify_fixed_generators(&phi_k_fix_gens()).unwrap();
            let alpha = make_alpha_k(k).unwrap().power(p);
            pair_is_inverse(&alpha);
            alpha.verify_fixed_generators(&alpha_fix).unwrap();
        }
    }
    for n in [-3, -2, -1, 1, 2, 3] {
        let delta = make_delta(n).unwrap();
        pair_is_inverse(&delta);
        delta.verify_fixed_generators(&twist_fix_gens(n, 0).unwrap()).unwrap();
        for k in -2..=5 {
            let twist = make_twist(n, k).unwrap();
            pair_is_inverse(&twist);
            twist.verify_fixed_generators(&twist_fix_gens(n, k).unwrap()).unwrap();
        }
    }
    for th in stock_thetas() {
        for rank in [6, 7, 8] {
            let beta = make_beta(rank, &th.pair).unwrap();
            pair_is_inverse(&beta);
        }
    }
}

#[test]
fn abelianization_closed_form() {
    for k in 0..=10i64 {
        let m = make_phi_k(k).unwrap().abelianize();
        for p in 0..=10i64 {
            let mp = m.pow(p as u64).unwrap();
            assert_eq!(mp.get(0, 1), p);
            assert_eq!(mp.get(0, 2), (k + 1) * p);
            assert_eq!(mp.get(0, 3), (k + 1) * p * (p - 1) / 2);
            assert_eq!(mp.get(2, 3), p);
        }
    }
}

#[test]
fn dilatation_fields_separate_primes() {
    let primes = [2, 3, 5, 7, 11, 13];
    let parts: Vec<i64> = primes
        .iter()
        .map(|&k| dilatation_info(&sample_sl2(k, 1000).unwrap()).unwrap().squarefree_part)
        .collect();
    assert_eq!(parts, primes);
}

#[test]
fn abelianized_powers_are_conjugate_only_when_equal() {
    let m = |k: i64, p: u64| make_phi_k(k).unwrap().abelianize().pow(p).unwrap();
    for k in 0..=3 {
        for kk in 0..=3 {
            for p in 1..=3 {
                for pp in 1..=3 {
                    let found = find_conjugator(&m(k, p), &m(kk, pp), 2).unwrap().is_some();
                    assert_eq!(found, k == kk && p == pp, "k={k} k'={kk} p={p} p'={pp}");
                }
            }
        }
    }
}

#[test]
fn twist_predictions_match_graphs() {
    let cfg = IterationConfig::default();
    for n in 1..=3 {
        for k in -2..=n + 2 {
            let phi = make_twist(n, k).unwrap();
            let fix = twist_fix_gens(n, k).unwrap();
            let g = build_graph(&phi, &fix, &default_seeds(2), &cfg).unwrap();
            let template = expected_graph(&FamilySpec::Twist { n, k }).unwrap();
            let case = classify_twist(n, k).unwrap();
            template
                .compare(&g, &StallingsGraph::build(&fix, 2))
                .unwrap_or_else(|e| panic!("n={n} k={k} {case}: {e}"));
        }
    }
}

#[test]
fn inner_graph_is_north_south() {
    let fam = FamilySpec::parse("inner:u=a").unwrap().build().unwrap();
    let g = build_graph(&fam.pair, &fam.fix_gens, &fam.seeds, &IterationConfig::default()).unwrap();
    let template = expected_graph(&fam.spec).unwrap();
    template.compare(&g, &StallingsGraph::build(&fam.fix_gens, 2)).unwrap();
    let a = Alphabet::standard(2).unwrap();
    let names: Vec<String> = (0..g.vertices.len()).map(|v| g.vertex_name(v)).collect();
    assert!(names.contains(&"(a)^inf".to_string()), "{names:?}");
    assert!(names.contains(&"(a^-1)^inf".to_string()), "{names:?}");
    assert!(g.fixed_seeds.contains(&a.parse("a").unwrap()));
}
