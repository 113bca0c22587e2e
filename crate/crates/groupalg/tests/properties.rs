use std::collections::BTreeSet;

use proptest::prelude::*;

use groupalg::coarse::{basic_product, compose, decompose_into_bisections, is_bisection, ControlledMatrix, Entourage};
use groupalg::graph::{DirectedGraph, GraphVerdict};
use groupalg::groupoid::validate;
use groupalg::io;
use groupalg::paction::{validate_action, validate_action_cocycle, ActionCocycle};
use groupalg::random;
use groupalg::scalar::{Field, Gauss, Scalar};
use groupalg::selfsim;
use groupalg::twisted::{convolve, involute, j_readback, regular_rep, validate_cocycle, ConvElement, TwoCocycle};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

/// Simple cycles as edge lists `μ_1..μ_k` with `s(μ_i) = r(μ_{i+1})` and
/// `s(μ_k) = r(μ_1)`, found by trying every edge sequence.
fn brute_cycles(q: &DirectedGraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn extend(q: &DirectedGraph, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if q.edges[last].source == q.edges[path[0]].range {
            out.push(path.clone());
        }
        for e in 0..q.edges.len() {
            let seen = path.iter().any(|&f| q.edges[f].range == q.edges[e].range);
            if q.edges[last].source == q.edges[e].range && !seen {
                path.push(e);
                extend(q, path, out);
                path.pop();
            }
        }
    }
    for e in 0..q.edges.len() {
        extend(q, &mut vec![e], &mut out);
    }
    out
}

/// Transitive closure by Floyd–Warshall: `reach[a][b]` iff travel from `a`
/// along edges arrives at `b`.
fn brute_reach(q: &DirectedGraph) -> Vec<Vec<bool>> {
    let n = q.vertices.len();
    let mut r = vec![vec![false; n]; n];
    for (v, row) in r.iter_mut().enumerate() {
        row[v] = true;
    }
    for e in &q.edges {
        r[e.source][e.range] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if r[i][k] && r[k][j] {
                    r[i][j] = true;
                }
            }
        }
    }
    r
}

fn brute_verdict(q: &DirectedGraph) -> &'static str {
    let cycles = brute_cycles(q);
    let entry = cycles.iter().all(|c| {
        c.iter()
            .any(|&mu| (0..q.edges.len()).any(|f| f != mu && q.edges[f].range == q.edges[mu].range))
    });
    let reach = brute_reach(q);
    let n = q.vertices.len();
    let tails: Vec<usize> = cycles
        .iter()
        .map(|c| q.edges[c[0]].range)
        .chain((0..n).filter(|&w| q.edges.iter().all(|e| e.range != w)))
        .collect();
    let cofinal = tails.iter().all(|&w| (0..n).all(|v| reach[w][v]));
    match (entry && cofinal, cycles.is_empty()) {
        (false, _) => "not_simple",
        (true, true) => "simple_af",
        (true, false) => "simple_purely_infinite",
    }
}

fn graph_strategy() -> impl Strategy<Value = DirectedGraph> {
    (1usize..=4).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=6)
            .prop_map(move |pairs| DirectedGraph::from_pairs(n, &pairs).unwrap())
    })
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn graph_verdict_matches_brute_force(q in graph_strategy()) {
        let v = q.simplicity_verdict();
        prop_assert_eq!(v.label(), brute_verdict(&q), "{}", q.to_json());
        if let GraphVerdict::NotSimple { .. } = v {
            prop_assert!(!v.is_simple());
        }
    }

    #[test]
    fn graph_json_round_trip(q in graph_strategy()) {
        let back = DirectedGraph::from_json(&q.to_json()).unwrap();
        prop_assert_eq!(back, q);
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn convolution_algebra_laws(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let r = random::random_groupoid(&mut rng, 4, 20);
        let (g, s) = (&r.groupoid, &r.cocycle);
        prop_assert!(validate(g).is_ok());
        prop_assert!(validate_cocycle(g, s).is_ok());
        let f: ConvElement<Gauss> = random::random_element(&mut rng, g);
        let h = random::random_element(&mut rng, g);
        let k = random::random_element(&mut rng, g);
        let fh = convolve(g, &f, &h, s).unwrap();
        let fh_k = convolve(g, &fh, &k, s).unwrap();
        let f_hk = convolve(g, &f, &convolve(g, &h, &k, s).unwrap(), s).unwrap();
        prop_assert_eq!(&fh_k, &f_hk);
        let unit = ConvElement::unit(g);
        prop_assert_eq!(&convolve(g, &unit, &f, s).unwrap(), &f);
        prop_assert_eq!(&convolve(g, &f, &unit, s).unwrap(), &f);
        // (f h)* = h* f*
        let lhs = involute(g, &fh, s).unwrap();
        let rhs = convolve(g, &involute(g, &h, s).unwrap(), &involute(g, &f, s).unwrap(), s).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(involute(g, &involute(g, &f, s).unwrap(), s).unwrap(), f.clone());
    }

    #[test]
    fn regular_rep_is_multiplicative_and_read_back(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let r = random::random_groupoid(&mut rng, 4, 20);
        let (g, s) = (&r.groupoid, &r.cocycle);
        let f: ConvElement<Gauss> = random::random_element(&mut rng, g);
        let h = random::random_element(&mut rng, g);
        let lf = regular_rep(g, &f, s, 2.0).unwrap();
        let lh = regular_rep(g, &h, s, 2.0).unwrap();
        let lfh = regular_rep(g, &convolve(g, &f, &h, s).unwrap(), s, 2.0).unwrap();
        prop_assert_eq!(lf.matmul(&lh), lfh);
        prop_assert_eq!(j_readback(g, &lf), f);
    }

    #[test]
    fn coboundary_twists_validate(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let r = random::random_groupoid(&mut rng, 5, 24);
        let g = &r.groupoid;
        let c: Vec<Gauss> = (0..g.len())
            .map(|a| if g.is_unit(a) { Gauss::one() } else { [Gauss::one(), Gauss::i()][a % 2].clone() })
            .collect();
        let b = TwoCocycle::coboundary(g, Field::Complex, &c).unwrap();
        prop_assert!(validate_cocycle(g, &b).is_ok());
        prop_assert!(validate_cocycle(g, &b.product(&r.cocycle).unwrap()).is_ok());
    }

    #[test]
    fn groupoid_json_round_trip(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let r = random::random_groupoid(&mut rng, 4, 16);
        let g = &r.groupoid;
        let back = io::groupoid_from_json(&io::groupoid_to_json(g)).unwrap();
        prop_assert_eq!(back.labels(), g.labels());
        prop_assert_eq!(back.fingerprint(), g.fingerprint());
        let s: TwoCocycle<Gauss> = io::cocycle_from_json(g, &io::cocycle_to_json(g, &r.cocycle)).unwrap();
        prop_assert_eq!(s.entries(), r.cocycle.entries());
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn partial_action_matches_its_groupoid(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let a = random::random_partial_action(&mut rng, 6);
        prop_assert!(validate_action(&a).is_ok());
        let tg = a.transformation_groupoid().unwrap();
        let g = &tg.groupoid;
        prop_assert!(validate(g).is_ok());
        prop_assert_eq!(a.is_topologically_free_pa().holds, g.is_topologically_free().holds);
        prop_assert_eq!(a.is_minimal_pa().holds, g.is_minimal().holds);
        let u = ActionCocycle::<Gauss>::coboundary(&a, |t, y| if (t + y) % 3 == 0 { Gauss::i() } else { Gauss::one().neg() }).unwrap();
        prop_assert!(validate_action_cocycle(&a, &u, Field::Complex).is_ok());
        let sigma = a.induced_cocycle(&tg, &u, Field::Complex).unwrap();
        prop_assert!(validate_cocycle(g, &sigma).is_ok());
    }

    #[test]
    fn bisection_decomposition(seed in any::<u64>(), n in 1usize..=12) {
        let mut rng = random::rng(seed);
        let e = random::random_entourage(&mut rng, n);
        let parts = decompose_into_bisections(&e);
        let mut union = Entourage::new();
        for p in &parts {
            prop_assert!(is_bisection(p));
            prop_assert!(p.is_disjoint(&union));
            union.extend(p.iter().copied());
        }
        prop_assert_eq!(union, e.clone());
        let nn = groupalg::coarse::n_of(&e);
        prop_assert!(parts.len() <= nn * nn + 1);
    }

    #[test]
    fn controlled_matrices(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let (cs, t) = random::random_controlled_matrix(&mut rng, 6, 2);
        prop_assert!(t.check(&cs).is_ok());
        let sum = t
            .decompose()
            .into_iter()
            .map(|(f, e)| ControlledMatrix::basic(t.n, t.k, &f, &e).unwrap())
            .fold(ControlledMatrix::new(t.n, t.k, []).unwrap(), |acc, m| acc.add(&m));
        prop_assert_eq!(&sum, &t);
        let tt = t.matmul(&t);
        prop_assert!(tt.check(&cs).is_ok());
        prop_assert_eq!(tt.to_operator(2.0), t.to_operator(2.0).matmul(&t.to_operator(2.0)));
        let parts = t.decompose();
        if parts.len() >= 2 {
            let (f1, e1) = &parts[0];
            let (f2, e2) = &parts[1];
            let (g, e12) = basic_product(f1, e1, f2, e2, t.k);
            prop_assert_eq!(&e12, &compose(e1, e2));
            let lhs = ControlledMatrix::basic(t.n, t.k, f1, e1).unwrap()
                .matmul(&ControlledMatrix::basic(t.n, t.k, f2, e2).unwrap());
            prop_assert_eq!(lhs, ControlledMatrix::basic(t.n, t.k, &g, &e12).unwrap());
        }
    }

    #[test]
    fn selfsim_path_law_on_long_paths(which in 0usize..8, seed in any::<u64>(), len in 1usize..=16) {
        use rand::Rng;
        let (name, a) = selfsim::fixtures().swap_remove(which);
        let mut rng = random::rng(seed);
        let mut mu = vec![rng.gen_range(0..a.graph.edges.len())];
        while mu.len() < len {
            let last = *mu.last().unwrap();
            let next: Vec<usize> = (0..a.graph.edges.len()).filter(|&e| a.graph.composable(last, e)).collect();
            mu.push(next[rng.gen_range(0..next.len())]);
        }
        for g in 0..a.states.len() {
            let (img, rest) = a.act_on_path(g, &mu).unwrap();
            prop_assert_eq!(img.len(), mu.len());
            for w in img.windows(2) {
                prop_assert!(a.graph.composable(w[0], w[1]), "{}: image is not a path", name);
            }
            let cut = len / 2;
            if cut > 0 {
                let (m1, r1) = a.act_on_path(g, &mu[..cut]).unwrap();
                let (m2, r2) = a.act_on_path(r1, &mu[cut..]).unwrap();
                prop_assert_eq!([m1, m2].concat(), img);
                prop_assert_eq!(r2, rest);
            }
        }
    }
}

#[test]
fn brute_force_sanity() {
    let o2 = groupalg::graph::two_loops();
    assert_eq!(brute_verdict(&o2), "simple_purely_infinite");
    assert_eq!(brute_verdict(&groupalg::graph::single_loop()), "not_simple");
    assert_eq!(brute_verdict(&groupalg::graph::single_vertex()), "simple_af");
    let cycles: BTreeSet<Vec<usize>> = brute_cycles(&o2).into_iter().collect();
    assert_eq!(cycles.len(), 2);
}
