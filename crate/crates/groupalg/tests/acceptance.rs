//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use groupalg::algebra::FiniteDimAlgebra;
use groupalg::cli::{graph_oracle, load_graph};
use groupalg::coarse::{decompose_into_bisections, is_bisection, matrix_rep_norm_bound, Entourage};
use groupalg::crosscheck::{theorem_crosscheck, trivial_rep_crosscheck};
use groupalg::graph::{self, DirectedGraph, GraphVerdict};
use groupalg::group::FiniteGroup;
use groupalg::groupoid::{
    disjoint_union, group_groupoid, pair_groupoid, transitive_groupoid, unit_groupoid, validate, CoverEvidence,
    FiniteGroupoid, LocalContraction,
};
use groupalg::io;
use groupalg::paction::{self, ActionCoverEvidence, PartialAction};
use groupalg::random::{self, Rng64};
use groupalg::scalar::{Field, Gauss, Scalar};
use groupalg::selfsim::{self, validate_cocycle_identities, Conclusion, SelfSimilarAction};
use groupalg::semigroup::{self as sg, FiniteInverseSemigroup};
use groupalg::twisted::{
    expectation_restrict, norm, operator_norm, regular_rep, validate_cocycle, ConvElement, NormKind, RepMatrix,
    TwoCocycle,
};

const SEED: u64 = 0x5eed_2024;
const RANDOM_GROUPOIDS: usize = 100;
const MAX_UNITS: usize = 6;
const MAX_ARROWS: usize = 30;
const CROSSCHECK_BUDGET: Duration = Duration::from_secs(60);
const ELEMENTS: usize = 500;
/// Relative slack for floating-point norm comparisons.
const NORM_REL: f64 = 1e-9;
const SEMIGROUP_MAX: usize = 6;
const RANDOM_DAGS: usize = 50;
const DAG_VERTICES: usize = 8;
/// Arrows of the boundary path groupoid; keeps the exact Burnside rank cheap.
const DAG_ARROWS: usize = 64;
const RANDOM_ENTOURAGES: usize = 100;
const ENTOURAGE_POINTS: usize = 20;
const CONTROLLED_MATRICES: usize = 200;
const SELFSIM_DEPTH: usize = 8;
const TRISTATE_DEPTHS: std::ops::RangeInclusive<usize> = 2..=12;

type Failures = Vec<String>;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {}", p.display(), e))
}

fn le_rel(a: f64, b: f64) -> bool {
    a <= b + NORM_REL * b.abs().max(1.0)
}

struct Item {
    name: String,
    g: FiniteGroupoid,
    s: TwoCocycle<Gauss>,
}

fn trivial() -> TwoCocycle<Gauss> {
    TwoCocycle::trivial(Field::Complex)
}

/// Random groupoids followed by the curated fixtures.
fn groupoid_corpus() -> Vec<Item> {
    let mut rng = random::rng(SEED);
    let mut out: Vec<Item> = (0..RANDOM_GROUPOIDS)
        .map(|i| {
            let r = random::random_groupoid(&mut rng, MAX_UNITS, MAX_ARROWS);
            let shape: Vec<String> = r
                .components
                .iter()
                .map(|c| format!("{}x{}{}", c.points, c.group, if c.twisted { "~" } else { "" }))
                .collect();
            Item {
                name: format!("random#{} [{}]", i, shape.join("+")),
                g: r.groupoid,
                s: r.cocycle,
            }
        })
        .collect();
    let mut push = |name: &str, g: FiniteGroupoid, s: TwoCocycle<Gauss>| {
        out.push(Item {
            name: name.to_string(),
            g,
            s,
        })
    };
    for n in 1..=4 {
        push(&format!("pair{}", n), pair_groupoid(n), trivial());
    }
    for (name, h, _) in random::small_groups() {
        push(&format!("group {}", name), group_groupoid(&h), trivial());
        push(&format!("2x{}x2", name), transitive_groupoid(2, &h), trivial());
    }
    push("units a,b", unit_groupoid(&["a", "b"]), trivial());
    push(
        "pair2 + Z2",
        disjoint_union(&[pair_groupoid(2), group_groupoid(&FiniteGroup::cyclic(2))]),
        trivial(),
    );
    for f in ["z2.json", "pair2.json", "klein.json"] {
        push(f, io::groupoid_from_json(&fixture(f)).unwrap(), trivial());
    }
    let klein = io::groupoid_from_json(&fixture("klein.json")).unwrap();
    let sign = io::cocycle_from_json(&klein, &fixture("klein_sign.json")).unwrap();
    push("klein.json + klein_sign.json", klein, sign);
    for f in ["chain.dot", "two_sinks.dot"] {
        let q = load_graph(&fixture(f)).unwrap();
        push(
            &format!("boundary paths of {}", f),
            q.boundary_path_groupoid_acyclic().unwrap(),
            trivial(),
        );
    }
    out
}

fn report(n: usize, title: &str, failures: &Failures, summary: &str) -> bool {
    let ok = failures.is_empty();
    println!(
        "[{}] criterion {}: {} ({})",
        if ok { "PASS" } else { "FAIL" },
        n,
        title,
        summary
    );
    for f in failures.iter().take(10) {
        println!("    {}", f);
    }
    if failures.len() > 10 {
        println!("    ... {} more", failures.len() - 10);
    }
    ok
}

fn criterion_1(corpus: &[Item]) -> bool {
    let start = Instant::now();
    let mut fails = Failures::new();
    let mut counts = [0usize; 2];
    for it in corpus {
        if !validate(&it.g).is_ok() {
            fails.push(format!("{}: invalid groupoid", it.name));
            continue;
        }
        if !validate_cocycle(&it.g, &it.s).is_ok() {
            fails.push(format!("{}: invalid cocycle", it.name));
            continue;
        }
        match theorem_crosscheck(&it.g, &it.s) {
            Ok(c) if c.agree => counts[usize::from(c.simple && c.diagonal_maximal_abelian)] += 1,
            Ok(c) => fails.push(format!("{}: disagreement {:?}", it.name, c)),
            Err(e) => fails.push(format!("{}: {}", it.name, e)),
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= CROSSCHECK_BUDGET {
        fails.push(format!("runtime {:?} exceeds {:?}", elapsed, CROSSCHECK_BUDGET));
    }
    report(
        1,
        "simple ∧ diagonal maximal abelian ⟺ topologically free ∧ minimal",
        &fails,
        &format!(
            "{} groupoids, {} with both sides true, {} with both false, {:.2?}",
            corpus.len(),
            counts[1],
            counts[0],
            elapsed
        ),
    )
}

fn criterion_2(corpus: &[Item]) -> bool {
    let mut fails = Failures::new();
    let mut free = 0;
    for it in corpus {
        match trivial_rep_crosscheck::<Gauss>(&it.g) {
            Ok(c) if c.agree => free += usize::from(c.topologically_free),
            Ok(c) => fails.push(format!("{}: disagreement {:?}", it.name, c)),
            Err(e) => fails.push(format!("{}: {}", it.name, e)),
        }
    }
    report(
        2,
        "topologically free ⟺ trivial representation injective",
        &fails,
        &format!("{} groupoids, {} topologically free", corpus.len(), free),
    )
}

fn real_element(rng: &mut Rng64, g: &FiniteGroupoid) -> ConvElement<Gauss> {
    use rand::Rng;
    let zero = rng.gen_range(0.0..0.8);
    let c = (0..g.len()).map(|_| random::small_scalar(rng, zero, false)).collect();
    ConvElement::new(g, c).unwrap()
}

/// Elements over the corpus: even indices have rational real coefficients,
/// odd ones Gaussian rational coefficients.
fn elements(corpus: &[Item]) -> Vec<(usize, ConvElement<Gauss>)> {
    let mut rng = random::rng(SEED ^ 3);
    (0..ELEMENTS * 2)
        .map(|i| {
            let k = i / 2 % corpus.len();
            let g = &corpus[k].g;
            let f = if i % 2 == 0 {
                real_element(&mut rng, g)
            } else {
                random::random_element(&mut rng, g)
            };
            (k, f)
        })
        .collect()
}

fn criterion_3(corpus: &[Item], elems: &[(usize, ConvElement<Gauss>)]) -> bool {
    let mut fails = Failures::new();
    let mut exact = 0;
    for (i, (k, f)) in elems.iter().enumerate() {
        let it = &corpus[*k];
        let rep = |p: f64| operator_norm(&regular_rep(&it.g, f, &it.s, p).unwrap(), p).unwrap();
        let (op1, op2, opi) = (rep(1.0), rep(2.0), rep(f64::INFINITY));
        let d = norm(&it.g, f, NormKind::StarD);
        let r = norm(&it.g, f, NormKind::StarR);
        let fi = norm(&it.g, f, NormKind::I);
        let mid = (d.value * r.value).sqrt();
        if !le_rel(op2.value, mid) || !le_rel(mid, fi.value) {
            fails.push(format!(
                "element {} on {}: {} ≤ {} ≤ {} fails",
                i, it.name, op2.value, mid, fi.value
            ));
        }
        let rational = f.coeffs.iter().all(|c| c.abs_exact().is_some());
        if rational {
            exact += 1;
            let same = |a: &groupalg::scalar::NormValue, b: &groupalg::scalar::NormValue| {
                a.exact.is_some() && a.exact == b.exact
            };
            if !same(&op1, &d) || !same(&opi, &r) {
                fails.push(format!("element {} on {}: Λ₁/Λ∞ differ from ‖·‖*d/‖·‖*r", i, it.name));
            }
        } else if !op1.equals(&d, 1e-12) || !opi.equals(&r, 1e-12) {
            fails.push(format!("element {} on {}: Λ₁/Λ∞ differ from ‖·‖*d/‖·‖*r", i, it.name));
        }
    }
    if exact < ELEMENTS {
        fails.push(format!("only {} elements in rational mode", exact));
    }
    report(
        3,
        "‖Λ₂f‖ ≤ (‖f‖*d‖f‖*r)^½ ≤ ‖f‖_I, ‖Λ₁f‖ = ‖f‖*d, ‖Λ∞f‖ = ‖f‖*r",
        &fails,
        &format!(
            "{} elements, {} compared exactly, slack {:e}",
            elems.len(),
            exact,
            NORM_REL
        ),
    )
}

fn criterion_4(corpus: &[Item], elems: &[(usize, ConvElement<Gauss>)]) -> bool {
    let mut fails = Failures::new();
    for (i, (k, f)) in elems.iter().enumerate() {
        let it = &corpus[*k];
        let e = norm(&it.g, &expectation_restrict(f, &it.g.unit_set()), NormKind::Sup).value;
        for p in [1.0, 2.0, f64::INFINITY] {
            let op = operator_norm(&regular_rep(&it.g, f, &it.s, p).unwrap(), p)
                .unwrap()
                .value;
            if !le_rel(e, op) {
                fails.push(format!(
                    "element {} on {}: ‖E(f)‖ = {} > ‖Λ_{}(f)‖ = {}",
                    i, it.name, e, p, op
                ));
            }
        }
    }
    report(
        4,
        "‖E_X(f)‖_∞ ≤ ‖Λ_p(f)‖ for p = 1, 2, ∞",
        &fails,
        &format!("{} elements, slack {:e}", elems.len(), NORM_REL),
    )
}

fn semigroup_fixtures() -> Vec<(String, FiniteInverseSemigroup)> {
    let mut out = vec![
        (
            "symmetric inverse monoid on 2".to_string(),
            sg::symmetric_inverse_monoid_2(),
        ),
        ("two atoms".to_string(), sg::semilattice_two_atoms()),
        (
            "two_atoms.json".to_string(),
            io::semigroup_from_json(&fixture("two_atoms.json")).unwrap(),
        ),
    ];
    for k in 1..=4 {
        out.push((format!("chain {}", k), sg::chain_semilattice(k)));
    }
    for (name, h, _) in random::small_groups() {
        out.push((format!("{} with zero", name), sg::group_with_zero(&h)));
    }
    out
}

fn criterion_5() -> bool {
    let mut fails = Failures::new();
    let mut family = Vec::new();
    for n in 1..=SEMIGROUP_MAX {
        for (i, s) in sg::enumerate_inverse_semigroups(n).unwrap().into_iter().enumerate() {
            family.push((format!("order {} #{}", n, i), s));
        }
    }
    let exhaustive = family.len();
    family.extend(semigroup_fixtures());
    for (name, s) in &family {
        if !sg::validate_semigroup(s).is_ok() {
            fails.push(format!("{}: invalid semigroup", name));
            continue;
        }
        if s.tight_filters() != s.ultrafilters() {
            fails.push(format!("{}: tight filters differ from ultrafilters", name));
        }
        let g = s.tight_groupoid().groupoid;
        if !validate(&g).is_ok() {
            fails.push(format!("{}: tight groupoid invalid", name));
            continue;
        }
        let lc_s = s.is_locally_contracting_s().map(|v| v.holds);
        let lc_g = g.is_locally_contracting().map(|v| v.holds);
        let pairs = [
            ("closed / Hausdorff", s.is_closed().holds, g.is_hausdorff().holds),
            (
                "topologically free",
                s.is_topologically_free_s().holds,
                g.is_topologically_free().holds,
            ),
            ("minimal", s.is_minimal_s().holds, g.is_minimal().holds),
        ];
        for (what, a, b) in pairs {
            if a != b {
                fails.push(format!("{}: {} differs (S {}, G {})", name, what, a, b));
            }
        }
        match (lc_s, lc_g) {
            (Ok(a), Ok(b)) if a == b => {}
            (a, b) => fails.push(format!("{}: locally contracting differs (S {:?}, G {:?})", name, a, b)),
        }
    }
    report(
        5,
        "tight groupoid equivalences, tight filters = ultrafilters",
        &fails,
        &format!(
            "{} semigroups of order ≤ {} plus {} fixtures",
            exhaustive,
            SEMIGROUP_MAX,
            family.len() - exhaustive
        ),
    )
}

fn criterion_6() -> bool {
    let mut fails = Failures::new();
    let o2 = load_graph(&fixture("o2.dot")).unwrap();
    for (name, q) in [("o2.dot", &o2), ("two loops", &graph::two_loops())] {
        if q.simplicity_verdict() != GraphVerdict::SimplePurelyInfinite {
            fails.push(format!("{}: verdict {}", name, q.simplicity_verdict().label()));
        }
    }
    let lp = load_graph(&fixture("loop.dot")).unwrap();
    for (name, q) in [("loop.dot", &lp), ("single loop", &graph::single_loop())] {
        if q.simplicity_verdict().is_simple() {
            fails.push(format!("{}: reported simple", name));
        }
    }
    let mut rng = random::rng(SEED ^ 6);
    let (mut simple, mut biggest) = (0, 0);
    for i in 0..RANDOM_DAGS {
        let q: DirectedGraph = random::random_dag(&mut rng, DAG_VERTICES, DAG_ARROWS);
        biggest = biggest.max(q.vertices.len());
        let v = q.simplicity_verdict();
        if matches!(v, GraphVerdict::SimplePurelyInfinite) {
            fails.push(format!("dag {}: purely infinite verdict on an acyclic graph", i));
        }
        match graph_oracle(&q) {
            Ok(Some(b)) if b == v.is_simple() => simple += usize::from(b),
            Ok(Some(b)) => fails.push(format!(
                "dag {} {}: verdict {} but oracle {}",
                i,
                q.to_json(),
                v.label(),
                b
            )),
            Ok(None) => fails.push(format!("dag {}: oracle skipped", i)),
            Err(e) => fails.push(format!("dag {}: {}", i, e)),
        }
    }
    report(
        6,
        "graph verdicts against fixtures and the Burnside oracle",
        &fails,
        &format!(
            "{} random acyclic graphs with up to {} vertices, {} simple",
            RANDOM_DAGS, biggest, simple
        ),
    )
}

/// `n(E)` computed from the row and column incidences.
fn n_indep(e: &Entourage, points: usize) -> usize {
    (0..points)
        .map(|x| {
            let s: BTreeSet<usize> = e
                .iter()
                .filter_map(|&(a, b)| {
                    if a == x {
                        Some(b)
                    } else if b == x {
                        Some(a)
                    } else {
                        None
                    }
                })
                .collect();
            s.len()
        })
        .max()
        .unwrap_or(0)
}

fn criterion_7() -> bool {
    use rand::Rng;
    let mut fails = Failures::new();
    let mut rng = random::rng(SEED ^ 7);
    let mut worst = 0.0f64;
    for i in 0..RANDOM_ENTOURAGES {
        let points = rng.gen_range(1..=ENTOURAGE_POINTS);
        let e = random::random_entourage(&mut rng, points);
        let parts = decompose_into_bisections(&e);
        let n = n_indep(&e, points);
        let mut union = Entourage::new();
        let mut total = 0;
        for b in &parts {
            if !is_bisection(b) {
                fails.push(format!("entourage {}: a part is not a bisection", i));
            }
            total += b.len();
            union.extend(b.iter().copied());
        }
        if total != union.len() {
            fails.push(format!("entourage {}: parts overlap", i));
        }
        if union != e {
            fails.push(format!("entourage {}: parts do not reunite to E", i));
        }
        if parts.len() > n * n + 1 {
            fails.push(format!("entourage {}: {} parts, n = {}", i, parts.len(), n));
        }
    }
    for i in 0..CONTROLLED_MATRICES {
        let (cs, t) = random::random_controlled_matrix(&mut rng, ENTOURAGE_POINTS, 3);
        if t.check(&cs).is_err() {
            fails.push(format!("matrix {}: not controlled", i));
        }
        let n = n_indep(&t.support(), t.n);
        for p in [1.0, 2.0, f64::INFINITY] {
            let exact = operator_norm(&t.to_operator(p), p).unwrap().value;
            let sup = t
                .blocks()
                .map(|(_, b)| operator_norm(&RepMatrix::from_rows(b.clone(), p), p).unwrap().value)
                .fold(0.0, f64::max);
            let bound = sup * (n * n + 1) as f64;
            let lib = matrix_rep_norm_bound(&t, p).unwrap();
            if !le_rel(exact, bound) || !lib.holds || (lib.bound - bound).abs() > NORM_REL * bound.max(1.0) {
                fails.push(format!(
                    "matrix {} p = {}: ‖T‖ = {} against bound {}",
                    i, p, exact, bound
                ));
            }
            if bound > 0.0 {
                worst = worst.max(exact / bound);
            }
        }
    }
    report(
        7,
        "bisection decomposition and the controlled-matrix norm bound",
        &fails,
        &format!(
            "{} entourages, {} matrices, largest norm/bound ratio {:.3}",
            RANDOM_ENTOURAGES, CONTROLLED_MATRICES, worst
        ),
    )
}

/// Tampered copies must all be rejected.
fn mutants_rejected<C: std::fmt::Debug>(
    what: &str,
    mutants: Vec<C>,
    verify: impl Fn(&C) -> Result<(), String>,
    fails: &mut Failures,
) -> usize {
    for m in &mutants {
        if verify(m).is_ok() {
            fails.push(format!("{}: tampered certificate accepted: {:?}", what, m));
        }
    }
    mutants.len()
}

fn groupoid_certificates(it: &Item, fails: &mut Failures) -> usize {
    let g = &it.g;
    let units = g.unit_set();
    let not_unit = (0..g.len()).find(|a| !units.contains(a));
    let mut mutants = 0;

    match g.is_locally_contracting() {
        Ok(v) if !v.holds => match v.witness {
            Some(LocalContraction::Impossible(c)) => {
                if let Err(e) = c.verify(g) {
                    fails.push(format!("{}: contraction certificate rejected: {}", it.name, e));
                }
                if c.opens.is_empty() || !c.exhaustive {
                    fails.push(format!("{}: contraction certificate is empty", it.name));
                }
                let mut ms = Vec::new();
                let mut m = c.clone();
                m.opens.pop();
                ms.push(m);
                let mut m = c.clone();
                m.opens[0].closure.clear();
                ms.push(m);
                let mut m = c.clone();
                m.opens[0].min_image = Some(m.opens[0].closure.len() + 1);
                ms.push(m);
                let mut m = c.clone();
                m.u.clear();
                ms.push(m);
                if let Some(a) = not_unit {
                    let mut m = c.clone();
                    m.u.insert(a);
                    ms.push(m);
                }
                mutants += mutants_rejected(&it.name, ms, |m| m.verify(g), fails);
            }
            w => fails.push(format!("{}: no contraction certificate: {:?}", it.name, w)),
        },
        Ok(_) => fails.push(format!("{}: reported locally contracting", it.name)),
        Err(e) => fails.push(format!("{}: {}", it.name, e)),
    }

    for n in 1..=3 {
        let r = match g.is_n_filling(n) {
            Ok(r) => r,
            Err(e) => {
                fails.push(format!("{}: {}", it.name, e));
                continue;
            }
        };
        match &r.full.witness {
            Some(c) if !r.full.holds => {
                if let Err(e) = c.verify(g) {
                    fails.push(format!("{}: finiteness certificate rejected: {}", it.name, e));
                }
                let mut m = c.clone();
                m.unit_count += 1;
                mutants += mutants_rejected(&it.name, vec![m], |m| m.verify(g), fails);
            }
            _ => fails.push(format!("{}: reported {}-filling", it.name, n)),
        }
        let Some(ev) = &r.cover_condition.witness else {
            fails.push(format!("{}: cover condition without evidence", it.name));
            continue;
        };
        if let Err(e) = ev.verify(g, n) {
            fails.push(format!("{}: cover evidence rejected: {}", it.name, e));
        }
        let mut ms = Vec::new();
        match ev {
            CoverEvidence::Covers { tuples } => {
                let mut t = tuples.clone();
                t.pop();
                ms.push(CoverEvidence::Covers { tuples: t });
                let mut t = tuples.clone();
                t[0].bisections.clear();
                ms.push(CoverEvidence::Covers { tuples: t });
                let mut t = tuples.clone();
                let extra = t[0].bisections[0].clone();
                t[0].bisections.resize(n + 1, extra);
                ms.push(CoverEvidence::Covers { tuples: t });
            }
            CoverEvidence::Obstructed { reason, .. } => {
                ms.push(CoverEvidence::Obstructed {
                    u: units.clone(),
                    reason: reason.clone(),
                });
                ms.push(CoverEvidence::Obstructed {
                    u: Default::default(),
                    reason: reason.clone(),
                });
            }
        }
        mutants += mutants_rejected(&it.name, ms, |m| m.verify(g, n), fails);
    }

    let alg = FiniteDimAlgebra::from_groupoid(g, &it.s);
    let unit_vec = |set: &dyn Fn(usize) -> bool| -> Vec<Gauss> {
        (0..g.len())
            .map(|a| {
                if units.contains(&a) && set(a) {
                    Gauss::one()
                } else {
                    Gauss::zero()
                }
            })
            .collect()
    };
    let first = *units.iter().next().unwrap();
    let idems = [unit_vec(&|_| true), unit_vec(&|a| a == first)];
    for e in &idems {
        match alg.is_infinite_idempotent(e) {
            Ok(v) if !v.holds => {
                let c = v.witness.unwrap();
                if let Err(err) = c.verify(&alg, e) {
                    fails.push(format!("{}: idempotent certificate rejected: {}", it.name, err));
                }
                let mut ms = Vec::new();
                let mut m = c.clone();
                m.rank_e_a += 1;
                ms.push(m);
                let mut m = c.clone();
                m.dim += 1;
                ms.push(m);
                if !c.sub_idempotents.is_empty() {
                    let mut m = c.clone();
                    m.sub_idempotents[0].rank = m.rank_e_a;
                    ms.push(m);
                }
                mutants += mutants_rejected(&it.name, ms, |m| m.verify(&alg, e), fails);
            }
            Ok(_) => fails.push(format!("{}: an idempotent reported infinite", it.name)),
            Err(err) => fails.push(format!("{}: {}", it.name, err)),
        }
    }
    mutants
}

fn action_certificates(name: &str, a: &PartialAction, fails: &mut Failures) -> usize {
    let mut mutants = 0;
    for n in 1..=2 {
        let r = match a.is_n_filling_pa(n) {
            Ok(r) => r,
            Err(e) => {
                fails.push(format!("{}: {}", name, e));
                continue;
            }
        };
        match &r.full.witness {
            Some(c) if !r.full.holds => {
                if let Err(e) = c.verify(a) {
                    fails.push(format!("{}: finiteness certificate rejected: {}", name, e));
                }
                let mut m = c.clone();
                m.points += 1;
                mutants += mutants_rejected(name, vec![m], |m| m.verify(a), fails);
            }
            _ => fails.push(format!("{}: reported {}-filling", name, n)),
        }
        let ev = r.cover_condition.witness.as_ref().unwrap();
        if let Err(e) = ev.verify(a, n) {
            fails.push(format!("{}: cover evidence rejected: {}", name, e));
        }
        let ms = match ev {
            ActionCoverEvidence::Covers { tuples } => {
                let mut t = tuples.clone();
                t.pop();
                let mut u = tuples.clone();
                u[0].elements = vec![None; n];
                vec![
                    ActionCoverEvidence::Covers { tuples: t },
                    ActionCoverEvidence::Covers { tuples: u },
                ]
            }
            ActionCoverEvidence::Obstructed { points } => {
                let mut p = points.clone();
                p.push(0);
                vec![ActionCoverEvidence::Obstructed { points: p }]
            }
        };
        mutants += mutants_rejected(name, ms, |m| m.verify(a, n), fails);
    }
    let lb = a.is_local_boundary_pa();
    match &lb.witness {
        Some(c) if !lb.holds => {
            if let Err(e) = c.verify(a) {
                fails.push(format!("{}: local boundary certificate rejected: {}", name, e));
            }
            let mut m = c.clone();
            m.checks[0].domain += 1;
            let mut m2 = c.clone();
            m2.checks.pop();
            mutants += mutants_rejected(name, vec![m, m2], |m| m.verify(a), fails);
        }
        _ => fails.push(format!("{}: reported a local boundary action", name)),
    }
    mutants
}

fn criterion_8(corpus: &[Item]) -> bool {
    let mut fails = Failures::new();
    let mut mutants = 0;
    for it in corpus {
        mutants += groupoid_certificates(it, &mut fails);
    }
    let mut actions: Vec<(String, PartialAction)> = vec![
        ("z2 swap".into(), paction::z2_swap()),
        (
            "z2_swap.json".into(),
            io::paction_from_json::<Gauss>(&fixture("z2_swap.json")).unwrap().0,
        ),
        (
            "trivial S3 action".into(),
            paction::trivial_point_action(&FiniteGroup::s3()),
        ),
    ];
    let mut rng = random::rng(SEED ^ 8);
    for i in 0..30 {
        actions.push((
            format!("random action {}", i),
            random::random_partial_action(&mut rng, 6),
        ));
    }
    for (name, a) in &actions {
        mutants += action_certificates(name, a, &mut fails);
    }
    report(
        8,
        "finite impossibility certificates verify; tampered ones are rejected",
        &fails,
        &format!(
            "{} groupoids, {} partial actions, {} mutants rejected",
            corpus.len(),
            actions.len(),
            mutants
        ),
    )
}

fn paths(a: &SelfSimilarAction, len: usize) -> Vec<Vec<usize>> {
    let mut level: Vec<Vec<usize>> = (0..a.graph.edges.len()).map(|e| vec![e]).collect();
    let mut all = level.clone();
    for _ in 1..len {
        level = level
            .iter()
            .flat_map(|p| {
                let last = *p.last().unwrap();
                (0..a.graph.edges.len())
                    .filter(move |&e| a.graph.composable(last, e))
                    .map(move |e| {
                        let mut q = p.clone();
                        q.push(e);
                        q
                    })
            })
            .collect();
        all.extend(level.iter().cloned());
    }
    all
}

fn criterion_9() -> bool {
    let mut fails = Failures::new();
    let mut actions: Vec<(String, SelfSimilarAction)> = selfsim::fixtures()
        .into_iter()
        .map(|(n, a)| (n.to_string(), a))
        .collect();
    for f in ["odometer.json", "z2_flip_all.json"] {
        actions.push((f.to_string(), io::selfsim_from_json(&fixture(f)).unwrap()));
    }
    let mut checked = 0usize;
    for (name, a) in &actions {
        if !validate_cocycle_identities(a).is_ok() {
            fails.push(format!("{}: cocycle identities fail", name));
        }
        let ps = paths(a, SELFSIM_DEPTH);
        for g in 0..a.states.len() {
            for p in &ps {
                let (img, rest) = a.act_on_path(g, p).unwrap();
                // σ_g(μν) = σ_g(μ) σ_{g|μ}(ν) and g|_{μν} = (g|_μ)|_ν
                for cut in 1..p.len() {
                    let (m1, r1) = a.act_on_path(g, &p[..cut]).unwrap();
                    let (m2, r2) = a.act_on_path(r1, &p[cut..]).unwrap();
                    if [m1, m2].concat() != img || r2 != rest {
                        fails.push(format!(
                            "{}: path law fails for g = {} on {:?} at {}",
                            name, a.states[g], p, cut
                        ));
                    }
                }
                // σ_{gh}(μ) = σ_g(σ_h(μ)) and (gh)|_μ = g|_{σ_h μ} h|_μ
                for h in 0..a.states.len() {
                    let Some(gh) = a.mul(g, h) else { continue };
                    let direct = a.act_on_path(gh, p).unwrap();
                    let (hm, hr) = a.act_on_path(h, p).unwrap();
                    let (ghm, gr) = a.act_on_path(g, &hm).unwrap();
                    match a.mul(gr, hr) {
                        Some(prod) if direct == (ghm.clone(), prod) => {}
                        Some(_) => fails.push(format!("{}: product law fails for {}·{} on {:?}", name, g, h, p)),
                        None => {
                            if direct.0 != ghm {
                                fails.push(format!("{}: product action fails for {}·{} on {:?}", name, g, h, p));
                            }
                        }
                    }
                    checked += 1;
                }
            }
        }
        let mut prev: Option<selfsim::SelfSimilarReport> = None;
        for d in TRISTATE_DEPTHS {
            let r = match a.verdict(d) {
                Ok(r) => r,
                Err(e) => {
                    fails.push(format!("{} depth {}: {}", name, d, e));
                    continue;
                }
            };
            if let Some(p) = &prev {
                let labels = |x: &selfsim::SelfSimilarReport| {
                    [
                        x.cofinal.label(),
                        x.every_cycle_has_entry.label(),
                        x.fixing_implies_slack.label(),
                        x.finitely_many_minimal_fixed.label(),
                    ]
                };
                for (i, (a0, a1)) in labels(p).iter().zip(labels(&r)).enumerate() {
                    if *a0 != "unknown" && *a0 != a1 {
                        fails.push(format!(
                            "{}: hypothesis {} went {} → {} at depth {}",
                            name, i, a0, a1, d
                        ));
                    }
                }
                for (c0, c1) in [(p.essential, r.essential), (p.reduced, r.reduced)] {
                    if c0 != Conclusion::Undetermined && c0 != c1 {
                        fails.push(format!("{}: conclusion went {:?} → {:?} at depth {}", name, c0, c1, d));
                    }
                }
            }
            prev = Some(r);
        }
    }
    report(
        9,
        "self-similar identities, composition law to depth 8, monotone tri-states",
        &fails,
        &format!("{} actions, {} product checks", actions.len(), checked),
    )
}

fn main() {
    // `cargo test` passes harness flags; a filter that does not match skips.
    let args: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if !args.is_empty() && !args.iter().any(|a| "acceptance".contains(a.as_str())) {
        return;
    }
    let start = Instant::now();
    let corpus = groupoid_corpus();
    let elems = elements(&corpus);
    let criteria: [&dyn Fn() -> bool; 9] = [
        &|| criterion_1(&corpus),
        &|| criterion_2(&corpus),
        &|| criterion_3(&corpus, &elems),
        &|| criterion_4(&corpus, &elems),
        &criterion_5,
        &criterion_6,
        &criterion_7,
        &|| criterion_8(&corpus),
        &criterion_9,
    ];
    let results: Vec<bool> = criteria
        .iter()
        .map(|c| {
            let t = Instant::now();
            let ok = c();
            println!("    took {:.2?}", t.elapsed());
            ok
        })
        .collect();
    let passed = results.iter().filter(|&&r| r).count();
    println!(
        "acceptance: {}/{} criteria passed in {:.2?}",
        passed,
        results.len(),
        start.elapsed()
    );
    if passed != results.len() {
        std::process::exit(1);
    }
}
