//! Seeded generators for the randomized corpora.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coarse::{Block, CoarseSpace, ControlledMatrix, Entourage};
use crate::graph::DirectedGraph;
use crate::group::FiniteGroup;
use crate::groupoid::{FiniteGroupoid, GroupoidParts};
use crate::paction::PartialAction;
use crate::scalar::{Field, Gauss, Scalar};
use crate::twisted::{ConvElement, TwoCocycle};

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Isotropy groups used by [`random_groupoid`], with a flag for a
/// non-trivial cocycle class.
pub fn small_groups() -> Vec<(&'static str, FiniteGroup, bool)> {
    vec![
        ("1", FiniteGroup::cyclic(1), false),
        ("Z2", FiniteGroup::cyclic(2), false),
        ("Z3", FiniteGroup::cyclic(3), false),
        ("Z4", FiniteGroup::cyclic(4), false),
        ("Z2xZ2", FiniteGroup::klein(), true),
        ("S3", FiniteGroup::s3(), false),
    ]
}

#[derive(Debug, Clone)]
pub struct Component {
    pub points: usize,
    pub group: &'static str,
    pub twisted: bool,
}

#[derive(Debug, Clone)]
pub struct RandomGroupoid {
    pub groupoid: FiniteGroupoid,
    /// Validated; the Klein sign on twisted components times a random
    /// coboundary.
    pub cocycle: TwoCocycle<Gauss>,
    pub components: Vec<Component>,
}

/// Disjoint union of transitive groupoids `O × H × O` with at most
/// `max_units` units and `max_arrows` arrows, arrow order shuffled.
pub fn random_groupoid(rng: &mut Rng64, max_units: usize, max_arrows: usize) -> RandomGroupoid {
    let groups = small_groups();
    let target = rng.gen_range(1..=max_units);
    let (mut units, mut arrows) = (0, 0);
    let mut comps: Vec<(usize, usize, bool)> = Vec::new();
    while units < target {
        let budget = max_arrows - arrows;
        let mut p = rng.gen_range(1..=target - units);
        while p * p > budget {
            p -= 1;
        }
        if p == 0 {
            break;
        }
        let fits: Vec<usize> = (0..groups.len())
            .filter(|&i| p * p * groups[i].1.order() <= budget)
            .collect();
        let gi = *fits.choose(rng).unwrap();
        let twisted = groups[gi].2 && rng.gen_bool(0.5);
        comps.push((p, gi, twisted));
        units += p;
        arrows += p * p * groups[gi].1.order();
    }

    let mut raw = Vec::new(); // (component, x, h, y)
    for (c, &(p, gi, _)) in comps.iter().enumerate() {
        for x in 0..p {
            for h in 0..groups[gi].1.order() {
                for y in 0..p {
                    raw.push((c, x, h, y));
                }
            }
        }
    }
    let n = raw.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let pos: BTreeMap<(usize, usize, usize, usize), usize> = raw.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut p = GroupoidParts {
        labels: raw
            .iter()
            .enumerate()
            .map(|(i, &(c, x, h, y))| format!("{:02}|c{}:({},{},{})", perm[i], c, x, groups[comps[c].1].1.labels[h], y))
            .collect(),
        ..Default::default()
    };
    let mut sigma = Vec::new();
    for &(c, x, h, y) in &raw {
        let grp = &groups[comps[c].1].1;
        let e = grp.identity;
        p.range.push(pos[&(c, x, e, x)]);
        p.domain.push(pos[&(c, y, e, y)]);
        p.inverse.push(pos[&(c, y, grp.inverse[h], x)]);
        if x == y && h == e {
            p.units.push(pos[&(c, x, e, x)]);
        }
        for k in 0..grp.order() {
            for z in 0..comps[c].0 {
                let (a, b) = (pos[&(c, x, h, y)], pos[&(c, y, k, z)]);
                p.compose.push((a, b, pos[&(c, x, grp.mul(h, k), z)]));
                if comps[c].2 && (h % 2) * (k / 2) == 1 {
                    sigma.push(((a, b), Gauss::from_i64(-1)));
                }
            }
        }
    }
    let labels = p.labels.clone();
    let g = FiniteGroupoid::from_parts(p).expect("random groupoid");
    let remap = |a: usize| g.id(&labels[a]).unwrap();
    let twist = TwoCocycle::from_values(
        Field::Complex,
        sigma.into_iter().map(|((a, b), v)| ((remap(a), remap(b)), v)),
    )
    .expect("klein sign");
    let units = [Gauss::int(1, 0), Gauss::int(-1, 0), Gauss::int(0, 1), Gauss::int(0, -1)];
    let c: Vec<Gauss> = (0..g.len())
        .map(|a| {
            if g.is_unit(a) {
                Gauss::one()
            } else {
                units.choose(rng).unwrap().clone()
            }
        })
        .collect();
    let cob = TwoCocycle::coboundary(&g, Field::Complex, &c).expect("coboundary");
    RandomGroupoid {
        cocycle: twist.product(&cob).expect("product"),
        groupoid: g,
        components: comps
            .iter()
            .map(|&(points, gi, twisted)| Component {
                points,
                group: groups[gi].0,
                twisted,
            })
            .collect(),
    }
}

/// A scalar `(a + bi)/4` with small integers; zero with probability `zero`.
pub fn small_scalar<S: Scalar>(rng: &mut Rng64, zero: f64, complex: bool) -> S {
    if rng.gen_bool(zero) {
        return S::zero();
    }
    let re = rng.gen_range(-8i64..=8) as f64 / 4.0;
    let im = if complex {
        rng.gen_range(-8i64..=8) as f64 / 4.0
    } else {
        0.0
    };
    S::from_f64_pair(re, im)
}

pub fn random_element<S: Scalar>(rng: &mut Rng64, g: &FiniteGroupoid) -> ConvElement<S> {
    let zero = rng.gen_range(0.0..0.8);
    let c = (0..g.len()).map(|_| small_scalar(rng, zero, true)).collect();
    ConvElement::new(g, c).expect("element")
}

/// A random DAG with at most `max_vertices` vertices whose boundary path
/// groupoid has at most `max_arrows` arrows.
pub fn random_dag(rng: &mut Rng64, max_vertices: usize, max_arrows: usize) -> DirectedGraph {
    loop {
        let n = rng.gen_range(1..=max_vertices);
        let order: Vec<usize> = {
            let mut o: Vec<usize> = (0..n).collect();
            o.shuffle(rng);
            o
        };
        let density = rng.gen_range(0.1..0.6);
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                // edges run from earlier to later in `order`
                if rng.gen_bool(density) {
                    pairs.push((order[i], order[j]));
                    if rng.gen_bool(0.1) {
                        pairs.push((order[i], order[j]));
                    }
                }
            }
        }
        let g = DirectedGraph::from_pairs(n, &pairs).expect("dag");
        let paths = g.boundary_paths().expect("acyclic");
        let mut per_source: BTreeMap<usize, usize> = BTreeMap::new();
        for p in &paths {
            *per_source.entry(g.path_source(p)).or_default() += 1;
        }
        if per_source.values().map(|k| k * k).sum::<usize>() <= max_arrows {
            return g;
        }
    }
}

pub fn random_entourage(rng: &mut Rng64, n: usize) -> Entourage {
    let density = rng.gen_range(0.02..0.5);
    let mut e = Entourage::new();
    for x in 0..n {
        for y in 0..n {
            if rng.gen_bool(density) {
                e.insert((x, y));
            }
        }
    }
    e
}

/// A coarse space generated by one random entourage `E` (plus the diagonal
/// half the time) and a matrix supported in `E` with `k × k` blocks.
pub fn random_controlled_matrix(
    rng: &mut Rng64,
    max_points: usize,
    max_k: usize,
) -> (CoarseSpace, ControlledMatrix<Gauss>) {
    let n = rng.gen_range(1..=max_points);
    let k = rng.gen_range(1..=max_k);
    let e = random_entourage(rng, n);
    let mut gens = vec![e.clone()];
    if rng.gen_bool(0.5) {
        gens.push((0..n).map(|x| (x, x)).collect());
    }
    let cs = CoarseSpace::with_points(n, gens).expect("coarse space");
    let blocks: Vec<((usize, usize), Block<Gauss>)> = e
        .iter()
        .map(|&xy| {
            let b = (0..k)
                .map(|_| (0..k).map(|_| small_scalar(rng, 0.3, true)).collect())
                .collect();
            (xy, b)
        })
        .collect();
    let t = ControlledMatrix::new(n, k, blocks).expect("matrix");
    (cs, t)
}

/// Restriction of a global action of a small group on a union of coset
/// spaces to a random subset.
pub fn random_partial_action(rng: &mut Rng64, max_points: usize) -> PartialAction {
    let groups = small_groups();
    let g = groups.choose(rng).unwrap().1.clone();
    let subgroups = g.subgroups();
    let mut cosets: Vec<(usize, BTreeSet<usize>)> = Vec::new();
    let pieces = rng.gen_range(1..=2);
    for piece in 0..pieces {
        let h = subgroups.choose(rng).unwrap();
        let mut seen = BTreeSet::new();
        for t in 0..g.order() {
            let c: BTreeSet<usize> = h.iter().map(|&k| g.mul(t, k)).collect();
            if seen.insert(c.clone()) {
                cosets.push((piece, c));
            }
        }
    }
    let labels: Vec<String> = cosets
        .iter()
        .map(|(p, c)| format!("{}:{}", p, g.labels[*c.iter().next().unwrap()]))
        .collect();
    let cs = cosets.clone();
    let gg = g.clone();
    let global = PartialAction::global(g, labels, move |t, x| {
        let (p, c) = &cs[x];
        let img: BTreeSet<usize> = c.iter().map(|&k| gg.mul(t, k)).collect();
        cs.iter().position(|(q, d)| q == p && *d == img).unwrap()
    })
    .expect("global action");
    let n = global.space.len();
    let keep = rng.gen_range(1..=n.min(max_points));
    let mut pts: Vec<usize> = (0..n).collect();
    pts.shuffle(rng);
    global.restrict_to(&pts[..keep].iter().copied().collect())
}
