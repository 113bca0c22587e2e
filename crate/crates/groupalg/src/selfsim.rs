//! Self-similar group actions on finite graphs without sources, given as
//! automata, with bounded-depth semi-decisions.
//!
//! Paths follow [`crate::graph`]: `μ_1 μ_2 ⋯` with `s(μ_i) = r(μ_{i+1})`, and
//! a path "ends in `v`" when `r(μ_1) = v`. Group elements are automaton
//! states; two states are equal only if they are the same state.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::verdict::{TriState, ValidationReport};

pub const DEFAULT_DEPTH: usize = 10;
/// Paths held at once by the strongly-fixed search.
pub const FRONTIER_CAP: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfSimilarAction {
    pub graph: DirectedGraph,
    pub states: Vec<String>,
    pub identity: usize,
    /// `vertex_map[g][v] = σ_g(v)`.
    pub vertex_map: Vec<Vec<usize>>,
    /// `edge_map[g][e] = σ_g(e)`.
    pub edge_map: Vec<Vec<usize>>,
    /// `restrict[g][e] = g|_e`.
    pub restrict: Vec<Vec<usize>>,
    /// Known products `gh`; products with the identity are implicit.
    pub product: BTreeMap<(usize, usize), usize>,
}

impl SelfSimilarAction {
    pub fn new(
        graph: DirectedGraph,
        states: Vec<String>,
        identity: usize,
        vertex_map: Vec<Vec<usize>>,
        edge_map: Vec<Vec<usize>>,
        restrict: Vec<Vec<usize>>,
        product: BTreeMap<(usize, usize), usize>,
    ) -> Result<Self> {
        if let Some(&v) = graph.singular_vertices().iter().next() {
            return Err(Error::HasSource(graph.vertices[v].clone()));
        }
        let k = states.len();
        let (nv, ne) = (graph.vertices.len(), graph.edges.len());
        if identity >= k {
            return Err(Error::IndexOutOfRange {
                what: "identity state",
                index: identity,
                len: k,
            });
        }
        let shape = |m: &Vec<Vec<usize>>, w: usize, bound: usize| {
            m.len() == k && m.iter().all(|r| r.len() == w && r.iter().all(|&x| x < bound))
        };
        if !shape(&vertex_map, nv, nv) || !shape(&edge_map, ne, ne) || !shape(&restrict, ne, k) {
            return Err(Error::Invalid("self-similar tables have the wrong shape".into()));
        }
        if product.iter().any(|(&(a, b), &c)| a >= k || b >= k || c >= k) {
            return Err(Error::Invalid("product table refers to unknown states".into()));
        }
        Ok(SelfSimilarAction {
            graph,
            states,
            identity,
            vertex_map,
            edge_map,
            restrict,
            product,
        })
    }

    /// The trivial group acting on `q`.
    pub fn trivial(q: DirectedGraph) -> Result<Self> {
        let nv = q.vertices.len();
        let ne = q.edges.len();
        Self::new(
            q,
            vec!["1".into()],
            0,
            vec![(0..nv).collect()],
            vec![(0..ne).collect()],
            vec![vec![0; ne]],
            BTreeMap::new(),
        )
    }

    pub fn state(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|s| s == label)
    }

    pub fn mul(&self, g: usize, h: usize) -> Option<usize> {
        if g == self.identity {
            Some(h)
        } else if h == self.identity {
            Some(g)
        } else {
            self.product.get(&(g, h)).copied()
        }
    }

    fn mul_or_err(&self, g: usize, h: usize) -> Result<usize> {
        self.mul(g, h)
            .ok_or_else(|| Error::BoundExceeded(self.states[g].clone(), self.states[h].clone()))
    }

    fn check_path(&self, mu: &[usize]) -> Result<()> {
        if mu.iter().any(|&e| e >= self.graph.edges.len()) {
            return Err(Error::Invalid("unknown edge in path".into()));
        }
        if mu.windows(2).any(|w| !self.graph.composable(w[0], w[1])) {
            return Err(Error::Invalid("edges do not form a path".into()));
        }
        Ok(())
    }

    /// `(σ_g(μ), g|_μ)` via `σ_g(eμ) = σ_g(e) σ_{g|_e}(μ)`.
    pub fn act_on_path(&self, g: usize, mu: &[usize]) -> Result<(Vec<usize>, usize)> {
        self.check_path(mu)?;
        Ok(self.act_unchecked(g, mu))
    }

    fn act_unchecked(&self, g: usize, mu: &[usize]) -> (Vec<usize>, usize) {
        let mut h = g;
        let mut out = Vec::with_capacity(mu.len());
        for &e in mu {
            out.push(self.edge_map[h][e]);
            h = self.restrict[h][e];
        }
        (out, h)
    }

    /// Action of the product `gh` computed from the factors:
    /// `(σ_g(σ_h μ), g|_{σ_h μ} h|_μ)`. Needs that last product.
    pub fn act_product(&self, g: usize, h: usize, mu: &[usize]) -> Result<(Vec<usize>, usize)> {
        let (m1, h1) = self.act_on_path(h, mu)?;
        let (m2, g1) = self.act_on_path(g, &m1)?;
        Ok((m2, self.mul_or_err(g1, h1)?))
    }

    /// Action of a word `g_1 ⋯ g_k` (rightmost acts first).
    pub fn act_word(&self, word: &[usize], mu: &[usize]) -> Result<(Vec<usize>, usize)> {
        self.check_path(mu)?;
        let mut path = mu.to_vec();
        let mut state = self.identity;
        for &g in word.iter().rev() {
            let (p, r) = self.act_unchecked(g, &path);
            path = p;
            state = self.mul_or_err(r, state)?;
        }
        Ok((path, state))
    }

    pub fn is_strongly_fixed(&self, g: usize, mu: &[usize]) -> bool {
        let (p, h) = self.act_unchecked(g, mu);
        p == mu && h == self.identity
    }

    /// `v ~ w` iff `v = σ_g(w)`, closed under the generated group.
    pub fn orbit_relation(&self) -> Vec<BTreeSet<usize>> {
        let n = self.graph.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for m in &self.vertex_map {
            for (v, &w) in m.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                parent[a] = b;
            }
        }
        let mut classes: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            classes.entry(r).or_default().insert(v);
        }
        classes.into_values().collect()
    }

    /// `ll[v][w]` iff `v ≤ u ~ w` for some `u`.
    pub fn ll_relation(&self) -> Vec<Vec<bool>> {
        let n = self.graph.vertices.len();
        let below = self.graph.below();
        let orbits = self.orbit_relation();
        let class_of = |x: usize| orbits.iter().position(|c| c.contains(&x)).unwrap();
        (0..n)
            .map(|v| {
                (0..n)
                    .map(|w| (0..n).any(|u| below[u].contains(&v) && class_of(u) == class_of(w)))
                    .collect()
            })
            .collect()
    }
}

pub fn validate_cocycle_identities(a: &SelfSimilarAction) -> ValidationReport {
    let mut rep = ValidationReport::new();
    let q = &a.graph;
    let k = a.states.len();
    for g in 0..k {
        let vs: BTreeSet<usize> = a.vertex_map[g].iter().copied().collect();
        let es: BTreeSet<usize> = a.edge_map[g].iter().copied().collect();
        if vs.len() != q.vertices.len() || es.len() != q.edges.len() {
            rep.push(
                "not_automorphism",
                vec![g],
                format!("σ_{} is not bijective", a.states[g]),
            );
        }
        for (e, edge) in q.edges.iter().enumerate() {
            let img = &q.edges[a.edge_map[g][e]];
            if img.range != a.vertex_map[g][edge.range] || img.source != a.vertex_map[g][edge.source] {
                rep.push(
                    "not_automorphism",
                    vec![g, e],
                    format!("σ_{} does not commute with r and s at {}", a.states[g], edge.name),
                );
            }
            // σ_{g|e}(s(e)) = σ_g(s(e))
            let ge = a.restrict[g][e];
            if a.vertex_map[ge][edge.source] != a.vertex_map[g][edge.source] {
                rep.push(
                    "restriction_source",
                    vec![g, e],
                    format!(
                        "σ_{}|{} and σ_{} differ on s({})",
                        a.states[g], edge.name, a.states[g], edge.name
                    ),
                );
            }
        }
    }
    let id = a.identity;
    if a.vertex_map[id].iter().enumerate().any(|(v, &w)| v != w)
        || a.edge_map[id].iter().enumerate().any(|(e, &f)| e != f)
        || a.restrict[id].iter().any(|&h| h != id)
    {
        rep.push("identity_state", vec![id], "the identity state acts non-trivially");
    }
    for (&(g, h), &gh) in &a.product {
        for v in 0..q.vertices.len() {
            if a.vertex_map[gh][v] != a.vertex_map[g][a.vertex_map[h][v]] {
                rep.push(
                    "product_action",
                    vec![g, h, v],
                    format!("σ_{} is not σ_{} σ_{}", a.states[gh], a.states[g], a.states[h]),
                );
            }
        }
        for (e, edge) in q.edges.iter().enumerate() {
            if a.edge_map[gh][e] != a.edge_map[g][a.edge_map[h][e]] {
                rep.push(
                    "product_action",
                    vec![g, h, e],
                    format!(
                        "σ_{} is not σ_{} σ_{} at {}",
                        a.states[gh], a.states[g], a.states[h], edge.name
                    ),
                );
            }
            // gh|_e = g|_{σ_h(e)} h|_e
            let l = a.restrict[gh][e];
            let gl = a.restrict[g][a.edge_map[h][e]];
            let hl = a.restrict[h][e];
            match a.mul(gl, hl) {
                None => rep.push(
                    "product_missing",
                    vec![gl, hl],
                    format!(
                        "product {}·{} needed at {} is not in the table",
                        a.states[gl], a.states[hl], edge.name
                    ),
                ),
                Some(r) if r != l => rep.push(
                    "restriction_product",
                    vec![g, h, e],
                    format!(
                        "({}{})|{} differs from {}|σ({}) {}|{}",
                        a.states[g], a.states[h], edge.name, a.states[g], edge.name, a.states[h], edge.name
                    ),
                ),
                _ => {}
            }
        }
    }
    rep
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StronglyFixed {
    pub paths: Vec<Vec<usize>>,
    /// No live branch remains at the depth bound, so the list is complete.
    pub exhausted: bool,
}

/// A path with a compatible successor rule: `next` edges after `last`.
fn successors(q: &DirectedGraph, last: Option<usize>, end: Option<usize>) -> Vec<usize> {
    match (last, end) {
        (Some(l), _) => (0..q.edges.len()).filter(|&e| q.composable(l, e)).collect(),
        (None, Some(v)) => q.incoming(v),
        (None, None) => (0..q.edges.len()).collect(),
    }
}

/// Configuration after reading a path: the current restriction and the
/// vertex the next edge must have as its range.
type Config = (usize, usize);

/// Breadth-first graph of unmoved configurations reached from `g`.
struct ConfigGraph {
    nodes: Vec<Config>,
    index: HashMap<Config, usize>,
    /// Shortest path reaching each node.
    reach: Vec<Vec<usize>>,
    /// `out[n]` = `(edge, Some(node))` for unmoved steps, `(edge, None)` when
    /// the step moves the edge.
    out: Vec<Vec<(usize, Option<usize>)>>,
}

impl ConfigGraph {
    fn build(a: &SelfSimilarAction, g: usize, end: Option<usize>) -> Self {
        let q = &a.graph;
        let mut cg = ConfigGraph {
            nodes: Vec::new(),
            index: HashMap::new(),
            reach: Vec::new(),
            out: Vec::new(),
        };
        let mut queue = VecDeque::new();
        // the virtual root (empty path) is stored last in `out`
        let mut first = Vec::new();
        for e in successors(q, None, end) {
            if a.edge_map[g][e] != e {
                first.push((e, None));
                continue;
            }
            let c = (a.restrict[g][e], q.edges[e].source);
            let id = cg.intern(c, vec![e], &mut queue);
            first.push((e, Some(id)));
        }
        let root_out = first;
        while let Some(n) = queue.pop_front() {
            let (h, w) = cg.nodes[n];
            let mut edges = Vec::new();
            for e in q.incoming(w) {
                if a.edge_map[h][e] != e {
                    edges.push((e, None));
                    continue;
                }
                let c = (a.restrict[h][e], q.edges[e].source);
                let mut p = cg.reach[n].clone();
                p.push(e);
                let id = cg.intern(c, p, &mut queue);
                edges.push((e, Some(id)));
            }
            cg.out[n] = edges;
        }
        cg.out.push(root_out);
        cg
    }

    fn intern(&mut self, c: Config, path: Vec<usize>, queue: &mut VecDeque<usize>) -> usize {
        if let Some(&i) = self.index.get(&c) {
            return i;
        }
        let i = self.nodes.len();
        self.nodes.push(c);
        self.index.insert(c, i);
        self.reach.push(path);
        self.out.push(Vec::new());
        queue.push_back(i);
        i
    }

    fn root(&self) -> usize {
        self.out.len() - 1
    }

    fn edges(&self, n: usize) -> &[(usize, Option<usize>)] {
        &self.out[n]
    }

    fn reach_of(&self, n: usize) -> &[usize] {
        if n == self.root() {
            &[]
        } else {
            &self.reach[n]
        }
    }

    /// Shortest path of steps from `from` to `to` through nodes accepted by
    /// `keep` (the target itself included).
    fn shortest(&self, from: usize, to: usize, keep: &dyn Fn(usize) -> bool) -> Option<Vec<usize>> {
        let mut prev: HashMap<usize, (usize, usize)> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        let mut seen = BTreeSet::new();
        while let Some(n) = queue.pop_front() {
            for &(e, m) in self.edges(n) {
                let Some(m) = m else { continue };
                if !keep(m) || !seen.insert(m) {
                    continue;
                }
                prev.insert(m, (n, e));
                if m == to {
                    let mut path = Vec::new();
                    let mut cur = to;
                    loop {
                        let (p, e) = prev[&cur];
                        path.push(e);
                        if p == from {
                            break;
                        }
                        cur = p;
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(m);
            }
        }
        None
    }
}

/// `prefix · loop^k · exit` is a minimal strongly fixed path for every `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InfinitelyManyFixed {
    pub g: usize,
    pub prefix: Vec<usize>,
    pub cycle: Vec<usize>,
    pub exit: Vec<usize>,
}

impl InfinitelyManyFixed {
    pub fn verify(&self, a: &SelfSimilarAction) -> std::result::Result<(), String> {
        if self.cycle.is_empty() {
            return Err("empty cycle".into());
        }
        for k in 0..3 {
            let mut p = self.prefix.clone();
            for _ in 0..k {
                p.extend(&self.cycle);
            }
            p.extend(&self.exit);
            a.check_path(&p).map_err(|e| e.to_string())?;
            if !a.is_strongly_fixed(self.g, &p) {
                return Err(format!("path {:?} is not strongly fixed", p));
            }
            if (1..p.len()).any(|i| a.is_strongly_fixed(self.g, &p[..i])) {
                return Err(format!("path {:?} is not minimal", p));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NotSlack {
    /// `σ_g` moves this path ending at `v`, hence all its extensions.
    Moved { path: Vec<usize> },
    /// `prefix · cycle^k` is never strongly fixed: the restriction stays a
    /// non-identity state.
    Cycle { prefix: Vec<usize>, cycle: Vec<usize> },
}

impl NotSlack {
    pub fn verify(&self, a: &SelfSimilarAction, g: usize, v: usize) -> std::result::Result<(), String> {
        let ends_at_v = |p: &[usize]| p.first().is_some_and(|&e| a.graph.edges[e].range == v);
        match self {
            NotSlack::Moved { path } => {
                a.check_path(path).map_err(|e| e.to_string())?;
                let (img, _) = a.act_unchecked(g, path);
                if !ends_at_v(path) || img == *path {
                    return Err("recorded path is not moved or does not end at v".into());
                }
            }
            NotSlack::Cycle { prefix, cycle } => {
                if cycle.is_empty() {
                    return Err("empty cycle".into());
                }
                for k in 1..4 {
                    let mut p = prefix.clone();
                    for _ in 0..k {
                        p.extend(cycle);
                    }
                    a.check_path(&p).map_err(|e| e.to_string())?;
                    if !ends_at_v(&p) || a.is_strongly_fixed(g, &p) {
                        return Err(format!("path {:?} is strongly fixed or misplaced", p));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlackAt {
    pub n: usize,
}

/// Evidence that `g` fixes every infinite path ending at `v`: the reachable
/// configurations, all within the depth bound, never move an edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixesAll {
    pub configurations: usize,
}

impl SelfSimilarAction {
    /// Minimal strongly fixed paths of length at most `depth`.
    pub fn strongly_fixed_paths(&self, g: usize, depth: usize) -> Result<StronglyFixed> {
        if depth == 0 {
            return Err(Error::ZeroN);
        }
        let q = &self.graph;
        let mut paths = Vec::new();
        let mut frontier: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), g)];
        for _ in 0..depth {
            let mut next = Vec::new();
            for (p, h) in frontier {
                for e in successors(q, p.last().copied(), None) {
                    if self.edge_map[h][e] != e {
                        continue;
                    }
                    let mut p2 = p.clone();
                    p2.push(e);
                    let h2 = self.restrict[h][e];
                    if h2 == self.identity {
                        paths.push(p2);
                    } else {
                        next.push((p2, h2));
                    }
                }
            }
            if next.len() > FRONTIER_CAP {
                return Err(Error::CapExceeded {
                    what: "strongly fixed frontier",
                    cap: FRONTIER_CAP,
                });
            }
            frontier = next;
            if frontier.is_empty() {
                break;
            }
        }
        Ok(StronglyFixed {
            paths,
            exhausted: frontier.is_empty(),
        })
    }

    /// Finitely many minimal strongly fixed paths for `g`: proven when the
    /// search runs dry, refuted by a pumpable cycle fitting in `depth`.
    pub fn finitely_many_fixed(&self, g: usize, depth: usize) -> Result<TriState<usize, InfinitelyManyFixed>> {
        let sf = self.strongly_fixed_paths(g, depth)?;
        if sf.exhausted {
            return Ok(TriState::Proven {
                evidence: sf.paths.len(),
            });
        }
        let cg = ConfigGraph::build(self, g, None);
        let live = |n: usize| cg.nodes[n].0 != self.identity;
        let mut best: Option<InfinitelyManyFixed> = None;
        for n in (0..cg.nodes.len()).filter(|&n| live(n)) {
            let prefix = cg.reach_of(n).to_vec();
            // reach paths are shortest overall; require non-identity states along them
            if (1..prefix.len()).any(|i| self.act_unchecked(g, &prefix[..i]).1 == self.identity) {
                continue;
            }
            let Some(cycle) = cg.shortest(n, n, &live) else {
                continue;
            };
            let exit = cg
                .edges(n)
                .iter()
                .find(|(_, m)| m.is_some_and(|m| !live(m)))
                .map(|(e, _)| vec![*e]);
            let exit = match exit {
                Some(x) => x,
                None => {
                    let mut found = None;
                    for m in (0..cg.nodes.len()).filter(|&m| live(m)) {
                        if let Some(x) = cg.edges(m).iter().find(|(_, t)| t.is_some_and(|t| !live(t))) {
                            if let Some(mut p) = cg.shortest(n, m, &live) {
                                p.push(x.0);
                                if found.as_ref().is_none_or(|f: &Vec<usize>| p.len() < f.len()) {
                                    found = Some(p);
                                }
                            }
                        }
                    }
                    match found {
                        Some(f) => f,
                        None => continue,
                    }
                }
            };
            let w = InfinitelyManyFixed { g, prefix, cycle, exit };
            let len = w.prefix.len() + w.cycle.len() + w.exit.len();
            if len <= depth
                && best
                    .as_ref()
                    .is_none_or(|b| len < b.prefix.len() + b.cycle.len() + b.exit.len())
            {
                best = Some(w);
            }
        }
        Ok(match best {
            Some(w) => TriState::Refuted { evidence: w },
            None => TriState::Unknown { depth },
        })
    }

    /// `g` is slack at `v`: from some length `n` on, every path ending at
    /// `v` is strongly fixed.
    pub fn is_slack(&self, g: usize, v: usize, depth: usize) -> Result<TriState<SlackAt, NotSlack>> {
        if depth == 0 {
            return Err(Error::ZeroN);
        }
        let q = &self.graph;
        // level sets of (state, next range vertex) with one representative path
        let mut level: BTreeMap<Config, Vec<usize>> = BTreeMap::new();
        let mut moved: Option<Vec<usize>> = None;
        for e in q.incoming(v) {
            if self.edge_map[g][e] != e {
                moved.get_or_insert(vec![e]);
            } else {
                level.entry((self.restrict[g][e], q.edges[e].source)).or_insert(vec![e]);
            }
        }
        for n in 1..=depth {
            if moved.is_none() && level.keys().all(|&(h, _)| h == self.identity) {
                return Ok(TriState::Proven {
                    evidence: SlackAt { n },
                });
            }
            if n == depth {
                break;
            }
            let mut next: BTreeMap<Config, Vec<usize>> = BTreeMap::new();
            for (&(h, w), p) in &level {
                for e in q.incoming(w) {
                    let mut p2 = p.clone();
                    p2.push(e);
                    if self.edge_map[h][e] != e {
                        moved.get_or_insert(p2);
                    } else {
                        next.entry((self.restrict[h][e], q.edges[e].source)).or_insert(p2);
                    }
                }
            }
            level = next;
        }
        if let Some(path) = moved {
            return Ok(TriState::Refuted {
                evidence: NotSlack::Moved { path },
            });
        }
        let cg = ConfigGraph::build(self, g, Some(v));
        let live = |n: usize| cg.nodes[n].0 != self.identity;
        for n in (0..cg.nodes.len()).filter(|&n| live(n)) {
            let prefix = cg.reach_of(n).to_vec();
            if let Some(cycle) = cg.shortest(n, n, &live) {
                let unfixed = (1..=prefix.len()).all(|i| self.act_unchecked(g, &prefix[..i]).1 != self.identity);
                if unfixed && prefix.len() + cycle.len() <= depth {
                    return Ok(TriState::Refuted {
                        evidence: NotSlack::Cycle { prefix, cycle },
                    });
                }
            }
        }
        Ok(TriState::Unknown { depth })
    }

    /// Whether `g` fixes every infinite path ending at `v`. Refuted by a
    /// moved path of length at most `depth`; proven when the configuration
    /// graph is fully explored within `depth` steps without moves.
    pub fn fixes_all_infinite_paths(&self, g: usize, v: usize, depth: usize) -> TriState<FixesAll, Vec<usize>> {
        let cg = ConfigGraph::build(self, g, Some(v));
        let mut best: Option<Vec<usize>> = None;
        for n in 0..cg.out.len() {
            for &(e, m) in cg.edges(n) {
                if m.is_none() {
                    let mut p = cg.reach_of(n).to_vec();
                    p.push(e);
                    if best.as_ref().is_none_or(|b| p.len() < b.len()) {
                        best = Some(p);
                    }
                }
            }
        }
        if let Some(p) = best {
            if p.len() <= depth {
                return TriState::Refuted { evidence: p };
            }
            return TriState::Unknown { depth };
        }
        let deepest = cg.reach.iter().map(|p| p.len()).max().unwrap_or(0);
        if deepest < depth {
            TriState::Proven {
                evidence: FixesAll {
                    configurations: cg.nodes.len(),
                },
            }
        } else {
            TriState::Unknown { depth }
        }
    }

    /// "If `g` fixes all infinite paths ending in `v`, then `g` is slack at
    /// `v`", probed for one pair.
    pub fn fixing_implies_slack(&self, g: usize, v: usize, depth: usize) -> Result<TriState<String, NotSlack>> {
        let slack = self.is_slack(g, v, depth)?;
        if let TriState::Proven { evidence } = &slack {
            return Ok(TriState::Proven {
                evidence: format!("slack from length {}", evidence.n),
            });
        }
        match self.fixes_all_infinite_paths(g, v, depth) {
            TriState::Refuted { .. } => Ok(TriState::Proven {
                evidence: "moves an infinite path".into(),
            }),
            TriState::Proven { .. } => match slack {
                TriState::Refuted { evidence } => Ok(TriState::Refuted { evidence }),
                _ => Ok(TriState::Unknown { depth }),
            },
            TriState::Unknown { .. } => Ok(TriState::Unknown { depth }),
        }
    }

    /// Cofinality in `(Q⁰, ≪)`: each vertex is `≪` some vertex of every
    /// cyclic component. No sources, so there are no finite boundary paths.
    pub fn is_cofinal_ss(&self) -> TriState<(), (usize, BTreeSet<usize>)> {
        let ll = self.ll_relation();
        for comp in self.graph.cyclic_components() {
            let u = *comp.iter().next().unwrap();
            for v in 0..self.graph.vertices.len() {
                if !ll[v][u] {
                    return TriState::Refuted { evidence: (v, comp) };
                }
            }
        }
        TriState::Proven { evidence: () }
    }

    pub fn verdict(&self, depth: usize) -> Result<SelfSimilarReport> {
        if depth == 0 {
            return Err(Error::ZeroN);
        }
        let cofinal = self.is_cofinal_ss();
        let entry = match self.graph.every_cycle_has_entry().witness {
            None => TriState::Proven { evidence: () },
            Some(c) => TriState::Refuted { evidence: c },
        };
        let mut slack_pairs = Vec::new();
        let mut slack: TriState<usize, SlackFailure> = TriState::Proven { evidence: 0 };
        let mut unknown = false;
        for g in 0..self.states.len() {
            for v in 0..self.graph.vertices.len() {
                let r = self.fixing_implies_slack(g, v, depth)?;
                match r {
                    TriState::Refuted { evidence } => {
                        if !slack.is_refuted() {
                            slack = TriState::Refuted {
                                evidence: SlackFailure {
                                    g,
                                    v,
                                    witness: evidence,
                                },
                            };
                        }
                    }
                    TriState::Unknown { .. } => unknown = true,
                    TriState::Proven { .. } => slack_pairs.push((g, v)),
                }
            }
        }
        if !slack.is_refuted() {
            slack = if unknown {
                TriState::Unknown { depth }
            } else {
                TriState::Proven {
                    evidence: slack_pairs.len(),
                }
            };
        }
        let mut hausdorff: TriState<usize, InfinitelyManyFixed> = TriState::Proven { evidence: 0 };
        let mut h_unknown = false;
        let mut total = 0;
        for g in 0..self.states.len() {
            match self.finitely_many_fixed(g, depth)? {
                TriState::Proven { evidence } => total += evidence,
                TriState::Refuted { evidence } => {
                    if !hausdorff.is_refuted() {
                        hausdorff = TriState::Refuted { evidence };
                    }
                }
                TriState::Unknown { .. } => h_unknown = true,
            }
        }
        if !hausdorff.is_refuted() {
            hausdorff = if h_unknown {
                TriState::Unknown { depth }
            } else {
                TriState::Proven { evidence: total }
            };
        }
        let hyps = [cofinal.label(), entry.label(), slack.label()];
        let essential = if hyps.iter().all(|&l| l == "proven") {
            Conclusion::SimplePurelyInfinite
        } else if hyps.contains(&"refuted") {
            Conclusion::HypothesisFails
        } else {
            Conclusion::Undetermined
        };
        let reduced = match (essential, hausdorff.label()) {
            (Conclusion::SimplePurelyInfinite, "proven") => Conclusion::SimplePurelyInfinite,
            (Conclusion::HypothesisFails, _) | (_, "refuted") => Conclusion::HypothesisFails,
            _ => Conclusion::Undetermined,
        };
        Ok(SelfSimilarReport {
            depth,
            cofinal,
            every_cycle_has_entry: entry,
            fixing_implies_slack: slack,
            finitely_many_minimal_fixed: hausdorff,
            essential,
            reduced,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlackFailure {
    pub g: usize,
    pub v: usize,
    pub witness: NotSlack,
}

/// What the simplicity theorem yields: its hypotheses hold, one of them is
/// refuted (the theorem then says nothing), or the probe is inconclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conclusion {
    SimplePurelyInfinite,
    HypothesisFails,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfSimilarReport {
    pub depth: usize,
    pub cofinal: TriState<(), (usize, BTreeSet<usize>)>,
    pub every_cycle_has_entry: TriState<(), Vec<usize>>,
    pub fixing_implies_slack: TriState<usize, SlackFailure>,
    pub finitely_many_minimal_fixed: TriState<usize, InfinitelyManyFixed>,
    /// Essential algebra.
    pub essential: Conclusion,
    /// Reduced algebra, which also needs the Hausdorff condition.
    pub reduced: Conclusion,
}

fn one_vertex(letters: &[&str]) -> DirectedGraph {
    DirectedGraph::new(
        vec!["v".into()],
        letters.iter().map(|l| (l.to_string(), 0, 0)).collect(),
    )
    .expect("one-vertex graph")
}

/// Builds an action on a one-vertex graph from per-state edge permutations
/// and restrictions.
fn on_one_vertex(
    letters: &[&str],
    states: &[&str],
    edge_map: Vec<Vec<usize>>,
    restrict: Vec<Vec<usize>>,
    product: &[(usize, usize, usize)],
) -> SelfSimilarAction {
    let k = states.len();
    SelfSimilarAction::new(
        one_vertex(letters),
        states.iter().map(|s| s.to_string()).collect(),
        0,
        vec![vec![0]; k],
        edge_map,
        restrict,
        product.iter().map(|&(a, b, c)| ((a, b), c)).collect(),
    )
    .expect("fixture")
}

/// Binary odometer: `g·0w = 1w`, `g·1w = 0(g·w)`.
pub fn odometer() -> SelfSimilarAction {
    on_one_vertex(
        &["0", "1"],
        &["1", "g"],
        vec![vec![0, 1], vec![1, 0]],
        vec![vec![0, 0], vec![0, 1]],
        &[],
    )
}

/// `ℤ₂` flipping every letter.
pub fn z2_flip_all() -> SelfSimilarAction {
    on_one_vertex(
        &["0", "1"],
        &["1", "a"],
        vec![vec![0, 1], vec![1, 0]],
        vec![vec![0, 0], vec![1, 1]],
        &[(1, 1, 0)],
    )
}

/// `ℤ₂` flipping the first letter only.
pub fn z2_flip_first() -> SelfSimilarAction {
    on_one_vertex(
        &["0", "1"],
        &["1", "a"],
        vec![vec![0, 1], vec![1, 0]],
        vec![vec![0, 0], vec![0, 0]],
        &[(1, 1, 0)],
    )
}

/// `g` fixes the subtree under `0` with `g|_0 = 1`, and acts as the
/// first-letter flip `h` below `1`.
pub fn subtree_fixer() -> SelfSimilarAction {
    on_one_vertex(
        &["0", "1"],
        &["1", "g", "h"],
        vec![vec![0, 1], vec![0, 1], vec![1, 0]],
        vec![vec![0, 0], vec![0, 2], vec![0, 0]],
        &[(1, 1, 0), (2, 2, 0)],
    )
}

/// `g` and `k` act trivially; `g|_e = k`, `k|_e = 1`. So `g` is slack with
/// `n = 2`.
pub fn eventually_trivial() -> SelfSimilarAction {
    on_one_vertex(
        &["0", "1"],
        &["1", "g", "k"],
        vec![vec![0, 1], vec![0, 1], vec![0, 1]],
        vec![vec![0, 0], vec![2, 2], vec![0, 0]],
        &[(1, 1, 0), (2, 2, 0)],
    )
}

/// `g` acts trivially with `g|_0 = 1` and `g|_1 = g`: minimal strongly fixed
/// paths `0, 10, 110, ...`.
pub fn infinite_minimal_paths() -> SelfSimilarAction {
    on_one_vertex(
        &["0", "1"],
        &["1", "g"],
        vec![vec![0, 1], vec![0, 1]],
        vec![vec![0, 0], vec![0, 1]],
        &[],
    )
}

/// One loop with a state acting trivially but restricting to itself.
pub fn one_letter_odometer() -> SelfSimilarAction {
    on_one_vertex(&["e"], &["1", "g"], vec![vec![0], vec![0]], vec![vec![0], vec![1]], &[])
}

pub fn fixtures() -> Vec<(&'static str, SelfSimilarAction)> {
    vec![
        ("odometer", odometer()),
        ("z2_flip_all", z2_flip_all()),
        ("z2_flip_first", z2_flip_first()),
        ("subtree_fixer", subtree_fixer()),
        ("eventually_trivial", eventually_trivial()),
        ("infinite_minimal_paths", infinite_minimal_paths()),
        ("one_letter_odometer", one_letter_odometer()),
        (
            "trivial_two_loops",
            SelfSimilarAction::trivial(crate::graph::two_loops()).unwrap(),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odometer_paths() {
        let a = odometer();
        assert!(validate_cocycle_identities(&a).is_ok());
        let g = a.state("g").unwrap();
        assert_eq!(a.act_on_path(g, &[0, 0, 0]).unwrap(), (vec![1, 0, 0], 0));
        assert_eq!(a.act_on_path(g, &[1, 1, 1]).unwrap(), (vec![0, 0, 0], g));
        assert_eq!(a.act_on_path(0, &[1, 0]).unwrap(), (vec![1, 0], 0));
        let sf = a.strongly_fixed_paths(g, 12).unwrap();
        assert!(sf.paths.is_empty() && sf.exhausted);
        assert!(matches!(a.is_slack(g, 0, 10).unwrap(), TriState::Refuted { .. }));
    }

    #[test]
    fn broken_restriction() {
        let mut a = z2_flip_all();
        a.restrict[1][0] = 0;
        let rep = validate_cocycle_identities(&a);
        assert!(rep.has("restriction_product"), "{:?}", rep);
        let mut b = odometer();
        b.restrict[0][1] = 1;
        assert!(validate_cocycle_identities(&b).has("identity_state"));
    }

    #[test]
    fn sources_rejected() {
        let q = DirectedGraph::from_pairs(2, &[(0, 1)]).unwrap();
        assert!(matches!(SelfSimilarAction::trivial(q), Err(Error::HasSource(_))));
    }

    #[test]
    fn strongly_fixed_examples() {
        let a = subtree_fixer();
        assert!(
            validate_cocycle_identities(&a).is_ok(),
            "{:?}",
            validate_cocycle_identities(&a)
        );
        let g = a.state("g").unwrap();
        let sf = a.strongly_fixed_paths(g, 8).unwrap();
        assert_eq!(sf.paths, vec![vec![0]]);
        assert!(sf.exhausted);
        let id = a.strongly_fixed_paths(0, 3).unwrap();
        assert_eq!(id.paths, vec![vec![0], vec![1]]);

        let b = eventually_trivial();
        assert!(validate_cocycle_identities(&b).is_ok());
        let g = b.state("g").unwrap();
        assert_eq!(
            b.is_slack(g, 0, 10).unwrap(),
            TriState::Proven {
                evidence: SlackAt { n: 2 }
            }
        );
        assert_eq!(
            b.is_slack(0, 0, 10).unwrap(),
            TriState::Proven {
                evidence: SlackAt { n: 1 }
            }
        );
    }

    #[test]
    fn infinite_fixed_certificate() {
        let a = infinite_minimal_paths();
        let g = a.state("g").unwrap();
        match a.finitely_many_fixed(g, 6).unwrap() {
            TriState::Refuted { evidence } => evidence.verify(&a).unwrap(),
            other => panic!("{:?}", other),
        }
        match a.is_slack(g, 0, 6).unwrap() {
            TriState::Refuted { evidence } => evidence.verify(&a, g, 0).unwrap(),
            other => panic!("{:?}", other),
        }
        assert!(a.fixes_all_infinite_paths(g, 0, 6).is_proven());
        assert!(a.fixing_implies_slack(g, 0, 6).unwrap().is_refuted());
    }

    #[test]
    fn verdicts() {
        let t = SelfSimilarAction::trivial(crate::graph::two_loops()).unwrap();
        let r = t.verdict(DEFAULT_DEPTH).unwrap();
        assert_eq!(r.essential, Conclusion::SimplePurelyInfinite);
        assert_eq!(r.reduced, Conclusion::SimplePurelyInfinite);
        let o = one_letter_odometer().verdict(DEFAULT_DEPTH).unwrap();
        assert!(o.every_cycle_has_entry.is_refuted());
        assert_eq!(o.essential, Conclusion::HypothesisFails);
        let od = odometer().verdict(DEFAULT_DEPTH).unwrap();
        assert!(od.cofinal.is_proven());
        assert_eq!(od.essential, Conclusion::SimplePurelyInfinite);
    }
}
