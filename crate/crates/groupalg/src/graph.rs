//! Directed graphs, the graph-algebra simplicity decision procedure and the
//! boundary-path groupoid of an acyclic graph.
//!
//! Convention: an edge `e` runs from `s(e)` to `r(e)`; DOT `a -> b` has
//! `s = a`, `r = b`. A path `μ_1 μ_2 ⋯` satisfies `s(μ_i) = r(μ_{i+1})`, so it
//! is read against the direction of travel: `r(μ) = r(μ_1)` and a finite
//! path starts at `s(μ) = s(μ_n)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, GroupoidParts};
use crate::verdict::Verdict;

/// At most this many arrows in a boundary-path groupoid.
pub const BOUNDARY_GROUPOID_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub name: String,
    pub source: usize,
    pub range: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DirectedGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    #[serde(default)]
    name: Option<String>,
    source: String,
    range: String,
}

impl DirectedGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<(String, usize, usize)>) -> Result<Self> {
        let n = vertices.len();
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v) {
                return Err(Error::DuplicateLabel(v.clone()));
            }
        }
        let mut names = BTreeSet::new();
        let mut out = Vec::new();
        for (name, s, r) in edges {
            if s >= n || r >= n {
                return Err(Error::IndexOutOfRange {
                    what: "vertex",
                    index: s.max(r),
                    len: n,
                });
            }
            if !names.insert(name.clone()) {
                return Err(Error::DuplicateLabel(name));
            }
            out.push(Edge {
                name,
                source: s,
                range: r,
            });
        }
        Ok(DirectedGraph { vertices, edges: out })
    }

    /// Builds from `(source, range)` pairs with edges named `e0, e1, ...`.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let vertices = (0..n).map(|i| format!("v{}", i)).collect();
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(i, &(s, r))| (format!("e{}", i), s, r))
            .collect();
        Self::new(vertices, edges)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let j: GraphJson = serde_json::from_str(text)?;
        let idx = |v: &str| {
            j.vertices
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::UnknownLabel(v.to_string()))
        };
        let mut edges = Vec::new();
        for (i, e) in j.edges.iter().enumerate() {
            let name = e.name.clone().unwrap_or_else(|| format!("e{}", i));
            edges.push((name, idx(&e.source)?, idx(&e.range)?));
        }
        Self::new(j.vertices.clone(), edges)
    }

    pub fn to_json(&self) -> String {
        let j = GraphJson {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    name: Some(e.name.clone()),
                    source: self.vertices[e.source].clone(),
                    range: self.vertices[e.range].clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&j).expect("graph json")
    }

    /// Parses `digraph [name] { a; a -> b; b -> c [label=e]; }`. Chains
    /// `a -> b -> c` are accepted; other attributes are ignored.
    pub fn from_dot(text: &str) -> Result<Self> {
        let text: String = text
            .lines()
            .map(|l| l.split("//").next().unwrap_or(""))
            .collect::<Vec<_>>()
            .join("\n");
        let open = text.find('{').ok_or_else(|| Error::Parse("missing '{'".into()))?;
        let close = text.rfind('}').ok_or_else(|| Error::Parse("missing '}'".into()))?;
        let head = text[..open].trim();
        if !head.starts_with("digraph") {
            return Err(Error::Parse("only digraph is supported".into()));
        }
        let mut vertices: Vec<String> = Vec::new();
        let vid = |v: &str, vs: &mut Vec<String>| match vs.iter().position(|x| x == v) {
            Some(i) => i,
            None => {
                vs.push(v.to_string());
                vs.len() - 1
            }
        };
        let mut edges = Vec::new();
        for stmt in text[open + 1..close].split([';', '\n']) {
            let stmt = stmt.trim();
            if stmt.is_empty() {
                continue;
            }
            let (body, attrs) = match stmt.find('[') {
                Some(i) => (stmt[..i].trim(), Some(stmt[i..].trim())),
                None => (stmt, None),
            };
            let label = attrs.and_then(|a| {
                let a = a.trim_start_matches('[').trim_end_matches(']');
                a.split(',').find_map(|kv| {
                    let (k, v) = kv.split_once('=')?;
                    (k.trim() == "label").then(|| unquote(v.trim()))
                })
            });
            let parts: Vec<String> = body.split("->").map(|p| unquote(p.trim())).collect();
            if parts.iter().any(|p| p.is_empty() || p.contains(char::is_whitespace)) {
                if body.contains('=') {
                    continue;
                }
                return Err(Error::Parse(format!("cannot parse statement '{}'", stmt)));
            }
            if parts.len() == 1 {
                if matches!(parts[0].as_str(), "node" | "edge" | "graph") {
                    continue;
                }
                vid(&parts[0], &mut vertices);
                continue;
            }
            for w in parts.windows(2) {
                let s = vid(&w[0], &mut vertices);
                let r = vid(&w[1], &mut vertices);
                let name = match (&label, parts.len()) {
                    (Some(l), 2) => l.clone(),
                    _ => format!("e{}", edges.len()),
                };
                edges.push((name, s, r));
            }
        }
        Self::new(vertices, edges)
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// `r⁻¹(v)`.
    pub fn incoming(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].range == v).collect()
    }

    /// `μ_i μ_{i+1}` is a path iff `s(μ_i) = r(μ_{i+1})`.
    pub fn composable(&self, first: usize, next: usize) -> bool {
        self.edges[first].source == self.edges[next].range
    }

    /// Vertices with `r⁻¹(v) = ∅`.
    pub fn singular_vertices(&self) -> BTreeSet<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.incoming(v).is_empty())
            .collect()
    }

    /// `reach[w]` = vertices `v` with `v ≤ w`: some path starts at `w` and
    /// ends at `v` (travel from `w` to `v`).
    pub fn below(&self) -> Vec<BTreeSet<usize>> {
        let n = self.vertices.len();
        (0..n)
            .map(|w| {
                let mut seen = BTreeSet::from([w]);
                let mut stack = vec![w];
                while let Some(x) = stack.pop() {
                    for e in &self.edges {
                        if e.source == x && seen.insert(e.range) {
                            stack.push(e.range);
                        }
                    }
                }
                seen
            })
            .collect()
    }

    /// Strongly connected components containing a cycle.
    pub fn cyclic_components(&self) -> Vec<BTreeSet<usize>> {
        let below = self.below();
        let n = self.vertices.len();
        let mut done = BTreeSet::new();
        let mut out = Vec::new();
        for v in 0..n {
            if done.contains(&v) {
                continue;
            }
            let comp: BTreeSet<usize> = (0..n)
                .filter(|&u| below[v].contains(&u) && below[u].contains(&v))
                .collect();
            done.extend(comp.iter().copied());
            let has_cycle = self
                .edges
                .iter()
                .any(|e| comp.contains(&e.source) && comp.contains(&e.range));
            if has_cycle {
                out.push(comp);
            }
        }
        out
    }

    pub fn has_cycle(&self) -> bool {
        !self.cyclic_components().is_empty()
    }

    /// A cycle without entry has every vertex receiving exactly one edge;
    /// then its component is the cycle itself. Witness: the cycle's edges.
    pub fn every_cycle_has_entry(&self) -> Verdict<Vec<usize>> {
        for comp in self.cyclic_components() {
            if comp.iter().all(|&v| self.incoming(v).len() == 1) {
                let start = *comp.iter().next().unwrap();
                let mut cycle = Vec::new();
                let mut v = start;
                loop {
                    let e = self.incoming(v)[0];
                    cycle.push(e);
                    v = self.edges[e].source;
                    if v == start {
                        break;
                    }
                }
                return Verdict::no(cycle);
            }
        }
        Verdict::yes()
    }

    /// Every boundary path is cofinal. Infinite boundary paths run through
    /// a cyclic component and contain a full cycle of it; finite ones start
    /// at a singular vertex. So it suffices that each `v` lies below every
    /// cyclic component and below every singular vertex.
    pub fn is_cofinal(&self) -> Verdict<CofinalityFailure> {
        let below = self.below();
        for comp in self.cyclic_components() {
            let u = *comp.iter().next().unwrap();
            for v in 0..self.vertices.len() {
                if !below[u].contains(&v) {
                    return Verdict::no(CofinalityFailure::Cycle {
                        vertex: v,
                        component: comp,
                    });
                }
            }
        }
        for w in self.singular_vertices() {
            for v in 0..self.vertices.len() {
                if !below[w].contains(&v) {
                    return Verdict::no(CofinalityFailure::Singular { vertex: v, singular: w });
                }
            }
        }
        Verdict::yes()
    }

    pub fn simplicity_verdict(&self) -> GraphVerdict {
        let entry = self.every_cycle_has_entry();
        if let Some(c) = entry.witness {
            return GraphVerdict::NotSimple {
                reason: NotSimpleReason::EntrylessCycle { edges: c },
            };
        }
        let cof = self.is_cofinal();
        if let Some(w) = cof.witness {
            return GraphVerdict::NotSimple {
                reason: NotSimpleReason::NotCofinal(w),
            };
        }
        if self.has_cycle() {
            GraphVerdict::SimplePurelyInfinite
        } else {
            GraphVerdict::SimpleAf
        }
    }
}

fn unquote(s: &str) -> String {
    s.trim_matches('"').to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CofinalityFailure {
    /// `vertex` is not below the cyclic `component`.
    Cycle { vertex: usize, component: BTreeSet<usize> },
    /// `vertex` is not below the singular vertex.
    Singular { vertex: usize, singular: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NotSimpleReason {
    EntrylessCycle { edges: Vec<usize> },
    NotCofinal(CofinalityFailure),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum GraphVerdict {
    NotSimple { reason: NotSimpleReason },
    SimpleAf,
    SimplePurelyInfinite,
}

impl GraphVerdict {
    pub fn is_simple(&self) -> bool {
        !matches!(self, GraphVerdict::NotSimple { .. })
    }

    pub fn label(&self) -> &'static str {
        match self {
            GraphVerdict::NotSimple { .. } => "not_simple",
            GraphVerdict::SimpleAf => "simple_af",
            GraphVerdict::SimplePurelyInfinite => "simple_purely_infinite",
        }
    }
}

/// A finite path as a list of edges, with its range vertex (needed for
/// length zero).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Path {
    pub vertex: usize,
    pub edges: Vec<usize>,
}

impl DirectedGraph {
    pub fn path_label(&self, p: &Path) -> String {
        if p.edges.is_empty() {
            self.vertices[p.vertex].clone()
        } else {
            p.edges
                .iter()
                .map(|&e| self.edges[e].name.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    pub fn path_source(&self, p: &Path) -> usize {
        p.edges.last().map_or(p.vertex, |&e| self.edges[e].source)
    }

    /// All finite paths with `r(μ) = v` starting at a singular vertex.
    /// Requires an acyclic graph.
    pub fn boundary_paths(&self) -> Result<Vec<Path>> {
        if self.has_cycle() {
            return Err(Error::Cyclic);
        }
        let mut out = Vec::new();
        let mut stack: Vec<Path> = (0..self.vertices.len())
            .map(|v| Path {
                vertex: v,
                edges: vec![],
            })
            .collect();
        while let Some(p) = stack.pop() {
            let s = self.path_source(&p);
            let inc = self.incoming(s);
            if inc.is_empty() {
                out.push(p);
                if out.len() > BOUNDARY_GROUPOID_CAP {
                    return Err(Error::CapExceeded {
                        what: "boundary paths",
                        cap: BOUNDARY_GROUPOID_CAP,
                    });
                }
                continue;
            }
            for e in inc {
                let mut q = p.clone();
                q.edges.push(e);
                stack.push(q);
            }
        }
        out.sort();
        Ok(out)
    }

    /// Germs `(x, |x| - |y|, y)` with `σ^k x = σ^l y`. For finite boundary
    /// paths this forces `s(x) = s(y)` and the lag is determined, so the
    /// groupoid is the disjoint union over singular `w` of pair groupoids on
    /// the paths starting at `w`.
    pub fn boundary_path_groupoid_acyclic(&self) -> Result<FiniteGroupoid> {
        let paths = self.boundary_paths()?;
        let mut by_source: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, p) in paths.iter().enumerate() {
            by_source.entry(self.path_source(p)).or_default().push(i);
        }
        let total: usize = by_source.values().map(|v| v.len() * v.len()).sum();
        if total > BOUNDARY_GROUPOID_CAP {
            return Err(Error::CapExceeded {
                what: "boundary-path groupoid arrows",
                cap: BOUNDARY_GROUPOID_CAP,
            });
        }
        let plabel: Vec<String> = paths.iter().map(|p| self.path_label(p)).collect();
        let order: Vec<(usize, usize)> = by_source
            .values()
            .flat_map(|cls| cls.iter().flat_map(move |&x| cls.iter().map(move |&y| (x, y))))
            .collect();
        let pos: BTreeMap<(usize, usize), usize> = order.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut p = GroupoidParts {
            labels: order
                .iter()
                .map(|&(x, y)| format!("({}|{})", plabel[x], plabel[y]))
                .collect(),
            ..Default::default()
        };
        p.range = order.iter().map(|&(x, _)| pos[&(x, x)]).collect();
        p.domain = order.iter().map(|&(_, y)| pos[&(y, y)]).collect();
        p.inverse = order.iter().map(|&(x, y)| pos[&(y, x)]).collect();
        p.units = paths.iter().enumerate().map(|(i, _)| pos[&(i, i)]).collect();
        for cls in by_source.values() {
            for &x in cls {
                for &y in cls {
                    for &z in cls {
                        p.compose.push((pos[&(x, y)], pos[&(y, z)], pos[&(x, z)]));
                    }
                }
            }
        }
        FiniteGroupoid::from_parts(p)
    }
}

/// Fixtures.
pub fn two_loops() -> DirectedGraph {
    DirectedGraph::from_pairs(1, &[(0, 0), (0, 0)]).unwrap()
}

pub fn single_loop() -> DirectedGraph {
    DirectedGraph::from_pairs(1, &[(0, 0)]).unwrap()
}

pub fn single_vertex() -> DirectedGraph {
    DirectedGraph::from_pairs(1, &[]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::validate;

    #[test]
    fn convention_fixture() {
        // a -> b: b receives the edge, a is the singular vertex
        let q = DirectedGraph::from_dot("digraph { a -> b; }").unwrap();
        let a = q.vertex("a").unwrap();
        let b = q.vertex("b").unwrap();
        assert_eq!(q.singular_vertices(), BTreeSet::from([a]));
        assert!(q.below()[a].contains(&b));
        assert!(!q.below()[b].contains(&a));
        let paths = q.boundary_paths().unwrap();
        let labels: Vec<String> = paths.iter().map(|p| q.path_label(p)).collect();
        assert_eq!(labels, vec!["a".to_string(), "e0".to_string()]);
        let g = q.boundary_path_groupoid_acyclic().unwrap();
        assert!(validate(&g).is_ok());
        assert_eq!((g.len(), g.units().len()), (4, 2));
        assert_eq!(q.simplicity_verdict(), GraphVerdict::SimpleAf);
    }

    #[test]
    fn verdicts() {
        assert_eq!(two_loops().simplicity_verdict(), GraphVerdict::SimplePurelyInfinite);
        assert_eq!(single_vertex().simplicity_verdict(), GraphVerdict::SimpleAf);
        let v = single_loop().simplicity_verdict();
        assert_eq!(
            v,
            GraphVerdict::NotSimple {
                reason: NotSimpleReason::EntrylessCycle { edges: vec![0] }
            }
        );
        assert_eq!(single_loop().singular_vertices().len(), 0);
        assert_eq!(single_vertex().singular_vertices().len(), 1);
        let two = DirectedGraph::from_pairs(2, &[]).unwrap();
        assert!(!two.is_cofinal().holds);
        let eight = DirectedGraph::from_pairs(3, &[(0, 1), (1, 0), (0, 2), (2, 0)]).unwrap();
        assert!(eight.every_cycle_has_entry().holds);
        // loop at 0 plus a vertex 1 that sends into the loop: 1 is singular
        // and reaches 0, but the loop does not reach 1
        let q = DirectedGraph::from_pairs(2, &[(0, 0), (1, 0)]).unwrap();
        let c = q.is_cofinal();
        assert!(!c.holds);
        assert!(matches!(c.witness, Some(CofinalityFailure::Cycle { vertex: 1, .. })));
    }

    #[test]
    fn parse_formats() {
        let q = DirectedGraph::from_dot("digraph G {\n  a -> b [label=\"x\"];\n  b -> c -> a;\n  d;\n}").unwrap();
        assert_eq!(q.vertices, vec!["a", "b", "c", "d"]);
        assert_eq!(q.edges[0].name, "x");
        assert_eq!(q.edges.len(), 3);
        let back = DirectedGraph::from_json(&q.to_json()).unwrap();
        assert_eq!(back, q);
        assert!(DirectedGraph::from_dot("graph { a -- b }").is_err());
    }

    #[test]
    fn cyclic_graph_rejected() {
        assert!(matches!(
            two_loops().boundary_path_groupoid_acyclic(),
            Err(Error::Cyclic)
        ));
    }
}
