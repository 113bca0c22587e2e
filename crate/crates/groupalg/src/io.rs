//! JSON fixture formats.
//!
//! Every structure is referenced by labels. Scalars are `[re, im]` pairs.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::coarse::{Block, CoarseSpace, ControlledMatrix, Entourage};
use crate::error::{Error, Result};
use crate::graph::DirectedGraph;
use crate::group::FiniteGroup;
use crate::groupoid::{FiniteGroupoid, GroupoidParts};
use crate::paction::{ActionCocycle, PartialAction};
use crate::scalar::{Field, Scalar};
use crate::selfsim::SelfSimilarAction;
use crate::semigroup::FiniteInverseSemigroup;
use crate::twisted::{ConvElement, TwoCocycle};

fn position(labels: &[String], l: &str) -> Result<usize> {
    labels
        .iter()
        .position(|x| x == l)
        .ok_or_else(|| Error::UnknownLabel(l.to_string()))
}

fn label_index(labels: &[String]) -> Result<HashMap<&str, usize>> {
    let mut m = HashMap::new();
    for (i, l) in labels.iter().enumerate() {
        if m.insert(l.as_str(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(m)
}

fn lookup(m: &HashMap<&str, usize>, l: &str) -> Result<usize> {
    m.get(l).copied().ok_or_else(|| Error::UnknownLabel(l.to_string()))
}

fn scalar_from<S: Scalar>(re: &Value, im: &Value) -> Result<S> {
    let f = |v: &Value| {
        v.as_f64()
            .ok_or_else(|| Error::Parse(format!("expected a number, got {}", v)))
    };
    Ok(S::from_f64_pair(f(re)?, f(im)?))
}

fn scalar_pair<S: Scalar>(v: &S) -> [f64; 2] {
    let c = v.to_c64();
    [c.re, c.im]
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupoidJson {
    pub arrows: Vec<String>,
    pub units: Vec<String>,
    pub r: BTreeMap<String, String>,
    pub d: BTreeMap<String, String>,
    pub compose: Vec<[String; 3]>,
    pub inverse: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<String>>>,
}

pub fn groupoid_from_json(text: &str) -> Result<FiniteGroupoid> {
    let j: GroupoidJson = serde_json::from_str(text)?;
    groupoid_from_value(&j)
}

pub fn groupoid_from_value(j: &GroupoidJson) -> Result<FiniteGroupoid> {
    let ix = label_index(&j.arrows)?;
    let map = |m: &BTreeMap<String, String>, what: &str| -> Result<Vec<usize>> {
        j.arrows
            .iter()
            .map(|a| {
                let v = m
                    .get(a)
                    .ok_or_else(|| Error::Parse(format!("missing {} for arrow `{}`", what, a)))?;
                lookup(&ix, v)
            })
            .collect()
    };
    let p = GroupoidParts {
        labels: j.arrows.clone(),
        units: j.units.iter().map(|u| lookup(&ix, u)).collect::<Result<_>>()?,
        range: map(&j.r, "r")?,
        domain: map(&j.d, "d")?,
        inverse: map(&j.inverse, "inverse")?,
        compose: j
            .compose
            .iter()
            .map(|[a, b, c]| Ok((lookup(&ix, a)?, lookup(&ix, b)?, lookup(&ix, c)?)))
            .collect::<Result<_>>()?,
        basis: j
            .basis
            .as_ref()
            .map(|b| {
                b.iter()
                    .map(|s| s.iter().map(|a| lookup(&ix, a)).collect::<Result<Vec<_>>>())
                    .collect()
            })
            .transpose()?,
    };
    FiniteGroupoid::from_parts(p)
}

pub fn groupoid_to_value(g: &FiniteGroupoid) -> GroupoidJson {
    let p = g.to_parts();
    let l = |i: usize| p.labels[i].clone();
    let m = |v: &[usize]| (0..p.labels.len()).map(|a| (l(a), l(v[a]))).collect();
    GroupoidJson {
        arrows: p.labels.clone(),
        units: p.units.iter().map(|&u| l(u)).collect(),
        r: m(&p.range),
        d: m(&p.domain),
        compose: p.compose.iter().map(|&(a, b, c)| [l(a), l(b), l(c)]).collect(),
        inverse: m(&p.inverse),
        basis: p
            .basis
            .as_ref()
            .map(|b| b.iter().map(|s| s.iter().map(|&a| l(a)).collect()).collect()),
    }
}

pub fn groupoid_to_json(g: &FiniteGroupoid) -> String {
    serde_json::to_string_pretty(&groupoid_to_value(g)).expect("groupoid json")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CocycleJson {
    #[serde(default)]
    field: Option<Field>,
    values: Vec<(String, String, Value, Value)>,
}

/// `{ "values": [[a, b, re, im]], "field"?: "complex" | "real" }`.
pub fn cocycle_from_json<S: Scalar>(g: &FiniteGroupoid, text: &str) -> Result<TwoCocycle<S>> {
    let j: CocycleJson = serde_json::from_str(text)?;
    let mut entries = Vec::new();
    for (a, b, re, im) in &j.values {
        let (a, b) = (g.id_or_err(a)?, g.id_or_err(b)?);
        if g.mul(a, b).is_none() {
            return Err(Error::Invalid(format!(
                "({}, {}) is not composable",
                g.label(a),
                g.label(b)
            )));
        }
        entries.push(((a, b), scalar_from::<S>(re, im)?));
    }
    TwoCocycle::from_values(j.field.unwrap_or(Field::Complex), entries)
}

pub fn cocycle_to_json<S: Scalar>(g: &FiniteGroupoid, s: &TwoCocycle<S>) -> String {
    let j = CocycleJson {
        field: Some(s.field()),
        values: s
            .entries()
            .iter()
            .map(|((a, b), v)| {
                let [re, im] = scalar_pair(v);
                (g.label(*a).to_string(), g.label(*b).to_string(), re.into(), im.into())
            })
            .collect(),
    };
    serde_json::to_string_pretty(&j).expect("cocycle json")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ElementJson {
    #[serde(default)]
    groupoid: Option<Value>,
    coeffs: BTreeMap<String, (Value, Value)>,
}

/// `{ "groupoid"?: ref, "coeffs": {arrow: [re, im]} }`; missing arrows are 0.
/// A reference is ignored here; callers resolve it.
pub fn element_from_json<S: Scalar>(g: &FiniteGroupoid, text: &str) -> Result<ConvElement<S>> {
    let j: ElementJson = serde_json::from_str(text)?;
    let mut c = vec![S::zero(); g.len()];
    for (a, (re, im)) in &j.coeffs {
        c[g.id_or_err(a)?] = scalar_from(re, im)?;
    }
    ConvElement::new(g, c)
}

pub fn element_reference(text: &str) -> Result<Option<String>> {
    let j: ElementJson = serde_json::from_str(text)?;
    Ok(j.groupoid.and_then(|v| v.as_str().map(String::from)))
}

pub fn element_to_json<S: Scalar>(g: &FiniteGroupoid, f: &ConvElement<S>) -> String {
    let coeffs = (0..g.len())
        .filter(|&a| !f.get(a).is_zero())
        .map(|a| {
            let [re, im] = scalar_pair(f.get(a));
            (g.label(a).to_string(), (re.into(), im.into()))
        })
        .collect();
    serde_json::to_string_pretty(&ElementJson { groupoid: None, coeffs }).expect("element json")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SemigroupJson {
    elements: Vec<String>,
    zero: String,
    table: Vec<Vec<String>>,
}

pub fn semigroup_from_json(text: &str) -> Result<FiniteInverseSemigroup> {
    let j: SemigroupJson = serde_json::from_str(text)?;
    let ix = label_index(&j.elements)?;
    let table = j
        .table
        .iter()
        .map(|r| r.iter().map(|x| lookup(&ix, x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    FiniteInverseSemigroup::new(j.elements.clone(), table, lookup(&ix, &j.zero)?)
}

pub fn semigroup_to_json(s: &FiniteInverseSemigroup) -> String {
    let l = |i: usize| s.label(i).to_string();
    let j = SemigroupJson {
        elements: s.labels().to_vec(),
        zero: l(s.zero()),
        table: s.table().iter().map(|r| r.iter().map(|&x| l(x)).collect()).collect(),
    };
    serde_json::to_string_pretty(&j).expect("semigroup json")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum GroupJson {
    Named {
        elements: Vec<String>,
        table: Vec<Vec<String>>,
    },
    /// Cayley table whose first row is the identity row.
    Bare(Vec<Vec<String>>),
}

fn group_from(j: &GroupJson) -> Result<FiniteGroup> {
    let (elements, table) = match j {
        GroupJson::Named { elements, table } => (elements.clone(), table),
        GroupJson::Bare(t) => (t.first().cloned().unwrap_or_default(), t),
    };
    let ix = label_index(&elements)?;
    let t = table
        .iter()
        .map(|r| r.iter().map(|x| lookup(&ix, x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::from_table(elements, t)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PactionJson {
    group: GroupJson,
    space: Vec<String>,
    theta: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    u: Option<Vec<(String, String, String, Value, Value)>>,
}

/// `{ "group", "space", "theta": {t: {x: θ_t(x)}}, "u"?: [[s, t, y, re, im]] }`.
/// A missing `θ_1` is the identity; other missing `θ_t` are empty.
pub fn paction_from_json<S: Scalar>(text: &str) -> Result<(PartialAction, Option<ActionCocycle<S>>)> {
    let j: PactionJson = serde_json::from_str(text)?;
    let g = group_from(&j.group)?;
    let sx = label_index(&j.space)?;
    let mut theta = vec![BTreeMap::new(); g.order()];
    theta[g.identity] = (0..j.space.len()).map(|x| (x, x)).collect();
    for (t, m) in &j.theta {
        let t = position(&g.labels, t)?;
        theta[t] = m
            .iter()
            .map(|(x, y)| Ok((lookup(&sx, x)?, lookup(&sx, y)?)))
            .collect::<Result<_>>()?;
    }
    let a = PartialAction::new(g, j.space.clone(), theta)?;
    let u = match &j.u {
        None => None,
        Some(vals) => {
            let mut u = ActionCocycle::trivial();
            for (s, t, y, re, im) in vals {
                u.set(
                    position(&a.group.labels, s)?,
                    position(&a.group.labels, t)?,
                    lookup(&sx, y)?,
                    scalar_from(re, im)?,
                );
            }
            Some(u)
        }
    };
    Ok((a, u))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SelfSimJson {
    graph: Value,
    states: Vec<String>,
    #[serde(default)]
    identity: Option<String>,
    #[serde(default)]
    sigma: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    restrict: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    product: Vec<[String; 3]>,
}

/// `{ "graph": graph JSON or DOT string, "states", "identity"?, "sigma": {g: {letter: letter}},
/// "restrict": {g: {edge: state}}, "product": [[g, h, gh]] }`.
///
/// Letters in `sigma` are edge or vertex names; unlisted letters are fixed,
/// and a vertex image defaults to the one forced by the edge images.
/// Unlisted restrictions are the identity state, which is `identity`, else
/// the state named `1`.
pub fn selfsim_from_json(text: &str) -> Result<SelfSimilarAction> {
    let j: SelfSimJson = serde_json::from_str(text)?;
    let graph = match &j.graph {
        Value::String(dot) => DirectedGraph::from_dot(dot)?,
        v => DirectedGraph::from_json(&v.to_string())?,
    };
    let st = label_index(&j.states)?;
    let id_label = j.identity.clone().unwrap_or_else(|| "1".to_string());
    let identity = lookup(&st, &id_label)?;
    let k = j.states.len();
    let (nv, ne) = (graph.vertices.len(), graph.edges.len());
    let vx = label_index(&graph.vertices)?;
    let ex: HashMap<&str, usize> = graph
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| (e.name.as_str(), i))
        .collect();
    let mut vertex_map = vec![(0..nv).collect::<Vec<_>>(); k];
    let mut edge_map = vec![(0..ne).collect::<Vec<_>>(); k];
    let mut restrict = vec![vec![identity; ne]; k];
    for (g, m) in &j.sigma {
        let g = lookup(&st, g)?;
        let mut given_v = BTreeSet::new();
        for (a, b) in m {
            if let (Some(&x), Some(&y)) = (ex.get(a.as_str()), ex.get(b.as_str())) {
                edge_map[g][x] = y;
            } else if let (Some(&x), Some(&y)) = (vx.get(a.as_str()), vx.get(b.as_str())) {
                vertex_map[g][x] = y;
                given_v.insert(x);
            } else {
                return Err(Error::UnknownLabel(format!("{} -> {}", a, b)));
            }
        }
        for (e, edge) in graph.edges.iter().enumerate() {
            let img = &graph.edges[edge_map[g][e]];
            for (v, w) in [(edge.range, img.range), (edge.source, img.source)] {
                if !given_v.contains(&v) {
                    vertex_map[g][v] = w;
                }
            }
        }
    }
    for (g, m) in &j.restrict {
        let g = lookup(&st, g)?;
        for (e, h) in m {
            let e = *ex.get(e.as_str()).ok_or_else(|| Error::UnknownLabel(e.clone()))?;
            restrict[g][e] = lookup(&st, h)?;
        }
    }
    let mut product = BTreeMap::new();
    for [a, b, c] in &j.product {
        product.insert((lookup(&st, a)?, lookup(&st, b)?), lookup(&st, c)?);
    }
    SelfSimilarAction::new(
        graph,
        j.states.clone(),
        identity,
        vertex_map,
        edge_map,
        restrict,
        product,
    )
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CoarseJson {
    points: Vec<String>,
    generators: Vec<Vec<(Value, Value)>>,
    #[serde(default = "one")]
    blockdim: usize,
    #[serde(default)]
    matrix: Option<BTreeMap<String, Vec<Vec<(Value, Value)>>>>,
}

fn one() -> usize {
    1
}

/// A coarse space file, optionally with a controlled matrix under `matrix`:
/// `{ "x,y": k×k block of [re, im] }`.
pub struct CoarseFile<S> {
    pub space: CoarseSpace,
    pub blockdim: usize,
    pub matrix: Option<ControlledMatrix<S>>,
}

/// `{ "points", "generators": [[[x, y], ...]], "blockdim": k }`. Points are
/// labels or indices.
pub fn coarse_from_json<S: Scalar>(text: &str) -> Result<CoarseFile<S>> {
    let j: CoarseJson = serde_json::from_str(text)?;
    let px = label_index(&j.points)?;
    let pt = |v: &Value| -> Result<usize> {
        match v {
            Value::String(s) => lookup(&px, s),
            Value::Number(n) => n
                .as_u64()
                .map(|n| n as usize)
                .filter(|&n| n < j.points.len())
                .ok_or_else(|| Error::Parse(format!("bad point index {}", n))),
            _ => Err(Error::Parse(format!("bad point {}", v))),
        }
    };
    let gens = j
        .generators
        .iter()
        .map(|g| {
            g.iter()
                .map(|(x, y)| Ok((pt(x)?, pt(y)?)))
                .collect::<Result<Entourage>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let space = CoarseSpace::new(j.points.clone(), gens)?;
    let matrix = match &j.matrix {
        None => None,
        Some(m) => {
            let mut blocks = Vec::new();
            for (key, b) in m {
                let (x, y) = key
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("matrix key `{}` is not `x,y`", key)))?;
                let (x, y) = (lookup(&px, x.trim())?, lookup(&px, y.trim())?);
                let b: Block<S> = b
                    .iter()
                    .map(|r| r.iter().map(|(re, im)| scalar_from(re, im)).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?;
                blocks.push(((x, y), b));
            }
            let t = ControlledMatrix::new(space.len(), j.blockdim, blocks)?;
            t.check(&space)?;
            Some(t)
        }
    };
    Ok(CoarseFile {
        space,
        blockdim: j.blockdim,
        matrix,
    })
}

pub fn coarse_to_json(cs: &CoarseSpace, blockdim: usize) -> String {
    let j = CoarseJson {
        points: cs.points.clone(),
        generators: cs
            .generators
            .iter()
            .map(|g| {
                g.iter()
                    .map(|&(x, y)| (cs.points[x].clone().into(), cs.points[y].clone().into()))
                    .collect()
            })
            .collect(),
        blockdim,
        matrix: None,
    };
    serde_json::to_string_pretty(&j).expect("coarse json")
}
