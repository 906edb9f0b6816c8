//! The moment graph: fixed points joined by one-dimensional torus orbits.
//!
//! Edges come from cut-and-paste moves `f_{i,j,r}`, which cut `r` boxes from
//! the chain ending at `i` and glue them onto the chain ending at `j`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::juggling::{enumerate_length_tuples, LengthTuple};
use crate::params::{Guard, Params};

pub const GRAPH_SCHEMA: &str = "cyclic-quiver/moment-graph/v1";

/// An integer character `Σ c_i ε_i + d δ` of the torus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    pub eps: Vec<i64>,
    pub delta: i64,
}

impl Character {
    /// `ε_j − ε_i + m δ`, vertices 1-based and read mod `n`.
    pub fn edge_label(n: usize, i: i64, j: i64, m: i64) -> Self {
        let mut eps = vec![0; n];
        eps[(j - 1).rem_euclid(n as i64) as usize] += 1;
        eps[(i - 1).rem_euclid(n as i64) as usize] -= 1;
        Self { eps, delta: m }
    }

    /// Moves the coefficient of `ε_i` to `ε_{i+m}`.
    pub fn rotate(&self, m: i64) -> Self {
        let n = self.eps.len() as i64;
        let mut eps = vec![0; self.eps.len()];
        for (slot, &c) in self.eps.iter().enumerate() {
            eps[(slot as i64 + m).rem_euclid(n) as usize] = c;
        }
        Self { eps, delta: self.delta }
    }

    pub fn is_zero(&self) -> bool {
        self.delta == 0 && self.eps.iter().all(|&c| c == 0)
    }
}

impl std::fmt::Display for Character {
    /// Positive `ε` terms first, then negative ones, then `δ`:
    /// `e2-e1+3d`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut terms: Vec<(i64, String)> = Vec::new();
        let positive = self.eps.iter().enumerate().filter(|(_, &c)| c > 0);
        let negative = self.eps.iter().enumerate().filter(|(_, &c)| c < 0);
        for (slot, &c) in positive.chain(negative) {
            terms.push((c, format!("e{}", slot + 1)));
        }
        if self.delta != 0 {
            terms.push((self.delta, "d".to_string()));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (c, var)) in terms.iter().enumerate() {
            let sign = if *c < 0 {
                "-"
            } else if idx > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}{var}")?;
            } else {
                write!(f, "{sign}{mag}{var}")?;
            }
        }
        Ok(())
    }
}

/// Move triple `(i, j, r)` with 1-based vertices in `[1, n]`.
pub type Move = (usize, usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    #[serde(rename = "move")]
    pub mv: Move,
    pub label: Character,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentGraph {
    pub params: Params,
    pub vertices: Vec<LengthTuple>,
    pub edges: Vec<Edge>,
    index: HashMap<LengthTuple, usize>,
}

impl MomentGraph {
    fn from_parts(params: Params, vertices: Vec<LengthTuple>, edges: Vec<Edge>) -> Self {
        let index = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        Self { params, vertices, edges, index }
    }

    pub fn index_of(&self, v: &LengthTuple) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.source == v)
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            deg[e.source] += 1;
        }
        deg
    }

    /// Adjacency lists of targets, in edge order.
    pub fn successors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.source].push(e.target);
        }
        adj
    }

    pub fn find_edge(&self, source: usize, target: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| e.source == source && e.target == target)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph moment_graph {\n");
        for v in &self.vertices {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
                self.vertices[e.source], self.vertices[e.target], e.label
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = GraphDoc {
            schema: GRAPH_SCHEMA.to_string(),
            params: self.params,
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|e| EdgeDoc { edge: e.clone(), text: e.label.to_string() }).collect(),
        };
        serde_json::to_value(doc).expect("graph serializes")
    }

    /// Reads a document written by [`MomentGraph::to_json`], validating
    /// vertices, indices and moves against the stored parameters.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let doc: GraphDoc = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if doc.schema != GRAPH_SCHEMA {
            return Err(Error::Parse(format!("unknown schema {:?}", doc.schema)));
        }
        let p = Params::new(doc.params.k, doc.params.n, doc.params.omega)?;
        for v in &doc.vertices {
            v.validate(&p)?;
        }
        let graph = Self::from_parts(p, doc.vertices, doc.edges.into_iter().map(|e| e.edge).collect());
        for e in &graph.edges {
            let (Some(s), Some(t)) = (graph.vertices.get(e.source), graph.vertices.get(e.target)) else {
                return Err(Error::Parse(format!("edge {e:?} refers to a missing vertex")));
            };
            let (i, j, r) = e.mv;
            if apply_move(s, i as i64, j as i64, r, &p)? != *t {
                return Err(Error::Parse(format!("edge {s} -> {t} does not match its move {:?}", e.mv)));
            }
        }
        Ok(graph)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    schema: String,
    params: Params,
    vertices: Vec<LengthTuple>,
    edges: Vec<EdgeDoc>,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    #[serde(flatten)]
    edge: Edge,
    text: String,
}

/// `f_{i,j,r}`: `ℓ_i ↦ ℓ_i − r`, `ℓ_j ↦ ℓ_j + r`.
///
/// Requires `r ≤ min(ℓ_i, nω − ℓ_j)` and `i − ℓ_i ≡ j − ℓ_j − r (mod n)`.
pub fn apply_move(tuple: &LengthTuple, i: i64, j: i64, r: usize, p: &Params) -> Result<LengthTuple> {
    let fail = |condition: String| Error::InfeasibleMove { i: p.slot(i) + 1, j: p.slot(j) + 1, r, condition };
    let (li, lj) = (tuple.get(i), tuple.get(j));
    if r > li {
        return Err(fail(format!("r = {r} exceeds ℓ_i = {li}")));
    }
    if r > p.size() - lj {
        return Err(fail(format!("r = {r} exceeds nω − ℓ_j = {}", p.size() - lj)));
    }
    if p.slot(i - li as i64) != p.slot(j - lj as i64 - r as i64) {
        return Err(fail("i − ℓ_i ≢ j − ℓ_j − r (mod n)".into()));
    }
    let mut lengths = tuple.as_slice().to_vec();
    lengths[p.slot(i)] -= r;
    lengths[p.slot(j)] += r;
    Ok(LengthTuple::from_vec_unchecked(lengths))
}

/// The moves out of `tuple` that give edges: `i ≠ j`, `r ≥ 1`, feasible, and
/// `ℓ_i > ℓ_j + r`.
pub fn edge_moves(tuple: &LengthTuple, p: &Params) -> Vec<(Move, LengthTuple, Character)> {
    let mut out = Vec::new();
    for i in 1..=p.n as i64 {
        for j in 1..=p.n as i64 {
            if i == j {
                continue;
            }
            let (li, lj) = (tuple.get(i), tuple.get(j));
            for r in 1..=li.min(p.size() - lj) {
                if li <= lj + r || p.slot(i - li as i64) != p.slot(j - lj as i64 - r as i64) {
                    continue;
                }
                let target = apply_move(tuple, i, j, r, p).expect("checked feasible");
                let label = Character::edge_label(p.n, i, j, (li - lj - r) as i64);
                out.push(((i as usize, j as usize, r), target, label));
            }
        }
    }
    out
}

/// `edge_moves(tuple, p).len()` without building the targets.
pub fn out_degree(tuple: &LengthTuple, p: &Params) -> usize {
    let mut count = 0;
    for i in 1..=p.n as i64 {
        for j in (1..=p.n as i64).filter(|&j| j != i) {
            let (li, lj) = (tuple.get(i), tuple.get(j));
            count += (1..=li.min(p.size() - lj))
                .filter(|&r| li > lj + r && p.slot(i - li as i64) == p.slot(j - lj as i64 - r as i64))
                .count();
        }
    }
    count
}

pub fn build_graph(p: &Params, guard: &Guard) -> Result<MomentGraph> {
    guard.check(p)?;
    let vertices = enumerate_length_tuples(p);
    let index: HashMap<&LengthTuple, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let per_vertex: Vec<Vec<Edge>> = vertices
        .par_iter()
        .enumerate()
        .map(|(source, v)| {
            edge_moves(v, p)
                .into_iter()
                .map(|(mv, target, label)| Edge { source, target: index[&target], mv, label })
                .collect()
        })
        .collect();
    let edges = per_vertex.into_iter().flatten().collect();
    drop(index);
    Ok(MomentGraph::from_parts(*p, vertices, edges))
}

/// `m · ℓ` with `ℓ'_j = ℓ_{j−m}`.
pub fn rotate_tuple(m: i64, tuple: &LengthTuple) -> LengthTuple {
    let n = tuple.len() as i64;
    LengthTuple::from_vec_unchecked((1..=n).map(|j| tuple.get(j - m)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RotationReport {
    pub edges_checked: usize,
    pub violations: Vec<String>,
}

impl RotationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every edge `ℓ → f_{i,j,r}(ℓ)` and every `m`, looks for the edge
/// `m·ℓ → f_{i+m,j+m,r}(m·ℓ)` carrying the rotated label.
pub fn check_rotation_equivariance(g: &MomentGraph) -> RotationReport {
    let p = &g.params;
    let by_pair: HashMap<(usize, usize), &Edge> = g.edges.iter().map(|e| ((e.source, e.target), e)).collect();
    let mut violations = Vec::new();
    let mut edges_checked = 0;
    for e in &g.edges {
        for m in 0..p.n as i64 {
            edges_checked += 1;
            let s = rotate_tuple(m, &g.vertices[e.source]);
            let t = rotate_tuple(m, &g.vertices[e.target]);
            let (i, j, r) = e.mv;
            let expected = (p.slot(i as i64 + m) + 1, p.slot(j as i64 + m) + 1, r);
            let found = g.index_of(&s).zip(g.index_of(&t)).and_then(|(si, ti)| by_pair.get(&(si, ti)));
            match found {
                None => violations.push(format!(
                    "{m}·({} -> {}) = {s} -> {t} is not an edge",
                    g.vertices[e.source], g.vertices[e.target]
                )),
                Some(f) if f.mv != expected || f.label != e.label.rotate(m) => violations.push(format!(
                    "{s} -> {t}: move {:?} label {} but rotation of {:?} {} expected",
                    f.mv,
                    f.label,
                    expected,
                    e.label.rotate(m)
                )),
                Some(_) => {}
            }
        }
    }
    RotationReport { edges_checked, violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: usize, n: usize, omega: usize) -> Params {
        Params::new(k, n, omega).unwrap()
    }

    fn t(l: &[usize], params: &Params) -> LengthTuple {
        LengthTuple::new(l.to_vec(), params).unwrap()
    }

    fn labelled_edges(g: &MomentGraph) -> Vec<(String, String, String)> {
        let mut out: Vec<_> = g
            .edges
            .iter()
            .map(|e| (g.vertices[e.source].to_string(), g.vertices[e.target].to_string(), e.label.to_string()))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn out_degree_counts_moves() {
        for params in Params::all_up_to(6) {
            for t in enumerate_length_tuples(&params) {
                assert_eq!(out_degree(&t, &params), edge_moves(&t, &params).len(), "{params} {t}");
            }
        }
    }

    #[test]
    fn moves() {
        let params = p(1, 2, 2);
        assert_eq!(apply_move(&t(&[4, 0], &params), 1, 2, 3, &params).unwrap(), t(&[1, 3], &params));
        assert_eq!(apply_move(&t(&[3, 1], &params), 1, 2, 1, &params).unwrap(), t(&[2, 2], &params));
        assert_eq!(apply_move(&t(&[3, 1], &params), 1, 1, 0, &params).unwrap(), t(&[3, 1], &params));
        assert!(matches!(apply_move(&t(&[4, 0], &params), 1, 2, 2, &params), Err(Error::InfeasibleMove { .. })));
        assert!(apply_move(&t(&[3, 1], &params), 1, 2, 4, &params).is_err());
    }

    #[test]
    fn five_point_graph() {
        let g = build_graph(&p(1, 2, 2), &Guard::default()).unwrap();
        assert_eq!(g.vertices.len(), 5);
        let expected: Vec<(String, String, String)> = [
            ("(0,4)", "(1,3)", "e1-e2+3d"),
            ("(0,4)", "(3,1)", "e1-e2+d"),
            ("(1,3)", "(2,2)", "e1-e2+d"),
            ("(3,1)", "(2,2)", "e2-e1+d"),
            ("(4,0)", "(1,3)", "e2-e1+d"),
            ("(4,0)", "(3,1)", "e2-e1+3d"),
        ]
        .iter()
        .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
        .collect();
        assert_eq!(labelled_edges(&g), expected);
    }

    #[test]
    fn three_point_graph() {
        let g = build_graph(&p(1, 2, 1), &Guard::default()).unwrap();
        let pairs: Vec<_> = labelled_edges(&g).into_iter().map(|(a, b, _)| (a, b)).collect();
        assert_eq!(pairs, vec![("(0,2)".into(), "(1,1)".into()), ("(2,0)".into(), "(1,1)".into())]);
    }

    #[test]
    fn single_vertex() {
        let g = build_graph(&p(3, 3, 2), &Guard::default()).unwrap();
        assert_eq!((g.vertices.len(), g.edges.len()), (1, 0));
        assert_eq!(g.to_dot(), "digraph moment_graph {\n  \"(6,6,6)\";\n}\n");
        assert!(check_rotation_equivariance(&g).passed());
    }

    #[test]
    fn guard_applies() {
        assert!(matches!(build_graph(&p(2, 4, 3), &Guard::default()), Err(Error::TooLarge { size: 12, max: 10 })));
    }

    #[test]
    fn rotation() {
        let params = p(1, 2, 2);
        let x = t(&[4, 0], &params);
        assert_eq!(rotate_tuple(1, &x), t(&[0, 4], &params));
        assert_eq!(rotate_tuple(0, &x), x);
        assert_eq!(rotate_tuple(2, &x), x);
        let y = t(&[3, 2, 1], &p(2, 3, 1));
        assert_eq!(rotate_tuple(1, &y).as_slice(), &[1, 3, 2]);
        for params in [p(1, 2, 2), p(1, 3, 1), p(2, 4, 1), p(2, 3, 2)] {
            let g = build_graph(&params, &Guard::default()).unwrap();
            let report = check_rotation_equivariance(&g);
            assert!(report.passed(), "{params}: {:?}", report.violations);
            assert_eq!(report.edges_checked, g.edges.len() * params.n);
        }
    }

    #[test]
    fn character_text() {
        assert_eq!(Character::edge_label(2, 1, 2, 1).to_string(), "e2-e1+d");
        assert_eq!(Character::edge_label(3, 3, 1, 3).to_string(), "e1-e3+3d");
        assert_eq!(Character { eps: vec![0, 0], delta: 0 }.to_string(), "0");
        assert_eq!(Character { eps: vec![-2, 0], delta: -1 }.to_string(), "-2e1-d");
        assert_eq!(Character::edge_label(3, 1, 2, 1).rotate(1), Character::edge_label(3, 2, 3, 1));
    }

    #[test]
    fn exports() {
        let g = build_graph(&p(1, 2, 2), &Guard::default()).unwrap();
        let dot = g.to_dot();
        assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with("\";")).count(), 5);
        assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 6);
        assert!(dot.contains("\"(4,0)\" -> \"(1,3)\" [label=\"e2-e1+d\"];"));
        let json = g.to_json();
        assert_eq!(json["schema"], GRAPH_SCHEMA);
        assert_eq!(MomentGraph::from_json(&json).unwrap(), g);
        let mut broken = json.clone();
        broken["edges"][0]["target"] = serde_json::json!(0);
        assert!(MomentGraph::from_json(&broken).is_err());
    }
}
