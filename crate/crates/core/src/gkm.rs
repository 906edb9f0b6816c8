//! Equivariant classes on the moment graph: GKM congruences, the shape of
//! Knutson–Tao classes, and the `Z_n` action.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::juggling::{lengths_to_jug, LengthTuple};
use crate::moment_graph::{rotate_tuple, Character, MomentGraph};
use crate::params::Params;
use crate::poly::{congruent_mod_linear, Polynomial};

pub const CLASS_SCHEMA: &str = "cyclic-quiver/gkm-class/v1";

/// One polynomial per fixed point, in `Q[ε_1, …, ε_n, δ]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkmClass {
    pub params: Params,
    pub entries: BTreeMap<LengthTuple, Polynomial>,
}

impl GkmClass {
    pub fn nvars(&self) -> usize {
        self.params.n + 1
    }

    pub fn constant_one(g: &MomentGraph) -> Self {
        let nvars = g.params.n + 1;
        Self { params: g.params, entries: g.vertices.iter().map(|v| (v.clone(), Polynomial::one(nvars))).collect() }
    }

    pub fn get(&self, v: &LengthTuple) -> Option<&Polynomial> {
        self.entries.get(v)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: serde_json::Map<String, serde_json::Value> =
            self.entries.iter().map(|(v, p)| (v.to_string(), json!(p.to_term_strings()))).collect();
        json!({ "schema": CLASS_SCHEMA, "params": self.params, "entries": entries })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(msg.to_string());
        if value["schema"] != CLASS_SCHEMA {
            return Err(bad("missing or unknown schema"));
        }
        let params: Params =
            serde_json::from_value(value["params"].clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let params = Params::new(params.k, params.n, params.omega)?;
        let map = value["entries"].as_object().ok_or_else(|| bad("entries must be an object"))?;
        let mut entries = BTreeMap::new();
        for (key, terms) in map {
            let v = LengthTuple::parse(key, &params)?;
            let terms: Vec<(Vec<u32>, String)> =
                serde_json::from_value(terms.clone()).map_err(|e| Error::Parse(e.to_string()))?;
            entries.insert(v, Polynomial::from_term_strings(params.n + 1, &terms)?);
        }
        Ok(Self { params, entries })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl ClassReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn entries_for<'a>(c: &'a GkmClass, g: &MomentGraph) -> Result<Vec<&'a Polynomial>> {
    if c.params != g.params {
        return Err(Error::DimensionMismatch(format!("class over {} but graph over {}", c.params, g.params)));
    }
    let missing: Vec<String> =
        g.vertices.iter().filter(|v| !c.entries.contains_key(v)).map(|v| v.to_string()).collect();
    if !missing.is_empty() {
        return Err(Error::PartialClass(format!("no entry at {}", missing.join(", "))));
    }
    Ok(g.vertices.iter().map(|v| &c.entries[v]).collect())
}

/// `z_u ≡ z_v (mod α)` along every edge `u → v` with label `α`.
pub fn check_gkm_class(c: &GkmClass, g: &MomentGraph) -> Result<ClassReport> {
    let z = entries_for(c, g)?;
    let mut report = ClassReport::default();
    for e in &g.edges {
        report.checked += 1;
        if !congruent_mod_linear(z[e.source], z[e.target], &e.label)? {
            report.violations.push(format!(
                "edge {} -> {} ({}): {} and {} differ by a non-multiple",
                g.vertices[e.source], g.vertices[e.target], e.label, z[e.source], z[e.target]
            ));
        }
    }
    Ok(report)
}

/// Vertices `u` from which `v` is reachable, `v` included.
pub fn up_set(g: &MomentGraph, v: usize) -> Vec<bool> {
    let mut preds = vec![Vec::new(); g.vertices.len()];
    for e in &g.edges {
        preds[e.target].push(e.source);
    }
    let mut seen = vec![false; g.vertices.len()];
    let mut queue = VecDeque::from([v]);
    seen[v] = true;
    while let Some(u) = queue.pop_front() {
        for &w in &preds[u] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

/// Support inside the up-set of `v`, value at `v` equal to the product of
/// the labels on edges out of `v`, and every nonzero entry homogeneous of
/// degree equal to the out-degree of `v`.
pub fn kt_shape_check(c: &GkmClass, v: &LengthTuple, g: &MomentGraph) -> Result<ClassReport> {
    let z = entries_for(c, g)?;
    let vi = g.index_of(v).ok_or_else(|| Error::InvalidTuple(format!("{v} is not a vertex")))?;
    let up = up_set(g, vi);
    let mut report = ClassReport::default();
    let mut degree = 0;
    let mut product = Polynomial::one(c.nvars());
    for e in g.out_edges(vi) {
        product = &product * &Polynomial::from_character(&e.label);
        degree += 1;
    }
    report.checked += 1;
    if *z[vi] != product {
        report.violations.push(format!("entry at {v} is {} but the out-edge labels multiply to {product}", z[vi]));
    }
    for (u, poly) in z.iter().enumerate() {
        report.checked += 1;
        if poly.is_zero() {
            continue;
        }
        if !up[u] {
            report.violations.push(format!("nonzero entry at {} outside the up-set of {v}", g.vertices[u]));
        }
        if poly.homogeneous_degree() != Some(degree) {
            report.violations.push(format!("entry at {} is not homogeneous of degree {degree}: {poly}", g.vertices[u]));
        }
    }
    Ok(report)
}

/// `(m·z)_ℓ = m(z_{m·ℓ})`, where `m` sends `ε_i ↦ ε_{i−m}` and fixes `δ`.
pub fn zn_act_class(m: i64, c: &GkmClass) -> GkmClass {
    let n = c.params.n;
    let mut perm: Vec<usize> = (0..n).map(|i| (i as i64 - m).rem_euclid(n as i64) as usize).collect();
    perm.push(n);
    let entries = c
        .entries
        .keys()
        .map(|l| {
            let source = c.entries.get(&rotate_tuple(m, l)).map(|p| p.permute_vars(&perm));
            (l.clone(), source.unwrap_or_else(|| Polynomial::zero(n + 1)))
        })
        .collect();
    GkmClass { params: c.params, entries }
}

/// `Σ_{x ∈ J_i} ((x − 1) δ + ε_{i−x})` at every fixed point: the torus
/// character of the tautological space at vertex `i`.
pub fn tautological_class(i: i64, g: &MomentGraph) -> GkmClass {
    let p = &g.params;
    let entries = g
        .vertices
        .iter()
        .map(|v| {
            let jug = lengths_to_jug(v, p);
            let mut eps = vec![0; p.n];
            let mut delta = 0;
            for &x in jug.set(i) {
                eps[p.slot(i - x as i64)] += 1;
                delta += x as i64 - 1;
            }
            (v.clone(), Polynomial::from_character(&Character { eps, delta }))
        })
        .collect();
    GkmClass { params: *p, entries }
}

/// The five Knutson–Tao classes of the `(1,2,2)` graph, keyed by their
/// normalizing vertex. With `α = ε_1 − ε_2`:
///
/// | class | (0,4) | (1,3) | (2,2) | (3,1) | (4,0) |
/// |---|---|---|---|---|---|
/// | ξ(2,2) | 1 | 1 | 1 | 1 | 1 |
/// | ξ(1,3) | α+δ | α+δ | 0 | 0 | −α+3δ |
/// | ξ(3,1) | α+3δ | 0 | 0 | −α+δ | −α+δ |
/// | ξ(0,4) | (α+δ)(α+3δ) | 0 | 0 | 0 | 0 |
/// | ξ(4,0) | 0 | 0 | 0 | 0 | (−α+δ)(−α+3δ) |
pub fn five_point_kt_classes() -> Vec<(LengthTuple, GkmClass)> {
    let p = Params::new(1, 2, 2).expect("valid");
    let t = |a: usize, b: usize| LengthTuple::new(vec![a, b], &p).expect("valid tuple");
    let lin = |a: i64, d: i64| Polynomial::from_character(&Character { eps: vec![a, -a], delta: d });
    let zero = Polynomial::zero(3);
    let one = Polynomial::one(3);
    let keys = [t(0, 4), t(1, 3), t(2, 2), t(3, 1), t(4, 0)];
    let class = |values: [Polynomial; 5]| GkmClass { params: p, entries: keys.iter().cloned().zip(values).collect() };
    vec![
        (t(2, 2), class([one.clone(), one.clone(), one.clone(), one.clone(), one])),
        (t(1, 3), class([lin(1, 1), lin(1, 1), zero.clone(), zero.clone(), lin(-1, 3)])),
        (t(3, 1), class([lin(1, 3), zero.clone(), zero.clone(), lin(-1, 1), lin(-1, 1)])),
        (t(0, 4), class([&lin(1, 1) * &lin(1, 3), zero.clone(), zero.clone(), zero.clone(), zero.clone()])),
        (t(4, 0), class([zero.clone(), zero.clone(), zero.clone(), zero, &lin(-1, 1) * &lin(-1, 3)])),
    ]
}

/// A class with a single entry replaced, for negative tests.
pub fn with_entry(c: &GkmClass, v: &LengthTuple, value: Polynomial) -> GkmClass {
    let mut out = c.clone();
    out.entries.insert(v.clone(), value);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moment_graph::build_graph;
    use crate::params::Guard;

    fn graph(k: usize, n: usize, omega: usize) -> MomentGraph {
        build_graph(&Params::new(k, n, omega).unwrap(), &Guard::default()).unwrap()
    }

    fn class_of(v: &[usize]) -> GkmClass {
        let p = Params::new(1, 2, 2).unwrap();
        let key = LengthTuple::new(v.to_vec(), &p).unwrap();
        five_point_kt_classes().into_iter().find(|(k, _)| *k == key).unwrap().1
    }

    #[test]
    fn example_classes_pass() {
        let g = graph(1, 2, 2);
        for (v, c) in five_point_kt_classes() {
            let r = check_gkm_class(&c, &g).unwrap();
            assert!(r.passed(), "{v}: {:?}", r.violations);
            assert_eq!(r.checked, 6);
            let r = kt_shape_check(&c, &v, &g).unwrap();
            assert!(r.passed(), "{v}: {:?}", r.violations);
        }
    }

    #[test]
    fn corrupted_entry_fails_on_edge() {
        let g = graph(1, 2, 2);
        let p = g.params;
        let top = LengthTuple::new(vec![0, 4], &p).unwrap();
        let bad_value = Polynomial::from_character(&Character { eps: vec![1, -1], delta: 1 });
        let bad = with_entry(&class_of(&[3, 1]), &top, bad_value);
        let r = check_gkm_class(&bad, &g).unwrap();
        assert!(r.violations.iter().any(|v| v.starts_with("edge (0,4) -> (3,1)")), "{:?}", r.violations);
        assert!(r.violations.iter().all(|v| v.starts_with("edge (0,4)")));
    }

    #[test]
    fn shape_failures() {
        let g = graph(1, 2, 2);
        let p = g.params;
        let v = LengthTuple::new(vec![3, 1], &p).unwrap();
        // right congruences, wrong normalization
        let r = kt_shape_check(&class_of(&[1, 3]), &v, &g).unwrap();
        assert!(!r.passed());
        let partial = GkmClass { params: p, entries: BTreeMap::new() };
        assert!(matches!(check_gkm_class(&partial, &g), Err(Error::PartialClass(_))));
    }

    #[test]
    fn rotation_of_classes() {
        let swaps = [([3, 1], [1, 3]), ([4, 0], [0, 4]), ([2, 2], [2, 2]), ([1, 3], [3, 1])];
        for (a, b) in swaps {
            assert_eq!(zn_act_class(1, &class_of(&a)), class_of(&b), "{a:?}");
        }
        let c = class_of(&[3, 1]);
        assert_eq!(zn_act_class(0, &c), c);
        assert_eq!(zn_act_class(1, &zn_act_class(1, &c)), c);
    }

    #[test]
    fn tautological_classes_are_gkm() {
        for g in [graph(1, 2, 2), graph(1, 3, 1), graph(2, 4, 1), graph(1, 3, 2)] {
            for i in 1..=g.params.n as i64 {
                let c = tautological_class(i, &g);
                let r = check_gkm_class(&c, &g).unwrap();
                assert!(r.passed(), "{} vertex {i}: {:?}", g.params, r.violations);
                for m in 0..g.params.n as i64 {
                    assert!(check_gkm_class(&zn_act_class(m, &c), &g).unwrap().passed());
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let c = class_of(&[0, 4]);
        let doc = c.to_json();
        assert_eq!(doc["schema"], CLASS_SCHEMA);
        assert_eq!(GkmClass::from_json(&doc).unwrap(), c);
        let mut broken = doc.clone();
        broken["entries"]["(0,4)"] = json!([[[1, 0], "1"]]);
        assert!(GkmClass::from_json(&broken).is_err());
    }
}
