//! The three partial orders on fixed points and their comparison.
//!
//! Patterns are compared entrywise, tuples by reachability in the moment
//! graph, and bounded affine permutations by Bruhat order, computed as
//! downward closure under covers `g = f · t_{a,b}`.

use std::collections::{BTreeSet, HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::juggling::{enumerate_length_tuples, lengths_to_jug, JugglingPattern, LengthTuple};
use crate::moment_graph::{build_graph, MomentGraph};
use crate::params::{Guard, Params};
use crate::perm::{lengths_to_perm, perm_length, AffinePermutation, BoundedAffinePermutation};

/// `a ≤ b`: for every vertex `i` and rank `r`, the `r`-th smallest element of
/// `b_i` is at most the `r`-th smallest element of `a_i`.
pub fn jug_leq(a: &JugglingPattern, b: &JugglingPattern) -> Result<bool> {
    let shape = |j: &JugglingPattern| j.sets().iter().map(Vec::len).collect::<Vec<_>>();
    if shape(a) != shape(b) {
        return Err(Error::DimensionMismatch(format!("patterns {a} and {b} have different shapes")));
    }
    Ok(a.sets().iter().zip(b.sets()).all(|(x, y)| x.iter().zip(y).all(|(u, v)| v <= u)))
}

/// All `f · t_{a,b}` with `a ∈ [1, n]`, `a < b ≤ a + max_gap`, `f(a) > f(b)`
/// whose length is exactly one less than that of `f`.
///
/// A cover needs no `a < c < b` with `f(b) < f(c) < f(a)`. When `b − a < n`
/// the translates of the swapped pair do not overlap and that condition
/// suffices; wider swaps are confirmed by computing the length.
pub fn affine_covers_below(f: &AffinePermutation, max_gap: i64) -> Vec<AffinePermutation> {
    let n = f.n() as i64;
    let Some(target) = perm_length(f).checked_sub(1) else { return Vec::new() };
    let mut out = Vec::new();
    for a in 1..=n {
        let fa = f.eval(a);
        // largest f(c) < f(a) seen so far with a < c < b
        let mut ceiling = i64::MIN;
        for b in a + 1..=a + max_gap {
            let fb = f.eval(b);
            if fb >= fa {
                continue;
            }
            if fb > ceiling {
                let g = f.swap_positions(a, b);
                if b - a < n || perm_length(&g) == target {
                    out.push(g);
                }
            }
            ceiling = ceiling.max(fb);
        }
    }
    out.sort();
    out
}

/// `max_i (f(i) − i) − min_i (f(i) − i)`. Every inversion `(a, b)` of `f`
/// has `b − a` below this.
pub fn displacement_spread(f: &AffinePermutation) -> i64 {
    let d: Vec<i64> = f.window().iter().enumerate().map(|(i, &v)| v - i as i64 - 1).collect();
    d.iter().max().unwrap() - d.iter().min().unwrap()
}

/// Bruhat covers of a bounded permutation, swept over `b − a ≤ nω + n`.
/// Fails with [`Error::Unbounded`] if a cover leaves `B_{k,n,ω}`.
pub fn bruhat_covers_below(f: &BoundedAffinePermutation) -> Result<Vec<BoundedAffinePermutation>> {
    let p = f.params();
    affine_covers_below(f.perm(), (p.size() + p.n) as i64)
        .into_iter()
        .map(|g| BoundedAffinePermutation::new(g, p))
        .collect()
}

/// Downward closure of `{f}` under covers.
pub fn bruhat_lower_interval(f: &AffinePermutation) -> BTreeSet<AffinePermutation> {
    bruhat_lower_union(std::slice::from_ref(f)).into_iter().collect()
}

/// Union of the lower intervals of `gens`, built as one closure.
pub fn bruhat_lower_union(gens: &[AffinePermutation]) -> HashSet<AffinePermutation> {
    let mut seen: HashSet<AffinePermutation> = gens.iter().cloned().collect();
    let mut stack: Vec<AffinePermutation> = seen.iter().cloned().collect();
    while let Some(g) = stack.pop() {
        let gap = displacement_spread(&g);
        for h in affine_covers_below(&g, gap) {
            if !seen.contains(&h) {
                seen.insert(h.clone());
                stack.push(h);
            }
        }
    }
    seen
}

/// Coefficients of `Σ_{f ∈ B_{k,n,ω}} q^{l(f)}`, constant term first.
pub fn poincare_polynomial(p: &Params, guard: &Guard) -> Result<Vec<u64>> {
    guard.check(p)?;
    let mut coeffs = vec![0u64; p.dimension() + 1];
    for t in enumerate_length_tuples(p) {
        let l = perm_length(lengths_to_perm(&t, p).perm()) as usize;
        if l >= coeffs.len() {
            coeffs.resize(l + 1, 0);
        }
        coeffs[l] += 1;
    }
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// `"1 + 2q + 2q^2"`.
pub fn format_polynomial(coeffs: &[u64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(d, &c)| match (d, c) {
            (0, c) => c.to_string(),
            (1, 1) => "q".into(),
            (1, c) => format!("{c}q"),
            (d, 1) => format!("q^{d}"),
            (d, c) => format!("{c}q^{d}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    pub params: Params,
    pub vertices: usize,
    pub graph_edges: usize,
    pub bruhat_covers: usize,
    /// Number of pairs `(a, b)` with `a ≤ b`, reflexive pairs included.
    pub relation_size: u64,
    /// First disagreement as `(description, lower, upper)`.
    pub violation: Option<(String, LengthTuple, LengthTuple)>,
}

impl OrderReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Down-sets of a relation stored against a length-sorted vertex order: the
/// row of the vertex at position `q` only holds positions `0..=q`.
struct DownSets {
    rows: Vec<FixedBitSet>,
}

impl DownSets {
    /// Reflexive-transitive closure of `covers`, where every listed cover of
    /// the vertex at position `q` sits at a position below `q`.
    fn closure(covers: &[Vec<usize>]) -> Self {
        let mut rows: Vec<FixedBitSet> = Vec::with_capacity(covers.len());
        for (q, below) in covers.iter().enumerate() {
            let mut row = FixedBitSet::with_capacity(q + 1);
            row.insert(q);
            for &c in below {
                assert!(c < q, "cover does not lower the length");
                row.union_with(&rows[c]);
            }
            rows.push(row);
        }
        Self { rows }
    }
}

/// Computes the three relations on `C(k,n,ω)`, transported to length tuples,
/// and checks that they are equal.
pub fn verify_order_equivalence(p: &Params, guard: &Guard) -> Result<OrderReport> {
    let graph = build_graph(p, guard)?;
    verify_order_equivalence_on(&graph)
}

pub fn verify_order_equivalence_on(graph: &MomentGraph) -> Result<OrderReport> {
    let p = &graph.params;
    let perms: Vec<BoundedAffinePermutation> = graph.vertices.iter().map(|t| lengths_to_perm(t, p)).collect();
    let lengths: Vec<u64> = perms.iter().map(|f| perm_length(f.perm())).collect();

    // positions sorted by (length, enumeration index)
    let mut order: Vec<usize> = (0..graph.vertices.len()).collect();
    order.sort_by_key(|&v| (lengths[v], v));
    let mut pos = vec![0; order.len()];
    for (q, &v) in order.iter().enumerate() {
        pos[v] = q;
    }

    let mut report = OrderReport {
        params: *p,
        vertices: graph.vertices.len(),
        graph_edges: graph.edges.len(),
        bruhat_covers: 0,
        relation_size: 0,
        violation: None,
    };

    let jug = JugRelation::new(&graph.vertices, p);
    let reachable = {
        let mut covers = vec![Vec::new(); order.len()];
        for e in &graph.edges {
            if lengths[e.target] >= lengths[e.source] {
                report.violation = Some((
                    "moment-graph edge does not lower the length".into(),
                    graph.vertices[e.target].clone(),
                    graph.vertices[e.source].clone(),
                ));
                return Ok(report);
            }
            covers[pos[e.source]].push(pos[e.target]);
        }
        DownSets::closure(&covers)
    };
    if let Some(v) = compare(&jug, &reachable, &order, &pos, "moment-graph reachability", graph) {
        report.violation = Some(v);
        return Ok(report);
    }
    report.relation_size = reachable.rows.iter().map(|r| r.count_ones(..) as u64).sum();
    drop(reachable);

    let perm_index: HashMap<&AffinePermutation, usize> = perms.iter().enumerate().map(|(i, f)| (f.perm(), i)).collect();
    let mut covers = vec![Vec::new(); order.len()];
    for (v, f) in perms.iter().enumerate() {
        let below = match bruhat_covers_below(f) {
            Ok(below) => below,
            Err(e) => {
                report.violation =
                    Some((format!("cover leaves B: {e}"), graph.vertices[v].clone(), graph.vertices[v].clone()));
                return Ok(report);
            }
        };
        report.bruhat_covers += below.len();
        for g in below {
            let u = perm_index[g.perm()];
            covers[pos[v]].push(pos[u]);
        }
    }
    let bruhat = DownSets::closure(&covers);
    if let Some(v) = compare(&jug, &bruhat, &order, &pos, "Bruhat order", graph) {
        report.violation = Some(v);
    }
    Ok(report)
}

/// `≤_J` evaluated with threshold bitsets: `{a : a_i[r] ≥ v}` per coordinate
/// `(i, r)` and value `v`, so the down-set of `b` is an intersection.
struct JugRelation {
    coords: Vec<Vec<usize>>,
    at_least: Vec<Vec<FixedBitSet>>,
}

impl JugRelation {
    fn new(vertices: &[LengthTuple], p: &Params) -> Self {
        let coords: Vec<Vec<usize>> =
            vertices.iter().map(|t| lengths_to_jug(t, p).sets().iter().flatten().copied().collect()).collect();
        let width = p.n * p.rank();
        let mut at_least = vec![vec![FixedBitSet::with_capacity(vertices.len()); p.size() + 2]; width];
        for (a, c) in coords.iter().enumerate() {
            for (slot, &x) in c.iter().enumerate() {
                for set in &mut at_least[slot][..=x] {
                    set.insert(a);
                }
            }
        }
        Self { coords, at_least }
    }

    fn down_set(&self, b: usize, out: &mut FixedBitSet) {
        out.set_range(.., true);
        for (slot, &x) in self.coords[b].iter().enumerate() {
            out.intersect_with(&self.at_least[slot][x]);
        }
    }
}

fn compare(
    jug: &JugRelation,
    down: &DownSets,
    order: &[usize],
    pos: &[usize],
    name: &str,
    graph: &MomentGraph,
) -> Option<(String, LengthTuple, LengthTuple)> {
    let mut row = FixedBitSet::with_capacity(order.len());
    for (q, &b) in order.iter().enumerate() {
        jug.down_set(b, &mut row);
        let other = &down.rows[q];
        let missing = row.ones().find(|&a| pos[a] > q || !other.contains(pos[a]));
        let extra = || other.ones().map(|qa| order[qa]).find(|&a| !row.contains(a));
        let mismatch = match missing {
            Some(a) => Some((format!("a ≤_J b but not under {name}"), a)),
            None => extra().map(|a| (format!("a ≤ b under {name} but not ≤_J"), a)),
        };
        if let Some((msg, a)) = mismatch {
            return Some((msg, graph.vertices[a].clone(), graph.vertices[b].clone()));
        }
    }
    None
}

/// `{J' : J' ≤_J J}` in the order of [`enumerate_length_tuples`].
pub fn cell_lower_set(j: &JugglingPattern, p: &Params, guard: &Guard) -> Result<Vec<JugglingPattern>> {
    j.validate(p)?;
    guard.check(p)?;
    let mut out = Vec::new();
    for t in enumerate_length_tuples(p) {
        let other = lengths_to_jug(&t, p);
        if jug_leq(&other, j)? {
            out.push(other);
        }
    }
    Ok(out)
}

/// Tuples whose permutation has length exactly `ωk(n − k)`.
pub fn maximal_tuples(p: &Params) -> Vec<LengthTuple> {
    enumerate_length_tuples(p)
        .into_iter()
        .filter(|t| perm_length(lengths_to_perm(t, p).perm()) == p.dimension() as u64)
        .collect()
}
