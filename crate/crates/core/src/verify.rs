//! Verification suites run by `cyclic-quiver verify`.
//!
//! Each suite recomputes the structural invariants of one part of the library
//! for a single parameter triple and reports every check, passed or not.
//! Checks whose cost grows quadratically in the number of fixed points are
//! skipped above a vertex cap; the skip is reported, never counted as a pass.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::affine_flag::{
    aut_to_iwahori, check_flag_point, component_weyl, embed_fixed_point, schubert_union_check, w_of_subset,
};
use crate::error::{Error, Result};
use crate::flatness;
use crate::geometry::{aut_act, aut_matrix, bb_limit, compose, orbit_fixes, shift_matrix, AutElement, RepPoint};
use crate::gkm::{check_gkm_class, five_point_kt_classes, kt_shape_check, tautological_class, zn_act_class, GkmClass};
use crate::juggling::{
    component_fixed_point, enumerate_length_tuples, enumerate_length_tuples_par, jug_to_lengths, lengths_to_jug,
    LengthTuple,
};
use crate::moment_graph::{build_graph, check_rotation_equivariance, MomentGraph};
use crate::order::{bruhat_covers_below, cell_lower_set, jug_leq, verify_order_equivalence_on};
use crate::params::{Guard, KSubset, Params};
use crate::perm::{lengths_to_perm, perm_length, perm_to_lengths, BoundedAffinePermutation};
use crate::poly::{congruent_mod_linear, Polynomial};

pub const VERIFY_SCHEMA: &str = "cyclic-quiver/verify/v1";

/// Vertex count above which the all-pairs order comparison is skipped.
pub const ORDER_VERTEX_CAP: usize = 20_000;
/// Vertex count above which per-cell closure checks are skipped.
pub const CELL_VERTEX_CAP: usize = 400;
/// Vertex count above which the sampled orbit checks are skipped.
pub const AUT_VERTEX_CAP: usize = 2_000;
/// Group elements sampled per fixed point.
pub const AUT_SAMPLES: usize = 50;
/// Group elements sampled for the Iwahori check.
pub const IWAHORI_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Orders,
    Gkm,
    Aut,
    Embedding,
    Flatness,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Orders, Suite::Gkm, Suite::Aut, Suite::Embedding, Suite::Flatness];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Orders => "orders",
            Suite::Gkm => "gkm",
            Suite::Aut => "aut",
            Suite::Embedding => "embedding",
            Suite::Flatness => "flatness",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub schema: &'static str,
    pub params: Params,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            writeln!(f, "{tag} {}/{}: {}", c.suite, c.name, c.detail)?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

struct Recorder {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(suite: Suite) -> Self {
        Self { suite: suite.name(), checks: Vec::new() }
    }

    fn check(&mut self, name: &'static str, ok: bool, detail: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.checks.push(Check { suite: self.suite, name, status, detail: detail.into() });
    }

    fn skip(&mut self, name: &'static str, detail: impl Into<String>) {
        self.checks.push(Check { suite: self.suite, name, status: Status::Skip, detail: detail.into() });
    }

    /// Records the first failure among `items`, or a pass with `ok_detail`.
    fn first_failure(&mut self, name: &'static str, failure: Option<String>, ok_detail: impl Into<String>) {
        match failure {
            Some(msg) => self.check(name, false, msg),
            None => self.check(name, true, ok_detail),
        }
    }
}

/// Runs `suite` for `p`. Fails only on guard or internal errors; property
/// failures are reported in the returned checks.
pub fn run(suite: Suite, p: &Params, seed: u64, guard: &Guard) -> Result<VerifyReport> {
    guard.check(p)?;
    let graph = match suite {
        Suite::Flatness => None,
        _ => Some(build_graph(p, guard)?),
    };
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut checks = Vec::new();
    for s in suites {
        let mut rec = Recorder::new(s);
        match s {
            Suite::Orders => orders(&mut rec, graph.as_ref().expect("built"))?,
            Suite::Gkm => gkm(&mut rec, graph.as_ref().expect("built"))?,
            Suite::Aut => aut(&mut rec, graph.as_ref().expect("built"), seed)?,
            Suite::Embedding => embedding(&mut rec, p, seed, guard)?,
            Suite::Flatness => flatness_suite(&mut rec),
            Suite::All => unreachable!(),
        }
        checks.extend(rec.checks);
    }
    Ok(VerifyReport { schema: VERIFY_SCHEMA, params: *p, seed, checks })
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn orders(rec: &mut Recorder, g: &MomentGraph) -> Result<()> {
    let p = &g.params;
    let v = g.vertices.len();

    let bad = g.vertices.iter().find_map(|t| {
        let jug = lengths_to_jug(t, p);
        if let Err(e) = jug.validate(p) {
            return Some(format!("{t}: pattern invalid: {e}"));
        }
        match jug_to_lengths(&jug, p) {
            Ok(back) if &back == t => None,
            Ok(back) => Some(format!("{t} -> {back}")),
            Err(e) => Some(format!("{t}: {e}")),
        }
    });
    rec.first_failure("pattern-bijection", bad, format!("{v} tuples round-trip through patterns"));

    let bad = g.vertices.iter().find_map(|t| {
        let f = lengths_to_perm(t, p);
        match BoundedAffinePermutation::new(f.perm().clone(), p) {
            Err(e) => Some(format!("{t}: {e}")),
            Ok(_) if &perm_to_lengths(&f) != t => Some(format!("{t}: perm_to_lengths gives {}", perm_to_lengths(&f))),
            Ok(_) => None,
        }
    });
    rec.first_failure("permutation-bijection", bad, format!("{v} tuples round-trip through bounded permutations"));

    let serial = enumerate_length_tuples(p);
    let parallel = enumerate_length_tuples_par(p);
    let images: BTreeSet<_> = serial.iter().map(|t| lengths_to_perm(t, p).into_perm()).collect();
    rec.check(
        "counts",
        serial == parallel && images.len() == serial.len(),
        format!("{} tuples, {} parallel, {} distinct permutations", serial.len(), parallel.len(), images.len()),
    );

    let lengths: Vec<u64> = g.vertices.iter().map(|t| perm_length(lengths_to_perm(t, p).perm())).collect();
    let top = lengths.iter().copied().max().unwrap_or(0);
    let argmax: BTreeSet<&LengthTuple> =
        g.vertices.iter().zip(&lengths).filter(|(_, &l)| l == top).map(|(t, _)| t).collect();
    let components: BTreeSet<LengthTuple> =
        KSubset::all(p).iter().map(|i| jug_to_lengths(&component_fixed_point(i, p), p)).collect::<Result<_>>()?;
    rec.check(
        "top-cells",
        top == p.dimension() as u64
            && argmax.len() == binomial(p.n, p.k)
            && argmax.iter().copied().cloned().collect::<BTreeSet<_>>() == components,
        format!("max length {top}, attained {} times, dimension {}", argmax.len(), p.dimension()),
    );

    if v <= ORDER_VERTEX_CAP {
        let report = verify_order_equivalence_on(g)?;
        let detail = match &report.violation {
            Some((msg, a, b)) => format!("{msg}: {a} vs {b}"),
            None => format!("{} comparable pairs agree", report.relation_size),
        };
        rec.check("order-equivalence", report.passed(), detail);
    } else {
        rec.skip("order-equivalence", format!("{v} vertices exceed {ORDER_VERTEX_CAP}"));
    }

    let mut covers = 0usize;
    let mut bad = None;
    for t in &g.vertices {
        match bruhat_covers_below(&lengths_to_perm(t, p)) {
            Ok(c) => covers += c.len(),
            Err(e) => {
                bad = Some(format!("{t}: {e}"));
                break;
            }
        }
    }
    rec.first_failure("lower-ideal", bad, format!("{covers} covers stay bounded"));

    let degrees = g.out_degrees();
    let bad = g
        .vertices
        .iter()
        .zip(&lengths)
        .zip(&degrees)
        .find(|((_, &l), &d)| l != d as u64)
        .map(|((t, l), d)| format!("{t}: length {l}, out-degree {d}"));
    rec.first_failure("degree-is-length", bad, "out-degree equals length at every vertex");

    let mut poly = vec![0u64; top as usize + 1];
    for &l in &lengths {
        poly[l as usize] += 1;
    }
    let total: u64 = poly.iter().sum();
    let weighted: u64 = poly.iter().enumerate().map(|(d, c)| d as u64 * c).sum();
    rec.check(
        "poincare-sums",
        total == v as u64 && weighted == g.edges.len() as u64,
        format!("P(1) = {total}, P'(1) = {weighted}, {} edges", g.edges.len()),
    );

    let bad = g.edges.iter().find_map(|e| {
        let (i, j, r) = e.mv;
        let s = &g.vertices[e.source];
        let expected = s.get(i as i64) as i64 - s.get(j as i64) as i64 - r as i64;
        (e.label.delta != expected || expected < 1).then(|| format!("{s} --{}-> {}", e.label, g.vertices[e.target]))
    });
    rec.first_failure("edge-labels", bad, "every label has delta part l_i - l_j - r >= 1");

    let pairs: BTreeSet<(usize, usize)> = g.edges.iter().map(|e| (e.source, e.target)).collect();
    rec.check(
        "simple-graph",
        pairs.len() == g.edges.len(),
        format!("{} edges on {} ordered pairs", g.edges.len(), pairs.len()),
    );

    if v <= CELL_VERTEX_CAP {
        let succ = g.successors();
        let mut bad = None;
        'outer: for t in &g.vertices {
            let jug = lengths_to_jug(t, p);
            let below: BTreeSet<usize> = cell_lower_set(&jug, p, &Guard::new(p.size()))?
                .iter()
                .map(|j| Ok(g.index_of(&jug_to_lengths(j, p)?).expect("vertex")))
                .collect::<Result<_>>()?;
            for &u in &below {
                if let Some(&w) = succ[u].iter().find(|w| !below.contains(w)) {
                    bad = Some(format!("closure of {t}: edge {} -> {} leaves it", g.vertices[u], g.vertices[w]));
                    break 'outer;
                }
            }
            for w in g.vertices.iter().filter(|w| !below.contains(&g.index_of(w).expect("vertex"))) {
                if jug_leq(&lengths_to_jug(w, p), &jug)? {
                    bad = Some(format!("closure of {t} misses {w}"));
                    break 'outer;
                }
            }
        }
        rec.first_failure("cell-closures", bad, "closures are unions of cells and carry the full subgraph");
    } else {
        rec.skip("cell-closures", format!("{v} vertices exceed {CELL_VERTEX_CAP}"));
    }

    let rot = check_rotation_equivariance(g);
    rec.check(
        "rotation",
        rot.passed(),
        rot.violations.first().cloned().unwrap_or_else(|| format!("{} rotated edges found", rot.edges_checked)),
    );
    Ok(())
}

fn class_failure(c: &GkmClass, g: &MomentGraph) -> Result<Option<String>> {
    Ok(check_gkm_class(c, g)?.violations.into_iter().next())
}

fn gkm(rec: &mut Recorder, g: &MomentGraph) -> Result<()> {
    let p = &g.params;
    let n = p.n as i64;
    let mut classes: Vec<(String, GkmClass)> = vec![("1".into(), GkmClass::constant_one(g))];
    classes.extend((1..=n).map(|i| (format!("taut({i})"), tautological_class(i, g))));

    let mut bad = None;
    for (name, c) in &classes {
        if let Some(msg) = class_failure(c, g)? {
            bad = Some(format!("{name}: {msg}"));
            break;
        }
    }
    rec.first_failure("tautological-classes", bad, format!("{} classes satisfy every edge congruence", classes.len()));

    let mut bad = None;
    'outer: for (name, c) in &classes {
        for m in 0..n {
            if let Some(msg) = class_failure(&zn_act_class(m, c), g)? {
                bad = Some(format!("{m}.{name}: {msg}"));
                break 'outer;
            }
        }
        let cycled = (0..n).fold(c.clone(), |acc, _| zn_act_class(1, &acc));
        if &cycled != c {
            bad = Some(format!("{name}: acting {n} times by the generator is not the identity"));
            break;
        }
    }
    rec.first_failure("rotation-action", bad, format!("Z/{n} preserves the classes and has order dividing {n}"));

    let mut agree = 0usize;
    let mut bad = None;
    'outer: for (name, c) in &classes {
        for e in &g.edges {
            let (a, b) = (&c.entries[&g.vertices[e.source]], &c.entries[&g.vertices[e.target]]);
            let fast = congruent_mod_linear(a, b, &e.label)?;
            let (_, rem) = (a - b).divide(&Polynomial::from_character(&e.label))?;
            if fast != rem.is_zero() {
                bad = Some(format!("{name} on {} -> {}", g.vertices[e.source], g.vertices[e.target]));
                break 'outer;
            }
            agree += 1;
        }
    }
    rec.first_failure("congruence-oracle", bad, format!("{agree} congruence tests agree with division"));

    if (p.k, p.n, p.omega) == (1, 2, 2) {
        let kt = five_point_kt_classes();
        let mut bad = None;
        for (v, c) in &kt {
            let a = check_gkm_class(c, g)?;
            let b = kt_shape_check(c, v, g)?;
            if let Some(msg) = a.violations.into_iter().chain(b.violations).next() {
                bad = Some(format!("xi{v}: {msg}"));
                break;
            }
        }
        rec.first_failure("knutson-tao", bad, format!("{} classes pass both checks", kt.len()));

        let lookup = |a: usize, b: usize| &kt.iter().find(|(v, _)| v.as_slice() == [a, b]).expect("present").1;
        let swaps = [((3, 1), (1, 3)), ((1, 3), (3, 1)), ((4, 0), (0, 4)), ((0, 4), (4, 0)), ((2, 2), (2, 2))];
        let bad = swaps
            .iter()
            .find(|((a, b), (c, d))| &zn_act_class(1, lookup(*a, *b)) != lookup(*c, *d))
            .map(|((a, b), (c, d))| format!("sigma.xi({a},{b}) != xi({c},{d})"));
        rec.first_failure("knutson-tao-swap", bad, "sigma swaps the classes as the vertices");
    }
    Ok(())
}

fn aut(rec: &mut Recorder, g: &MomentGraph, seed: u64) -> Result<()> {
    let p = &g.params;
    let v = g.vertices.len();
    let sample = AutElement::seeded(p, seed, AUT_SAMPLES);

    let expected = p.size() * p.n;
    let bad = sample.iter().map(AutElement::parameter_count).find(|&c| c != expected);
    rec.first_failure(
        "parameter-count",
        bad.map(|c| format!("{c} parameters, expected {expected}")),
        format!("{expected} parameters"),
    );

    let shift = shift_matrix(p.size());
    let mut bad = None;
    'outer: for a in &sample {
        for i in 1..=p.n as i64 {
            let lhs = aut_matrix(a, i + 1).checked_mul(&shift)?;
            let rhs = shift.checked_mul(&aut_matrix(a, i))?;
            if lhs != rhs {
                bad = Some(format!("vertex {i}"));
                break 'outer;
            }
        }
    }
    rec.first_failure("intertwining", bad, format!("{} elements commute with the arrows", sample.len()));

    let mut bad = None;
    'outer: for pair in sample.windows(2) {
        let c = compose(&pair[0], &pair[1])?;
        for i in 1..=p.n as i64 {
            if aut_matrix(&c, i) != aut_matrix(&pair[0], i).checked_mul(&aut_matrix(&pair[1], i))? {
                bad = Some(format!("vertex {i}"));
                break 'outer;
            }
        }
    }
    rec.first_failure("composition", bad, "products stay in the group");

    if v > AUT_VERTEX_CAP {
        rec.skip("orbits", format!("{v} vertices exceed {AUT_VERTEX_CAP}"));
        return Ok(());
    }
    let mut bad = None;
    'outer: for t in &g.vertices {
        let jug = lengths_to_jug(t, p);
        let x = RepPoint::coordinate(&jug, p);
        for a in &sample {
            let y = aut_act(a, &x)?;
            let limit = bb_limit(&y)?;
            if limit != jug {
                bad = Some(format!("{t}: limit {limit:?}"));
                break 'outer;
            }
            if bb_limit(&RepPoint::coordinate(&limit, p))? != limit {
                bad = Some(format!("{t}: limit is not idempotent"));
                break 'outer;
            }
        }
    }
    rec.first_failure("orbits", bad, format!("{v} cells x {} elements stay in their cell", sample.len()));

    let mut fixed = 0usize;
    let mut bad = None;
    for t in &g.vertices {
        let fixes = orbit_fixes(&lengths_to_jug(t, p), p, &sample)?;
        let zero = perm_length(lengths_to_perm(t, p).perm()) == 0;
        fixed += fixes as usize;
        if fixes != zero {
            bad = Some(format!("{t}: fixed {fixes}, zero-dimensional cell {zero}"));
            break;
        }
    }
    rec.first_failure("orbit-sizes", bad, format!("{fixed} fixed points are Aut-fixed, all in point cells"));
    Ok(())
}

fn embedding(rec: &mut Recorder, p: &Params, seed: u64, guard: &Guard) -> Result<()> {
    let mut bad = None;
    for i in KSubset::all(p) {
        let w = w_of_subset(&i, p);
        let got = component_weyl(&i, p)?;
        if got != w || w.shift_sum() != 0 {
            bad = Some(format!("{:?}: embedded {got}, expected {w}, shift sum {}", i.elements(), w.shift_sum()));
            break;
        }
    }
    rec.first_failure("components", bad, format!("{} components land on w(I)", binomial(p.n, p.k)));

    let mut bad = None;
    for t in enumerate_length_tuples(p) {
        let report = check_flag_point(&embed_fixed_point(&lengths_to_jug(&t, p), p)?);
        if let Some(msg) = report.violations.into_iter().next() {
            bad = Some(format!("{t}: {msg}"));
            break;
        }
    }
    rec.first_failure("flags", bad, "every embedded fixed point is a periodic lattice flag");

    let s = schubert_union_check(p, guard)?;
    let detail = if s.passed() {
        format!("{} fixed points, union of size {}", s.fixed_points, s.union_size)
    } else {
        format!(
            "{} fixed points, {} images, union {}; first issues {:?} {:?} {:?}",
            s.fixed_points,
            s.distinct_images,
            s.union_size,
            s.missing_from_union.first(),
            s.missing_from_image.first(),
            s.length_mismatches.first()
        )
    };
    rec.check("schubert-union", s.passed(), detail);

    let sample = AutElement::seeded(p, seed, IWAHORI_SAMPLES);
    let bad = sample.iter().position(|a| !aut_to_iwahori(a).is_iwahori());
    rec.first_failure(
        "iwahori",
        bad.map(|i| format!("sample {i}")),
        format!("{} elements are Iwahori at z = 0", sample.len()),
    );
    Ok(())
}

fn flatness_suite(rec: &mut Recorder) {
    let rank = flatness::degree111_rank();
    rec.check("rank", rank == 10, format!("rank = {rank}"));

    let basis: Vec<_> = flatness::basis_monomials().iter().map(flatness::eval_monomial).collect();
    let basis_rank = flatness::coefficient_matrix(&basis).rank();
    rec.check("basis", basis_rank == basis.len(), format!("{basis_rank} of {} independent", basis.len()));

    let bad = flatness::TriDegMonomial::all()
        .into_iter()
        .find(|m| {
            let v = flatness::eval_monomial(m);
            !flatness::is_zero_triple(&v) && !basis.contains(&v)
        })
        .map(|m| m.to_string());
    rec.first_failure("zero-or-basic", bad, "all 27 values are zero or a basis value");

    let show = |s: &str| {
        flatness::format_triple(&flatness::eval_monomial(&flatness::TriDegMonomial::parse(s).expect("monomial")))
    };
    let samples = [("y1y2z3", ["a1", "0", "0"]), ("x1z2z3", ["a1", "0", "0"]), ("x1x2z3", ["0", "0", "0"])];
    let bad = samples.iter().find(|(m, want)| show(m) != *want).map(|(m, _)| format!("{m} = {:?}", show(m)));
    rec.first_failure("sample-values", bad, "y1y2z3 = x1z2z3 = (a1,0,0), x1x2z3 = 0");
}
