//! Fixed points in the affine flag variety.
//!
//! A torus-fixed subspace of `C[t, t⁻¹]` is spanned by monomials, so it is
//! recorded by its set of exponents: every integer up to a threshold plus
//! finitely many extras above it.

use std::collections::{BTreeSet, HashSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::AutElement;
use crate::juggling::{component_fixed_point, enumerate_length_tuples, lengths_to_jug, JugglingPattern, LengthTuple};
use crate::matrix::RationalMatrix;
use crate::moment_graph::out_degree;
use crate::order::bruhat_lower_union;
use crate::params::{Guard, KSubset, Params};
use crate::perm::{lengths_to_perm, perm_length, AffinePermutation};

pub const FLAG_SCHEMA: &str = "cyclic-quiver/flag-point/v1";

/// `Z_{≤ threshold} ∪ extras`, with charge `threshold + |extras|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SatoPoint {
    pub threshold: i64,
    pub extras: BTreeSet<i64>,
    pub charge: i64,
}

impl SatoPoint {
    /// Canonical form: extras strictly above the threshold, and
    /// `threshold + 1` never an extra.
    pub fn new(threshold: i64, extras: impl IntoIterator<Item = i64>) -> Self {
        let mut t = threshold;
        let mut extras: BTreeSet<i64> = extras.into_iter().filter(|&x| x > threshold).collect();
        while extras.remove(&(t + 1)) {
            t += 1;
        }
        let charge = t + extras.len() as i64;
        Self { threshold: t, extras, charge }
    }

    pub fn contains(&self, x: i64) -> bool {
        x <= self.threshold || self.extras.contains(&x)
    }

    /// `self ∖ other`, always finite.
    pub fn difference(&self, other: &Self) -> Vec<i64> {
        let mut out: BTreeSet<i64> = (other.threshold + 1..=self.threshold).filter(|&x| !other.contains(x)).collect();
        out.extend(self.extras.iter().copied().filter(|&x| !other.contains(x)));
        out.into_iter().collect()
    }

    pub fn translate(&self, d: i64) -> Self {
        Self {
            threshold: self.threshold + d,
            extras: self.extras.iter().map(|x| x + d).collect(),
            charge: self.charge + d,
        }
    }
}

impl std::fmt::Display for SatoPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let extras: Vec<String> = self.extras.iter().map(ToString::to_string).collect();
        if extras.is_empty() {
            write!(f, "Z<={}", self.threshold)
        } else {
            write!(f, "{{{}}} u Z<={}", extras.join(","), self.threshold)
        }
    }
}

/// `S_0, …, S_n`; the rest of the sequence is `S_{i+n} = S_i + n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlagPoint {
    pub points: Vec<SatoPoint>,
}

impl FlagPoint {
    pub fn n(&self) -> usize {
        self.points.len() - 1
    }

    pub fn to_json(&self, weyl: Option<&AffinePermutation>) -> serde_json::Value {
        serde_json::json!({
            "schema": FLAG_SCHEMA,
            "points": self.points,
            "weyl": weyl.map(|w| w.window().to_vec()),
        })
    }
}

/// `S_i = {i − kω + nω + 1 − r : r ∈ J_i} ∪ Z_{≤ i−kω}` for `i = 0, …, n`,
/// reading `J_0 = J_n`.
pub fn embed_fixed_point(j: &JugglingPattern, p: &Params) -> Result<FlagPoint> {
    j.validate(p)?;
    let (kw, m) = (p.rank() as i64, p.size() as i64);
    let points =
        (0..=p.n as i64).map(|i| SatoPoint::new(i - kw, j.set(i).iter().map(|&r| i - kw + m + 1 - r as i64))).collect();
    Ok(FlagPoint { points })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FlagReport {
    pub violations: Vec<String>,
}

impl FlagReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Nesting with one new element per step, periodicity and charges.
pub fn check_flag_point(fp: &FlagPoint) -> FlagReport {
    let mut report = FlagReport::default();
    if fp.points.len() < 2 {
        report.violations.push("a flag needs S_0 and S_n".into());
        return report;
    }
    let n = fp.n() as i64;
    for (i, s) in fp.points.iter().enumerate() {
        if s.charge != i as i64 {
            report.violations.push(format!("charge: S_{i} has charge {}", s.charge));
        }
        if s.threshold + s.extras.len() as i64 != s.charge || s.extras.iter().any(|&x| x <= s.threshold) {
            report.violations.push(format!("charge: S_{i} is not in canonical form"));
        }
    }
    for i in 1..fp.points.len() {
        let (prev, cur) = (&fp.points[i - 1], &fp.points[i]);
        let lost = prev.difference(cur);
        if !lost.is_empty() {
            report.violations.push(format!("nesting: S_{} ⊄ S_{i}, missing {lost:?}", i - 1));
        }
        let gained = cur.difference(prev);
        if gained.len() != 1 {
            report.violations.push(format!("nesting: S_{i} ∖ S_{} = {gained:?}", i - 1));
        }
    }
    if fp.points[fp.n()] != fp.points[0].translate(n) {
        report.violations.push(format!("periodicity: S_{n} ≠ S_0 + {n}"));
    }
    report
}

/// `w(i)` = the element of `S_i ∖ S_{i−1}`, `i ∈ [1, n]`.
pub fn sato_weyl(fp: &FlagPoint) -> Result<AffinePermutation> {
    let window = (1..fp.points.len())
        .map(|i| match fp.points[i].difference(&fp.points[i - 1]).as_slice() {
            [x] => Ok(*x),
            other => Err(Error::FlagInvariant(format!("S_{i} ∖ S_{} = {other:?}", i - 1))),
        })
        .collect::<Result<Vec<_>>>()?;
    AffinePermutation::new(window)
}

/// `w(i) = i − kω`, plus `nω` when `i ∈ I`.
pub fn w_of_subset(subset: &KSubset, p: &Params) -> AffinePermutation {
    let (kw, m) = (p.rank() as i64, p.size() as i64);
    let window = (1..=p.n).map(|i| i as i64 - kw + if subset.contains(i) { m } else { 0 }).collect();
    AffinePermutation::new(window).expect("w(I) is a permutation")
}

pub fn weyl_of_tuple(t: &LengthTuple, p: &Params) -> AffinePermutation {
    let fp = embed_fixed_point(&lengths_to_jug(t, p), p).expect("valid pattern");
    sato_weyl(&fp).expect("embedded points are flags")
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SchubertReport {
    pub fixed_points: usize,
    pub distinct_images: usize,
    pub union_size: usize,
    pub missing_from_union: Vec<String>,
    pub missing_from_image: Vec<String>,
    pub length_mismatches: Vec<String>,
}

impl SchubertReport {
    pub fn passed(&self) -> bool {
        self.missing_from_union.is_empty()
            && self.missing_from_image.is_empty()
            && self.length_mismatches.is_empty()
            && self.fixed_points == self.distinct_images
            && self.fixed_points == self.union_size
    }
}

/// Compares the Weyl elements of all embedded fixed points with the union of
/// the lower intervals of the `w(I)`, and their lengths with the moment-graph
/// out-degrees.
pub fn schubert_union_check(p: &Params, guard: &Guard) -> Result<SchubertReport> {
    guard.check(p)?;
    const SHOWN: usize = 10;
    let mut report = SchubertReport::default();
    let mut image = HashSet::new();
    for t in enumerate_length_tuples(p) {
        let w = weyl_of_tuple(&t, p);
        let (lw, lf, deg) = (perm_length(&w), perm_length(lengths_to_perm(&t, p).perm()), out_degree(&t, p) as u64);
        if (lw != lf || lw != deg) && report.length_mismatches.len() < SHOWN {
            report.length_mismatches.push(format!("{t}: l(w) = {lw}, l(f) = {lf}, out-degree {deg}"));
        }
        image.insert(w);
        report.fixed_points += 1;
    }
    report.distinct_images = image.len();
    let gens: Vec<AffinePermutation> = KSubset::all(p).iter().map(|i| w_of_subset(i, p)).collect();
    let union = bruhat_lower_union(&gens);
    report.union_size = union.len();
    report.missing_from_union =
        image.iter().filter(|w| !union.contains(w)).take(SHOWN).map(ToString::to_string).collect();
    report.missing_from_image =
        union.iter().filter(|w| !image.contains(w)).take(SHOWN).map(ToString::to_string).collect();
    Ok(report)
}

/// Rows `(ℓ, f(ℓ), w(ℓ), length)` pairing the bounded permutation of a tuple
/// with the Weyl element of its embedding.
pub fn correspondence_table(
    p: &Params,
    guard: &Guard,
) -> Result<Vec<(LengthTuple, AffinePermutation, AffinePermutation, u64)>> {
    guard.check(p)?;
    Ok(enumerate_length_tuples(p)
        .into_iter()
        .map(|t| {
            let f = lengths_to_perm(&t, p).into_perm();
            let w = weyl_of_tuple(&t, p);
            let l = perm_length(&w);
            (t, f, w, l)
        })
        .collect())
}

/// The Weyl element of the component labelled by `I`, computed through the
/// embedding.
pub fn component_weyl(subset: &KSubset, p: &Params) -> Result<AffinePermutation> {
    sato_weyl(&embed_fixed_point(&component_fixed_point(subset, p), p)?)
}

/// `n × n` matrix of polynomials in `z`, coefficient lists lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    pub n: usize,
    pub entries: Vec<Vec<Vec<BigRational>>>,
}

impl PolyMatrix {
    pub fn eval_at_zero(&self) -> RationalMatrix {
        let rows = self
            .entries
            .iter()
            .map(|row| row.iter().map(|c| c.first().cloned().unwrap_or_else(BigRational::zero)).collect())
            .collect();
        RationalMatrix::from_rows(rows).expect("square")
    }

    /// `g(0)` lower triangular with nonzero diagonal.
    pub fn is_iwahori(&self) -> bool {
        let g0 = self.eval_at_zero();
        g0.is_lower_triangular() && (0..self.n).all(|i| !g0.get(i, i).is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(r, row)| {
            row.iter().enumerate().all(|(c, coeffs)| {
                let expect_one = r == c;
                coeffs.iter().enumerate().all(|(d, v)| if d == 0 && expect_one { v.is_one() } else { v.is_zero() })
            })
        })
    }
}

/// Entry `(s, c)` is `Σ_{l<ω} z^l a^(1−c)_{s−c+1+nl, 1}` on and below the
/// diagonal and `z · Σ_{l<ω} z^l a^(1−c)_{s−c+1+n+nl, 1}` above it.
pub fn aut_to_iwahori(a: &AutElement) -> PolyMatrix {
    let p = a.params;
    let n = p.n as i64;
    let mut entries = vec![vec![Vec::new(); p.n]; p.n];
    for s in 1..=n {
        for c in 1..=n {
            let vertex = 1 - c;
            let mut coeffs = Vec::new();
            if s < c {
                coeffs.push(BigRational::zero());
            }
            let base = s - c + 1 + if s < c { n } else { 0 };
            for l in 0..p.omega as i64 {
                coeffs.push(a.param(vertex, (base + n * l) as usize).clone());
            }
            entries[(s - 1) as usize][(c - 1) as usize] = coeffs;
        }
    }
    PolyMatrix { n: p.n, entries }
}
