//! Points of `X(k,n,ω)` over `Q`, the automorphism group of `U_{nω}`, and
//! limits of the torus flow.
//!
//! At every vertex the space is `Q^{nω}` with basis `v_1, …, v_{nω}`; every
//! arrow is the shift `v_j ↦ v_{j+1}`, `v_{nω} ↦ 0`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::juggling::JugglingPattern;
use crate::matrix::RationalMatrix;
use crate::params::Params;

pub const POINT_SCHEMA: &str = "cyclic-quiver/rep-point/v1";

/// The `m × m` shift `v_j ↦ v_{j+1}`, `v_m ↦ 0`.
pub fn shift_matrix(m: usize) -> RationalMatrix {
    let mut s = RationalMatrix::zeros(m, m);
    for j in 0..m.saturating_sub(1) {
        s.set(j + 1, j, BigRational::one());
    }
    s
}

/// Per vertex, an `nω × kω` matrix whose columns span `U^(i)`.
#[derive(Debug, Clone)]
pub struct RepPoint {
    pub params: Params,
    pub spaces: Vec<RationalMatrix>,
}

impl RepPoint {
    /// Validates shapes, full column rank and the subrepresentation
    /// condition.
    pub fn new(params: Params, spaces: Vec<RationalMatrix>) -> Result<Self> {
        let x = Self { params, spaces };
        if !is_subrep(&x)? {
            return Err(Error::InvalidPattern("spaces are not closed under the arrows".into()));
        }
        Ok(x)
    }

    /// The coordinate point `U^(i) = span{v_x : x ∈ J_i}`.
    pub fn coordinate(j: &JugglingPattern, p: &Params) -> Self {
        let spaces = j
            .sets()
            .iter()
            .map(|set| {
                let mut u = RationalMatrix::zeros(p.size(), set.len());
                for (c, &x) in set.iter().enumerate() {
                    u.set(x - 1, c, BigRational::one());
                }
                u
            })
            .collect();
        Self { params: *p, spaces }
    }

    /// Row-reduced basis of each `U^(i)`, transposed: equal for equal
    /// subspace tuples.
    pub fn canonical(&self) -> Vec<RationalMatrix> {
        self.spaces.iter().map(|u| u.transpose().rref().0).collect()
    }

    pub fn same_point(&self, other: &Self) -> bool {
        self.params == other.params && self.canonical() == other.canonical()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let spaces: Vec<_> = self.spaces.iter().map(RationalMatrix::to_strings).collect();
        json!({ "schema": POINT_SCHEMA, "params": self.params, "spaces": spaces })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        if value["schema"] != POINT_SCHEMA {
            return Err(Error::Parse("missing or unknown schema".into()));
        }
        let p: Params = serde_json::from_value(value["params"].clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let p = Params::new(p.k, p.n, p.omega)?;
        let raw: Vec<Vec<Vec<String>>> =
            serde_json::from_value(value["spaces"].clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let spaces = raw.iter().map(|m| RationalMatrix::from_strings(m)).collect::<Result<Vec<_>>>()?;
        Self::new(p, spaces)
    }
}

fn check_shapes(x: &RepPoint) -> Result<()> {
    let p = &x.params;
    if x.spaces.len() != p.n {
        return Err(Error::DimensionMismatch(format!("{} spaces for {} vertices", x.spaces.len(), p.n)));
    }
    for (slot, u) in x.spaces.iter().enumerate() {
        if u.rows() != p.size() || u.cols() != p.rank() {
            return Err(Error::DimensionMismatch(format!(
                "U^({}) is {}x{}, expected {}x{}",
                slot + 1,
                u.rows(),
                u.cols(),
                p.size(),
                p.rank()
            )));
        }
        if u.rank() != p.rank() {
            return Err(Error::RankDeficient(format!("U^({}) has rank {} < {}", slot + 1, u.rank(), p.rank())));
        }
    }
    Ok(())
}

/// `shift · U^(i) ⊆ U^(i+1)` for every `i`, tested by rank of `[U^(i+1) | shift U^(i)]`.
pub fn is_subrep(x: &RepPoint) -> Result<bool> {
    check_shapes(x)?;
    let p = &x.params;
    let s = shift_matrix(p.size());
    for slot in 0..p.n {
        let next = &x.spaces[(slot + 1) % p.n];
        let image = s.checked_mul(&x.spaces[slot])?;
        if next.hstack(&image)?.rank() != p.rank() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Parameters `a^(i)_{r,1}`, `i ∈ Z_n`, `r ∈ [nω]`, with `a^(i)_{1,1} ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutElement {
    pub params: Params,
    /// `a[slot(i)][r − 1] = a^(i)_{r,1}`.
    pub a: Vec<Vec<BigRational>>,
}

impl AutElement {
    pub fn new(params: Params, a: Vec<Vec<BigRational>>) -> Result<Self> {
        if a.len() != params.n || a.iter().any(|col| col.len() != params.size()) {
            return Err(Error::DimensionMismatch(format!(
                "expected {} columns of {} parameters",
                params.n,
                params.size()
            )));
        }
        if let Some(slot) = a.iter().position(|col| col[0].is_zero()) {
            return Err(Error::ZeroDiagonal { vertex: slot + 1 });
        }
        Ok(Self { params, a })
    }

    pub fn identity(params: &Params) -> Self {
        let mut col = vec![BigRational::zero(); params.size()];
        col[0] = BigRational::one();
        Self { params: *params, a: vec![col; params.n] }
    }

    /// `m · n`.
    pub fn parameter_count(&self) -> usize {
        self.a.iter().map(Vec::len).sum()
    }

    pub fn param(&self, i: i64, r: usize) -> &BigRational {
        &self.a[self.params.slot(i)][r - 1]
    }

    /// Numerators in `[−3, 3]`, denominators in `[1, 3]`, nonzero diagonal.
    pub fn random<R: Rng>(params: &Params, rng: &mut R) -> Self {
        let mut draw = |nonzero: bool| loop {
            let num: i64 = rng.gen_range(-3..=3);
            let den: i64 = rng.gen_range(1..=3);
            if !(nonzero && num == 0) {
                return BigRational::new(BigInt::from(num), BigInt::from(den));
            }
        };
        let a = (0..params.n).map(|_| (0..params.size()).map(|r| draw(r == 0)).collect()).collect();
        Self { params: *params, a }
    }

    /// `count` elements from a ChaCha stream seeded with `seed`.
    pub fn seeded(params: &Params, seed: u64, count: usize) -> Vec<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| Self::random(params, &mut rng)).collect()
    }
}

/// Lower-triangular `E_i` with `(r, c)` entry `a^(i−c+1)_{r−c+1,1}` for `r ≥ c`.
pub fn aut_matrix(a: &AutElement, i: i64) -> RationalMatrix {
    let m = a.params.size();
    let mut e = RationalMatrix::zeros(m, m);
    for c in 1..=m {
        for r in c..=m {
            e.set(r - 1, c - 1, a.param(i - c as i64 + 1, r - c + 1).clone());
        }
    }
    e
}

pub fn aut_act(a: &AutElement, x: &RepPoint) -> Result<RepPoint> {
    if a.params != x.params {
        return Err(Error::DimensionMismatch(format!("element over {} acting on point over {}", a.params, x.params)));
    }
    if !is_subrep(x)? {
        return Err(Error::InvalidPattern("point is not a subrepresentation".into()));
    }
    let spaces = x
        .spaces
        .iter()
        .enumerate()
        .map(|(slot, u)| aut_matrix(a, slot as i64 + 1).checked_mul(u))
        .collect::<Result<Vec<_>>>()?;
    Ok(RepPoint { params: x.params, spaces })
}

/// The element whose matrices are `aut_matrix(a, i) · aut_matrix(b, i)`, read
/// off the first columns of the products.
pub fn compose(a: &AutElement, b: &AutElement) -> Result<AutElement> {
    if a.params != b.params {
        return Err(Error::DimensionMismatch(format!("{} vs {}", a.params, b.params)));
    }
    let p = a.params;
    let cols = (1..=p.n as i64)
        .map(|i| {
            let prod = aut_matrix(a, i).checked_mul(&aut_matrix(b, i))?;
            Ok((0..p.size()).map(|r| prod.get(r, 0).clone()).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    AutElement::new(p, cols)
}

/// `lim_{z→0} z·x` with `z·v_j = z^j v_j`: at each vertex the limit is
/// spanned by the `v_x` where `x` runs over the pivot rows of a column
/// echelon form with smallest-index pivots.
pub fn bb_limit(x: &RepPoint) -> Result<JugglingPattern> {
    if !is_subrep(x)? {
        return Err(Error::InvalidPattern("point is not a subrepresentation".into()));
    }
    let sets = x.spaces.iter().map(|u| u.transpose().rref().1.into_iter().map(|row| row + 1).collect()).collect();
    JugglingPattern::new(sets, &x.params)
}

/// Whether every element of `sample` fixes the coordinate point of `j`.
/// Only the bottom cell, of dimension 0, should pass for a generic sample.
pub fn orbit_fixes(j: &JugglingPattern, p: &Params, sample: &[AutElement]) -> Result<bool> {
    let x = RepPoint::coordinate(j, p);
    for a in sample {
        if !aut_act(a, &x)?.same_point(&x) {
            return Ok(false);
        }
    }
    Ok(true)
}
