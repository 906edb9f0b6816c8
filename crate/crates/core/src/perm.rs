//! Affine permutations in window notation and the bounded ones that label
//! fixed points.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::juggling::LengthTuple;
use crate::params::Params;

/// A bijection `f: Z → Z` with `f(i + n) = f(i) + n`, stored as the window
/// `(f(1), …, f(n))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AffinePermutation {
    window: Vec<i64>,
}

impl AffinePermutation {
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let n = window.len() as i64;
        if n == 0 {
            return Err(Error::InvalidPermutation("empty window".into()));
        }
        let mut seen = vec![false; n as usize];
        for &v in &window {
            let r = v.rem_euclid(n) as usize;
            if std::mem::replace(&mut seen[r], true) {
                return Err(Error::InvalidPermutation(format!("{window:?} repeats a residue mod {n}")));
            }
        }
        let shift: i64 = window.iter().enumerate().map(|(i, &v)| v - (i as i64 + 1)).sum();
        if shift.rem_euclid(n) != 0 {
            return Err(Error::InvalidPermutation(format!("shift sum {shift} is not a multiple of {n}")));
        }
        Ok(Self { window })
    }

    pub(crate) fn from_window_unchecked(window: Vec<i64>) -> Self {
        Self { window }
    }

    /// `id_q`: the window `[1 + q, …, n + q]`.
    pub fn shifted_identity(n: usize, q: i64) -> Self {
        Self { window: (1..=n as i64).map(|i| i + q).collect() }
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn eval(&self, i: i64) -> i64 {
        let n = self.window.len() as i64;
        let r = (i - 1).rem_euclid(n);
        self.window[r as usize] + (i - 1 - r)
    }

    /// `Σ_{i=1}^n (f(i) − i)`.
    pub fn shift_sum(&self) -> i64 {
        self.window.iter().enumerate().map(|(i, &v)| v - (i as i64 + 1)).sum()
    }

    /// `f ∘ t_{a,b}` where `t_{a,b}` swaps `a` and `b` (and every translate of
    /// the pair by multiples of `n`). Requires `a ≢ b (mod n)`.
    pub fn swap_positions(&self, a: i64, b: i64) -> Self {
        let n = self.window.len() as i64;
        debug_assert_ne!((a - b).rem_euclid(n), 0);
        let (fa, fb) = (self.eval(a), self.eval(b));
        let mut window = self.window.clone();
        let ra = (a - 1).rem_euclid(n);
        let rb = (b - 1).rem_euclid(n);
        window[ra as usize] = fb + (ra + 1 - a);
        window[rb as usize] = fa + (rb + 1 - b);
        Self { window }
    }

    /// `f ∘ g`.
    pub fn compose(&self, g: &Self) -> Self {
        assert_eq!(self.n(), g.n(), "composing permutations of different periods");
        Self { window: g.window.iter().map(|&v| self.eval(v)).collect() }
    }

    /// Parses `"[5,2]"`, `"5,2"` or `"5 2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let window = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(window)
    }
}

impl std::fmt::Display for AffinePermutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.window.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// An element of `B_{k,n,ω}`: `i ≤ f(i) ≤ i + nω` and shift sum `knω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BoundedAffinePermutation {
    perm: AffinePermutation,
    #[serde(skip)]
    params: Params,
}

impl BoundedAffinePermutation {
    pub fn new(perm: AffinePermutation, p: &Params) -> Result<Self> {
        if perm.n() != p.n {
            return Err(Error::InvalidPermutation(format!("window has {} entries, expected {}", perm.n(), p.n)));
        }
        let m = p.size() as i64;
        for (idx, &v) in perm.window().iter().enumerate() {
            let i = idx as i64 + 1;
            if v < i || v > i + m {
                return Err(Error::Unbounded(format!("f({i}) = {v} outside [{i}, {}]", i + m)));
            }
        }
        let shift = perm.shift_sum();
        if shift != (p.k * p.size()) as i64 {
            return Err(Error::Unbounded(format!("shift sum {shift}, expected knω = {}", p.k * p.size())));
        }
        Ok(Self { perm, params: *p })
    }

    pub fn perm(&self) -> &AffinePermutation {
        &self.perm
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn window(&self) -> &[i64] {
        self.perm.window()
    }

    pub fn into_perm(self) -> AffinePermutation {
        self.perm
    }
}

impl std::fmt::Display for BoundedAffinePermutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.perm.fmt(f)
    }
}

/// `#{(i, j) ∈ [n] × Z : i < j, f(i) > f(j)}`.
///
/// For each `i` and each residue class `c` of `j`, the values `f(c + nt)`
/// increase by `n` per step, so the inversions in that class form an interval
/// of `t` whose ends are computed directly.
pub fn perm_length(f: &AffinePermutation) -> u64 {
    let n = f.n() as i64;
    // f(i) = n q_i + r_i with 0 ≤ r_i < n
    let split: Vec<(i64, i64)> = f.window().iter().map(|&v| (v.div_euclid(n), v.rem_euclid(n))).collect();
    let mut total = 0i64;
    for (i, &(qi, ri)) in split.iter().enumerate() {
        for (c, &(qc, rc)) in split.iter().enumerate() {
            // j = c + nt > i  ⇔  t ≥ t0
            let t0 = if i >= c { 1 } else { 0 };
            // f(j) = f(c) + nt < f(i)  ⇔  t ≤ t1 = ⌊(f(i) − f(c) − 1) / n⌋
            let t1 = qi - qc - if ri > rc { 0 } else { 1 };
            total += (t1 - t0 + 1).max(0);
        }
    }
    total as u64
}

/// `f(j) = j + ℓ_{−j}`, indices of `ℓ` read mod `n`.
pub fn lengths_to_perm(tuple: &LengthTuple, p: &Params) -> BoundedAffinePermutation {
    let window = (1..=p.n as i64).map(|j| j + tuple.get(-j) as i64).collect();
    let perm = AffinePermutation::from_window_unchecked(window);
    BoundedAffinePermutation { perm, params: *p }
}

/// Inverse of [`lengths_to_perm`]: `ℓ_j = f(j') − j'` for `j' ≡ −j (mod n)`.
pub fn perm_to_lengths(f: &BoundedAffinePermutation) -> LengthTuple {
    let p = f.params();
    let lengths = (1..=p.n as i64)
        .map(|j| {
            let jp = p.slot(-j) as i64 + 1;
            (f.perm().eval(jp) - jp) as usize
        })
        .collect();
    LengthTuple::from_vec_unchecked(lengths)
}
