//! Juggling patterns and length tuples, the two fixed-point labels that live
//! closest to the quiver representation.
//!
//! A fixed point is a coordinate subrepresentation. Its basis vectors split
//! into chains `v^(i)_x -> v^(i+1)_{x+1} -> ... -> v^(e)_{nω}`; the length tuple
//! records, for each vertex `e`, the length of the chain that ends there.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{KSubset, Params};

/// `n` subsets `J_1, …, J_n` of `[nω]`, each of size `kω`, closed under the
/// shift `x ↦ x + 1` from `J_i` to `J_{i+1}` (dropping `nω`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JugglingPattern {
    sets: Vec<Vec<usize>>,
}

impl JugglingPattern {
    pub fn new(sets: Vec<Vec<usize>>, p: &Params) -> Result<Self> {
        let pattern = Self::from_sets_unchecked(sets);
        pattern.validate(p)?;
        Ok(pattern)
    }

    pub(crate) fn from_sets_unchecked(mut sets: Vec<Vec<usize>>) -> Self {
        for s in &mut sets {
            s.sort_unstable();
        }
        Self { sets }
    }

    pub fn validate(&self, p: &Params) -> Result<()> {
        let m = p.size();
        if self.sets.len() != p.n {
            return Err(Error::InvalidPattern(format!("expected {} sets, got {}", p.n, self.sets.len())));
        }
        for (slot, set) in self.sets.iter().enumerate() {
            if set.len() != p.rank() {
                return Err(Error::InvalidPattern(format!(
                    "J_{} has {} elements, expected {}",
                    slot + 1,
                    set.len(),
                    p.rank()
                )));
            }
            if set.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidPattern(format!("J_{} has repeated elements", slot + 1)));
            }
            if set.iter().any(|&x| x == 0 || x > m) {
                return Err(Error::InvalidPattern(format!("J_{} is not inside [1,{m}]", slot + 1)));
            }
        }
        for slot in 0..p.n {
            let next = &self.sets[(slot + 1) % p.n];
            for &x in &self.sets[slot] {
                if x != m && next.binary_search(&(x + 1)).is_err() {
                    return Err(Error::InvalidPattern(format!(
                        "{x} in J_{} but {} not in J_{}",
                        slot + 1,
                        x + 1,
                        (slot + 1) % p.n + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// The sets in vertex order `J_1, …, J_n`, each sorted increasingly.
    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// `J_i` for a cyclic 1-based vertex index.
    pub fn set(&self, i: i64) -> &[usize] {
        let n = self.sets.len() as i64;
        &self.sets[(i - 1).rem_euclid(n) as usize]
    }

    pub fn contains(&self, i: i64, x: usize) -> bool {
        self.set(i).binary_search(&x).is_ok()
    }
}

impl std::fmt::Display for JugglingPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, x) in s.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, ")")
    }
}

/// Chain lengths `(ℓ_1, …, ℓ_n)`, `ℓ_e` being the length of the chain ending
/// at vertex `e`. Valid tuples have entries in `[0, nω]`, sum `knω`, and
/// `{e − ℓ_e mod n}` a permutation of `Z_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LengthTuple {
    lengths: Vec<usize>,
}

impl LengthTuple {
    pub fn new(lengths: Vec<usize>, p: &Params) -> Result<Self> {
        let t = Self { lengths };
        t.validate(p)?;
        Ok(t)
    }

    pub(crate) fn from_vec_unchecked(lengths: Vec<usize>) -> Self {
        Self { lengths }
    }

    pub fn validate(&self, p: &Params) -> Result<()> {
        if self.lengths.len() != p.n {
            return Err(Error::InvalidTuple(format!("expected {} entries, got {}", p.n, self.lengths.len())));
        }
        if let Some(&l) = self.lengths.iter().find(|&&l| l > p.size()) {
            return Err(Error::InvalidTuple(format!("entry {l} exceeds nω = {}", p.size())));
        }
        let sum: usize = self.lengths.iter().sum();
        if sum != p.k * p.size() {
            return Err(Error::InvalidTuple(format!("entries sum to {sum}, expected knω = {}", p.k * p.size())));
        }
        let mut seen = vec![false; p.n];
        for (slot, &l) in self.lengths.iter().enumerate() {
            let start = p.slot(slot as i64 + 1 - l as i64);
            if std::mem::replace(&mut seen[start], true) {
                return Err(Error::InvalidTuple(format!(
                    "chain start residues {{e - ℓ_e}} of {self} are not distinct"
                )));
            }
        }
        Ok(())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.lengths
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    /// `ℓ_j` for a cyclic 1-based index.
    pub fn get(&self, j: i64) -> usize {
        let n = self.lengths.len() as i64;
        self.lengths[(j - 1).rem_euclid(n) as usize]
    }

    /// Parses `"4,0"` or `"(4,0)"`.
    pub fn parse(s: &str, p: &Params) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let lengths = body
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(lengths, p)
    }
}

impl std::fmt::Display for LengthTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.lengths.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// All length tuples of `p`, in lexicographic order.
pub fn enumerate_length_tuples(p: &Params) -> Vec<LengthTuple> {
    let mut out = Vec::new();
    let mut state = Search::new(p);
    state.descend(0, &mut out);
    out
}

/// Same result as [`enumerate_length_tuples`], with the search split on the
/// first entry and the branches run on the rayon pool.
pub fn enumerate_length_tuples_par(p: &Params) -> Vec<LengthTuple> {
    let chunks: Vec<Vec<LengthTuple>> = (0..=p.size())
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut state = Search::new(p);
            if state.push(0, first) {
                state.descend(1, &mut out);
            }
            out
        })
        .collect();
    chunks.into_iter().flatten().collect()
}

struct Search {
    p: Params,
    current: Vec<usize>,
    used: Vec<bool>,
    sum: usize,
}

impl Search {
    fn new(p: &Params) -> Self {
        Self { p: *p, current: Vec::with_capacity(p.n), used: vec![false; p.n], sum: 0 }
    }

    fn push(&mut self, slot: usize, l: usize) -> bool {
        let p = &self.p;
        let target = p.k * p.size();
        let remaining = p.n - slot - 1;
        if self.sum + l > target || self.sum + l + remaining * p.size() < target {
            return false;
        }
        let start = p.slot(slot as i64 + 1 - l as i64);
        if self.used[start] {
            return false;
        }
        self.used[start] = true;
        self.sum += l;
        self.current.push(l);
        true
    }

    fn pop(&mut self, slot: usize) {
        let l = self.current.pop().expect("pop on empty search");
        self.sum -= l;
        let start = self.p.slot(slot as i64 + 1 - l as i64);
        self.used[start] = false;
    }

    fn descend(&mut self, slot: usize, out: &mut Vec<LengthTuple>) {
        if slot == self.p.n {
            out.push(LengthTuple { lengths: self.current.clone() });
            return;
        }
        for l in 0..=self.p.size() {
            if self.push(slot, l) {
                self.descend(slot + 1, out);
                self.pop(slot);
            }
        }
    }
}

/// `ℓ_j = max({r ∈ [nω] : nω − r + 1 ∈ J_{j−r+1}} ∪ {0})`.
pub fn jug_to_lengths(pattern: &JugglingPattern, p: &Params) -> Result<LengthTuple> {
    pattern.validate(p)?;
    let m = p.size();
    let lengths = (1..=p.n as i64)
        .map(|j| (1..=m).rev().find(|&r| pattern.contains(j - r as i64 + 1, m - r + 1)).unwrap_or(0))
        .collect();
    let t = LengthTuple { lengths };
    debug_assert!(t.validate(p).is_ok());
    Ok(t)
}

/// Inverse of [`jug_to_lengths`]: each `ℓ_j ≠ 0` contributes `nω − s + 1` to
/// `J_{j−s+1}` for `s ∈ [ℓ_j]`.
pub fn lengths_to_jug(tuple: &LengthTuple, p: &Params) -> JugglingPattern {
    let m = p.size();
    let mut sets = vec![Vec::with_capacity(p.rank()); p.n];
    for j in 1..=p.n as i64 {
        for s in 1..=tuple.get(j) {
            sets[p.slot(j - s as i64 + 1)].push(m - s + 1);
        }
    }
    let pattern = JugglingPattern::from_sets_unchecked(sets);
    debug_assert!(pattern.validate(p).is_ok(), "{tuple} gave invalid {pattern}");
    pattern
}

/// The fixed point of the component labelled by `I`: the smallest pattern
/// containing index 1 at every vertex of `I`, closed under
/// `v^(i)_x ↦ v^(i+1)_{x+1}`.
pub fn component_fixed_point(subset: &KSubset, p: &Params) -> JugglingPattern {
    let m = p.size();
    let mut sets = vec![Vec::with_capacity(p.rank()); p.n];
    for &i in subset.elements() {
        for x in 1..=m {
            sets[p.slot(i as i64 + x as i64 - 1)].push(x);
        }
    }
    JugglingPattern::from_sets_unchecked(sets)
}
