use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on `n * omega` for anything that enumerates fixed points
/// and then does more than linear work on them.
pub const DEFAULT_MAX_SIZE: usize = 10;

/// The triple `(k, n, omega)` selecting the quiver Grassmannian
/// `Gr_(kω,…,kω)(U_{nω})` of the cyclic quiver on `n` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Params {
    pub k: usize,
    pub n: usize,
    pub omega: usize,
}

impl Params {
    pub fn new(k: usize, n: usize, omega: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("n must be positive".into()));
        }
        if k == 0 || k > n {
            return Err(Error::InvalidParams(format!("need 1 <= k <= n, got k={k}, n={n}")));
        }
        if omega == 0 {
            return Err(Error::InvalidParams("omega must be positive".into()));
        }
        Ok(Self { k, n, omega })
    }

    /// `nω`, the dimension of every vector space of `U_{nω}`.
    pub fn size(&self) -> usize {
        self.n * self.omega
    }

    /// `kω`, the dimension of every subspace.
    pub fn rank(&self) -> usize {
        self.k * self.omega
    }

    /// `ωk(n−k)`, the dimension of the variety.
    pub fn dimension(&self) -> usize {
        self.omega * self.k * (self.n - self.k)
    }

    /// Storage slot of the (1-based, cyclic) vertex `i`: vertex `n` and
    /// vertex `0` share slot `n - 1`.
    pub fn slot(&self, i: i64) -> usize {
        (i - 1).rem_euclid(self.n as i64) as usize
    }

    /// All valid triples with `n * omega <= max_size`, ordered by size, then
    /// `n`, then `k`.
    pub fn all_up_to(max_size: usize) -> Vec<Params> {
        let mut out = Vec::new();
        for size in 1..=max_size {
            for n in 1..=size {
                if size % n != 0 {
                    continue;
                }
                for k in 1..=n {
                    out.push(Params { k, n, omega: size / n });
                }
            }
        }
        out
    }
}

impl std::fmt::Display for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.k, self.n, self.omega)
    }
}

/// Limit on `n * omega` for guarded operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guard {
    pub max_size: usize,
}

impl Default for Guard {
    fn default() -> Self {
        Self { max_size: DEFAULT_MAX_SIZE }
    }
}

impl Guard {
    pub fn new(max_size: usize) -> Self {
        Self { max_size }
    }

    pub fn check(&self, p: &Params) -> Result<()> {
        if p.size() > self.max_size {
            Err(Error::TooLarge { size: p.size(), max: self.max_size })
        } else {
            Ok(())
        }
    }
}

/// A `k`-element subset of `[n]`, labelling an irreducible component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KSubset {
    elements: Vec<usize>,
}

impl KSubset {
    pub fn new(mut elements: Vec<usize>, p: &Params) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if elements.len() != p.k {
            return Err(Error::InvalidParams(format!(
                "subset {elements:?} does not have exactly k={} distinct elements",
                p.k
            )));
        }
        if elements.iter().any(|&e| e == 0 || e > p.n) {
            return Err(Error::InvalidParams(format!("subset {elements:?} is not inside [1,{}]", p.n)));
        }
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, i: usize) -> bool {
        self.elements.binary_search(&i).is_ok()
    }

    /// All `k`-subsets of `[n]` in lexicographic order.
    pub fn all(p: &Params) -> Vec<KSubset> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(p.k);
        fn rec(start: usize, p: &Params, current: &mut Vec<usize>, out: &mut Vec<KSubset>) {
            if current.len() == p.k {
                out.push(KSubset { elements: current.clone() });
                return;
            }
            for e in start..=p.n {
                if p.n - e + 1 < p.k - current.len() {
                    break;
                }
                current.push(e);
                rec(e + 1, p, current, out);
                current.pop();
            }
        }
        rec(1, p, &mut current, &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_triples() {
        assert!(Params::new(0, 2, 1).is_err());
        assert!(Params::new(3, 2, 1).is_err());
        assert!(Params::new(1, 2, 0).is_err());
        assert!(Params::new(1, 0, 1).is_err());
        assert_eq!(Params::new(1, 2, 2).unwrap().dimension(), 2);
    }

    #[test]
    fn slots_wrap() {
        let p = Params::new(1, 3, 1).unwrap();
        assert_eq!(p.slot(1), 0);
        assert_eq!(p.slot(3), 2);
        assert_eq!(p.slot(0), 2);
        assert_eq!(p.slot(-2), 0);
    }

    #[test]
    fn subsets_count() {
        let p = Params::new(2, 5, 1).unwrap();
        assert_eq!(KSubset::all(&p).len(), 10);
        assert!(KSubset::new(vec![1, 1], &p).is_err());
        assert!(KSubset::new(vec![1, 6], &p).is_err());
    }

    #[test]
    fn guard() {
        let p = Params::new(1, 11, 1).unwrap();
        assert_eq!(Guard::default().check(&p), Err(Error::TooLarge { size: 11, max: 10 }));
        assert!(Guard::new(11).check(&p).is_ok());
    }

    #[test]
    fn all_up_to_counts() {
        // sizes 1..=4: (1,1,s) for each s, plus n=2 (2 triples) for s=2,4, n=3 (3) for s=3, n=4 (4) for s=4
        assert_eq!(Params::all_up_to(4).len(), 4 + 2 + 2 + 3 + 4);
    }
}
