//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the library routine it is used to check.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cyclic_quiver::poly::Polynomial;
use cyclic_quiver::{AffinePermutation, Params};
use num_rational::BigRational;
use num_traits::Zero;

pub fn params(k: usize, n: usize, omega: usize) -> Params {
    Params::new(k, n, omega).unwrap()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn subsets(m: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << m)
        .filter(|mask| mask.count_ones() as usize == size)
        .map(|mask| (1..=m).filter(|x| mask & (1 << (x - 1)) != 0).collect())
        .collect()
}

/// Every `(J_1, …, J_n)` of `kω`-subsets of `[nω]` with
/// `{x + 1 : x ∈ J_i, x < nω} ⊆ J_{i+1}`, indices cyclic. Each `J_{i+1}` is
/// chosen among the subsets containing the shift of `J_i`.
pub fn all_patterns(p: &Params) -> BTreeSet<Vec<Vec<usize>>> {
    let (m, n) = (p.size(), p.n);
    let choices = subsets(m, p.rank());
    let shift = |s: &[usize]| -> Vec<usize> { s.iter().filter(|&&x| x < m).map(|x| x + 1).collect() };
    let contains_all = |big: &[usize], small: &[usize]| small.iter().all(|x| big.contains(x));
    let mut out = BTreeSet::new();
    let mut stack: Vec<Vec<Vec<usize>>> = choices.iter().map(|c| vec![c.clone()]).collect();
    while let Some(prefix) = stack.pop() {
        let need = shift(prefix.last().unwrap());
        if prefix.len() == n {
            if contains_all(&prefix[0], &need) {
                out.insert(prefix);
            }
            continue;
        }
        for c in choices.iter().filter(|c| contains_all(c, &need)) {
            let mut next = prefix.clone();
            next.push(c.clone());
            stack.push(next);
        }
    }
    out
}

/// Windows `[f(1), …, f(n)]` with `i ≤ f(i) ≤ i + nω`, distinct residues
/// and `Σ (f(i) − i) = knω`, by depth-first search over positions.
pub fn all_bounded_windows(p: &Params) -> BTreeSet<Vec<i64>> {
    struct Search {
        n: i64,
        m: i64,
        window: Vec<i64>,
        out: BTreeSet<Vec<i64>>,
    }
    impl Search {
        fn go(&mut self, i: usize, used: u64, remaining: i64) {
            let left = (self.window.len() - i) as i64;
            if remaining < 0 || remaining > left * self.m {
                return;
            }
            if i == self.window.len() {
                self.out.insert(self.window.clone());
                return;
            }
            let pos = i as i64 + 1;
            for shift in 0..=self.m {
                let v = pos + shift;
                let bit = 1u64 << v.rem_euclid(self.n);
                if used & bit == 0 {
                    self.window[i] = v;
                    self.go(i + 1, used | bit, remaining - shift);
                }
            }
        }
    }
    let mut s = Search { n: p.n as i64, m: p.size() as i64, window: vec![0; p.n], out: BTreeSet::new() };
    s.go(0, 0, (p.k * p.size()) as i64);
    s.out
}

/// `i ≤ f(i) ≤ i + nω` on the window and `Σ (f(i) − i) = knω`.
pub fn is_bounded(f: &AffinePermutation, p: &Params) -> bool {
    let m = p.size() as i64;
    let shifts: Vec<i64> = f.window().iter().enumerate().map(|(j, v)| v - j as i64 - 1).collect();
    f.n() == p.n && shifts.iter().all(|d| (0..=m).contains(d)) && shifts.iter().sum::<i64>() == (p.k * p.size()) as i64
}

/// `#{(i, j) : 1 ≤ i ≤ n, i < j, f(i) > f(j)}` by scanning `j` up to the
/// point where no inversion is possible.
pub fn inversions(f: &AffinePermutation) -> u64 {
    let n = f.n() as i64;
    let w = f.window();
    let spread = w.iter().enumerate().map(|(i, v)| v - i as i64).max().unwrap()
        - w.iter().enumerate().map(|(i, v)| v - i as i64).min().unwrap();
    let mut count = 0;
    for i in 1..=n {
        for j in i + 1..=i + spread + n {
            if f.eval(i) > f.eval(j) {
                count += 1;
            }
        }
    }
    count
}

/// Bruhat covers of `f` by trying every swap and computing lengths from
/// scratch.
pub fn covers_by_length(f: &AffinePermutation) -> BTreeSet<AffinePermutation> {
    let n = f.n() as i64;
    let l = inversions(f);
    let w = f.window();
    let spread = w.iter().enumerate().map(|(i, v)| v - i as i64).max().unwrap()
        - w.iter().enumerate().map(|(i, v)| v - i as i64).min().unwrap();
    let mut out = BTreeSet::new();
    for a in 1..=n {
        for b in a + 1..=a + spread + n {
            if (b - a) % n == 0 || f.eval(b) > f.eval(a) {
                continue;
            }
            let window = (1..=n)
                .map(|i| {
                    let r = (i - a).rem_euclid(n);
                    if r == 0 {
                        f.eval(i - a + b)
                    } else if (i - b).rem_euclid(n) == 0 {
                        f.eval(i - b + a)
                    } else {
                        f.eval(i)
                    }
                })
                .collect();
            let g = AffinePermutation::new(window).unwrap();
            if inversions(&g) + 1 == l {
                out.insert(g);
            }
        }
    }
    out
}

/// Remainder of `p` on division by `d` in grlex order, written against the
/// public term iterator only.
pub fn remainder(p: &Polynomial, d: &Polynomial) -> Polynomial {
    let nv = p.nvars();
    let (lm, lc) = d.terms().next().map(|(m, c)| (m.0.clone(), c.clone())).expect("nonzero divisor");
    let mut rest = p.clone();
    let mut rem: Vec<(Vec<u32>, BigRational)> = Vec::new();
    loop {
        let lead = rest.terms().next().map(|(m, c)| (m.0.clone(), c.clone()));
        let Some((m, c)) = lead else { break };
        if m.iter().zip(&lm).all(|(a, b)| a >= b) {
            let e: Vec<u32> = m.iter().zip(&lm).map(|(a, b)| a - b).collect();
            let t = Polynomial::from_terms(nv, [(e, &c / &lc)]).unwrap();
            rest = &rest - &(&t * d);
        } else {
            rem.push((m.clone(), c.clone()));
            rest = &rest - &Polynomial::from_terms(nv, [(m, c)]).unwrap();
        }
    }
    rem.retain(|(_, c)| !c.is_zero());
    Polynomial::from_terms(nv, rem).unwrap()
}
