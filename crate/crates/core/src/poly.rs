//! Sparse polynomials over `Q` in `ε_1, …, ε_n, δ`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::moment_graph::Character;

/// Exponent vector ordered graded-lexicographically: total degree first,
/// then lexicographic with the first variable largest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `nvars` variables; in the torus ring they are `ε_1, …, ε_n` followed by
/// `δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(vec![0; nvars]), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars, "variable {idx} out of range");
        let mut e = vec![0; nvars];
        e[idx] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(e), BigRational::one());
        p
    }

    /// `Σ c_i ε_i + d δ` in the ring with `n + 1` variables.
    pub fn from_character(ch: &Character) -> Self {
        let nvars = ch.eps.len() + 1;
        let mut p = Self::zero(nvars);
        for (i, &c) in ch.eps.iter().chain(std::iter::once(&ch.delta)).enumerate() {
            let mut e = vec![0; nvars];
            e[i] = 1;
            p.add_term(Monomial(e), rat(c));
        }
        p
    }

    /// Builds from `(exponents, coefficient)` pairs; repeated monomials add up.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch(format!(
                    "exponent vector of length {}, ring has {nvars}",
                    e.len()
                )));
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Degree of a nonzero homogeneous polynomial; `None` for zero or
    /// inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(format!("{} vs {} variables", self.nvars, other.nvars)));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scale(&-BigRational::one()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(e), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Replaces variable `idx` by `value`, which must have degree at most 1.
    pub fn substitute(&self, idx: usize, value: &Self) -> Result<Self> {
        self.check(value)?;
        if idx >= self.nvars {
            return Err(Error::DimensionMismatch(format!("variable {idx} out of range")));
        }
        if value.terms.keys().any(|m| m.degree() > 1) {
            return Err(Error::DimensionMismatch("substituted value has degree above 1".into()));
        }
        let mut powers = vec![Self::one(self.nvars)];
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let k = m.0[idx] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = m.0.clone();
            rest[idx] = 0;
            let mono = Self::from_terms(self.nvars, [(rest, c.clone())]).expect("same ring");
            out = &out + &(&mono * &powers[k]);
        }
        Ok(out)
    }

    /// Renames variable `i` to `perm[i]`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; self.nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[perm[i]] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Quotient and remainder of division by a single polynomial in grlex
    /// order. The remainder vanishes exactly when `divisor` divides `self`.
    pub fn divide(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check(divisor)?;
        let (lm, lc) = divisor
            .leading()
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or_else(|| Error::DimensionMismatch("division by zero".into()))?;
        let mut q = Self::zero(self.nvars);
        let mut r = Self::zero(self.nvars);
        let mut p = self.clone();
        while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if lm.divides(&m) {
                let e: Vec<u32> = m.0.iter().zip(&lm.0).map(|(a, b)| a - b).collect();
                let t = Self::from_terms(self.nvars, [(e, &c / &lc)]).expect("same ring");
                p = &p - &(&t * divisor);
                q = &q + &t;
            } else {
                r.add_term(m.clone(), c.clone());
                p.terms.remove(&m);
            }
        }
        Ok((q, r))
    }

    /// `(exponents, "p/q")` pairs in decreasing monomial order.
    pub fn to_term_strings(&self) -> Vec<(Vec<u32>, String)> {
        self.terms().map(|(m, c)| (m.0.clone(), c.to_string())).collect()
    }

    pub fn from_term_strings(nvars: usize, terms: &[(Vec<u32>, String)]) -> Result<Self> {
        let parsed = terms
            .iter()
            .map(|(e, s)| {
                s.parse::<BigRational>().map(|c| (e.clone(), c)).map_err(|err| Error::Parse(format!("{s:?}: {err}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(nvars, parsed)
    }

    fn var_name(&self, i: usize) -> String {
        if i + 1 == self.nvars {
            "d".into()
        } else {
            format!("e{}", i + 1)
        }
    }
}

impl Polynomial {
    /// Text form with caller-chosen variable names, terms in decreasing order.
    pub fn format_with(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars, "one name per variable");
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms().enumerate() {
            if idx == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let mag = c.abs();
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { names[i].to_string() } else { format!("{}^{e}", names[i]) })
                    .collect();
            match (vars.is_empty(), mag.is_one()) {
                (true, _) => out.push_str(&mag.to_string()),
                (false, true) => out.push_str(&vars.join("*")),
                (false, false) => out.push_str(&format!("{mag}*{}", vars.join("*"))),
            }
        }
        out
    }
}

impl std::fmt::Display for Polynomial {
    /// Variables print as `e1, …, en, d`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| self.var_name(i)).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.format_with(&refs))
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomials from different rings")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomials from different rings")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomials from different rings")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-BigRational::one())
    }
}

/// Whether `alpha` divides `a − b`: solve `alpha = 0` for a variable with
/// coefficient `±1`, substitute, and test for zero.
pub fn congruent_mod_linear(a: &Polynomial, b: &Polynomial, alpha: &Character) -> Result<bool> {
    let lin = Polynomial::from_character(alpha);
    if lin.nvars() != a.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "character has {} variables, ring has {}",
            lin.nvars(),
            a.nvars()
        )));
    }
    let coeffs: Vec<i64> = alpha.eps.iter().copied().chain(std::iter::once(alpha.delta)).collect();
    let idx = coeffs.iter().position(|c| c.abs() == 1).ok_or_else(|| Error::DegenerateCharacter(alpha.to_string()))?;
    // x_idx = −(alpha − c x_idx) / c
    let c = rat(coeffs[idx]);
    let x = Polynomial::var(lin.nvars(), idx);
    let solved = (&lin - &x.scale(&c)).scale(&(-c.recip()));
    Ok(a.checked_sub(b)?.substitute(idx, &solved)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(eps: &[i64], delta: i64) -> Character {
        Character { eps: eps.to_vec(), delta }
    }

    fn e(i: usize) -> Polynomial {
        Polynomial::var(3, i)
    }

    #[test]
    fn product_expansion() {
        let a = Polynomial::from_character(&ch(&[1, -1], 1));
        let b = Polynomial::from_character(&ch(&[1, -1], 3));
        let (e1, e2, d) = (e(0), e(1), e(2));
        let two = rat(2);
        let expected = [
            e1.pow(2),
            (&e1 * &e2).scale(&-two.clone()),
            e2.pow(2),
            (&e1 * &d).scale(&rat(4)),
            (&e2 * &d).scale(&rat(-4)),
            d.pow(2).scale(&rat(3)),
        ]
        .iter()
        .fold(Polynomial::zero(3), |acc, t| &acc + t);
        assert_eq!(&a * &b, expected);
        assert_eq!((&a * &b).to_string(), "e1^2 - 2*e1*e2 + 4*e1*d + e2^2 - 4*e2*d + 3*d^2");
        assert_eq!(&a + &Polynomial::zero(3), a);
        assert_eq!(&a - &a, Polynomial::zero(3));
    }

    #[test]
    fn substitution() {
        let a = Polynomial::from_character(&ch(&[1, -1], 1));
        let value = &e(1) - &e(2);
        assert!(a.substitute(0, &value).unwrap().is_zero());
        assert!(a.substitute(0, &e(1).pow(2)).is_err());
        assert!(a.substitute(0, &Polynomial::var(4, 0)).is_err());
        let sq = a.pow(2);
        assert_eq!(sq.substitute(2, &Polynomial::zero(3)).unwrap(), (&e(0) - &e(1)).pow(2));
    }

    #[test]
    fn congruences() {
        let alpha = ch(&[1, -1], 1);
        let a = Polynomial::from_character(&alpha);
        let zero = Polynomial::zero(3);
        assert!(congruent_mod_linear(&a, &zero, &alpha).unwrap());
        let prod = &a * &Polynomial::from_character(&ch(&[1, -1], 3));
        assert!(congruent_mod_linear(&prod, &zero, &alpha).unwrap());
        assert!(!congruent_mod_linear(&e(2), &zero, &alpha).unwrap());
        assert!(matches!(congruent_mod_linear(&e(2), &zero, &ch(&[2, -2], 4)), Err(Error::DegenerateCharacter(_))));
        // only δ has a unit coefficient
        assert!(congruent_mod_linear(&Polynomial::from_character(&ch(&[2, 0], 1)), &zero, &ch(&[2, 0], 1)).unwrap());
    }

    #[test]
    fn division_remainder() {
        let alpha = Polynomial::from_character(&ch(&[1, -1], 1));
        let f = &(&alpha * &e(2)) + &e(0);
        let (q, r) = f.divide(&alpha).unwrap();
        assert_eq!(&(&q * &alpha) + &r, f);
        assert!(!r.is_zero());
        let (_, r) = (&alpha * &alpha).divide(&alpha).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn degrees_and_renaming() {
        let a = &(&e(0) * &e(1)) + &e(2).pow(2);
        assert_eq!(a.homogeneous_degree(), Some(2));
        assert_eq!((&a + &e(0)).homogeneous_degree(), None);
        assert_eq!(Polynomial::one(3).homogeneous_degree(), Some(0));
        assert_eq!(Polynomial::zero(3).homogeneous_degree(), None);
        assert_eq!(e(0).permute_vars(&[1, 0, 2]), e(1));
        let terms = a.to_term_strings();
        assert_eq!(Polynomial::from_term_strings(3, &terms).unwrap(), a);
        assert!(Polynomial::from_term_strings(3, &[(vec![1, 0, 0], "x".into())]).is_err());
        assert!(Polynomial::from_term_strings(3, &[(vec![1, 0], "1".into())]).is_err());
        assert_eq!(Polynomial::from_term_strings(3, &[(vec![0, 0, 0], "-1/2".into())]).unwrap().to_string(), "-1/2");
    }
}
