//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! Values are kept as sparse rational combinations of powers of `ζ_n`. That
//! representation is not unique, so comparisons reduce modulo the cyclotomic
//! polynomial `Φ_n` first.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::signatures::Rational;

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    n: u32,
    /// exponent of `ζ_n` ↦ coefficient; no zero coefficients stored
    terms: BTreeMap<u32, Rational>,
}

fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = div_monic(&num, &cyclotomic_poly(d));
    }
    let poly = Arc::new(num);
    cache.lock().unwrap().insert(n, poly.clone());
    poly
}

/// Exact quotient of integer polynomials (coefficients low to high) by a monic divisor.
fn div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

impl Cyclotomic {
    pub fn zero(n: u32) -> Self {
        Cyclotomic { n: n.max(1), terms: BTreeMap::new() }
    }

    pub fn from_rational(n: u32, q: Rational) -> Self {
        let mut c = Self::zero(n);
        if !q.is_zero() {
            c.terms.insert(0, q);
        }
        c
    }

    pub fn from_integer(n: u32, k: i64) -> Self {
        Self::from_rational(n, Rational::from_integer(k))
    }

    /// `ζ_n^k`.
    pub fn root(n: u32, k: i64) -> Self {
        let mut c = Self::zero(n);
        c.terms.insert(k.rem_euclid(n as i64) as u32, Rational::one());
        c
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    /// Same value expressed over `ζ_m`, where `n | m`.
    pub fn lift(&self, m: u32) -> Self {
        assert_eq!(m % self.n, 0, "cannot lift level {} to {m}", self.n);
        let f = m / self.n;
        Cyclotomic { n: m, terms: self.terms.iter().map(|(&k, &c)| (k * f, c)).collect() }
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = self.n.lcm(&other.n);
        (self.lift(m), other.lift(m))
    }

    fn add_term(&mut self, k: u32, c: Rational) {
        let k = k % self.n;
        let e = self.terms.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.common(other);
        for (&k, &c) in &b.terms {
            a.add_term(k, c);
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let mut out = Self::zero(a.n);
        for (&i, &c) in &a.terms {
            for (&j, &d) in &b.terms {
                out.add_term(i + j, c * d);
            }
        }
        out
    }

    pub fn scale(&self, q: Rational) -> Self {
        if q.is_zero() {
            return Self::zero(self.n);
        }
        Cyclotomic { n: self.n, terms: self.terms.iter().map(|(&k, &c)| (k, c * q)).collect() }
    }

    /// Complex conjugate: `ζ^k ↦ ζ^{−k}`.
    pub fn conj(&self) -> Self {
        Cyclotomic { n: self.n, terms: self.terms.iter().map(|(&k, &c)| ((self.n - k) % self.n, c)).collect() }
    }

    /// Image under the Galois automorphism `ζ ↦ ζ^s` (`s` coprime to the level).
    pub fn galois(&self, s: i64) -> Self {
        let mut out = Self::zero(self.n);
        for (&k, &c) in &self.terms {
            out.add_term(((k as i64 * s).rem_euclid(self.n as i64)) as u32, c);
        }
        out
    }

    /// Coefficients in the power basis `1, ζ, …, ζ^{φ(n)−1}`.
    pub fn canonical(&self) -> Vec<Rational> {
        let phi = cyclotomic_poly(self.n);
        let deg = phi.len() - 1;
        let mut dense = vec![Rational::zero(); self.n.max(deg as u32) as usize];
        for (&k, &c) in &self.terms {
            dense[k as usize] += c;
        }
        for i in (deg..dense.len()).rev() {
            let c = dense[i];
            if c.is_zero() {
                continue;
            }
            for (j, &d) in phi.iter().enumerate() {
                dense[i - deg + j] -= c * Rational::from_integer(d);
            }
        }
        dense.truncate(deg);
        dense
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() || self.canonical().iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it is one.
    pub fn to_rational(&self) -> Option<Rational> {
        let c = self.canonical();
        if c.iter().skip(1).all(Zero::is_zero) {
            Some(c.first().copied().unwrap_or_else(Rational::zero))
        } else {
            None
        }
    }

    /// The value as an integer, if it is one.
    pub fn to_integer(&self) -> Option<i64> {
        self.to_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonical();
        let mut parts = Vec::new();
        for (k, q) in c.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
            let root = match k {
                0 => String::new(),
                1 => format!("z{}", self.n),
                _ => format!("z{}^{k}", self.n),
            };
            parts.push(match (root.is_empty(), *q == Rational::one()) {
                (true, _) => q.to_string(),
                (false, true) => root,
                (false, false) if *q == -Rational::one() => format!("-{root}"),
                (false, false) => format!("{q}*{root}"),
            });
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> Cyclotomic {
        Cyclotomic::root(n, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(310).len() - 1, 120);
    }

    #[test]
    fn sums_of_roots() {
        // 1 + ζ + … + ζ^{n−1} = 0
        for n in [2u32, 3, 5, 6, 12, 13] {
            let s = (0..n as i64).fold(Cyclotomic::zero(n), |acc, k| acc.add(&z(n, k)));
            assert!(s.is_zero(), "n = {n}");
        }
        assert_eq!(z(4, 2).to_integer(), Some(-1));
        assert_eq!(z(3, 1).add(&z(3, 2)).to_integer(), Some(-1));
        assert_eq!(z(5, 1).to_rational(), None);
    }

    #[test]
    fn mixed_levels() {
        assert_eq!(z(2, 1).mul(&z(3, 1)), z(6, 5));
        assert_eq!(z(4, 1).mul(&z(4, 1).conj()).to_integer(), Some(1));
        assert_eq!(z(6, 1).lift(12), z(12, 2));
        assert_eq!(z(7, 3).galois(2), z(7, 6));
    }

    #[test]
    fn display() {
        assert_eq!(Cyclotomic::from_integer(4, 3).to_string(), "3");
        assert_eq!(z(3, 2).to_string(), "-1 - z3");
        assert_eq!(Cyclotomic::zero(5).to_string(), "0");
    }
}
