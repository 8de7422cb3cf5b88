//! Fuchsian signatures `(γ; m1, …, mk)` with exact rational arithmetic.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedSub, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};

pub type Rational = Ratio<i64>;

/// Default cap on the number of elliptic periods considered by the enumerator.
pub const DEFAULT_MAX_PERIODS: usize = 64;
/// Enumeration stops with an error beyond this many signatures.
pub const MAX_SIGNATURES: usize = 200_000;

/// A cocompact Fuchsian signature. Periods are kept sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    gamma: u32,
    periods: Vec<u32>,
}

impl Signature {
    /// Builds a hyperbolic signature, sorting the periods.
    pub fn new(gamma: u32, mut periods: Vec<u32>) -> Result<Self> {
        if let Some(&m) = periods.iter().find(|&&m| m < 2) {
            return Err(Error::Invalid(format!("period {m} is smaller than 2")));
        }
        periods.sort_unstable();
        let sig = Signature { gamma, periods };
        if sig.area() <= Rational::zero() {
            return Err(Error::NotHyperbolic(sig.to_string()));
        }
        Ok(sig)
    }

    /// Triangle signature `(0; l, m, n)`.
    pub fn triangle(l: u32, m: u32, n: u32) -> Result<Self> {
        Self::new(0, vec![l, m, n])
    }

    pub fn gamma(&self) -> u32 {
        self.gamma
    }

    pub fn periods(&self) -> &[u32] {
        &self.periods
    }

    pub fn num_periods(&self) -> usize {
        self.periods.len()
    }

    pub fn is_triangle(&self) -> bool {
        self.gamma == 0 && self.periods.len() == 3
    }

    /// `2γ − 2 + Σ(1 − 1/m_i)`, i.e. the normalized hyperbolic area, equal to `2/ρ`.
    pub fn area(&self) -> Rational {
        area_of(self.gamma, &self.periods)
    }
}

fn area_of(gamma: u32, periods: &[u32]) -> Rational {
    let mut a = Rational::from_integer(2 * gamma as i64 - 2);
    for &m in periods {
        a += Rational::one() - Rational::new(1, m as i64);
    }
    a
}

impl Ord for Signature {
    /// Orders by genus, then number of periods, then periods; this matches the
    /// customary layout of printed signature lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.gamma
            .cmp(&other.gamma)
            .then(self.periods.len().cmp(&other.periods.len()))
            .then_with(|| self.periods.cmp(&other.periods))
    }
}

impl PartialOrd for Signature {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.gamma)?;
        if self.periods.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self.periods.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Signature {
    type Err = Error;

    /// Accepts `"g;m1,m2,..."`, `"g;-"` and exponent shorthand such as `"0;2^5"`.
    /// A missing `g;` prefix means genus 0.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (g, rest) = match s.split_once(';') {
            Some((g, rest)) => (g.trim(), rest.trim()),
            None => ("0", s),
        };
        let gamma: u32 = g.parse().map_err(|_| parse_err(g, "orbit genus must be a non-negative integer"))?;
        let rest = rest.trim_start_matches('(').trim_end_matches(')');
        let mut periods = Vec::new();
        if rest != "-" && !rest.is_empty() {
            for tok in rest.split(',') {
                let tok = tok.trim();
                let (base, exp) = match tok.split_once('^') {
                    Some((b, e)) => (b.trim(), e.trim()),
                    None => (tok, "1"),
                };
                let m: u32 = base.parse().map_err(|_| parse_err(tok, "period must be an integer"))?;
                let e: usize = exp.parse().map_err(|_| parse_err(tok, "exponent must be an integer"))?;
                if m < 2 {
                    return Err(parse_err(tok, "periods must be at least 2"));
                }
                periods.extend(std::iter::repeat_n(m, e));
            }
        }
        Signature::new(gamma, periods).map_err(|e| match e {
            Error::NotHyperbolic(_) => parse_err(s, "signature is not hyperbolic"),
            other => other,
        })
    }
}

/// Parses a positive rational such as `"84"`, `"5/2"` or `"1/2"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let r = match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| parse_err(s, "bad numerator"))?;
            let d: i64 = d.trim().parse().map_err(|_| parse_err(s, "bad denominator"))?;
            if d == 0 {
                return Err(parse_err(s, "zero denominator"));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(s.parse().map_err(|_| parse_err(s, "not a rational number"))?),
    };
    if r <= Rational::zero() {
        return Err(parse_err(s, "must be positive"));
    }
    Ok(r)
}

/// ρ = |G|/(g−1) for any smooth quotient of Γ(σ); solves `2/ρ = area(σ)`.
pub fn rho_of(sig: &Signature) -> Rational {
    Rational::from_integer(2) / sig.area()
}

/// Genus of a surface kernel of index `order` in Γ(σ), by Riemann–Hurwitz.
pub fn genus_of_kernel(sig: &Signature, order: u64) -> Result<u64> {
    let twice = sig.area() * Rational::from_integer(order as i64);
    // 2(g-1) = |G|·area must be an even integer, and each period must divide |G|.
    let divides = sig.periods.iter().all(|&m| order.is_multiple_of(m as u64));
    if !divides || !twice.is_integer() || twice.to_integer() % 2 != 0 {
        return Err(Error::NoSmoothKernel { sig: sig.to_string(), order });
    }
    Ok((twice.to_integer() / 2 + 1) as u64)
}

/// Real dimension `6γ − 6 + 2k` of the Teichmüller space of Γ(σ).
pub fn teich_dim(sig: &Signature) -> i64 {
    6 * sig.gamma as i64 - 6 + 2 * sig.periods.len() as i64
}

/// All hyperbolic signatures with the given ρ, sorted, with the default period cap.
pub fn enumerate_signatures(rho: Rational, period_filter: Option<&dyn Fn(u32) -> bool>) -> Result<Vec<Signature>> {
    enumerate_signatures_capped(rho, period_filter, DEFAULT_MAX_PERIODS)
}

/// Enumerates every signature with `rho_of = rho`.
///
/// With `α = 2/ρ` the defining equation reads `2γ − 2 + k − α = Σ 1/m_i`; the
/// right side lies in `(0, k/2]`, which bounds `2γ + k/2 ≤ α + 2`. For fixed
/// `(γ, k)` the periods are found smallest-first: the smallest period `s`
/// satisfies `β/k ≤ 1/s`, and the remainder is solved recursively.
pub fn enumerate_signatures_capped(
    rho: Rational,
    period_filter: Option<&dyn Fn(u32) -> bool>,
    max_periods: usize,
) -> Result<Vec<Signature>> {
    if rho <= Rational::zero() {
        return Err(Error::Invalid(format!("rho must be positive, got {rho}")));
    }
    let alpha = Rational::from_integer(2) / rho;
    let bound = alpha + Rational::from_integer(2);
    let mut out = Vec::new();
    let mut search = Search::default();
    let accept = |m: u32| period_filter.is_none_or(|f| f(m));
    let mut gamma: i64 = 0;
    while Rational::from_integer(2 * gamma) <= bound {
        let mut k: i64 = 0;
        while Rational::new(4 * gamma + k, 2) <= bound {
            if k as usize > max_periods {
                return Err(Error::BudgetExceeded(format!("rho = {rho} allows more than {max_periods} periods")));
            }
            let beta = Rational::from_integer(2 * gamma - 2 + k) - alpha;
            if k == 0 {
                if beta.is_zero() {
                    out.push(Signature { gamma: gamma as u32, periods: vec![] });
                }
            } else if beta > Rational::zero() {
                for periods in solve_reciprocals(k as usize, beta, 2, &accept, &mut search)? {
                    out.push(Signature { gamma: gamma as u32, periods });
                }
                if out.len() > MAX_SIGNATURES {
                    return Err(too_many(rho));
                }
            }
            k += 1;
        }
        gamma += 1;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Recursion steps allowed per enumeration.
const MAX_STEPS: u64 = 2_000_000;

#[derive(Default)]
struct Search {
    memo: HashMap<(usize, Rational, u32), Vec<Vec<u32>>>,
    steps: u64,
}

fn too_many(rho: Rational) -> Error {
    Error::BudgetExceeded(format!("rho = {rho} has more than {MAX_SIGNATURES} signatures"))
}

/// Non-decreasing sequences of `k` integers `≥ min` with `Σ 1/m = beta`.
fn solve_reciprocals(
    k: usize,
    beta: Rational,
    min: u32,
    accept: &dyn Fn(u32) -> bool,
    search: &mut Search,
) -> Result<Vec<Vec<u32>>> {
    if let Some(hit) = search.memo.get(&(k, beta, min)) {
        return Ok(hit.clone());
    }
    let mut out = Vec::new();
    if k == 1 {
        let inv = beta.recip();
        if inv.is_integer() && inv.to_integer() >= min as i64 && accept(inv.to_integer() as u32) {
            out.push(vec![inv.to_integer() as u32]);
        }
    } else {
        let mut s = min.max(2);
        // k/s ≥ beta bounds the smallest period.
        while Rational::new(k as i64, s as i64) >= beta {
            search.steps += 1;
            if search.steps > MAX_STEPS {
                return Err(Error::BudgetExceeded(format!("signature search exceeded {MAX_STEPS} steps")));
            }
            let rest = beta
                .checked_sub(&Rational::new(1, s as i64))
                .ok_or_else(|| Error::BudgetExceeded("periods exceed the exact arithmetic range".into()))?;
            if rest > Rational::zero() && accept(s) {
                for tail in solve_reciprocals(k - 1, rest, s, accept, search)? {
                    let mut v = Vec::with_capacity(k);
                    v.push(s);
                    v.extend(tail);
                    out.push(v);
                }
                if out.len() > MAX_SIGNATURES {
                    return Err(Error::BudgetExceeded(format!("more than {MAX_SIGNATURES} signatures")));
                }
            }
            s = s.checked_add(1).ok_or_else(|| Error::BudgetExceeded("period exceeds u32".into()))?;
        }
    }
    search.memo.insert((k, beta, min), out.clone());
    Ok(out)
}
