use num_traits::{One, Zero};
use serde::Serialize;

use super::GeneratingTuple;
use crate::error::{Error, Result};
use crate::groups::{Elem, FiniteGroup, Subgroup};
use crate::signatures::{Rational, Signature};

/// The action of a subgroup `H` on the same surface: its signature and the
/// genus of `S/H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientData {
    pub signature: Signature,
    pub genus: u32,
    pub index: usize,
}

/// Cycle lengths of `x` acting on left cosets by left multiplication.
fn coset_cycles(g: &FiniteGroup, coset: &[u32], reps: &[Elem], x: Elem) -> Vec<u32> {
    let mut seen = vec![false; reps.len()];
    let mut out = Vec::new();
    for start in 0..reps.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut c = start;
        while !seen[c] {
            seen[c] = true;
            len += 1;
            c = coset[g.mul(x, reps[c])] as usize;
        }
        out.push(len);
    }
    out
}

/// Signature of `θ⁻¹(H)` and the genus of `S/H`. Each elliptic image `x_i`
/// permutes the cosets of `H`; a cycle of length `c` contributes a period
/// `m_i / c` when that exceeds 1, and Riemann–Hurwitz for `θ⁻¹(H) ≤ Γ`
/// gives the orbit genus.
pub fn quotient_data(t: &GeneratingTuple, h: &Subgroup) -> Result<QuotientData> {
    let g = t.group();
    if !h.is_closed_in(g) {
        return Err(Error::Invalid("not a subgroup".into()));
    }
    let (coset, count) = h.left_coset_index(g);
    let mut reps = vec![usize::MAX; count];
    for x in g.elements() {
        let c = coset[x] as usize;
        if reps[c] == usize::MAX {
            reps[c] = x;
        }
    }
    let mut periods = Vec::new();
    for (&x, &m) in t.elliptic().iter().zip(t.periods()) {
        for c in coset_cycles(g, &coset, &reps, x) {
            if m % c != 0 {
                return Err(Error::Inconsistent(format!("cycle length {c} does not divide period {m}")));
            }
            if m / c >= 2 {
                periods.push(m / c);
            }
        }
    }
    // 2γ_H − 2 + Σ(1 − 1/m') = [G:H]·(2γ − 2 + Σ(1 − 1/m_i))
    let area = t.signature().area() * Rational::from_integer(count as i64);
    let branch: Rational = periods.iter().map(|&m| Rational::one() - Rational::new(1, m as i64)).sum();
    let two_gamma = area - branch + Rational::from_integer(2);
    if !two_gamma.is_integer() || two_gamma.to_integer() % 2 != 0 || two_gamma < Rational::zero() {
        return Err(Error::Inconsistent(format!("non-integral quotient genus from 2γ = {two_gamma}")));
    }
    let gamma_h = (two_gamma.to_integer() / 2) as u32;
    // A finite-index subgroup of a cocompact Fuchsian group is again one, so this is hyperbolic.
    let signature = Signature::new(gamma_h, periods)?;
    Ok(QuotientData { signature, genus: gamma_h, index: count })
}
