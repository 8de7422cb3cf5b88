//! Subgroups through a Sylow subgroup of prime order, and restriction of an
//! action to them.

use std::collections::BTreeSet;

use crate::epi::{quotient_data, EpimorphismSet};
use crate::error::{Error, Result};
use crate::groups::{find_isomorphism, Elem, FiniteGroup, Subgroup};
use crate::signatures::Signature;

fn coset_representatives(g: &FiniteGroup, n: &Subgroup, h: &Subgroup) -> Vec<Elem> {
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    for &x in n.elements() {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for &y in h.elements() {
            covered[g.mul(x, y)] = true;
        }
    }
    reps
}

/// Subgroups of the given order containing the cyclic subgroup `⟨a⟩`.
///
/// Covers `⟨a, b⟩` for every `b`, and `⟨a, u, v⟩` for `u, v` in the
/// normaliser of `⟨a⟩`; the groups met here are all of one of these shapes.
pub fn subgroups_through(g: &FiniteGroup, a: Elem, order: usize) -> Vec<Subgroup> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut consider = |gens: &[Elem]| {
        let h = g.subgroup_generated(gens);
        if h.order() == order && seen.insert(h.elements().to_vec()) {
            out.push(h);
        }
    };
    for b in g.elements() {
        consider(&[a, b]);
    }
    let pa = g.subgroup_generated(&[a]);
    let n = g.normalizer(&pa);
    let reps = coset_representatives(g, &n, &pa);
    for (i, &u) in reps.iter().enumerate() {
        for &v in &reps[i + 1..] {
            consider(&[a, u, v]);
        }
    }
    out
}

/// Kernel classes of `target` whose action restricts, on some subgroup
/// isomorphic to `source` and containing a fixed element of order `p`, to an
/// action with signature `source_sig`.
pub fn restriction_witnesses(
    target: &EpimorphismSet,
    source: &FiniteGroup,
    source_sig: &Signature,
    p: u32,
) -> Result<Vec<usize>> {
    let g = target.group();
    let a = *g
        .elements_of_order(p)
        .first()
        .ok_or_else(|| Error::Invalid(format!("{} has no element of order {p}", g.name())))?;
    let mut subs = Vec::new();
    for h in subgroups_through(g, a, source.order()) {
        let hg = g.subgroup_as_group(&h, source.name())?;
        if find_isomorphism(&hg, source)?.is_some() {
            subs.push(h);
        }
    }
    let mut out = Vec::new();
    for (i, class) in target.classes().iter().enumerate() {
        for h in &subs {
            if quotient_data(&class.representative, h)?.signature == *source_sig {
                out.push(i);
                break;
            }
        }
    }
    Ok(out)
}
