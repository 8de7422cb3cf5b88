//! The prime 5, where the homology-module count does not apply: every
//! signature with integer `ρ ≥ 3` is tried against a family of candidate groups
//! of order `5ρ`, and each action found is matched against the listed actions
//! and their restrictions to subgroups.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use super::data::{self, SmallPrimeSpec};
use super::{as_display, CaseRecord, Extension, FullGroup, Source, SurfaceCount};
use crate::epi::{count_kernels, enumerate_epimorphisms, quotient_data, topological_classes, SearchOptions};
use crate::error::Result;
use crate::groups::{build_group, find_isomorphism, FiniteGroup, Subgroup};
use crate::signatures::{enumerate_signatures, teich_dim, Rational, Signature};

pub const SMALL_PRIME: u32 = 5;
const P: u32 = SMALL_PRIME;
const MAX_RHO: u32 = 84;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScanStatus {
    Listed {
        id: String,
    },
    ListedRestriction {
        id: String,
        parent: String,
    },
    /// A restriction of a listed action that is not itself listed.
    UnlistedRestriction {
        parent: String,
    },
    Unlisted,
}

#[derive(Clone, Debug, Serialize)]
pub struct SmallPrimeAction {
    pub rho: u32,
    #[serde(serialize_with = "as_display")]
    pub signature: Signature,
    pub group: String,
    pub kernels: u128,
    /// Topological classes; `None` for orbit genus above 0.
    pub classes: Option<usize>,
    pub status: ScanStatus,
    /// Classes that are neither listed nor restrictions of a listed action.
    pub extra_classes: usize,
    /// Listed actions restricting to this one, with the number of subgroup classes.
    pub restricted_from: Vec<(String, usize)>,
}

/// An action obtained by restricting a listed action to a subgroup.
#[derive(Clone, Debug, Serialize)]
pub struct Restriction {
    pub parent: String,
    #[serde(serialize_with = "as_display")]
    pub signature: Signature,
    pub group: String,
    /// Conjugacy classes of subgroups giving it.
    pub subgroup_classes: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SmallPrimeReport {
    pub actions: Vec<SmallPrimeAction>,
    pub restrictions: Vec<Restriction>,
    /// Listed actions the scan did not find, by id.
    pub missing: Vec<String>,
}

impl SmallPrimeReport {
    pub fn find(&self, sig: &Signature, group: &str) -> Option<&SmallPrimeAction> {
        self.actions.iter().find(|a| a.signature == *sig && a.group == group)
    }

    pub fn records(&self) -> Vec<CaseRecord> {
        let listed = data::small_p().unwrap_or_default();
        let group_of = |id: &str| listed.iter().find(|r| r.id == id).map(|r| (r.group.clone(), r.rho));
        self.actions
            .iter()
            .map(|a| {
                let case_id = match &a.status {
                    ScanStatus::Listed { id } | ScanStatus::ListedRestriction { id, .. } => id.clone(),
                    ScanStatus::UnlistedRestriction { parent } => format!("{parent}*"),
                    ScanStatus::Unlisted => "?".to_string(),
                };
                let dim = teich_dim(&a.signature);
                let surfaces = if dim > 0 {
                    SurfaceCount::Family { real_dimension: dim as u32 }
                } else {
                    SurfaceCount::Finite { count: a.classes.unwrap_or(0) as u32 }
                };
                let special: Vec<Extension> = a
                    .restricted_from
                    .iter()
                    .filter_map(|(id, n)| {
                        let (group, rho) = group_of(id)?;
                        Some(Extension {
                            target_case: id.clone(),
                            target_group: group,
                            index: rho / a.rho,
                            surfaces: Some(*n as u32),
                        })
                    })
                    .collect();
                // A rigid action whose every class comes from one listed action has that group.
                let full_group = match special.as_slice() {
                    [only]
                        if dim == 0
                            && a.extra_classes == 0
                            && a.classes == Some(only.surfaces.unwrap_or(0) as usize) =>
                    {
                        FullGroup { generic: only.target_group.clone(), special: Vec::new() }
                    }
                    _ => FullGroup { generic: a.group.clone(), special },
                };
                CaseRecord {
                    case_id,
                    p: P,
                    rho: a.rho,
                    signature: a.signature.clone(),
                    group: a.group.clone(),
                    order: (P * a.rho) as u64,
                    condition: format!("p = {P}"),
                    kernels: a.kernels,
                    surfaces,
                    full_group: Some(full_group),
                    source: Source::Search,
                }
            })
            .collect()
    }
}

fn divisors(n: u32) -> impl Iterator<Item = u32> {
    (1..=n).filter(move |d| n.is_multiple_of(*d))
}

/// Candidate names of order `n`, before removing isomorphic duplicates.
fn candidate_names(n: u32) -> Vec<String> {
    let mut v = vec![format!("C{n}")];
    if n.is_multiple_of(2) && n >= 6 {
        v.push(format!("D{}", n / 2));
    }
    if n.is_multiple_of(4) {
        v.push(format!("C{}xC2", n / 2));
    }
    for r in [2, 4] {
        if n.is_multiple_of(P * r) {
            let k = n / (P * r);
            v.push(if k == 1 { format!("Gpr(5,{r})") } else { format!("Gpr(5,{r})xC{k}") });
        }
    }
    for d in divisors(n).filter(|&d| d > 1 && n.is_multiple_of(2 * d) && n / (2 * d) >= 3) {
        v.push(format!("C{d}xD{}", n / (2 * d)));
    }
    match n {
        25 => v.push("V25".into()),
        50 => v.push("V25:C2".into()),
        75 => v.push("V25:C3".into()),
        150 => v.push("V25:S3".into()),
        60 => v.push("PSL(2,5)".into()),
        120 => v.extend(["S5".to_string(), "PGL(2,5)".to_string()]),
        _ => {}
    }
    v
}

/// Pairwise non-isomorphic candidates of order `n`; listed names win.
fn candidates(n: u32, listed: &[SmallPrimeSpec]) -> Result<Vec<FiniteGroup>> {
    let mut names: Vec<String> = listed.iter().filter(|r| r.rho * P == n).map(|r| r.group.clone()).collect();
    names.extend(candidate_names(n));
    let mut out: Vec<FiniteGroup> = Vec::new();
    for name in names {
        let Ok(spec) = name.parse() else { continue };
        let Ok(g) = build_group(&spec) else { continue };
        if g.order() != n as usize {
            continue;
        }
        let mut dup = false;
        for h in &out {
            if find_isomorphism(&g, h)?.is_some() {
                dup = true;
                break;
            }
        }
        if !dup {
            out.push(g);
        }
    }
    Ok(out)
}

fn name_of(h: &FiniteGroup, pool: &BTreeMap<u32, Vec<FiniteGroup>>) -> Result<String> {
    for c in pool.get(&(h.order() as u32)).into_iter().flatten() {
        if find_isomorphism(h, c)?.is_some() {
            return Ok(c.name().to_string());
        }
    }
    Ok(format!("order-{} group", h.order()))
}

fn conjugacy_key(g: &FiniteGroup, h: &Subgroup) -> Vec<usize> {
    g.elements()
        .map(|x| {
            let mut v: Vec<usize> = h.elements().iter().map(|&y| g.conj(x, y)).collect();
            v.sort_unstable();
            v
        })
        .min()
        .unwrap_or_default()
}

/// Proper subgroups of order `5k`, `k ≥ 3`, up to conjugacy. Every such
/// subgroup of the listed groups is generated by two elements.
fn proper_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut seen = BTreeSet::new();
    let mut keys = BTreeSet::new();
    let mut out = Vec::new();
    for a in g.elements() {
        for b in a..g.order() {
            let h = g.subgroup_generated(&[a, b]);
            let n = h.order();
            if n == g.order()
                || !n.is_multiple_of(P as usize)
                || n < 3 * P as usize
                || !seen.insert(h.elements().to_vec())
            {
                continue;
            }
            if keys.insert(conjugacy_key(g, &h)) {
                out.push(h);
            }
        }
    }
    out
}

fn restrictions_of(row: &SmallPrimeSpec, pool: &BTreeMap<u32, Vec<FiniteGroup>>) -> Result<Vec<Restriction>> {
    let g = build_group(&row.group.parse()?)?;
    let set = enumerate_epimorphisms(&row.sig, &g)?;
    let mut found: BTreeMap<(String, String), usize> = BTreeMap::new();
    for h in proper_subgroups(&g) {
        let hg = g.subgroup_as_group(&h, "H")?;
        let name = name_of(&hg, pool)?;
        let mut sigs = BTreeSet::new();
        for class in set.classes() {
            sigs.insert(quotient_data(&class.representative, &h)?.signature.to_string());
        }
        for s in sigs {
            *found.entry((s, name.clone())).or_default() += 1;
        }
    }
    found
        .into_iter()
        .map(|((s, group), n)| {
            Ok(Restriction { parent: row.id.clone(), signature: s.parse()?, group, subgroup_classes: n })
        })
        .collect()
}

/// Runs the scan for `ρ ≥ rho_min`.
pub fn small_prime_scan(rho_min: u32) -> Result<SmallPrimeReport> {
    let listed = data::small_p()?;
    let rhos: Vec<u32> = (rho_min.max(3)..=MAX_RHO).collect();
    let pool: BTreeMap<u32, Vec<FiniteGroup>> =
        rhos.par_iter().map(|&rho| Ok((rho * P, candidates(rho * P, &listed)?))).collect::<Result<_>>()?;

    let mut jobs = Vec::new();
    for &rho in &rhos {
        let n = rho * P;
        let divides = move |m: u32| n.is_multiple_of(m);
        for sig in enumerate_signatures(Rational::from_integer(rho as i64), Some(&divides))? {
            for g in &pool[&n] {
                jobs.push((rho, sig.clone(), g));
            }
        }
    }
    let hits: Vec<(u32, Signature, String, u128, Option<usize>)> = jobs
        .par_iter()
        .map(|(rho, sig, g)| {
            let kernels = count_kernels(sig, g)?;
            if kernels == 0 {
                return Ok(None);
            }
            let classes = if sig.gamma() == 0 {
                Some(topological_classes(sig, g, SearchOptions::default())?.len())
            } else {
                None
            };
            Ok(Some((*rho, sig.clone(), g.name().to_string(), kernels, classes)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let tops: Vec<&SmallPrimeSpec> = listed.iter().filter(|r| r.parent.is_none() && r.rho >= rho_min).collect();
    let restrictions: Vec<Restriction> =
        tops.par_iter().map(|r| restrictions_of(r, &pool)).collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();

    let mut actions: Vec<SmallPrimeAction> = hits
        .into_iter()
        .map(|(rho, signature, group, kernels, classes)| {
            let same = |r: &&SmallPrimeSpec| r.sig == signature && r.group == group;
            let top = listed.iter().filter(|r| r.parent.is_none()).find(same);
            let sub = listed.iter().filter(|r| r.parent.is_some()).find(same);
            let from: Vec<&Restriction> =
                restrictions.iter().filter(|r| r.signature == signature && r.group == group).collect();
            let status = match (top, sub, from.first()) {
                (Some(t), _, _) => ScanStatus::Listed { id: t.id.clone() },
                (None, Some(s), _) => {
                    ScanStatus::ListedRestriction { id: s.id.clone(), parent: s.parent.clone().unwrap_or_default() }
                }
                (None, None, Some(r)) => ScanStatus::UnlistedRestriction { parent: r.parent.clone() },
                _ => ScanStatus::Unlisted,
            };
            let explained = usize::from(top.is_some()).max(from.iter().map(|r| r.subgroup_classes).sum());
            let extra_classes = classes.map_or(0, |c| c.saturating_sub(explained));
            let restricted_from = from.iter().map(|r| (r.parent.clone(), r.subgroup_classes)).collect();
            SmallPrimeAction { rho, signature, group, kernels, classes, status, extra_classes, restricted_from }
        })
        .collect();
    actions.sort_by(|a, b| {
        b.rho
            .cmp(&a.rho)
            .then_with(|| a.signature.to_string().cmp(&b.signature.to_string()))
            .then_with(|| a.group.cmp(&b.group))
    });

    let missing = listed
        .iter()
        .filter(|r| r.rho >= rho_min && !actions.iter().any(|a| a.signature == r.sig && a.group == r.group))
        .map(|r| r.id.clone())
        .collect();
    Ok(SmallPrimeReport { actions, restrictions, missing })
}
