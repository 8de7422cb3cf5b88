//! Recomputes every embedded expectation table and reports per item.
//!
//! A mismatch recorded in `deviations.txt` with the same observed value is
//! reported as a deviation instead of a failure.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::data::{self, Deviation, SurfaceCount};
use super::small::{small_prime_scan, ScanStatus, SMALL_PRIME};
use super::subgroups::restriction_witnesses;
use super::{classify, hypermap_census, nonorientable_census, CaseRecord, HypermapRecord};
use crate::counting::count_kernels_cyclic_p;
use crate::epi::{braid_orbits, count_kernels, enumerate_epimorphisms, GeneratingTuple};
use crate::error::Result;
use crate::groups::{automorphisms, build_group};
use crate::signatures::{enumerate_signatures, rho_of, Rational};

/// Primes at which the uniform families are checked.
pub const FAMILY_PRIMES: &[u32] = &[7, 11, 13, 17, 19, 23, 29, 31];
/// Primes at which extensions are checked by restricting actions.
pub const EXTENSION_PRIMES: &[u32] = &[7, 11, 13, 17];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ItemStatus {
    Pass,
    Fail,
    Deviation,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyItem {
    pub table: String,
    pub item: String,
    pub status: ItemStatus,
    pub expected: String,
    pub observed: String,
    pub note: Option<String>,
}

impl fmt::Display for VerifyItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            ItemStatus::Pass => "PASS",
            ItemStatus::Fail => "FAIL",
            ItemStatus::Deviation => "DEVIATION",
        };
        write!(f, "{tag:9} {}", self.item)?;
        if self.status != ItemStatus::Pass {
            write!(f, ": expected {}, observed {}", self.expected, self.observed)?;
        }
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub items: Vec<VerifyItem>,
}

impl VerifyReport {
    /// No item failed; deviations are listed but do not count as failures.
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.status != ItemStatus::Fail)
    }

    pub fn with_status(&self, s: ItemStatus) -> impl Iterator<Item = &VerifyItem> {
        self.items.iter().filter(move |i| i.status == s)
    }

    pub fn get(&self, item: &str) -> Option<&VerifyItem> {
        self.items.iter().find(|i| i.item == item)
    }
}

struct Checker<'a> {
    deviations: &'a [Deviation],
}

impl Checker<'_> {
    fn item(&self, table: &str, item: String, expected: impl ToString, observed: impl ToString) -> VerifyItem {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        let (status, note) = if expected == observed {
            (ItemStatus::Pass, None)
        } else {
            match self.deviations.iter().find(|d| d.item == item && d.observed == observed) {
                Some(d) => (ItemStatus::Deviation, Some(d.note.clone())),
                None => (ItemStatus::Fail, None),
            }
        };
        VerifyItem { table: table.into(), item, status, expected, observed, note }
    }

    fn error(&self, table: &str, item: String, e: crate::Error) -> VerifyItem {
        VerifyItem {
            table: table.into(),
            item,
            status: ItemStatus::Fail,
            expected: "a result".into(),
            observed: format!("error: {e}"),
            note: None,
        }
    }

    fn guard(&self, table: &str, item: String, f: impl FnOnce() -> Result<Vec<VerifyItem>>) -> Vec<VerifyItem> {
        f().unwrap_or_else(|e| vec![self.error(table, item, e)])
    }
}

/// `as listed`, or the symmetric difference between listed and computed.
fn set_diff(listed: &BTreeSet<String>, computed: &BTreeSet<String>) -> String {
    let missing: Vec<&str> = listed.difference(computed).map(String::as_str).collect();
    let extra: Vec<&str> = computed.difference(listed).map(String::as_str).collect();
    let mut parts = Vec::new();
    if !missing.is_empty() {
        parts.push(format!("missing {}", missing.join(" ")));
    }
    if !extra.is_empty() {
        parts.push(format!("extra {}", extra.join(" ")));
    }
    if parts.is_empty() {
        "as listed".into()
    } else {
        parts.join("; ")
    }
}

fn check_sigma(c: &Checker) -> Vec<VerifyItem> {
    c.guard("sigma", "sigma".into(), || {
        let table = data::sigma()?;
        (4..=84u32)
            .into_par_iter()
            .map(|rho| {
                let listed: BTreeSet<String> = table.get(&rho).into_iter().flatten().map(|s| s.to_string()).collect();
                let computed: BTreeSet<String> = enumerate_signatures(Rational::from_integer(rho as i64), None)?
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
                Ok(c.item("sigma", format!("sigma rho={rho}"), "as listed", set_diff(&listed, &computed)))
            })
            .collect()
    })
}

fn check_ladder(c: &Checker) -> Vec<VerifyItem> {
    c.guard("ladder", "ladder".into(), || {
        Ok(data::ladder()?
            .iter()
            .map(|l| c.item("ladder", format!("ladder {} < {}", l.sub, l.sup), l.index, l.sub.area() / l.sup.area()))
            .collect())
    })
}

fn group_named(name: &str) -> Result<crate::groups::FiniteGroup> {
    build_group(&name.parse()?)
}

/// Signatures with `ρ ∈ {1, 2}` at a small prime, paired with the groups
/// of order `ρp` that act with them.
fn low_rho_actions(rho: u32, p: u32) -> Result<BTreeSet<String>> {
    let n = rho * p;
    let groups: Vec<String> = if rho == 1 { vec![format!("C{p}")] } else { vec![format!("C{n}"), format!("D{p}")] };
    let divides = |m: u32| n.is_multiple_of(m);
    let mut out = BTreeSet::new();
    for sig in enumerate_signatures(Rational::from_integer(rho as i64), Some(&divides))? {
        for g in &groups {
            if count_kernels(&sig, &group_named(g)?)? > 0 {
                out.insert(format!("{sig} {g}"));
            }
        }
    }
    Ok(out)
}

fn check_small_rho(c: &Checker) -> Vec<VerifyItem> {
    c.guard("small_rho", "small-rho".into(), || {
        let rows = data::small_rho()?;
        let mut jobs: Vec<Box<dyn Fn() -> Vec<VerifyItem> + Send + Sync>> = Vec::new();
        for r in rows.clone() {
            jobs.push(Box::new(move || {
                let key = format!("small-rho {} {} p={}", r.sig, r.group, r.p);
                let mut v = vec![c.item("small_rho", format!("{key} rho"), r.rho, rho_of(&r.sig))];
                match group_named(&r.group).and_then(|g| count_kernels(&r.sig, &g)) {
                    Ok(k) => v.push(c.item("small_rho", format!("{key} kernels"), r.kernels, k)),
                    Err(e) => v.push(c.error("small_rho", format!("{key} kernels"), e)),
                }
                if r.group == format!("C{}", r.p) {
                    v.push(c.item(
                        "small_rho",
                        format!("{key} formula"),
                        r.kernels,
                        count_kernels_cyclic_p(&r.sig, r.p as u64),
                    ));
                }
                v
            }));
        }
        for (rho, p) in [(1, 2), (1, 3), (1, 5), (2, 3), (2, 5)] {
            let listed: BTreeSet<String> =
                rows.iter().filter(|r| r.rho == rho && r.p == p).map(|r| format!("{} {}", r.sig, r.group)).collect();
            jobs.push(Box::new(move || {
                let item = format!("small-rho list rho={rho} p={p}");
                match low_rho_actions(rho, p) {
                    Ok(computed) => vec![c.item("small_rho", item, "as listed", set_diff(&listed, &computed))],
                    Err(e) => vec![c.error("small_rho", item, e)],
                }
            }));
        }
        Ok(jobs.par_iter().flat_map(|j| j()).collect())
    })
}

fn surfaces_text(s: &SurfaceCount) -> String {
    match s {
        SurfaceCount::Finite { count } => format!("{count} surfaces"),
        SurfaceCount::Family { real_dimension } => format!("family of real dimension {real_dimension}"),
    }
}

fn check_families_at(c: &Checker, rows: &[data::CaseSpec], p: u32) -> Vec<VerifyItem> {
    c.guard("family", format!("family p={p}"), || {
        let records: Vec<CaseRecord> = classify(p, 3)?;
        let mut out = Vec::new();
        for r in rows {
            let group = data::instantiate(&r.group, p);
            let key = format!("family p={p} ({}) {group}", r.case);
            let rec = records.iter().find(|x| x.case_id == r.case && x.group == group);
            if !r.condition.holds(p) {
                out.push(c.item("family", key, "absent", if rec.is_some() { "present" } else { "absent" }));
                continue;
            }
            let Some(rec) = rec else {
                out.push(c.item("family", key, "present", "absent"));
                continue;
            };
            let mut expected = Vec::new();
            let mut observed = Vec::new();
            if let Some(k) = r.kernels {
                expected.push(format!("kernels={}", k.at(p)));
                observed.push(format!("kernels={}", rec.kernels));
            }
            expected.push(surfaces_text(&r.surfaces));
            observed.push(surfaces_text(&rec.surfaces));
            expected.push(format!("order={}", r.rho * p));
            observed.push(format!("order={}", rec.order));
            out.push(c.item("family", key, expected.join(" "), observed.join(" ")));
        }
        Ok(out)
    })
}

/// Target surfaces, counted as braid orbits, on which some `G_source` action of
/// the source signature sits inside the target action.
fn witnessed_surfaces(source: &data::CaseSpec, target: &data::CaseSpec, p: u32) -> Result<usize> {
    let sg = group_named(&data::instantiate(&source.group, p))?;
    let tg = group_named(&data::instantiate(&target.group, p))?;
    let set = enumerate_epimorphisms(&target.sig, &tg)?;
    let hits = restriction_witnesses(&set, &sg, &source.sig, p)?;
    let reps: Vec<GeneratingTuple> = set.classes().iter().map(|k| k.representative.clone()).collect();
    let orbits = braid_orbits(&reps, &automorphisms(&tg)?)?;
    Ok(orbits.iter().filter(|o| o.members.iter().any(|m| hits.contains(m))).count())
}

fn check_extensions(c: &Checker) -> Vec<VerifyItem> {
    c.guard("family", "extensions".into(), || {
        let rows = data::families()?;
        let mut jobs = Vec::new();
        for &p in EXTENSION_PRIMES {
            for r in rows.iter().filter(|r| r.condition.holds(p)) {
                for e in &r.extensions {
                    if let Some(t) = rows.iter().find(|t| t.case == e.target && t.condition.holds(p)) {
                        jobs.push((p, r, t, e.surfaces));
                    }
                }
            }
        }
        Ok(jobs
            .par_iter()
            .map(|&(p, r, t, n)| {
                let key = format!("extension p={p} ({}) {} -> ({})", r.case, data::instantiate(&r.group, p), t.case);
                let result = witnessed_surfaces(r, t, p).map(|w| {
                    let expected = match (n, r.surfaces) {
                        (Some(k), _) => format!("{k} surfaces"),
                        (None, SurfaceCount::Finite { count }) => format!("{count} surfaces"),
                        (None, SurfaceCount::Family { .. }) => "some surfaces".to_string(),
                    };
                    let observed = if n.is_none() && matches!(r.surfaces, SurfaceCount::Family { .. }) && w > 0 {
                        "some surfaces".to_string()
                    } else {
                        format!("{w} surfaces")
                    };
                    c.item("family", key.clone(), expected, observed)
                });
                result.unwrap_or_else(|e| c.error("family", key, e))
            })
            .collect())
    })
}

fn hypermap_summary(recs: &[&HypermapRecord]) -> String {
    let chir = if recs.iter().all(|r| r.reflexible) {
        "reflexible"
    } else if recs.iter().all(|r| !r.reflexible) {
        "chiral"
    } else {
        "mixed"
    };
    let orbits: BTreeSet<usize> = recs.iter().map(|r| r.pair_orbit).collect();
    format!("kernels={} {chir} orbits={}", recs.len(), orbits.len())
}

fn conder_observed(e: &data::ConderEntry, r: &HypermapRecord) -> String {
    if conder_observed_expected(e) == "matched" {
        return "matched".into();
    }
    e.keys
        .iter()
        .filter(|(k, _)| k.as_str() != "order")
        .map(|(k, _)| {
            let v = match k.as_str() {
                "petrie" => r.petrie.to_string(),
                "full" => r.full_group.replace(' ', ""),
                "trace" => match &r.hall {
                    Some(h) => {
                        let q = h.q;
                        (0..=q / 2).find(|t| t * t % q == h.trace_squared).map_or("?".into(), |t| t.to_string())
                    }
                    None => "-".into(),
                },
                "square" => r.hall.as_ref().map_or("-", |h| if h.is_square { "yes" } else { "no" }).to_string(),
                other => format!("unknown key {other}"),
            };
            format!("{k}={v}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn check_hypermaps(c: &Checker) -> Vec<VerifyItem> {
    c.guard("hypermaps", "hypermaps".into(), || {
        let rows = data::hypermaps()?;
        let conder = data::conder()?;
        let mut primes: BTreeSet<u32> = FAMILY_PRIMES.iter().copied().collect();
        primes.extend(conder.iter().map(|e| e.p));
        primes.retain(|&p| p > SMALL_PRIME);
        let per_prime: Vec<(u32, Vec<HypermapRecord>)> =
            primes.par_iter().map(|&p| Ok((p, hypermap_census(p)?))).collect::<Result<_>>()?;
        let mut out = Vec::new();
        for (p, recs) in &per_prime {
            for r in rows.iter() {
                let group = data::instantiate(&r.group, *p);
                let key = format!("hypermaps p={p} ({}) {group}", r.case);
                let mine: Vec<&HypermapRecord> =
                    recs.iter().filter(|x| x.case_id == r.case && x.group == group).collect();
                if !r.condition.holds(*p) {
                    out.push(c.item("hypermaps", key, "absent", if mine.is_empty() { "absent" } else { "present" }));
                    continue;
                }
                let chir = if r.reflexible { "reflexible" } else { "chiral" };
                let expected = format!("kernels={} {chir} orbits={}", r.kernels, r.pair_orbits);
                out.push(c.item("hypermaps", key, expected, hypermap_summary(&mine)));
            }
            if recs.is_empty() {
                continue;
            }
            let genera: BTreeSet<u64> = recs.iter().map(|r| r.genus).collect();
            let observed = genera.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
            out.push(c.item("hypermaps", format!("hypermaps p={p} genus"), p + 1, observed));
        }
        for e in &conder {
            let Some(entry) = &e.entry else { continue };
            let key = format!("conder {entry}");
            let expected = conder_observed_expected(e);
            let recs = per_prime.iter().find(|(p, _)| *p == e.p).map(|(_, r)| r.as_slice()).unwrap_or(&[]);
            let hit = recs.iter().find(|r| r.conder_ref.as_deref().is_some_and(|c| c.split('/').any(|x| x == entry)));
            let observed = match hit {
                Some(r) => conder_observed(e, r),
                None => "unmatched".into(),
            };
            out.push(c.item("conder", key, expected, observed));
        }
        Ok(out)
    })
}

/// The listed invariants, or `matched` for an entry that only names the map.
fn conder_observed_expected(e: &data::ConderEntry) -> String {
    let keys: Vec<String> =
        e.keys.iter().filter(|(k, _)| k.as_str() != "order").map(|(k, v)| format!("{k}={v}")).collect();
    if keys.is_empty() {
        "matched".into()
    } else {
        keys.join(" ")
    }
}

fn check_nonorientable(c: &Checker) -> Vec<VerifyItem> {
    c.guard("nonorientable", "nonorientable".into(), || {
        let rows = data::nonorientable()?;
        let primes = [5, 7, 11, 13, 17, 19];
        let per: Vec<(u32, Vec<super::NonOrientableRecord>)> =
            primes.par_iter().map(|&p| Ok((p, nonorientable_census(p)?))).collect::<Result<_>>()?;
        let mut out = Vec::new();
        for (p, recs) in &per {
            let listed: BTreeSet<String> = rows.iter().filter(|r| r.p == *p).map(|r| r.entry.clone()).collect();
            let found: BTreeSet<String> = recs
                .iter()
                .filter(|r| r.quotient_exists)
                .map(|r| r.entry.clone().unwrap_or_else(|| format!("({}) unnamed", r.base.case_id)))
                .collect();
            out.push(c.item("nonorientable", format!("nonorientable p={p}"), "as listed", set_diff(&listed, &found)));
            for r in rows.iter().filter(|r| r.p == *p) {
                let key = format!("nonorientable {}", r.entry);
                let expected = format!(
                    "cover={} type={} group={} chi=-{p} petrie={}",
                    r.cover,
                    r.sig,
                    r.group,
                    r.petrie.map_or("-".into(), |x| x.to_string())
                );
                let observed = match recs.iter().find(|x| x.entry.as_deref() == Some(r.entry.as_str())) {
                    Some(x) => format!(
                        "cover={} type={} group={} chi={} petrie={}",
                        x.base.conder_ref.clone().unwrap_or_default(),
                        x.base.hypermap_type,
                        x.base.group,
                        x.euler_characteristic,
                        match (r.petrie, x.petrie) {
                            (None, _) => "-".into(),
                            (Some(_), v) => v.map_or("none".into(), |v| v.to_string()),
                        }
                    ),
                    None => "unmatched".into(),
                };
                out.push(c.item("nonorientable", key, expected, observed));
            }
        }
        Ok(out)
    })
}

fn check_small_p(c: &Checker) -> Vec<VerifyItem> {
    c.guard("small_p", "small-p".into(), || {
        let rows = data::small_p()?;
        let scan = small_prime_scan(3)?;
        let mut out = Vec::new();
        for r in &rows {
            let key = format!("small-p ({}) {} {}", r.id, r.sig, r.group);
            let expected = match &r.parent {
                None => "found, one class".to_string(),
                Some(parent) => format!("found, restriction of ({parent})"),
            };
            let observed = match scan.find(&r.sig, &r.group) {
                None => "not found".to_string(),
                Some(a) => match &r.parent {
                    None if a.classes == Some(1) => "found, one class".to_string(),
                    None => format!("found, {} classes", a.classes.map_or("?".into(), |x| x.to_string())),
                    Some(parent) => {
                        if scan
                            .restrictions
                            .iter()
                            .any(|x| &x.parent == parent && x.signature == r.sig && x.group == r.group)
                        {
                            format!("found, restriction of ({parent})")
                        } else {
                            format!("found, not a restriction of ({parent})")
                        }
                    }
                },
            };
            out.push(c.item("small_p", key, expected, observed));
            if rho_of(&r.sig) != Rational::from_integer(r.rho as i64) {
                out.push(c.item("small_p", format!("small-p ({}) rho", r.id), r.rho, rho_of(&r.sig)));
            }
        }
        for a in &scan.actions {
            let unexplained = match &a.status {
                ScanStatus::Listed { .. } | ScanStatus::ListedRestriction { .. } => None,
                ScanStatus::UnlistedRestriction { parent } => Some(format!("restriction of ({parent})")),
                ScanStatus::Unlisted => Some("unexplained".to_string()),
            };
            if let Some(u) = unexplained {
                out.push(c.item("small_p", format!("small-p extra {} {}", a.signature, a.group), "absent", u));
            }
            if a.extra_classes > 0 {
                out.push(c.item(
                    "small_p",
                    format!("small-p extra classes {} {}", a.signature, a.group),
                    0,
                    a.extra_classes,
                ));
            }
        }
        Ok(out)
    })
}

/// Recomputes every embedded table. Items run in parallel on the current
/// rayon pool; the report lists them in a fixed order.
pub fn verify_embedded_tables() -> Result<VerifyReport> {
    let deviations = data::deviations()?;
    let c = Checker { deviations: &deviations };
    let rows = data::families()?;
    let sections: Vec<Box<dyn Fn() -> Vec<VerifyItem> + Send + Sync>> = vec![
        Box::new(|| check_sigma(&c)),
        Box::new(|| check_ladder(&c)),
        Box::new(|| check_small_rho(&c)),
        Box::new(|| FAMILY_PRIMES.par_iter().flat_map(|&p| check_families_at(&c, &rows, p)).collect()),
        Box::new(|| check_extensions(&c)),
        Box::new(|| check_hypermaps(&c)),
        Box::new(|| check_nonorientable(&c)),
        Box::new(|| check_small_p(&c)),
    ];
    let items = sections.par_iter().flat_map(|s| s()).collect();
    Ok(VerifyReport { items })
}
