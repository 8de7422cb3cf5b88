//! Regular maps and hypermaps among the classified surfaces, their
//! non-orientable quotients, and Jacobian splittings per family.

use rayon::prelude::*;
use serde::Serialize;

use super::data::{self, ConderEntry};
use super::{as_display, case_number, check_prime, SMALL_PRIME};
use crate::epi::{
    analyse_hypermaps, enumerate_epimorphisms, find_epimorphism, full_automorphism_type, hall_test,
    nonorientable_petrie_length, FullAutType, GeneratingTuple, HallVerdict, TupleJson,
};
use crate::error::{Error, Result};
use crate::groups::{automorphisms, build_group, GroupSpec};
use crate::jacobian::{decompose_jacobian, IsogenyReport};
use crate::signatures::{genus_of_kernel, Signature};

#[derive(Clone, Debug, Serialize)]
pub struct HypermapRecord {
    pub case_id: String,
    pub p: u32,
    #[serde(rename = "type", serialize_with = "as_display")]
    pub hypermap_type: Signature,
    pub group: String,
    pub genus: u64,
    /// One of the periods is 2, so the hypermap is a map.
    pub is_map: bool,
    pub petrie: u32,
    pub reflexible: bool,
    pub full_group_type: FullAutType,
    pub full_group: String,
    pub conder_ref: Option<String>,
    pub note: Option<String>,
    pub pair_orbit: usize,
    pub full_orbit: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hall: Option<HallVerdict>,
    pub generators: TupleJson,
    #[serde(skip)]
    pub tuple: GeneratingTuple,
}

struct Row {
    case: String,
    sig: Signature,
    group: String,
    /// Catalogue entries named directly, for the small prime.
    entries: Option<String>,
}

fn rows_at(p: u32) -> Result<Vec<Row>> {
    if p == SMALL_PRIME {
        return Ok(data::small_p()?
            .into_iter()
            .filter(|r| r.sig.is_triangle())
            .map(|r| Row { case: r.id, sig: r.sig, group: r.group, entries: r.entry })
            .collect());
    }
    Ok(data::hypermaps()?
        .into_iter()
        .filter(|r| r.condition.holds(p))
        .map(|r| Row { case: r.case, group: data::instantiate(&r.group, p), sig: r.sig, entries: None })
        .collect())
}

fn squash(s: &str) -> String {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

/// Catalogue reference for one kernel, matched on group, Petrie length and
/// full automorphism group.
fn conder_ref(
    entries: &[ConderEntry],
    case: &str,
    p: u32,
    group: &str,
    petrie: u32,
    full: &str,
) -> (Option<String>, Option<String>) {
    let here: Vec<&ConderEntry> = entries.iter().filter(|e| e.case == case && e.p == p).collect();
    if here.iter().any(|e| e.key("order") == Some("reversed")) {
        return (None, Some("the pair is listed in the opposite order at this prime".into()));
    }
    let hits: Vec<&ConderEntry> = here
        .into_iter()
        .filter(|e| e.entry.is_some() && e.group.as_deref() == Some(group))
        .filter(|e| e.key("petrie").is_none_or(|v| v == petrie.to_string()))
        .filter(|e| e.key("full").is_none_or(|v| squash(v) == squash(full)))
        .collect();
    match hits.as_slice() {
        [] => (None, None),
        [e] => (e.entry.clone(), None),
        many => {
            let names: Vec<&str> = many.iter().filter_map(|e| e.entry.as_deref()).collect();
            let note = many
                .iter()
                .all(|e| e.key("order") == Some("unasserted"))
                .then(|| "which entry is which is not asserted".to_string());
            (Some(names.join("/")), note)
        }
    }
}

fn row_records(row: &Row, p: u32, entries: &[ConderEntry]) -> Result<Vec<HypermapRecord>> {
    let g = build_group(&row.group.parse()?)?;
    let aut = automorphisms(&g)?;
    let set = enumerate_epimorphisms(&row.sig, &g)?;
    let analysis = analyse_hypermaps(&set, &aut)?;
    let genus = genus_of_kernel(&row.sig, g.order() as u64)?;
    let many = analysis.kernels.len() > 1;
    analysis
        .kernels
        .into_iter()
        .map(|k| {
            let t = k.representative;
            let full_type = if k.reflexible { full_automorphism_type(&t)? } else { FullAutType::EqualsG };
            let full = full_type.describe(&g);
            let (conder, note) = match &row.entries {
                Some(e) if many && e.contains(' ') => {
                    (Some(e.replace(' ', "/")), Some("which entry is which is not asserted".to_string()))
                }
                Some(e) => (Some(e.clone()), None),
                None => conder_ref(entries, &row.case, p, g.name(), k.petrie, &full),
            };
            let hall = matches!(g.spec(), Some(GroupSpec::Psl2(_))).then(|| hall_test(&t).ok()).flatten();
            Ok(HypermapRecord {
                case_id: row.case.clone(),
                p,
                hypermap_type: row.sig.clone(),
                group: g.name().to_string(),
                genus,
                is_map: row.sig.periods().contains(&2),
                petrie: k.petrie,
                reflexible: k.reflexible,
                full_group_type: full_type,
                full_group: full,
                conder_ref: conder,
                note,
                pair_orbit: k.pair_orbit,
                full_orbit: k.full_orbit,
                hall,
                generators: t.to_json(),
                tuple: t,
            })
        })
        .collect()
}

/// Every orientably regular map or hypermap of genus `p + 1` whose group has
/// order divisible by `p`, one record per kernel.
pub fn hypermap_census(p: u32) -> Result<Vec<HypermapRecord>> {
    check_prime(p)?;
    let entries = data::conder()?;
    let rows = rows_at(p)?;
    let per_row = rows.par_iter().map(|r| row_records(r, p, &entries)).collect::<Result<Vec<_>>>()?;
    Ok(per_row.into_iter().flatten().collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct NonOrientableRecord {
    /// The orientable double cover.
    pub base: HypermapRecord,
    pub euler_characteristic: i64,
    pub quotient_exists: bool,
    /// Petrie length of the quotient, for maps.
    pub petrie: Option<u32>,
    pub entry: Option<String>,
}

/// The reflexible records of [`hypermap_census`], each with its
/// non-orientable quotient of characteristic `−p` when `A ≅ G × C_2`.
pub fn nonorientable_census(p: u32) -> Result<Vec<NonOrientableRecord>> {
    let listed = data::nonorientable()?;
    hypermap_census(p)?
        .into_iter()
        .filter(|r| r.reflexible)
        .map(|r| {
            let exists = r.full_group_type == FullAutType::GxC2;
            let petrie = if r.is_map { nonorientable_petrie_length(&r.tuple)? } else { None };
            if petrie.is_some() != (exists && r.is_map) {
                return Err(Error::Inconsistent(format!(
                    "Petrie length of the quotient of ({}) disagrees with A",
                    r.case_id
                )));
            }
            let entry = listed
                .iter()
                .find(|n| n.p == p && r.conder_ref.as_deref().is_some_and(|c| c.split('/').any(|c| c == n.cover)))
                .filter(|_| exists)
                .map(|n| n.entry.clone());
            Ok(NonOrientableRecord {
                base: r,
                euler_characteristic: -(p as i64),
                quotient_exists: exists,
                petrie,
                entry,
            })
        })
        .collect()
}

/// One isogeny decomposition per uniform family present at `p`, using the
/// first surface-kernel epimorphism found.
pub fn jacobian_census(p: u32) -> Result<Vec<IsogenyReport>> {
    check_prime(p)?;
    if p == SMALL_PRIME {
        return Err(Error::Unsupported("the families are classified for p ≥ 7".into()));
    }
    let rows: Vec<data::CaseSpec> =
        data::families()?.into_iter().filter(|r| case_number(&r.case).is_some() && r.condition.holds(p)).collect();
    rows.par_iter()
        .map(|r| {
            let g = build_group(&data::instantiate(&r.group, p).parse()?)?;
            let t = find_epimorphism(&r.sig, &g)?
                .ok_or_else(|| Error::Inconsistent(format!("no {} action of {}", r.sig, g.name())))?;
            decompose_jacobian(&r.case, p, &t)
        })
        .collect()
}
