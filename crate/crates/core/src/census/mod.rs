//! The classification for a given prime: every group of order `ρp` acting on
//! a surface of genus `p + 1`, with kernel and surface counts, the larger
//! groups some of those surfaces admit, and the regular (hyper)maps among them.

pub mod data;
mod maps;
mod small;
mod subgroups;
mod verify;

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::is_prime;
use crate::counting::count_kernels_cyclic_p;
use crate::epi::{enumerate_epimorphisms, topological_classes, SearchOptions};
use crate::error::{Error, Result};
use crate::groups::build_group;
use crate::homology::{case_label, kernel_census, GenusTwoAction};
use crate::signatures::{enumerate_signatures, teich_dim, Rational, Signature};

pub use data::{Condition, SurfaceCount};
pub use maps::{hypermap_census, jacobian_census, nonorientable_census, HypermapRecord, NonOrientableRecord};
pub use small::{small_prime_scan, ScanStatus, SmallPrimeAction, SmallPrimeReport, SMALL_PRIME};
pub use subgroups::{restriction_witnesses, subgroups_through};
pub use verify::{verify_embedded_tables, ItemStatus, VerifyItem, VerifyReport};

pub(crate) fn as_display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    /// Counted through the homology module of a genus-2 action.
    HomologyModule,
    /// Exhaustive epimorphism search.
    Search,
    /// Closed formula for cyclic groups of prime order.
    Formula,
}

/// A larger group containing `G` and acting on some of the same surfaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extension {
    pub target_case: String,
    pub target_group: String,
    pub index: u32,
    /// `None` when every surface of the family extends.
    pub surfaces: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullGroup {
    /// Full automorphism group of a generic member.
    pub generic: String,
    pub special: Vec<Extension>,
}

impl fmt::Display for FullGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A = {}", self.generic)?;
        for e in &self.special {
            let n = e.surfaces.map_or("all".to_string(), |n| n.to_string());
            write!(f, "; A ⊇ {} ({}) on {n}", e.target_group, e.target_case)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseRecord {
    pub case_id: String,
    pub p: u32,
    pub rho: u32,
    #[serde(serialize_with = "as_display")]
    pub signature: Signature,
    pub group: String,
    pub order: u64,
    pub condition: String,
    /// Normal surface subgroups `K` of the Fuchsian group with quotient `G`.
    pub kernels: u128,
    pub surfaces: SurfaceCount,
    /// Not determined for `ρ ≤ 2`.
    pub full_group: Option<FullGroup>,
    pub source: Source,
}

impl fmt::Display for CaseRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) ρ={} σ={} G={} |G|={} [{}] kernels={} surfaces={}",
            self.case_id, self.rho, self.signature, self.group, self.order, self.condition, self.kernels, self.surfaces
        )?;
        if let Some(full) = &self.full_group {
            write!(f, " {full}")?;
        }
        Ok(())
    }
}

pub(crate) fn case_number(label: &str) -> Option<u8> {
    (1..=9).find(|&n| case_label(n) == Some(label))
}

fn check_prime(p: u32) -> Result<()> {
    if !is_prime(p as u64) {
        return Err(Error::Invalid(format!("{p} is not prime")));
    }
    if p < SMALL_PRIME {
        return Err(Error::Unsupported(format!("p = {p}: only primes p ≥ {SMALL_PRIME} are classified")));
    }
    Ok(())
}

/// Extensions of a row that are realised at `p`, with the generic full group.
fn full_group(spec: &data::CaseSpec, rows: &[data::CaseSpec], p: u32) -> FullGroup {
    let mut generic = data::instantiate(&spec.group, p);
    let mut special = Vec::new();
    for e in &spec.extensions {
        let Some(target) = rows.iter().find(|r| r.case == e.target && r.condition.holds(p)) else {
            continue;
        };
        let ext = Extension {
            target_case: target.case.clone(),
            target_group: data::instantiate(&target.group, p),
            index: target.rho / spec.rho,
            surfaces: e.surfaces,
        };
        if e.surfaces.is_none() {
            generic = ext.target_group.clone();
        }
        special.push(ext);
    }
    special.retain(|e| e.surfaces.is_some());
    FullGroup { generic, special }
}

fn surfaces(sig: &Signature, g: &crate::groups::FiniteGroup) -> Result<SurfaceCount> {
    let dim = teich_dim(sig);
    if dim > 0 {
        return Ok(SurfaceCount::Family { real_dimension: dim as u32 });
    }
    let classes = topological_classes(sig, g, SearchOptions::default())?;
    Ok(SurfaceCount::Finite { count: classes.len() as u32 })
}

fn record_for(spec: &data::CaseSpec, rows: &[data::CaseSpec], p: u32) -> Result<CaseRecord> {
    let name = data::instantiate(&spec.group, p);
    let g = build_group(&name.parse()?)?;
    let (kernels, source) = match case_number(&spec.case) {
        Some(n) => {
            let census = kernel_census(&GenusTwoAction::case(n)?, p)?;
            if !census.condition_holds {
                return Err(Error::Inconsistent(format!("case ({}) at p = {p}: the module does not split", spec.case)));
            }
            (census.kernels_for(&name), Source::HomologyModule)
        }
        None => (enumerate_epimorphisms(&spec.sig, &g)?.num_kernels() as u128, Source::Search),
    };
    if kernels == 0 {
        return Err(Error::Inconsistent(format!("case ({}) at p = {p}: no kernel with quotient {name}", spec.case)));
    }
    Ok(CaseRecord {
        case_id: spec.case.clone(),
        p,
        rho: spec.rho,
        signature: spec.sig.clone(),
        order: g.order() as u64,
        group: name,
        condition: spec.condition.to_string(),
        kernels,
        surfaces: surfaces(&spec.sig, &g)?,
        full_group: Some(full_group(spec, rows, p)),
        source,
    })
}

/// Actions with `ρ ≤ 2`; every one lifts from genus 2 when `p ≥ 5`.
fn low_rho_records(p: u32) -> Result<Vec<CaseRecord>> {
    let mut out = Vec::new();
    let only_p = |m: u32| m == p;
    for sig in enumerate_signatures(Rational::from_integer(1), Some(&only_p))? {
        let kernels = count_kernels_cyclic_p(&sig, p as u64);
        out.push(CaseRecord {
            case_id: "rho1".into(),
            p,
            rho: 1,
            surfaces: SurfaceCount::Family { real_dimension: teich_dim(&sig) as u32 },
            signature: sig,
            group: format!("C{p}"),
            order: p as u64,
            condition: Condition::Any.to_string(),
            kernels: kernels as u128,
            full_group: None,
            source: Source::Formula,
        });
    }
    for n in [10, 11] {
        let census = kernel_census(&GenusTwoAction::case(n)?, p)?;
        let sig = GenusTwoAction::case(n)?.signature();
        for group in census.induced_groups() {
            out.push(CaseRecord {
                case_id: "rho2".into(),
                p,
                rho: 2,
                surfaces: SurfaceCount::Family { real_dimension: teich_dim(&sig) as u32 },
                signature: sig.clone(),
                order: 2 * p as u64,
                kernels: census.kernels_for(&group),
                group,
                condition: Condition::Any.to_string(),
                full_group: None,
                source: Source::HomologyModule,
            });
        }
    }
    Ok(out)
}

/// Every action of a group of order `ρp`, `ρ ≥ rho_min`, on a surface of
/// genus `p + 1`. Primes `p ≥ 7` use the uniform families plus the sporadic
/// rows; `p = 5` runs the exhaustive scan over candidate groups.
pub fn classify(p: u32, rho_min: u32) -> Result<Vec<CaseRecord>> {
    check_prime(p)?;
    let mut out = if p == SMALL_PRIME {
        small_prime_scan(rho_min.max(3))?.records()
    } else {
        let rows = data::families()?;
        let live: Vec<&data::CaseSpec> = rows.iter().filter(|r| r.rho >= rho_min && r.condition.holds(p)).collect();
        live.par_iter().map(|r| record_for(r, &rows, p)).collect::<Result<Vec<_>>>()?
    };
    if rho_min <= 2 {
        out.extend(low_rho_records(p)?.into_iter().filter(|r| r.rho >= rho_min));
    }
    out.sort_by_key(|r| std::cmp::Reverse(r.rho));
    Ok(out)
}

#[cfg(test)]
mod tests;
