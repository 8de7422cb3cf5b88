//! Loader for the embedded expectation tables.
//!
//! Each file starts with the header `# census-data v1`, has one record per
//! line with fields separated by `|`, and treats `#` lines as comments.
//! Setting `CENSUS_DATA_DIR` reads the files from that directory instead.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::signatures::Signature;

pub const HEADER: &str = "# census-data v1";
pub const DATA_DIR_ENV: &str = "CENSUS_DATA_DIR";

const EMBEDDED: &[(&str, &str)] = &[
    ("sigma.txt", include_str!("../../data/sigma.txt")),
    ("families.txt", include_str!("../../data/families.txt")),
    ("ladder.txt", include_str!("../../data/ladder.txt")),
    ("hypermaps.txt", include_str!("../../data/hypermaps.txt")),
    ("conder.txt", include_str!("../../data/conder.txt")),
    ("nonorientable.txt", include_str!("../../data/nonorientable.txt")),
    ("small_p.txt", include_str!("../../data/small_p.txt")),
    ("small_rho.txt", include_str!("../../data/small_rho.txt")),
    ("deviations.txt", include_str!("../../data/deviations.txt")),
];

pub fn file_names() -> impl Iterator<Item = &'static str> {
    EMBEDDED.iter().map(|(n, _)| *n)
}

#[derive(Clone, Debug)]
pub struct Record {
    pub line: usize,
    pub fields: Vec<String>,
}

fn read_source(name: &str) -> Result<String> {
    if let Some(dir) = std::env::var_os(DATA_DIR_ENV) {
        let path = PathBuf::from(dir).join(name);
        return std::fs::read_to_string(&path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())));
    }
    EMBEDDED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, s)| s.to_string())
        .ok_or_else(|| Error::Invalid(format!("no data file named {name}")))
}

pub fn parse_records(name: &str, text: &str, width: usize) -> Result<Vec<Record>> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(HEADER) {
        return Err(Error::Parse { token: name.to_string(), reason: format!("first line must be `{HEADER}`") });
    }
    let mut out = Vec::new();
    for (i, raw) in lines.enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<String> = line.split('|').map(|f| f.trim().to_string()).collect();
        if fields.len() != width {
            return Err(Error::Parse {
                token: format!("{name}:{}", i + 2),
                reason: format!("expected {width} fields, found {}", fields.len()),
            });
        }
        out.push(Record { line: i + 2, fields });
    }
    Ok(out)
}

fn load(name: &str, width: usize) -> Result<Vec<Record>> {
    parse_records(name, &read_source(name)?, width)
}

fn bad(name: &str, r: &Record, reason: impl Into<String>) -> Error {
    Error::Parse { token: format!("{name}:{}", r.line), reason: reason.into() }
}

fn num<T: std::str::FromStr>(name: &str, r: &Record, i: usize) -> Result<T> {
    r.fields[i].parse().map_err(|_| bad(name, r, format!("`{}` is not a number", r.fields[i])))
}

fn sig(name: &str, r: &Record, i: usize) -> Result<Signature> {
    r.fields[i].parse().map_err(|e: Error| bad(name, r, e.to_string()))
}

fn opt(s: &str) -> Option<String> {
    (s != "-").then(|| s.to_string())
}

/// `p ≡ 1 mod m`, `p = q`, or no condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Condition {
    Any,
    OneMod(u32),
    Equals(u32),
}

impl Condition {
    pub fn holds(self, p: u32) -> bool {
        match self {
            Condition::Any => true,
            Condition::OneMod(m) => p % m == 1,
            Condition::Equals(q) => p == q,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Any => write!(f, "any p"),
            Condition::OneMod(m) => write!(f, "p ≡ 1 mod {m}"),
            Condition::Equals(q) => write!(f, "p = {q}"),
        }
    }
}

impl std::str::FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse { token: s.to_string(), reason: "expected `any`, `1 mod m` or `= q`".into() };
        if s == "any" {
            Ok(Condition::Any)
        } else if let Some(m) = s.strip_prefix("1 mod ") {
            Ok(Condition::OneMod(m.trim().parse().map_err(|_| err())?))
        } else if let Some(q) = s.strip_prefix('=') {
            Ok(Condition::Equals(q.trim().parse().map_err(|_| err())?))
        } else {
            Err(err())
        }
    }
}

/// The name a group built from `name` reports, e.g. `V25` becomes `C5xC5`.
pub fn canonical_name(name: &str) -> String {
    name.parse::<crate::groups::GroupSpec>().map_or_else(|_| name.to_string(), |s| s.to_string())
}

/// Substitutes the prime into a group template such as `Gpr(p,6)xC2`.
pub fn instantiate(template: &str, p: u32) -> String {
    template.replace("(p,", &format!("({p},"))
}

/// A stated kernel count: a constant or a multiple of `p+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelFormula {
    Constant(u128),
    TimesPPlusOne(u128),
}

impl KernelFormula {
    pub fn at(self, p: u32) -> u128 {
        match self {
            KernelFormula::Constant(c) => c,
            KernelFormula::TimesPPlusOne(c) => c * (p as u128 + 1),
        }
    }
}

impl std::str::FromStr for KernelFormula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse { token: s.to_string(), reason: "expected an integer or `a(p+1)`".into() };
        match s.strip_suffix("(p+1)") {
            Some(c) => Ok(KernelFormula::TimesPPlusOne(c.parse().map_err(|_| err())?)),
            None => Ok(KernelFormula::Constant(s.parse().map_err(|_| err())?)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfaceCount {
    Finite { count: u32 },
    Family { real_dimension: u32 },
}

impl fmt::Display for SurfaceCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceCount::Finite { count } => write!(f, "{count}"),
            SurfaceCount::Family { real_dimension } => write!(f, "family of real dimension {real_dimension}"),
        }
    }
}

impl std::str::FromStr for SurfaceCount {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse { token: s.to_string(), reason: "expected a count or `family d`".into() };
        match s.strip_prefix("family ") {
            Some(d) => Ok(SurfaceCount::Family { real_dimension: d.trim().parse().map_err(|_| err())? }),
            None => Ok(SurfaceCount::Finite { count: s.parse().map_err(|_| err())? }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSpec {
    pub target: String,
    /// `None` when every surface extends.
    pub surfaces: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct CaseSpec {
    pub case: String,
    pub rho: u32,
    pub sig: Signature,
    pub group: String,
    pub condition: Condition,
    pub kernels: Option<KernelFormula>,
    pub collapse: Option<u32>,
    pub surfaces: SurfaceCount,
    pub extensions: Vec<ExtensionSpec>,
}

pub fn families() -> Result<Vec<CaseSpec>> {
    const N: &str = "families.txt";
    load(N, 9)?
        .iter()
        .map(|r| {
            let f = &r.fields;
            let parse_field = |i: usize| -> Result<Option<String>> { Ok(opt(&f[i])) };
            let extensions = match parse_field(8)? {
                None => Vec::new(),
                Some(s) => s
                    .split(',')
                    .map(|e| {
                        let (t, n) =
                            e.trim().split_once(':').ok_or_else(|| bad(N, r, format!("bad extension `{e}`")))?;
                        let surfaces =
                            if n == "all" { None } else { Some(n.parse().map_err(|_| bad(N, r, "bad count"))?) };
                        Ok(ExtensionSpec { target: t.to_string(), surfaces })
                    })
                    .collect::<Result<_>>()?,
            };
            Ok(CaseSpec {
                case: f[0].clone(),
                rho: num(N, r, 1)?,
                sig: sig(N, r, 2)?,
                group: f[3].clone(),
                condition: f[4].parse().map_err(|e: Error| bad(N, r, e.to_string()))?,
                kernels: parse_field(5)?.map(|s| s.parse()).transpose().map_err(|e: Error| bad(N, r, e.to_string()))?,
                collapse: parse_field(6)?.map(|s| s.parse()).transpose().map_err(|_| bad(N, r, "bad collapse"))?,
                surfaces: f[7].parse().map_err(|e: Error| bad(N, r, e.to_string()))?,
                extensions,
            })
        })
        .collect()
}

/// The listed signatures, keyed by `ρ`.
pub fn sigma() -> Result<BTreeMap<u32, Vec<Signature>>> {
    const N: &str = "sigma.txt";
    let mut out: BTreeMap<u32, Vec<Signature>> = BTreeMap::new();
    for r in load(N, 2)? {
        out.entry(num(N, &r, 0)?).or_default().push(sig(N, &r, 1)?);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Inclusion {
    pub sub: Signature,
    pub sup: Signature,
    pub index: u32,
    pub kind: String,
}

pub fn ladder() -> Result<Vec<Inclusion>> {
    const N: &str = "ladder.txt";
    load(N, 4)?
        .iter()
        .map(|r| {
            Ok(Inclusion { sub: sig(N, r, 0)?, sup: sig(N, r, 1)?, index: num(N, r, 2)?, kind: r.fields[3].clone() })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct HypermapSpec {
    pub case: String,
    pub sig: Signature,
    pub group: String,
    pub condition: Condition,
    pub kernels: u32,
    pub reflexible: bool,
    pub pair_orbits: u32,
}

pub fn hypermaps() -> Result<Vec<HypermapSpec>> {
    const N: &str = "hypermaps.txt";
    load(N, 7)?
        .iter()
        .map(|r| {
            let reflexible = match r.fields[5].as_str() {
                "reflexible" => true,
                "chiral" => false,
                other => return Err(bad(N, r, format!("unknown chirality `{other}`"))),
            };
            Ok(HypermapSpec {
                case: r.fields[0].clone(),
                sig: sig(N, r, 1)?,
                group: r.fields[2].clone(),
                condition: r.fields[3].parse().map_err(|e: Error| bad(N, r, e.to_string()))?,
                kernels: num(N, r, 4)?,
                reflexible,
                pair_orbits: num(N, r, 6)?,
            })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct ConderEntry {
    pub case: String,
    pub p: u32,
    pub entry: Option<String>,
    pub group: Option<String>,
    pub keys: BTreeMap<String, String>,
}

impl ConderEntry {
    pub fn key(&self, k: &str) -> Option<&str> {
        self.keys.get(k).map(String::as_str)
    }
}

pub fn conder() -> Result<Vec<ConderEntry>> {
    const N: &str = "conder.txt";
    load(N, 5)?
        .iter()
        .map(|r| {
            let mut keys = BTreeMap::new();
            if r.fields[4] != "-" {
                for kv in r.fields[4].split_whitespace() {
                    let (k, v) =
                        kv.split_once('=').ok_or_else(|| bad(N, r, format!("expected key=value, got `{kv}`")))?;
                    keys.insert(k.to_string(), v.to_string());
                }
            }
            Ok(ConderEntry {
                case: r.fields[0].clone(),
                p: num(N, r, 1)?,
                entry: opt(&r.fields[2]),
                group: opt(&r.fields[3]),
                keys,
            })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct NonOrientableSpec {
    pub case: String,
    pub p: u32,
    pub entry: String,
    pub sig: Signature,
    pub group: String,
    pub cover: String,
    pub petrie: Option<u32>,
}

pub fn nonorientable() -> Result<Vec<NonOrientableSpec>> {
    const N: &str = "nonorientable.txt";
    load(N, 7)?
        .iter()
        .map(|r| {
            Ok(NonOrientableSpec {
                case: r.fields[0].clone(),
                p: num(N, r, 1)?,
                entry: r.fields[2].clone(),
                sig: sig(N, r, 3)?,
                group: r.fields[4].clone(),
                cover: r.fields[5].clone(),
                petrie: opt(&r.fields[6]).map(|s| s.parse()).transpose().map_err(|_| bad(N, r, "bad Petrie length"))?,
            })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct SmallPrimeSpec {
    pub id: String,
    pub parent: Option<String>,
    pub sig: Signature,
    pub group: String,
    pub rho: u32,
    pub entry: Option<String>,
}

pub fn small_p() -> Result<Vec<SmallPrimeSpec>> {
    const N: &str = "small_p.txt";
    load(N, 6)?
        .iter()
        .map(|r| {
            Ok(SmallPrimeSpec {
                id: r.fields[0].clone(),
                parent: opt(&r.fields[1]),
                sig: sig(N, r, 2)?,
                group: canonical_name(&r.fields[3]),
                rho: num(N, r, 4)?,
                entry: opt(&r.fields[5]),
            })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct SmallRhoSpec {
    pub rho: u32,
    pub sig: Signature,
    pub group: String,
    pub p: u32,
    pub kernels: u128,
}

pub fn small_rho() -> Result<Vec<SmallRhoSpec>> {
    const N: &str = "small_rho.txt";
    load(N, 5)?
        .iter()
        .map(|r| {
            Ok(SmallRhoSpec {
                rho: num(N, r, 0)?,
                sig: sig(N, r, 1)?,
                group: r.fields[2].clone(),
                p: num(N, r, 3)?,
                kernels: num(N, r, 4)?,
            })
        })
        .collect()
}

/// Known disagreements between a transcribed table and recomputation.
#[derive(Clone, Debug)]
pub struct Deviation {
    pub item: String,
    pub observed: String,
    pub note: String,
}

pub fn deviations() -> Result<Vec<Deviation>> {
    const N: &str = "deviations.txt";
    Ok(load(N, 3)?
        .into_iter()
        .map(|r| {
            let mut f = r.fields.into_iter();
            Deviation { item: f.next().unwrap(), observed: f.next().unwrap(), note: f.next().unwrap() }
        })
        .collect())
}
