use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, mult_order, smallest_root_of_order};
use crate::error::{parse_err, Error, Result};

/// Description of a concrete group from one of the supported families.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum GroupSpec {
    Cyclic(u32),
    /// Dihedral group of order `2n`.
    Dihedral(u32),
    /// `⟨a, b | a^p = b^r = 1, b a b⁻¹ = a^ω⟩`; `omega = None` picks the smallest valid ω.
    Metacyclic {
        p: u32,
        r: u32,
        omega: Option<u32>,
    },
    DirectProduct(Box<GroupSpec>, Box<GroupSpec>),
    Psl2(u32),
    Pgl2(u32),
    Symmetric(u32),
    /// `F_p^2 ⋊ M` with `M ≤ GL_2(p)` generated by the given matrices `[a, b, c, d]`.
    AffinePlane {
        p: u32,
        linear: Vec<[u32; 4]>,
        name: String,
    },
}

impl GroupSpec {
    pub fn metacyclic(p: u32, r: u32) -> Self {
        GroupSpec::Metacyclic { p, r, omega: None }
    }

    pub fn product(a: GroupSpec, b: GroupSpec) -> Self {
        GroupSpec::DirectProduct(Box::new(a), Box::new(b))
    }

    /// `V25 ⋊ S3`, with `S3 = ⟨[[0,−1],[1,−1]], [[0,1],[1,0]]⟩` acting on `F_5^2`.
    pub fn v25_s3() -> Self {
        GroupSpec::AffinePlane { p: 5, linear: vec![[0, 4, 1, 4], [0, 1, 1, 0]], name: "V25:S3".into() }
    }

    pub fn v25_c3() -> Self {
        GroupSpec::AffinePlane { p: 5, linear: vec![[0, 4, 1, 4]], name: "V25:C3".into() }
    }

    pub fn v25_c2() -> Self {
        GroupSpec::AffinePlane { p: 5, linear: vec![[0, 1, 1, 0]], name: "V25:C2".into() }
    }

    /// Resolved ω for metacyclic specs, validating the parameters.
    pub fn metacyclic_omega(p: u32, r: u32, omega: Option<u32>) -> Result<u32> {
        if p < 3 || !is_prime(p as u64) {
            return Err(Error::InvalidGroup(format!("Gpr({p},{r}): p must be an odd prime")));
        }
        if r < 2 || !(p - 1).is_multiple_of(r) {
            return Err(Error::InvalidGroup(format!("Gpr({p},{r}): r must be a divisor ≥ 2 of p−1")));
        }
        match omega {
            Some(w) if mult_order(w as u64, p as u64) == Some(r as u64) => Ok(w),
            Some(w) => Err(Error::InvalidGroup(format!("Gpr({p},{r}): ω = {w} does not have order {r} mod {p}"))),
            None => Ok(smallest_root_of_order(r as u64, p as u64).expect("r | p-1") as u32),
        }
    }

    /// Group order, without building the group.
    pub fn order(&self) -> u64 {
        match self {
            GroupSpec::Cyclic(n) => *n as u64,
            GroupSpec::Dihedral(n) => 2 * *n as u64,
            GroupSpec::Metacyclic { p, r, .. } => (*p as u64) * (*r as u64),
            GroupSpec::DirectProduct(a, b) => a.order() * b.order(),
            GroupSpec::Psl2(q) => {
                let q = *q as u64;
                q * (q * q - 1) / 2
            }
            GroupSpec::Pgl2(q) => {
                let q = *q as u64;
                q * (q * q - 1)
            }
            GroupSpec::Symmetric(n) => (1..=*n as u64).product(),
            GroupSpec::AffinePlane { p, linear, .. } => {
                // |M| is not known without closure; report the translation part times
                // the standard sizes of the named subgroups.
                let t = (*p as u64).pow(2);
                t * crate::groups::build::linear_group_order(*p, linear)
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Metacyclic { p, r, omega: None } => write!(f, "Gpr({p},{r})"),
            GroupSpec::Metacyclic { p, r, omega: Some(w) } => write!(f, "Gpr({p},{r},{w})"),
            GroupSpec::DirectProduct(a, b) => match **b {
                GroupSpec::DirectProduct(..) => write!(f, "{a}x({b})"),
                _ => write!(f, "{a}x{b}"),
            },
            GroupSpec::Psl2(q) => write!(f, "PSL(2,{q})"),
            GroupSpec::Pgl2(q) => write!(f, "PGL(2,{q})"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::AffinePlane { name, .. } => write!(f, "{name}"),
        }
    }
}

impl From<GroupSpec> for String {
    fn from(s: GroupSpec) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for GroupSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

fn split_top_level_x(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn parse_args(tok: &str, inner: &str, want: std::ops::RangeInclusive<usize>) -> Result<Vec<u32>> {
    let vals: std::result::Result<Vec<u32>, _> = inner.split(',').map(|t| t.trim().parse::<u32>()).collect();
    match vals {
        Ok(v) if want.contains(&v.len()) => Ok(v),
        _ => Err(parse_err(tok, "bad argument list")),
    }
}

fn parse_factor(tok: &str) -> Result<GroupSpec> {
    let t = tok.trim();
    if t.starts_with('(') && t.ends_with(')') {
        return t[1..t.len() - 1].parse();
    }
    let num = |s: &str| s.parse::<u32>().map_err(|_| parse_err(tok, "expected a number"));
    let call = |prefix: &str| -> Option<&str> {
        t.strip_prefix(prefix).and_then(|r| r.strip_prefix('(')).and_then(|r| r.strip_suffix(')'))
    };
    let spec = if let Some(args) = call("Gpr").or_else(|| call("G")) {
        let v = parse_args(tok, args, 2..=3)?;
        GroupSpec::Metacyclic { p: v[0], r: v[1], omega: v.get(2).copied() }
    } else if let Some(args) = call("PSL") {
        let v = parse_args(tok, args, 2..=2)?;
        if v[0] != 2 {
            return Err(parse_err(tok, "only PSL(2,q) is supported"));
        }
        GroupSpec::Psl2(v[1])
    } else if let Some(args) = call("PGL") {
        let v = parse_args(tok, args, 2..=2)?;
        if v[0] != 2 {
            return Err(parse_err(tok, "only PGL(2,q) is supported"));
        }
        GroupSpec::Pgl2(v[1])
    } else if t == "V25:S3" {
        GroupSpec::v25_s3()
    } else if t == "V25:C3" {
        GroupSpec::v25_c3()
    } else if t == "V25:C2" {
        GroupSpec::v25_c2()
    } else if t == "V25" {
        GroupSpec::product(GroupSpec::Cyclic(5), GroupSpec::Cyclic(5))
    } else if let Some(n) = t.strip_prefix('C') {
        GroupSpec::Cyclic(num(n)?)
    } else if let Some(n) = t.strip_prefix('D') {
        GroupSpec::Dihedral(num(n)?)
    } else if let Some(n) = t.strip_prefix('S') {
        GroupSpec::Symmetric(num(n)?)
    } else {
        return Err(parse_err(tok, "unknown group"));
    };
    Ok(spec)
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Mini-language: `C6`, `D5`, `Gpr(13,6)`, `Gpr(13,6,2)`, `PSL(2,7)`, `PGL(2,7)`,
    /// `S5`, `V25:S3`, and direct products joined by `x` (`C6xC2`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(parse_err(s, "empty group spec"));
        }
        let mut parts = split_top_level_x(s).into_iter();
        let mut spec = parse_factor(parts.next().unwrap())?;
        for part in parts {
            spec = GroupSpec::product(spec, parse_factor(part)?);
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in
            ["C6", "C6xC2", "D5", "Gpr(13,6)", "Gpr(7,3,4)", "PSL(2,7)", "PGL(2,13)", "S5", "Gpr(7,6)xC2", "V25:S3"]
        {
            assert_eq!(s.parse::<GroupSpec>().unwrap().to_string(), s);
        }
        assert_eq!("G(7,6)".parse::<GroupSpec>().unwrap(), GroupSpec::metacyclic(7, 6));
    }

    #[test]
    fn parse_errors_name_token() {
        let e = "C6xQ8".parse::<GroupSpec>().unwrap_err();
        assert!(e.to_string().contains("Q8"), "{e}");
        let e = "Gpr(7)".parse::<GroupSpec>().unwrap_err();
        assert!(e.to_string().contains("Gpr(7)"), "{e}");
    }

    #[test]
    fn omega_validation() {
        assert_eq!(GroupSpec::metacyclic_omega(7, 3, None).unwrap(), 2);
        assert_eq!(GroupSpec::metacyclic_omega(13, 4, None).unwrap(), 5);
        assert!(GroupSpec::metacyclic_omega(7, 4, None).is_err());
        assert!(GroupSpec::metacyclic_omega(7, 3, Some(3)).is_err());
        assert!(GroupSpec::metacyclic_omega(9, 2, None).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!("PSL(2,13)".parse::<GroupSpec>().unwrap().order(), 1092);
        assert_eq!("Gpr(7,6)xC2".parse::<GroupSpec>().unwrap().order(), 84);
        assert_eq!(GroupSpec::v25_s3().order(), 150);
    }
}
