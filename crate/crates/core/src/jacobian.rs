//! Equivariant isogeny decompositions of `J(S)` from admissible collections of
//! subgroups, with every quotient genus recomputed from the coset action.

use std::fmt;

use serde::Serialize;

use crate::characters::{fixed_dim, irreducible_characters};
use crate::epi::{quotient_data, GeneratingTuple};
use crate::error::{Error, Result};
use crate::groups::{build_group, Elem, FiniteGroup, GroupSpec, Subgroup};
use crate::signatures::genus_of_kernel;

#[derive(Clone, Debug, Serialize)]
pub struct IrrepMargin {
    pub irrep: String,
    pub degree: u32,
    /// `Σ_j d_V^{H_j}`.
    pub fixed_sum: u32,
    pub slack: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdmissibilityReport {
    pub group: String,
    pub admissible: bool,
    /// One entry per non-trivial irreducible character.
    pub margins: Vec<IrrepMargin>,
}

/// Checks `Σ_j d_V^{H_j} ≤ d_V` for every non-trivial irreducible `V` of `G`.
pub fn is_admissible(g: &FiniteGroup, subgroups: &[Subgroup]) -> Result<AdmissibilityReport> {
    for (i, h) in subgroups.iter().enumerate() {
        if !h.is_closed_in(g) {
            return Err(Error::Invalid(format!("H{} is not a subgroup of {}", i + 1, g.name())));
        }
        if subgroups[..i].iter().any(|k| k.elements() == h.elements()) {
            return Err(Error::Invalid(format!("H{} repeats an earlier subgroup", i + 1)));
        }
    }
    let irreps = irreducible_characters(g)?;
    let mut margins = Vec::new();
    for chi in irreps.iter().filter(|c| !c.is_trivial()) {
        let degree = chi.degree().expect("irreducible characters have a degree");
        let mut fixed_sum = 0;
        for h in subgroups {
            fixed_sum += fixed_dim(chi, h)?;
        }
        margins.push(IrrepMargin {
            irrep: chi.label().to_string(),
            degree,
            fixed_sum,
            slack: degree as i64 - fixed_sum as i64,
        });
    }
    Ok(AdmissibilityReport { group: g.name().to_string(), admissible: margins.iter().all(|m| m.slack >= 0), margins })
}

/// One factor `J(S/H)^e` of the decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct IsogenyFactor {
    pub name: String,
    pub subgroup: String,
    pub subgroup_order: usize,
    /// Generator of the cyclic subgroup `H`.
    pub generator: Elem,
    pub genus: u64,
    pub exponent: u32,
    pub quotient_signature: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsogenyReport {
    pub case_id: String,
    pub p: u32,
    pub group: String,
    pub genus: u64,
    pub factors: Vec<IsogenyFactor>,
    pub residual_dim: i64,
    pub admissibility: AdmissibilityReport,
}

impl IsogenyReport {
    pub fn dimension_sum(&self) -> u64 {
        self.factors.iter().map(|f| f.exponent as u64 * f.genus).sum()
    }
}

impl fmt::Display for IsogenyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let jac = |x: &IsogenyFactor| {
            let base = if x.name == "E" { "E".to_string() } else { format!("J({})", x.name) };
            match x.exponent {
                1 => base,
                e => format!("{base}^{e}"),
            }
        };
        let dims = |x: &IsogenyFactor| match x.exponent {
            1 => x.genus.to_string(),
            e => format!("{e}*{}", x.genus),
        };
        write!(
            f,
            "J(S) ~ {} [dims {} = {}]",
            self.factors.iter().map(jac).collect::<Vec<_>>().join(" x "),
            self.factors.iter().map(dims).collect::<Vec<_>>().join(" + "),
            self.dimension_sum()
        )
    }
}

/// `a`, `b` and the central `t` (if any) for `G_{p,r}` or `G_{p,r} × C_2`.
struct Generators {
    p: u32,
    r: u32,
    a: Elem,
    b: Elem,
    t: Option<Elem>,
}

fn generators(g: &FiniteGroup) -> Result<Generators> {
    match g.spec() {
        // a^i b^j sits at i·r + j
        Some(GroupSpec::Metacyclic { p, r, .. }) => Ok(Generators { p: *p, r: *r, a: *r as Elem, b: 1, t: None }),
        Some(GroupSpec::DirectProduct(m, c)) if **c == GroupSpec::Cyclic(2) => match **m {
            GroupSpec::Metacyclic { p, r, .. } => Ok(Generators { p, r, a: 2 * r as Elem, b: 2, t: Some(1) }),
            _ => Err(Error::Unsupported(format!("no isogeny decomposition for {}", g.name()))),
        },
        _ => Err(Error::Unsupported(format!("no isogeny decomposition for {}", g.name()))),
    }
}

/// `{P, Q_1, …, Q_r}` with `P = ⟨a⟩`, `Q_i = ⟨a^{t_i} β⟩` and `t_i = i − 1`.
fn generic_collection(g: &FiniteGroup, a: Elem, beta: Elem, r: u32) -> Result<Vec<Subgroup>> {
    let mut out = vec![g.subgroup_generated(&[a])];
    let q = g.subgroup_generated(&[beta]);
    for t in 0..r {
        let qi = g.subgroup_generated(&[g.mul(g.pow(a, t as i64), beta)]);
        if !g.elements().any(|h| q.elements().iter().map(|&x| g.conj(h, x)).all(|y| qi.contains(y))) {
            return Err(Error::Inconsistent(format!("Q_{} is not conjugate to ⟨β⟩", t + 1)));
        }
        if out.iter().any(|s: &Subgroup| s.elements() == qi.elements()) {
            return Err(Error::Inconsistent(format!("Q_{} repeats an earlier subgroup", t + 1)));
        }
        out.push(qi);
    }
    Ok(out)
}

/// Admissibility of `{⟨a⟩, ⟨a^{t_i} b⟩}` in `G_{p,r}`.
pub fn metacyclic_collection_admissibility(p: u32, r: u32) -> Result<AdmissibilityReport> {
    let g = build_group(&GroupSpec::metacyclic(p, r))?;
    let gens = generators(&g)?;
    is_admissible(&g, &generic_collection(&g, gens.a, gens.b, r)?)
}

fn factor(
    t: &GeneratingTuple,
    name: &str,
    label: &str,
    generator: Elem,
    exponent: u32,
    expected: u64,
) -> Result<IsogenyFactor> {
    let h = t.group().subgroup_generated(&[generator]);
    let q = quotient_data(t, &h)?;
    if q.genus as u64 != expected {
        return Err(Error::Inconsistent(format!(
            "S/{label} has genus {} by the coset action but {expected} by the closed form",
            q.genus
        )));
    }
    Ok(IsogenyFactor {
        name: name.into(),
        subgroup: label.into(),
        subgroup_order: h.order(),
        generator,
        genus: q.genus as u64,
        exponent,
        quotient_signature: q.signature.to_string(),
    })
}

/// Checks that `⟨a, β⟩ ≅ G_{p,r}` with `β a β⁻¹ = a^ω` for the default `ω`.
fn check_metacyclic_pair(g: &FiniteGroup, a: Elem, beta: Elem, p: u32, r: u32) -> Result<()> {
    let omega = GroupSpec::metacyclic_omega(p, r, None)?;
    let ok = g.element_order(a) == p
        && g.element_order(beta) == r
        && g.conj(beta, a) == g.pow(a, omega as i64)
        && g.subgroup_generated(&[a, beta]).order() == (p * r) as usize;
    if !ok {
        return Err(Error::Inconsistent(format!("⟨a, β⟩ is not G({p},{r}) inside {}", g.name())));
    }
    Ok(())
}

/// Isogeny decomposition of `J(S)` for the surface given by `tuple`, in the
/// family `case` (roman label `i`..`ix`) at the prime `p`.
pub fn decompose_jacobian(case: &str, p: u32, tuple: &GeneratingTuple) -> Result<IsogenyReport> {
    if matches!(case, "x" | "xi" | "xii") {
        return Err(Error::Unsupported(format!("no isogeny decomposition is known for case ({case})")));
    }
    tuple.verify()?;
    let g = tuple.group();
    let gens = generators(g)?;
    if gens.p != p {
        return Err(Error::Invalid(format!("{} does not belong to p = {p}", g.name())));
    }
    let genus = genus_of_kernel(&tuple.signature(), g.order() as u64)?;
    if genus != p as u64 + 1 {
        return Err(Error::Invalid(format!("surface of genus {genus}, expected {}", p + 1)));
    }
    let expected_shape = match case {
        "i" => (6, true),
        "iv" => (gens.r, gens.t.is_some()),
        "viii" => (2, true),
        "ii" | "iii" | "v" | "vi" | "vii" | "ix" => (gens.r, false),
        _ => return Err(Error::Invalid(format!("unknown case ({case})"))),
    };
    if expected_shape != (gens.r, gens.t.is_some()) {
        return Err(Error::Invalid(format!("{} does not occur in case ({case})", g.name())));
    }
    let (a, b) = (gens.a, gens.b);
    let pp = p as u64;
    let (factors, admissibility) = match (case, gens.t) {
        ("viii", Some(t)) => {
            // b ↦ bt is an automorphism; normalise so that bt is conjugate to
            // three of the five elliptic images.
            let hits = |h: Elem| tuple.elliptic().iter().filter(|&&x| g.elements().any(|k| g.conj(k, x) == h)).count();
            let b = if hits(g.mul(b, t)) >= hits(b) { b } else { g.mul(b, t) };
            let at = g.mul(a, t);
            let bt = g.mul(b, t);
            let ab = g.mul(a, b);
            let subs = [g.subgroup_generated(&[at]), g.subgroup_generated(&[bt]), g.subgroup_generated(&[ab])];
            let adm = is_admissible(g, &subs)?;
            let factors = vec![
                factor(tuple, "E", "<at>", at, 1, 1)?,
                factor(tuple, "C1", "<bt>", bt, 1, (pp - 1) / 2)?,
                factor(tuple, "C2", "<ab>", ab, 1, pp.div_ceil(2))?,
            ];
            (factors, adm)
        }
        (_, t) => {
            let r = gens.r;
            // Case (i) works in ⟨a, bt⟩ ≅ G_{p,6}; case (iv) with G_{p,3} × C_2 in ⟨a, b⟩.
            let (beta, label) = match (case, t) {
                ("i", Some(t)) => (g.mul(b, t), "<bt>"),
                _ => (b, "<b>"),
            };
            check_metacyclic_pair(g, a, beta, p, r)?;
            let collection = generic_collection(g, a, beta, r)?;
            for (i, qi) in collection.iter().enumerate().skip(1) {
                let d = quotient_data(tuple, qi)?;
                if d.genus as u64 != (pp - 1) / r as u64 {
                    return Err(Error::Inconsistent(format!("S/Q_{i} has genus {}", d.genus)));
                }
            }
            let adm = metacyclic_collection_admissibility(p, r)?;
            let factors =
                vec![factor(tuple, "T", "<a>", a, 1, 2)?, factor(tuple, "C", label, beta, r, (pp - 1) / r as u64)?];
            (factors, adm)
        }
    };
    if !admissibility.admissible {
        return Err(Error::Inconsistent(format!("the collection for case ({case}) is not admissible")));
    }
    let report = IsogenyReport {
        case_id: case.to_string(),
        p,
        group: g.name().to_string(),
        genus,
        residual_dim: genus as i64 - factors.iter().map(|f| f.exponent as i64 * f.genus as i64).sum::<i64>(),
        factors,
        admissibility,
    };
    if report.residual_dim != 0 {
        return Err(Error::Inconsistent(format!("complement of dimension {} in case ({case})", report.residual_dim)));
    }
    Ok(report)
}
