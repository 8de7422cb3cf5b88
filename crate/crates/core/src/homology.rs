//! Good-prime analysis: a genus-2 action of an abelian `Q`, its homology
//! character via fixed-point counts, and the count of kernels `K` obtained from
//! one-dimensional quotients of `M = Δ/Δ′Δ^p`.

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{divisors, is_prime, pow_mod, smallest_root_of_order};
use crate::characters::{character_table_abelian_with_basis, inner_product, AbelianCharacter, Character};
use crate::cyclotomic::Cyclotomic;
use crate::epi::{enumerate_epimorphisms, GeneratingTuple};
use crate::error::{Error, Result};
use crate::groups::{build_group, semidirect_cyclic_by, Elem, FiniteGroup, GroupSpec};
use crate::signatures::{genus_of_kernel, Rational, Signature};

/// An action of `Q` on a surface `T`, given by a generating tuple.
#[derive(Clone, Debug)]
pub struct GenusTwoAction {
    /// Position 1..=11 in the list of abelian genus-2 actions.
    pub case: u8,
    pub q: FiniteGroup,
    pub tuple: GeneratingTuple,
    /// Generators used to index the characters of `Q`.
    pub basis: Vec<Elem>,
}

struct Fixture {
    case: u8,
    group: &'static str,
    sig: &'static str,
    /// Elliptic images as exponent vectors on the cyclic factors.
    elliptic: &'static [&'static [u32]],
    hyperbolic: &'static [(&'static [u32], &'static [u32])],
    basis: &'static [&'static [u32]],
}

const FIXTURES: &[Fixture] = &[
    // x1 generates the C2 factor, x2 the C6 factor.
    Fixture {
        case: 1,
        group: "C6xC2",
        sig: "0;2,6,6",
        elliptic: &[&[0, 1], &[1, 0], &[5, 1]],
        hyperbolic: &[],
        basis: &[&[0, 1], &[1, 0]],
    },
    Fixture { case: 2, group: "C10", sig: "0;2,5,10", elliptic: &[&[5], &[2], &[3]], hyperbolic: &[], basis: &[&[1]] },
    Fixture { case: 3, group: "C8", sig: "0;2,8,8", elliptic: &[&[4], &[1], &[3]], hyperbolic: &[], basis: &[&[1]] },
    Fixture { case: 4, group: "C6", sig: "0;3,6,6", elliptic: &[&[4], &[1], &[1]], hyperbolic: &[], basis: &[&[1]] },
    Fixture {
        case: 5,
        group: "C6",
        sig: "0;2,2,3,3",
        elliptic: &[&[3], &[3], &[2], &[4]],
        hyperbolic: &[],
        basis: &[&[1]],
    },
    Fixture { case: 6, group: "C5", sig: "0;5,5,5", elliptic: &[&[1], &[1], &[3]], hyperbolic: &[], basis: &[&[1]] },
    Fixture {
        case: 7,
        group: "C4",
        sig: "0;2,2,4,4",
        elliptic: &[&[2], &[2], &[1], &[3]],
        hyperbolic: &[],
        basis: &[&[1]],
    },
    Fixture {
        case: 8,
        group: "C2xC2",
        sig: "0;2,2,2,2,2",
        elliptic: &[&[1, 0], &[0, 1], &[1, 1], &[1, 0], &[1, 0]],
        hyperbolic: &[],
        basis: &[&[1, 0], &[0, 1]],
    },
    Fixture {
        case: 9,
        group: "C3",
        sig: "0;3,3,3,3",
        elliptic: &[&[1], &[1], &[2], &[2]],
        hyperbolic: &[],
        basis: &[&[1]],
    },
    Fixture {
        case: 10,
        group: "C2",
        sig: "0;2,2,2,2,2,2",
        elliptic: &[&[1], &[1], &[1], &[1], &[1], &[1]],
        hyperbolic: &[],
        basis: &[&[1]],
    },
    Fixture {
        case: 11,
        group: "C2",
        sig: "1;2,2",
        elliptic: &[&[1], &[1]],
        hyperbolic: &[(&[1], &[1])],
        basis: &[&[1]],
    },
];

/// Roman label of the family attached to an abelian case with `ρ ≥ 3`.
pub fn case_label(case: u8) -> Option<&'static str> {
    let labels = ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix"];
    labels.get((case as usize).checked_sub(1)?).copied()
}

/// Index of the element with the given exponents on the cyclic factors,
/// using the `(g, h) ↦ g·|H| + h` layout of direct products.
fn element(q: &FiniteGroup, exps: &[u32]) -> Elem {
    match q.spec() {
        Some(GroupSpec::DirectProduct(_, h)) => exps[0] as usize * h.order() as usize + exps[1] as usize,
        _ => exps[0] as usize,
    }
}

impl GenusTwoAction {
    /// The pinned action for case `1..=11`.
    pub fn case(case: u8) -> Result<Self> {
        let f = FIXTURES
            .iter()
            .find(|f| f.case == case)
            .ok_or_else(|| Error::Invalid(format!("no abelian genus-2 case {case}")))?;
        let q = build_group(&f.group.parse()?)?;
        let sig: Signature = f.sig.parse()?;
        let ell = f.elliptic.iter().map(|e| element(&q, e)).collect();
        let hyp = f.hyperbolic.iter().map(|(a, b)| (element(&q, a), element(&q, b))).collect();
        let tuple = GeneratingTuple::new(&q, sig.periods().to_vec(), hyp, ell)?;
        let basis = f.basis.iter().map(|e| element(&q, e)).collect();
        Self::new(case, tuple, basis)
    }

    pub fn all() -> Result<Vec<Self>> {
        FIXTURES.iter().map(|f| Self::case(f.case)).collect()
    }

    /// Wraps a verified tuple; `Q` must be abelian and the kernel of genus 2.
    pub fn new(case: u8, tuple: GeneratingTuple, basis: Vec<Elem>) -> Result<Self> {
        let q = tuple.group().clone();
        if !q.is_abelian() {
            return Err(Error::Unsupported(format!("{} is not abelian", q.name())));
        }
        let g = genus_of_kernel(&tuple.signature(), q.order() as u64)?;
        if g != 2 {
            return Err(Error::Invalid(format!("kernel has genus {g}, not 2")));
        }
        Ok(GenusTwoAction { case, q, tuple, basis })
    }

    pub fn signature(&self) -> Signature {
        self.tuple.signature()
    }
}

/// Number of fixed points of `q ≠ 1` on `T`:
/// `φ(q) = |N_Q(⟨q⟩)| Σ ε_i(q)/m_i`, where `ε_i(q) = 1` iff `q` is conjugate
/// to a power of `x_i`.
pub fn fixed_point_count(action: &GenusTwoAction, q: Elem) -> Result<u32> {
    let g = &action.q;
    if q == g.identity() {
        return Err(Error::Invalid("fixed points of the identity are not isolated".into()));
    }
    let cyclic = g.subgroup_generated(&[q]);
    let normaliser = g.elements().filter(|&n| cyclic.contains(g.conj(n, q))).count();
    let mut sum = Rational::zero();
    for (&x, &m) in action.tuple.elliptic().iter().zip(action.tuple.periods()) {
        let powers = g.subgroup_generated(&[x]);
        if g.elements().any(|h| powers.contains(g.conj(h, q))) {
            sum += Rational::new(1, m as i64);
        }
    }
    integral(sum * Rational::from_integer(normaliser as i64))
}

/// Shortcut for cyclic `Q`: `|Q| Σ 1/m_i` over the periods divisible by `ord(q)`.
pub fn fixed_point_count_cyclic(action: &GenusTwoAction, q: Elem) -> Result<u32> {
    let g = &action.q;
    if !matches!(g.spec(), Some(GroupSpec::Cyclic(_))) {
        return Err(Error::Unsupported(format!("{} is not cyclic", g.name())));
    }
    let o = g.element_order(q);
    let sum: Rational =
        action.tuple.periods().iter().filter(|&&m| m % o == 0).map(|&m| Rational::new(1, m as i64)).sum();
    integral(sum * Rational::from_integer(g.order() as i64))
}

fn integral(phi: Rational) -> Result<u32> {
    if !phi.is_integer() || phi < Rational::zero() {
        return Err(Error::Inconsistent(format!("fixed-point count {phi} is not a non-negative integer")));
    }
    Ok(phi.to_integer() as u32)
}

/// Character of `Q` on `H_1(T, C)`: `2·genus(T)` at the identity and
/// `2 − φ(q)` elsewhere.
pub fn homology_character(action: &GenusTwoAction) -> Result<Character> {
    let g = &action.q;
    let genus = genus_of_kernel(&action.signature(), g.order() as u64)? as i64;
    let values = g
        .elements()
        .map(|x| {
            let v = if x == g.identity() { 2 * genus } else { 2 - fixed_point_count(action, x)? as i64 };
            Ok(Cyclotomic::from_integer(1, v))
        })
        .collect::<Result<Vec<_>>>()?;
    Character::new(g, values, "homology")
}

#[derive(Clone, Debug)]
pub struct DecompositionTerm {
    pub character: AbelianCharacter,
    pub multiplicity: u32,
}

/// The homology character as a sum of linear characters of `Q`.
#[derive(Clone, Debug)]
pub struct CharacterDecomposition {
    pub terms: Vec<DecompositionTerm>,
}

impl CharacterDecomposition {
    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.multiplicity).sum()
    }

    pub fn multiplicity(&self, index: &[u32]) -> u32 {
        self.terms.iter().find(|t| t.character.index == index).map_or(0, |t| t.multiplicity)
    }

    /// Least `n` with `p ≡ 1 (mod n)` equivalent to every summand being
    /// realisable over `F_p`, for odd primes `p`.
    pub fn modulus(&self) -> u32 {
        let m = self.terms.iter().fold(1u32, |acc, t| acc.lcm(&t.character.image_order));
        if m % 4 == 2 {
            m / 2
        } else {
            m
        }
    }

    pub fn render(&self) -> String {
        self.terms
            .iter()
            .map(|t| match t.multiplicity {
                1 => t.character.character.label().to_string(),
                a => format!("{a}·{}", t.character.character.label()),
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub fn decompose_homology(action: &GenusTwoAction) -> Result<CharacterDecomposition> {
    let chi = homology_character(action)?;
    let table = character_table_abelian_with_basis(&action.q, &action.basis)?;
    let mut terms = Vec::new();
    for c in table {
        let a = inner_product(&chi, &c.character)?;
        if !a.is_integer() || a < Rational::zero() {
            return Err(Error::Inconsistent(format!("multiplicity {a} of {}", c.character.label())));
        }
        if !a.is_zero() {
            terms.push(DecompositionTerm { character: c, multiplicity: a.to_integer() as u32 });
        }
    }
    let d = CharacterDecomposition { terms };
    let expected = chi.degree().unwrap_or(0);
    if d.total_degree() != expected {
        return Err(Error::Inconsistent(format!("decomposition has degree {}, expected {expected}", d.total_degree())));
    }
    Ok(d)
}

/// Kernels coming from one linear summand of `M ⊗ F_p`.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterKernels {
    pub character: String,
    pub image_order: u32,
    pub kernel_order: usize,
    pub multiplicity: u32,
    /// `(p^a − 1)/(p − 1)` maximal submodules with this quotient.
    pub kernels: u128,
    /// `Γ/K ≅ C_p ⋊_χ Q`.
    pub induced_group: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelCensus {
    pub case: u8,
    pub p: u32,
    /// `M ⊗ F_p` splits into one-dimensional summands iff `p ≡ 1 (mod modulus)`.
    pub modulus: u32,
    pub condition_holds: bool,
    /// Every group of order `ρp` has a normal Sylow `p`-subgroup, so the
    /// split extensions counted here are all there is.
    pub sylow_normal: bool,
    pub decomposition: String,
    pub per_character: Vec<CharacterKernels>,
    /// Kernels `K` inside one `Δ`.
    pub kernels_per_delta: u128,
    /// Normal surface subgroups `Δ` with `Γ/Δ ≅ Q`.
    pub delta_count: u128,
    pub kernel_count: u128,
}

impl KernelCensus {
    /// Kernels, over every `Δ`, whose quotient is the named group.
    pub fn kernels_for(&self, group: &str) -> u128 {
        self.per_character.iter().filter(|c| c.induced_group == group).map(|c| c.kernels).sum::<u128>()
            * self.delta_count
    }

    pub fn induced_groups(&self) -> Vec<String> {
        let mut v: Vec<String> = self.per_character.iter().map(|c| c.induced_group.clone()).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Whether the splitting lemma holds for `(ρ, σ)` at `p`: `p ∤ ρ`, no divisor
/// `d ≠ 1` of `ρ` is `≡ 1 (mod p)`, and `p` divides no period.
pub fn lemma_applies(rho: u32, sig: &Signature, p: u32) -> std::result::Result<(), String> {
    if rho.is_multiple_of(p) {
        return Err(format!("p = {p} divides ρ = {rho}"));
    }
    if let Some(d) = divisors(rho as u64).into_iter().find(|&d| d != 1 && d % p as u64 == 1) {
        return Err(format!("ρ = {rho} has the divisor {d} ≡ 1 mod {p}"));
    }
    if let Some(m) = sig.periods().iter().find(|&&m| m % p == 0) {
        return Err(format!("p = {p} divides the period {m}"));
    }
    Ok(())
}

fn abelian_name(g: &FiniteGroup, elems: &[Elem]) -> String {
    let k = elems.len() as u32;
    let exp = elems.iter().fold(1u32, |acc, &x| acc.lcm(&g.element_order(x)));
    if exp == k {
        format!("C{k}")
    } else {
        format!("C{exp}xC{}", k / exp)
    }
}

/// Name of `C_p ⋊_χ Q`: `G_{p,e} × ker χ` when `ker χ` has a cyclic complement.
pub fn induced_group_name(q: &FiniteGroup, chi: &AbelianCharacter, p: u32) -> String {
    let ker = chi.kernel();
    let e = chi.image_order;
    let complement = q.elements().any(|x| {
        q.element_order(x) == e && q.subgroup_generated(&[x]).elements().iter().all(|y| *y == 0 || !ker.contains(y))
    });
    match (e, ker.len()) {
        (1, _) => format!("C{p}x{}", abelian_name(q, &ker)),
        (_, 1) => GroupSpec::metacyclic(p, e).to_string(),
        _ if complement => format!("{}x{}", GroupSpec::metacyclic(p, e), abelian_name(q, &ker)),
        _ => format!("C{p}:{}[{}]", q.name(), chi.character.label()),
    }
}

/// `C_p ⋊_χ Q` as a concrete group, with `χ` realised in `F_p^*`.
pub fn induced_group(q: &FiniteGroup, chi: &AbelianCharacter, p: u32) -> Result<FiniteGroup> {
    let e = chi.exponent;
    let o = chi.image_order;
    if !(p - 1).is_multiple_of(o) {
        return Err(Error::Invalid(format!("{} is not realisable over F_{p}", chi.character.label())));
    }
    let w = smallest_root_of_order(o as u64, p as u64).expect("o | p-1");
    // χ(x) = ζ_e^{k(x)} has order dividing o, so k(x) is a multiple of e/o.
    let lambda: Vec<u32> = chi.exponents.iter().map(|&k| pow_mod(w, (k / (e / o)) as u64, p as u64) as u32).collect();
    semidirect_cyclic_by(p, q, &lambda)
}

fn per_delta(action: &GenusTwoAction, p: u32) -> Result<(CharacterDecomposition, Vec<CharacterKernels>)> {
    let d = decompose_homology(action)?;
    let mut out = Vec::new();
    if (p - 1).is_multiple_of(d.modulus()) {
        for t in &d.terms {
            let a = t.multiplicity;
            out.push(CharacterKernels {
                character: t.character.character.label().to_string(),
                image_order: t.character.image_order,
                kernel_order: t.character.kernel().len(),
                multiplicity: a,
                kernels: (0..a).map(|i| (p as u128).pow(i)).sum(),
                induced_group: induced_group_name(&action.q, &t.character, p),
            });
        }
    }
    Ok((d, out))
}

/// Counts normal surface subgroups `K ≤ Δ ≤ Γ` with `Δ/K ≅ C_p` and `K` normal
/// in `Γ`, over every `Δ` with `Γ/Δ ≅ Q`. Only summands realisable over `F_p`
/// are counted, so the count is zero when the congruence fails.
pub fn kernel_census(action: &GenusTwoAction, p: u32) -> Result<KernelCensus> {
    if p < 3 || !is_prime(p as u64) {
        return Err(Error::Invalid(format!("{p} is not an odd prime")));
    }
    let sig = action.signature();
    let rho = action.q.order() as u32;
    if rho.is_multiple_of(p) || sig.periods().iter().any(|&m| m % p == 0) {
        // The module count needs `p` coprime to `Q` and to every period.
        lemma_applies(rho, &sig, p).map_err(Error::LemmaInapplicable)?;
    }
    let sylow_normal = lemma_applies(rho, &sig, p).is_ok();
    let (d, per_character) = per_delta(action, p)?;
    let kernels_per_delta: u128 = per_character.iter().map(|c| c.kernels).sum();

    // Each Δ carries its own action on homology; they need not coincide pointwise.
    let deltas = enumerate_epimorphisms(&sig, &action.q)?;
    let mut kernel_count = 0u128;
    for class in deltas.classes() {
        let other = GenusTwoAction::new(action.case, class.representative.clone(), action.basis.clone())?;
        let (od, chars) = per_delta(&other, p)?;
        if od.modulus() != d.modulus() {
            return Err(Error::Inconsistent("surface subgroups Δ with different splitting conditions".into()));
        }
        kernel_count += chars.iter().map(|c| c.kernels).sum::<u128>();
    }
    let delta_count = deltas.num_kernels() as u128;
    if kernel_count != kernels_per_delta * delta_count {
        return Err(Error::Inconsistent("surface subgroups Δ with different kernel counts".into()));
    }
    Ok(KernelCensus {
        case: action.case,
        p,
        modulus: d.modulus(),
        condition_holds: (p - 1).is_multiple_of(d.modulus()),
        sylow_normal,
        decomposition: d.render(),
        per_character,
        kernels_per_delta,
        delta_count,
        kernel_count,
    })
}

#[cfg(test)]
mod tests;
