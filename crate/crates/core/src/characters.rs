//! Characters of abelian groups and explicit irreducible representations of
//! the metacyclic groups `C_p ⋊ C_r`.

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::{mult_order, pow_mod};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::groups::{
    build_group, extend_homomorphism, generating_set, Elem, FiniteGroup, GroupSpec, Subgroup, WordTree,
};
use crate::signatures::Rational;

/// A complex character, stored as one exact value per group element.
#[derive(Clone, Debug)]
pub struct Character {
    group: FiniteGroup,
    values: Vec<Cyclotomic>,
    label: String,
}

impl Character {
    pub fn new(group: &FiniteGroup, values: Vec<Cyclotomic>, label: impl Into<String>) -> Result<Self> {
        if values.len() != group.order() {
            return Err(Error::Invalid("one character value per element required".into()));
        }
        let chi = Character { group: group.clone(), values, label: label.into() };
        if chi.degree().is_none() {
            return Err(Error::Invalid(format!("{}: χ(1) is not a positive integer", chi.label)));
        }
        Ok(chi)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn value(&self, x: Elem) -> &Cyclotomic {
        &self.values[x]
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn degree(&self) -> Option<u32> {
        self.values[0].to_integer().filter(|&d| d > 0).map(|d| d as u32)
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.to_integer() == Some(1))
    }

    pub fn is_class_function(&self) -> bool {
        let cls = self.group.conjugacy_classes();
        cls.classes().iter().all(|c| c.iter().all(|&x| self.values[x] == self.values[c[0]]))
    }

    /// Pointwise sum, for assembling reducible characters.
    pub fn sum(&self, other: &Character, label: impl Into<String>) -> Result<Character> {
        same_group(self, other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect();
        Character::new(&self.group, values, label)
    }

    pub fn scaled(&self, k: i64) -> Character {
        let values = self.values.iter().map(|v| v.scale(Rational::from_integer(k))).collect();
        Character { group: self.group.clone(), values, label: format!("{k}*{}", self.label) }
    }

    pub fn norm(&self) -> Rational {
        inner_product(self, self).expect("same group")
    }

    /// Values on conjugacy-class representatives, as strings.
    pub fn class_values(&self) -> Vec<ClassValue> {
        let cls = self.group.conjugacy_classes();
        (0..cls.len())
            .map(|c| {
                let rep = cls.representative(c);
                ClassValue { class_rep: self.group.label(rep).to_string(), value: self.values[rep].to_string() }
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ClassValue {
    pub class_rep: String,
    pub value: String,
}

fn same_group(a: &Character, b: &Character) -> Result<()> {
    if a.group != b.group {
        return Err(Error::Invalid(format!("characters {} and {} live on different groups", a.label, b.label)));
    }
    Ok(())
}

/// Hermitian product `(1/|G|) Σ χ(g) conj(ψ(g))`, summed over conjugacy classes.
pub fn inner_product(chi: &Character, psi: &Character) -> Result<Rational> {
    same_group(chi, psi)?;
    let g = &chi.group;
    let cls = g.conjugacy_classes();
    let mut acc = Cyclotomic::zero(1);
    for c in cls.classes() {
        let x = c[0];
        let term = chi.values[x].mul(&psi.values[x].conj()).scale(Rational::from_integer(c.len() as i64));
        acc = acc.add(&term);
    }
    let total = acc.to_rational().ok_or_else(|| Error::Inconsistent("inner product is not rational".into()))?;
    Ok(total / Rational::from_integer(g.order() as i64))
}

/// Dimension of the `H`-fixed subspace: `(1/|H|) Σ_{h∈H} χ(h)`.
pub fn fixed_dim(chi: &Character, h: &Subgroup) -> Result<u32> {
    let sum = h.elements().iter().fold(Cyclotomic::zero(1), |acc, &x| acc.add(&chi.values[x]));
    let q = sum.to_rational().map(|s| s / Rational::from_integer(h.order() as i64));
    match q {
        Some(q) if q.is_integer() && q >= Rational::zero() => Ok(q.to_integer() as u32),
        _ => Err(Error::Inconsistent(format!("fixed-space dimension of {} is not a non-negative integer", chi.label))),
    }
}

/// A linear character of an abelian group, indexed by exponents on a generating set.
#[derive(Clone, Debug)]
pub struct AbelianCharacter {
    /// `χ(g_i) = ζ_{ord g_i}^{index[i]}` for the generating set used.
    pub index: Vec<u32>,
    pub character: Character,
    /// Order of the image `χ(Q)`, a cyclic group of roots of unity.
    pub image_order: u32,
    /// Exponent `k` with `χ(x) = ζ_e^{k(x)}`, `e` the group exponent.
    pub exponents: Vec<u32>,
    pub exponent: u32,
}

impl AbelianCharacter {
    pub fn kernel(&self) -> Vec<Elem> {
        self.exponents.iter().enumerate().filter(|(_, &k)| k == 0).map(|(x, _)| x).collect()
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel().len() == 1
    }
}

pub fn exponent(g: &FiniteGroup) -> u32 {
    g.elements().fold(1u32, |e, x| e.lcm(&g.element_order(x)))
}

/// All linear characters of an abelian group, indexed on a default generating set.
pub fn character_table_abelian(q: &FiniteGroup) -> Result<Vec<AbelianCharacter>> {
    character_table_abelian_with_basis(q, &generating_set(q))
}

/// Linear characters as homomorphisms `Q → C_e`, labelled by their values on `gens`.
pub fn character_table_abelian_with_basis(q: &FiniteGroup, gens: &[Elem]) -> Result<Vec<AbelianCharacter>> {
    if !q.is_abelian() {
        return Err(Error::Unsupported(format!("{} is not abelian; use metacyclic_irreps", q.name())));
    }
    let e = exponent(q);
    let target = build_group(&GroupSpec::Cyclic(e))?;
    let tree = WordTree::new(q, gens)?;
    let orders: Vec<u32> = gens.iter().map(|&x| q.element_order(x)).collect();
    let mut out = Vec::new();
    let mut index = vec![0u32; gens.len()];
    loop {
        let images: Vec<Elem> = index.iter().zip(&orders).map(|(&k, &m)| (k * (e / m)) as Elem).collect();
        if let Some(phi) = extend_homomorphism(q, &tree, &target, &images) {
            let values = phi.iter().map(|&k| Cyclotomic::root(e, k as i64)).collect();
            let label = format!("chi[{}]", index.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
            let image_order = phi.iter().fold(1u32, |acc, &k| acc.lcm(&(e / e.gcd(&k))));
            out.push(AbelianCharacter {
                index: index.clone(),
                character: Character::new(q, values, label)?,
                image_order,
                exponents: phi,
                exponent: e,
            });
        }
        // odometer over index[i] in 0..orders[i]
        let mut i = 0;
        loop {
            if i == index.len() {
                if out.len() != q.order() {
                    return Err(Error::Inconsistent(format!("found {} linear characters of {}", out.len(), q.name())));
                }
                return Ok(out);
            }
            index[i] += 1;
            if index[i] < orders[i] {
                break;
            }
            index[i] = 0;
            i += 1;
        }
    }
}

/// `r×r` monomial matrix: column `j` has the single entry `entries[j]` in row `rows[j]`.
#[derive(Clone, Debug)]
pub struct MonomialMatrix {
    rows: Vec<usize>,
    entries: Vec<Cyclotomic>,
}

impl MonomialMatrix {
    pub fn identity(r: usize) -> Self {
        MonomialMatrix { rows: (0..r).collect(), entries: vec![Cyclotomic::from_integer(1, 1); r] }
    }

    pub fn diagonal(entries: Vec<Cyclotomic>) -> Self {
        MonomialMatrix { rows: (0..entries.len()).collect(), entries }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let rows = other.rows.iter().map(|&k| self.rows[k]).collect();
        let entries = other.rows.iter().zip(&other.entries).map(|(&k, n)| n.mul(&self.entries[k])).collect();
        MonomialMatrix { rows, entries }
    }

    pub fn pow(&self, e: u64) -> Self {
        (0..e).fold(Self::identity(self.dim()), |acc, _| acc.mul(self))
    }

    pub fn trace(&self) -> Cyclotomic {
        self.rows
            .iter()
            .enumerate()
            .filter(|(j, &i)| i == *j)
            .fold(Cyclotomic::zero(1), |acc, (j, _)| acc.add(&self.entries[j]))
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(j, &i)| i == j) && self.entries.iter().all(|e| e.to_integer() == Some(1))
    }

    pub fn equals(&self, other: &Self) -> bool {
        self.rows == other.rows && self.entries.iter().zip(&other.entries).all(|(a, b)| a == b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IrrepKind {
    /// `a ↦ 1`, `b ↦ ξ_r^l`.
    OneDim(u32),
    /// Induced from `a ↦ ξ_p^{k_j}`; `j` counts from 1.
    Induced(u32),
}

/// An explicit irreducible representation of `C_p ⋊ C_r`.
#[derive(Clone, Debug)]
pub struct MetacyclicIrrep {
    pub p: u32,
    pub r: u32,
    pub omega: u32,
    pub kind: IrrepKind,
    pub a: MonomialMatrix,
    pub b: MonomialMatrix,
}

impl MetacyclicIrrep {
    pub fn degree(&self) -> usize {
        self.a.dim()
    }

    /// `a^p = b^r = 1` and `b a = a^ω b`.
    pub fn relations_hold(&self) -> bool {
        self.a.pow(self.p as u64).is_identity()
            && self.b.pow(self.r as u64).is_identity()
            && self.b.mul(&self.a).equals(&self.a.pow(self.omega as u64).mul(&self.b))
    }

    pub fn label(&self) -> String {
        match self.kind {
            IrrepKind::OneDim(l) => format!("U{l}"),
            IrrepKind::Induced(j) => format!("V{j}"),
        }
    }

    /// Character on the group built from `Metacyclic { p, r, omega }`
    /// (element `a^i b^j` at index `i·r + j`).
    pub fn character(&self, g: &FiniteGroup) -> Result<Character> {
        let (p, r) = (self.p as usize, self.r as usize);
        if g.order() != p * r {
            return Err(Error::Invalid(format!("{} is not C{p}:C{r}", g.name())));
        }
        let a_pows: Vec<MonomialMatrix> = (0..p).map(|i| self.a.pow(i as u64)).collect();
        let b_pows: Vec<MonomialMatrix> = (0..r).map(|j| self.b.pow(j as u64)).collect();
        let values = (0..p * r).map(|x| a_pows[x / r].mul(&b_pows[x % r]).trace()).collect();
        Character::new(g, values, self.label())
    }
}

/// Smallest representative of each coset of `⟨ω⟩` in `Z_p^*`, ascending.
pub fn coset_representatives(p: u32, omega: u32) -> Vec<u32> {
    let mut seen = vec![false; p as usize];
    let mut reps = Vec::new();
    for k in 1..p {
        if seen[k as usize] {
            continue;
        }
        reps.push(k);
        let mut x = k as u64;
        loop {
            seen[x as usize] = true;
            x = x * omega as u64 % p as u64;
            if x == k as u64 {
                break;
            }
        }
    }
    reps
}

pub fn metacyclic_irreps(p: u32, r: u32) -> Result<Vec<MetacyclicIrrep>> {
    metacyclic_irreps_with_omega(p, r, None)
}

/// `r` linear representations `U_l` and `(p−1)/r` monomial ones `V_j` of degree `r`.
pub fn metacyclic_irreps_with_omega(p: u32, r: u32, omega: Option<u32>) -> Result<Vec<MetacyclicIrrep>> {
    let w = GroupSpec::metacyclic_omega(p, r, omega)?;
    debug_assert_eq!(mult_order(w as u64, p as u64), Some(r as u64));
    let mut out = Vec::new();
    for l in 0..r {
        out.push(MetacyclicIrrep {
            p,
            r,
            omega: w,
            kind: IrrepKind::OneDim(l),
            a: MonomialMatrix::identity(1),
            b: MonomialMatrix::diagonal(vec![Cyclotomic::root(r, l as i64)]),
        });
    }
    let shift = MonomialMatrix {
        // B e_{s+1} = e_s
        rows: (0..r as usize).map(|c| (c + r as usize - 1) % r as usize).collect(),
        entries: vec![Cyclotomic::from_integer(1, 1); r as usize],
    };
    for (j, &k) in coset_representatives(p, w).iter().enumerate() {
        let diag =
            (0..r).map(|s| Cyclotomic::root(p, (k as u64 * pow_mod(w as u64, s as u64, p as u64)) as i64)).collect();
        out.push(MetacyclicIrrep {
            p,
            r,
            omega: w,
            kind: IrrepKind::Induced(j as u32 + 1),
            a: MonomialMatrix::diagonal(diag),
            b: shift.clone(),
        });
    }
    Ok(out)
}

/// Irreducible characters for the groups whose irreducibles are known here:
/// abelian groups, the metacyclic family (dihedral of odd prime degree
/// included), and direct products of those.
pub fn irreducible_characters(g: &FiniteGroup) -> Result<Vec<Character>> {
    if g.is_abelian() {
        return Ok(character_table_abelian(g)?.into_iter().map(|c| c.character).collect());
    }
    match g.spec() {
        Some(GroupSpec::Metacyclic { p, r, omega }) => {
            metacyclic_irreps_with_omega(*p, *r, *omega)?.iter().map(|rep| rep.character(g)).collect()
        }
        Some(GroupSpec::Dihedral(n)) if crate::arith::is_prime(*n as u64) && *n > 2 => {
            metacyclic_irreps_with_omega(*n, 2, Some(n - 1))?.iter().map(|rep| rep.character(g)).collect()
        }
        Some(GroupSpec::DirectProduct(a, b)) => {
            let (ga, gb) = (build_group(a)?, build_group(b)?);
            let (ia, ib) = (irreducible_characters(&ga)?, irreducible_characters(&gb)?);
            let m = gb.order();
            let mut out = Vec::new();
            for x in &ia {
                for y in &ib {
                    let values = g.elements().map(|e| x.value(e / m).mul(y.value(e % m))).collect();
                    out.push(Character::new(g, values, format!("{} x {}", x.label(), y.label()))?);
                }
            }
            Ok(out)
        }
        _ => Err(Error::Unsupported(format!("irreducible characters of {}", g.name()))),
    }
}
