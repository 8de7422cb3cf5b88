//! Invariants of the orientably regular hypermap attached to a triangle tuple
//! `(x, y, z)` with `xyz = 1`.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::{kernel_key, EpimorphismSet, GeneratingTuple, KernelKey};
use crate::arith::{inv_mod, is_square_mod};
use crate::error::{Error, Result};
use crate::groups::{extend_homomorphism, AutomorphismGroup, Elem, FiniteGroup, GroupSpec, WordTree};

pub fn commutator_order(t: &GeneratingTuple) -> Result<u32> {
    let (x, y, _) = t.xyz()?;
    let g = t.group();
    Ok(g.element_order(g.commutator(x, y)))
}

/// Length of the Petrie polygons: twice the order of `[x, y]`.
pub fn petrie_length(t: &GeneratingTuple) -> Result<u32> {
    Ok(2 * commutator_order(t)?)
}

/// The automorphism `x ↦ x⁻¹, y ↦ y⁻¹`, if it exists.
pub fn inverting_automorphism(t: &GeneratingTuple) -> Result<Option<Vec<u32>>> {
    let (x, y, _) = t.xyz()?;
    let g = t.group();
    let tree = WordTree::new(g, &[x, y])?;
    // x⁻¹ and y⁻¹ generate G, so any such endomorphism is onto.
    Ok(extend_homomorphism(g, &tree, g, &[g.inv(x), g.inv(y)]))
}

pub fn is_reflexible(t: &GeneratingTuple) -> Result<bool> {
    Ok(inverting_automorphism(t)?.is_some())
}

/// Elements `h` with `h x h⁻¹ = x⁻¹` and `h y h⁻¹ = y⁻¹`; a coset of the centre, or empty.
fn inverting_elements(t: &GeneratingTuple) -> Result<Vec<Elem>> {
    let (x, y, _) = t.xyz()?;
    let g = t.group();
    Ok(g.elements().filter(|&h| g.conj(h, x) == g.inv(x) && g.conj(h, y) == g.inv(y)).collect())
}

/// `(x, y, z) ↦ (x⁻¹, y⁻¹, yx)`: the mirror image, with the same type.
pub fn mirror(t: &GeneratingTuple) -> Result<GeneratingTuple> {
    let (x, y, _) = t.xyz()?;
    let g = t.group();
    Ok(GeneratingTuple::unchecked(g, t.periods().to_vec(), vec![], vec![g.inv(x), g.inv(y), g.mul(y, x)]))
}

/// Generators of the `S_3` permuting the roles of `x, y, z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrialityOp {
    /// `(x, y, z) ↦ (y, z, x)`
    Rotate,
    /// `(x, y, z) ↦ (y, x, x⁻¹ z x)`
    Swap,
}

impl TrialityOp {
    pub fn apply(self, t: &GeneratingTuple) -> Result<GeneratingTuple> {
        let (x, y, z) = t.xyz()?;
        let g = t.group();
        let p = t.periods();
        let (ell, periods) = match self {
            TrialityOp::Rotate => (vec![y, z, x], vec![p[1], p[2], p[0]]),
            TrialityOp::Swap => (vec![y, x, g.conj(g.inv(x), z)], vec![p[1], p[0], p[2]]),
        };
        Ok(GeneratingTuple::unchecked(g, periods, vec![], ell))
    }

    fn roles(self, r: [usize; 3]) -> [usize; 3] {
        match self {
            TrialityOp::Rotate => [r[1], r[2], r[0]],
            TrialityOp::Swap => [r[1], r[0], r[2]],
        }
    }
}

/// The tuple in which position `i` carries the role formerly at `perm[i]`,
/// renormalised so that the product is still 1.
pub fn triality_images(t: &GeneratingTuple, perm: [usize; 3]) -> Result<GeneratingTuple> {
    t.xyz()?;
    let mut sorted = perm;
    sorted.sort_unstable();
    if sorted != [0, 1, 2] {
        return Err(Error::Invalid(format!("{perm:?} is not a permutation of 0, 1, 2")));
    }
    let mut seen = HashSet::from([[0, 1, 2]]);
    let mut queue = VecDeque::from([([0usize, 1, 2], t.clone())]);
    while let Some((roles, u)) = queue.pop_front() {
        if roles == perm {
            return Ok(u);
        }
        for op in [TrialityOp::Rotate, TrialityOp::Swap] {
            let r = op.roles(roles);
            if seen.insert(r) {
                queue.push_back((r, op.apply(&u)?));
            }
        }
    }
    unreachable!("rotation and swap generate S_3")
}

/// Full automorphism group `A` of a reflexible hypermap, relative to `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FullAutType {
    /// `A ≅ G × C_2`
    GxC2,
    /// `A` is an extension of `G` by `C_2` that is not a direct product.
    ProperExtension(String),
    /// `A = G` (chiral).
    EqualsG,
}

impl FullAutType {
    pub fn describe(&self, g: &FiniteGroup) -> String {
        match self {
            FullAutType::GxC2 => format!("{} x C2", g.name()),
            FullAutType::ProperExtension(s) => s.clone(),
            FullAutType::EqualsG => g.name().to_string(),
        }
    }
}

/// Decides `A` from the automorphism inverting `x` and `y`. If it is inner,
/// realised by `h`, then `A = G ⋊ ⟨ι⟩` with `ι` acting as `h`, and `A ≅ G × C_2`
/// exactly when some inverting `h` is an involution (or trivial). An outer
/// inverting automorphism never gives a direct product.
pub fn full_automorphism_type(t: &GeneratingTuple) -> Result<FullAutType> {
    let g = t.group();
    if inverting_automorphism(t)?.is_none() {
        return Err(Error::Invalid("chiral tuple: no orientation-reversing automorphism".into()));
    }
    let hs = inverting_elements(t)?;
    if hs.is_empty() {
        let desc = match g.spec() {
            Some(GroupSpec::Psl2(q)) => format!("PGL(2,{q})"),
            _ => format!("{}.2 (outer)", g.name()),
        };
        return Ok(FullAutType::ProperExtension(desc));
    }
    if hs.iter().any(|&h| g.mul(h, h) == 0) {
        Ok(FullAutType::GxC2)
    } else {
        Ok(FullAutType::ProperExtension(format!("{}.2 (non-split)", g.name())))
    }
}

/// Hall's criterion for a Hurwitz tuple in `PSL(2,q)`: with `t` the trace of
/// `z`, `A ≅ PSL(2,q) × C_2` iff `3 − t²` is a square in `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HallVerdict {
    pub q: u32,
    /// `t²`, normalised by the determinant so it is independent of the matrix representative.
    pub trace_squared: u32,
    pub three_minus_t2: u32,
    pub is_square: bool,
    pub predicted: FullAutType,
}

pub fn hall_test(t: &GeneratingTuple) -> Result<HallVerdict> {
    let (_, _, z) = t.xyz()?;
    let g = t.group();
    let q = match g.spec() {
        Some(GroupSpec::Psl2(q)) => *q,
        _ => return Err(Error::Unsupported(format!("Hall's criterion needs PSL(2,q), not {}", g.name()))),
    };
    if t.signature().periods() != [2, 3, 7] {
        return Err(Error::Unsupported("Hall's criterion applies to (2,3,7) tuples".into()));
    }
    let [a, b, c, d] = g.matrix(z).expect("projective groups store matrices").map(u64::from);
    let qq = q as u64;
    let det = (a * d % qq + qq - b * c % qq) % qq;
    let tr = (a + d) % qq;
    let det_inv = inv_mod(det, qq);
    let t2 = (tr * tr % qq * det_inv % qq) as u32;
    let value = ((3 + q as u64 * 2 - t2 as u64) % qq) as u32;
    let is_square = is_square_mod(value as u64, qq);
    let predicted = if is_square { FullAutType::GxC2 } else { FullAutType::ProperExtension(format!("PGL(2,{q})")) };
    Ok(HallVerdict { q, trace_squared: t2, three_minus_t2: value, is_square, predicted })
}

/// Petrie length of the non-orientable quotient of a hypermap with `A ≅ G × C_2`,
/// or `None` when no such quotient exists.
///
/// Work in `A = G ⋊ ⟨ι⟩` with `ι` acting as conjugation by an inverting
/// involution `h`. The Petrie element is `P = (h·yx·h⁻¹, ι)` and the central
/// involution is `c = (h⁻¹, ι)`; the quotient length is the least `n` with
/// `Pⁿ ∈ {1, c}`.
pub fn nonorientable_petrie_length(t: &GeneratingTuple) -> Result<Option<u32>> {
    if full_automorphism_type(t)? != FullAutType::GxC2 {
        return Ok(None);
    }
    let (x, y, _) = t.xyz()?;
    let g = t.group();
    let h = inverting_elements(t)?.into_iter().find(|&h| g.mul(h, h) == 0).expect("GxC2 has an inverting involution");
    let alpha = |v: Elem| g.conj(h, v);
    let mul = |(u, s): (Elem, bool), (v, r): (Elem, bool)| (g.mul(u, if s { alpha(v) } else { v }), s ^ r);
    let petrie = (g.conj(h, g.mul(y, x)), true);
    let central = (g.inv(h), true);
    let mut acc = petrie;
    for n in 1..=2 * g.order() as u32 {
        if acc == (0, false) || acc == central {
            return Ok(Some(n));
        }
        acc = mul(acc, petrie);
    }
    Err(Error::Inconsistent("Petrie element of infinite order".into()))
}

/// Per-kernel hypermap data for one `(type, G)`.
#[derive(Clone, Debug)]
pub struct KernelHypermap {
    pub representative: GeneratingTuple,
    pub petrie: u32,
    pub reflexible: bool,
    /// Kernel class of the mirror image.
    pub mirror_class: usize,
    /// Orbit under chirality and the role permutations preserving the type.
    pub pair_orbit: usize,
    /// Orbit under chirality, duality and triality.
    pub full_orbit: usize,
}

#[derive(Clone, Debug)]
pub struct HypermapAnalysis {
    pub kernels: Vec<KernelHypermap>,
    pub pair_orbits: usize,
    /// Sizes of the `C_2 × S_3` orbits, counted over all role assignments.
    pub full_orbit_sizes: Vec<usize>,
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    parent[i] = r;
    r
}

/// Chirality and duality/triality orbits for all kernel classes of a triangle type.
pub fn analyse_hypermaps(set: &EpimorphismSet, aut: &AutomorphismGroup) -> Result<HypermapAnalysis> {
    let periods = set.periods().to_vec();
    if periods.len() != 3 {
        return Err(Error::Invalid("hypermaps need a triangle signature".into()));
    }
    let n = set.num_kernels();
    let lookup = |u: &GeneratingTuple| {
        set.kernel_of(u).ok_or_else(|| Error::Inconsistent("image kernel missing from the search".into()))
    };
    let type_preserving: Vec<[usize; 3]> = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
        .into_iter()
        .filter(|p| (0..3).all(|i| periods[p[i]] == periods[i]))
        .collect();

    let mut parent: Vec<usize> = (0..n).collect();
    let mut mirror_class = vec![0; n];
    for (i, c) in set.classes().iter().enumerate() {
        let m = lookup(&mirror(&c.representative)?)?;
        mirror_class[i] = m;
        let mut images = vec![m];
        for &p in &type_preserving {
            images.push(lookup(&triality_images(&c.representative, p)?)?);
        }
        for j in images {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
    }
    let mut pair_ids = HashMap::new();
    let pair_orbit: Vec<usize> = (0..n)
        .map(|i| {
            let r = find(&mut parent, i);
            let next = pair_ids.len();
            *pair_ids.entry(r).or_insert(next)
        })
        .collect();

    // C_2 × S_3 closure over canonical kernel keys of every role assignment.
    let keys: Vec<KernelKey> = set.classes().iter().map(|c| kernel_key(&c.representative, aut)).collect();
    let mut full_orbit = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    for i in 0..n {
        if full_orbit[i] != usize::MAX {
            continue;
        }
        let start = &set.classes()[i].representative;
        let mut seen = HashSet::from([keys[i].clone()]);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(u) = queue.pop_front() {
            for v in [mirror(&u)?, TrialityOp::Rotate.apply(&u)?, TrialityOp::Swap.apply(&u)?] {
                if seen.insert(kernel_key(&v, aut)) {
                    queue.push_back(v);
                }
            }
        }
        for j in 0..n {
            if seen.contains(&keys[j]) {
                full_orbit[j] = sizes.len();
            }
        }
        sizes.push(seen.len());
    }

    let kernels = set
        .classes()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            Ok(KernelHypermap {
                representative: c.representative.clone(),
                petrie: petrie_length(&c.representative)?,
                reflexible: mirror_class[i] == i,
                mirror_class: mirror_class[i],
                pair_orbit: pair_orbit[i],
                full_orbit: full_orbit[i],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HypermapAnalysis { kernels, pair_orbits: pair_ids.len(), full_orbit_sizes: sizes })
}
