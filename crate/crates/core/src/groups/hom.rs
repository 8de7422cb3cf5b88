//! Homomorphisms out of a group given by a generating set: automorphism groups
//! and isomorphism search.

use std::collections::VecDeque;

use rayon::prelude::*;

use super::{build_group, Elem, FiniteGroup, GroupSpec, PermutationGroupBuilder};
use crate::error::{Error, Result};

/// Budgets for automorphism enumeration.
#[derive(Clone, Copy, Debug)]
pub struct AutBudget {
    /// Largest group handled by the structural formulas.
    pub structural_max_order: usize,
    /// Largest group handled by generator-image search.
    pub brute_force_max_order: usize,
    /// Largest number of candidate image tuples examined by the search.
    pub max_candidates: u64,
}

impl Default for AutBudget {
    fn default() -> Self {
        AutBudget { structural_max_order: 20_000, brute_force_max_order: 4096, max_candidates: 50_000_000 }
    }
}

/// Breadth-first spanning tree of the Cayley graph for a generating set:
/// every element is reached as `parent · gens[i]`.
#[derive(Clone, Debug)]
pub struct WordTree {
    gens: Vec<Elem>,
    bfs: Vec<u32>,
    parent: Vec<(u32, u8)>,
}

impl WordTree {
    pub fn new(g: &FiniteGroup, gens: &[Elem]) -> Result<Self> {
        let n = g.order();
        let mut parent = vec![(u32::MAX, 0u8); n];
        parent[0] = (0, 0);
        let mut bfs = vec![0u32];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (i, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                if parent[y].0 == u32::MAX {
                    parent[y] = (x as u32, i as u8);
                    bfs.push(y as u32);
                    queue.push_back(y);
                }
            }
        }
        if bfs.len() != n {
            return Err(Error::Invalid("elements do not generate the group".into()));
        }
        Ok(WordTree { gens: gens.to_vec(), bfs, parent })
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }
}

/// Extends `gens[i] ↦ images[i]` to a homomorphism `src → tgt`, returning the
/// element map if the assignment respects all relations.
pub fn extend_homomorphism(src: &FiniteGroup, tree: &WordTree, tgt: &FiniteGroup, images: &[Elem]) -> Option<Vec<u32>> {
    let n = src.order();
    let mut phi = vec![0u32; n];
    for &u in &tree.bfs[1..] {
        let (par, i) = tree.parent[u as usize];
        phi[u as usize] = tgt.mul(phi[par as usize] as usize, images[i as usize]) as u32;
    }
    for u in 0..n {
        for (i, &s) in tree.gens.iter().enumerate() {
            if phi[src.mul(u, s)] as usize != tgt.mul(phi[u] as usize, images[i]) {
                return None;
            }
        }
    }
    Some(phi)
}

/// A small generating set, chosen greedily by element order (largest first).
pub fn generating_set(g: &FiniteGroup) -> Vec<Elem> {
    let mut by_order: Vec<Elem> = g.elements().skip(1).collect();
    by_order.sort_by_key(|&x| std::cmp::Reverse(g.element_order(x)));
    let mut gens = Vec::new();
    let mut sub = g.subgroup_generated(&[]);
    while sub.order() < g.order() {
        // Prefer the candidate that enlarges the subgroup the most.
        let best = by_order
            .iter()
            .copied()
            .filter(|&x| !sub.contains(x))
            .take(64)
            .max_by_key(|&x| {
                let mut trial = gens.clone();
                trial.push(x);
                (g.subgroup_generated(&trial).order(), g.element_order(x))
            })
            .expect("proper subgroup misses some element");
        gens.push(best);
        sub = g.subgroup_generated(&gens);
    }
    gens
}

/// The automorphism group, stored as element permutations with the identity first.
#[derive(Clone, Debug)]
pub struct AutomorphismGroup {
    maps: Vec<Vec<u32>>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[Vec<u32>] {
        &self.maps
    }

    /// The automorphism group as an abstract group.
    pub fn as_group(&self) -> Result<FiniteGroup> {
        let b = PermutationGroupBuilder::from_elements(self.maps.clone());
        let labels = (0..b.perms().len()).map(|i| format!("α{i}")).collect();
        b.into_group("Aut".into(), None, labels)
    }
}

/// Whether the element permutation `map` is conjugation by some element.
pub fn is_inner(g: &FiniteGroup, map: &[u32]) -> bool {
    let gens = generating_set(g);
    g.elements().any(|h| gens.iter().all(|&x| g.conj(h, x) == map[x] as usize))
}

pub fn automorphisms(g: &FiniteGroup) -> Result<AutomorphismGroup> {
    automorphisms_with(g, AutBudget::default())
}

pub fn automorphisms_with(g: &FiniteGroup, budget: AutBudget) -> Result<AutomorphismGroup> {
    let n = g.order();
    let structural = match g.spec() {
        Some(GroupSpec::Cyclic(_)) | Some(GroupSpec::Metacyclic { .. }) => true,
        Some(GroupSpec::Dihedral(m)) => *m >= 3,
        _ => false,
    };
    let mut maps = if structural {
        if n > budget.structural_max_order {
            return Err(Error::BudgetExceeded(format!("Aut({}) with |G| = {n}", g.name())));
        }
        structural_automorphisms(g)?
    } else {
        if n > budget.brute_force_max_order {
            return Err(Error::BudgetExceeded(format!("Aut({}) by search with |G| = {n}", g.name())));
        }
        search_isomorphisms(g, g, budget.max_candidates, false)?
    };
    maps.sort();
    Ok(AutomorphismGroup { maps })
}

/// Cyclic: `c ↦ c^u`. Metacyclic and dihedral: `a ↦ a^i`, `b ↦ a^j b`.
fn structural_automorphisms(g: &FiniteGroup) -> Result<Vec<Vec<u32>>> {
    let (gens, candidates): (Vec<Elem>, Vec<Vec<Elem>>) = match g.spec() {
        Some(GroupSpec::Cyclic(m)) => {
            let m = *m as usize;
            let units = (1..m.max(2)).filter(|&u| num_integer::gcd(u, m) == 1 || m == 1).map(|u| vec![u % m]).collect();
            (vec![1 % m], units)
        }
        Some(GroupSpec::Metacyclic { r, .. }) => {
            let r = *r as usize;
            let p = g.order() / r;
            let (a, b) = (r, 1);
            let mut c = Vec::new();
            for i in 1..p {
                for j in 0..p {
                    c.push(vec![g.pow(a, i as i64), g.mul(g.pow(a, j as i64), b)]);
                }
            }
            (vec![a, b], c)
        }
        Some(GroupSpec::Dihedral(m)) => {
            let m = *m as usize;
            let (rot, t) = (2, 1);
            let mut c = Vec::new();
            for u in (1..m).filter(|&u| num_integer::gcd(u, m) == 1) {
                for j in 0..m {
                    c.push(vec![g.pow(rot, u as i64), g.mul(g.pow(rot, j as i64), t)]);
                }
            }
            (vec![rot, t], c)
        }
        _ => unreachable!("structural path only for cyclic, metacyclic and dihedral groups"),
    };
    let tree = WordTree::new(g, &gens)?;
    candidates
        .into_iter()
        .map(|images| {
            extend_homomorphism(g, &tree, g, &images)
                .filter(|phi| is_bijective(phi))
                .ok_or_else(|| Error::Inconsistent(format!("structural automorphism of {} failed", g.name())))
        })
        .collect()
}

fn is_bijective(phi: &[u32]) -> bool {
    let mut seen = vec![false; phi.len()];
    phi.iter().all(|&x| !std::mem::replace(&mut seen[x as usize], true))
}

/// An isomorphism `g → h`, if one exists.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<Vec<u32>>> {
    if g.order() != h.order() {
        return Ok(None);
    }
    let budget = AutBudget::default();
    Ok(search_isomorphisms(g, h, budget.max_candidates, true)?.into_iter().next())
}

/// All isomorphisms `g → h` (or the first one if `first_only`), found by
/// trying order-compatible images of a greedy generating set.
fn search_isomorphisms(
    g: &FiniteGroup,
    h: &FiniteGroup,
    max_candidates: u64,
    first_only: bool,
) -> Result<Vec<Vec<u32>>> {
    if g.order() != h.order() {
        return Ok(Vec::new());
    }
    let gens = generating_set(g);
    let tree = WordTree::new(g, &gens)?;
    let pools: Vec<Vec<Elem>> = gens.iter().map(|&x| h.elements_of_order(g.element_order(x))).collect();
    let total: u64 = pools.iter().map(|p| p.len() as u64).product();
    if total > max_candidates {
        return Err(Error::BudgetExceeded(format!(
            "{total} candidate generator images for {} → {}",
            g.name(),
            h.name()
        )));
    }
    // Pairwise product orders must be preserved; this prunes most candidates.
    let pair_orders: Vec<Vec<(u32, u32)>> = (0..gens.len())
        .map(|i| {
            (0..i)
                .map(|j| (g.element_order(g.mul(gens[j], gens[i])), g.element_order(g.mul(g.inv(gens[j]), gens[i]))))
                .collect()
        })
        .collect();
    let search_from = |first: Elem| -> Vec<Vec<u32>> {
        let mut found = Vec::new();
        let mut images = vec![first];
        descend(g, h, &tree, &pools, &pair_orders, &mut images, &mut found, first_only);
        found
    };
    let mut out: Vec<Vec<u32>> = if first_only {
        pools[0].iter().find_map(|&x| search_from(x).into_iter().next()).into_iter().collect()
    } else {
        pools[0].par_iter().flat_map_iter(|&x| search_from(x)).collect()
    };
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn descend(
    g: &FiniteGroup,
    h: &FiniteGroup,
    tree: &WordTree,
    pools: &[Vec<Elem>],
    pair_orders: &[Vec<(u32, u32)>],
    images: &mut Vec<Elem>,
    found: &mut Vec<Vec<u32>>,
    first_only: bool,
) {
    let i = images.len();
    if i == pools.len() {
        if let Some(phi) = extend_homomorphism(g, tree, h, images) {
            if is_bijective(&phi) {
                found.push(phi);
            }
        }
        return;
    }
    for &y in &pools[i] {
        let ok = images
            .iter()
            .enumerate()
            .all(|(j, &x)| (h.element_order(h.mul(x, y)), h.element_order(h.mul(h.inv(x), y))) == pair_orders[i][j]);
        if !ok {
            continue;
        }
        images.push(y);
        descend(g, h, tree, pools, pair_orders, images, found, first_only);
        images.pop();
        if first_only && !found.is_empty() {
            return;
        }
    }
}

/// Builds `spec` and checks it is isomorphic to `g`.
pub fn isomorphic_to_spec(g: &FiniteGroup, spec: &GroupSpec) -> Result<bool> {
    let h = build_group(spec)?;
    Ok(find_isomorphism(g, &h)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(s: &str) -> FiniteGroup {
        build_group(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn cyclic_automorphisms() {
        for p in [5u32, 7, 13] {
            assert_eq!(automorphisms(&grp(&format!("C{p}"))).unwrap().order(), p as usize - 1);
        }
        assert_eq!(automorphisms(&grp("C1")).unwrap().order(), 1);
    }

    #[test]
    fn structural_matches_brute_force() {
        for s in ["Gpr(7,3)", "Gpr(7,6)", "D5", "D6", "C12"] {
            let g = grp(s);
            let fast = automorphisms(&g).unwrap();
            let slow = search_isomorphisms(&g, &g, u64::MAX, false).unwrap();
            assert_eq!(fast.maps(), slow.as_slice(), "{s}");
        }
        assert_eq!(automorphisms(&grp("Gpr(7,3)")).unwrap().order(), 42);
    }

    #[test]
    fn complete_group() {
        let g = grp("PGL(2,7)");
        let aut = automorphisms(&g).unwrap();
        assert_eq!(aut.order(), 336);
        assert!(aut.maps().iter().all(|m| is_inner(&g, m)));
    }

    #[test]
    fn small_non_structural() {
        assert_eq!(automorphisms(&grp("C2xC2")).unwrap().order(), 6);
        assert_eq!(automorphisms(&grp("S5")).unwrap().order(), 120);
        assert_eq!(automorphisms(&grp("C6xC2")).unwrap().order(), 12);
    }

    #[test]
    fn omega_independence() {
        for (p, r, w) in [(7u32, 3u32, 4u32), (13, 4, 8)] {
            let g = grp(&format!("Gpr({p},{r})"));
            let h = grp(&format!("Gpr({p},{r},{w})"));
            let phi = find_isomorphism(&g, &h).unwrap().expect("isomorphic");
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(phi[g.mul(x, y)] as usize, h.mul(phi[x] as usize, phi[y] as usize));
                }
            }
        }
        assert!(find_isomorphism(&grp("C6"), &grp("D3")).unwrap().is_none());
        assert!(isomorphic_to_spec(&grp("Gpr(5,2)"), &"D5".parse().unwrap()).unwrap());
    }

    #[test]
    fn budget_is_explicit() {
        let tight = AutBudget { brute_force_max_order: 10, ..AutBudget::default() };
        assert!(matches!(automorphisms_with(&grp("S4"), tight), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn aut_as_group() {
        let aut = automorphisms(&grp("Gpr(7,3)")).unwrap().as_group().unwrap();
        assert_eq!(aut.order(), 42);
    }
}
