use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use rayon::prelude::*;

use super::GeneratingTuple;
use crate::error::{Error, Result};
use crate::groups::{automorphisms, AutomorphismGroup, Elem, FiniteGroup};
use crate::signatures::Signature;

pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000_000;

static BUDGET: AtomicU64 = AtomicU64::new(DEFAULT_SEARCH_BUDGET);

/// Replaces the budget used by `SearchOptions::default()` for the rest of the
/// process, so that drivers calling the plain entry points honour it.
pub fn set_default_budget(budget: u64) {
    BUDGET.store(budget, AtomicOrdering::Relaxed);
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Upper bound on candidate tuples (after fixing the first image up to conjugacy).
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: BUDGET.load(AtomicOrdering::Relaxed) }
    }
}

/// Search layout: one pool of candidate images per generator. The first image
/// ranges over conjugacy-class representatives only; when there are elliptic
/// generators the last one is solved from the long relation.
struct Plan<'a> {
    g: &'a FiniteGroup,
    gamma: usize,
    periods: &'a [u32],
    pools: Vec<Vec<Elem>>,
    free: usize,
}

impl<'a> Plan<'a> {
    fn new(g: &'a FiniteGroup, gamma: u32, periods: &'a [u32], opts: SearchOptions) -> Result<Self> {
        let gamma = gamma as usize;
        let k = periods.len();
        let total = 2 * gamma + k;
        if total == 0 {
            return Err(Error::Invalid("signature has no generators".into()));
        }
        let cls = g.conjugacy_classes();
        let mut pools: Vec<Vec<Elem>> = (0..total)
            .map(|c| if c < 2 * gamma { g.elements().collect() } else { g.elements_of_order(periods[c - 2 * gamma]) })
            .collect();
        pools[0].retain(|&x| cls.representative(cls.class_of(x)) == x);
        let free = if k > 0 { total - 1 } else { total };
        let estimate = pools[..free].iter().try_fold(1u64, |acc, p| acc.checked_mul(p.len().max(1) as u64));
        match estimate {
            Some(n) if n <= opts.budget => Ok(Plan { g, gamma, periods, pools, free }),
            _ => Err(Error::BudgetExceeded(format!(
                "more than {} candidate tuples for ({};{:?}) in {}",
                opts.budget,
                gamma,
                periods,
                g.name()
            ))),
        }
    }

    /// Running product after placing `images` (commutators of completed pairs, then elliptics).
    fn step(&self, acc: Elem, images: &[u32], c: usize, x: Elem) -> Elem {
        let g = self.g;
        if c < 2 * self.gamma {
            if c % 2 == 1 {
                g.mul(acc, g.commutator(images[c - 1] as Elem, x))
            } else {
                acc
            }
        } else {
            g.mul(acc, x)
        }
    }

    fn finish(&self, acc: Elem, images: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let g = self.g;
        if self.free < self.pools.len() {
            let last = g.inv(acc);
            if g.element_order(last) != *self.periods.last().unwrap() {
                return;
            }
            images.push(last as u32);
        } else if acc != 0 {
            return;
        }
        let imgs: Vec<Elem> = images.iter().map(|&x| x as Elem).collect();
        if g.generates(&imgs) {
            out.push(images.clone());
        }
        if self.free < self.pools.len() {
            images.pop();
        }
    }

    fn dfs(&self, c: usize, acc: Elem, images: &mut Vec<u32>, out: &mut Vec<Vec<u32>>, first_only: bool) {
        if first_only && !out.is_empty() {
            return;
        }
        if c == self.free {
            self.finish(acc, images, out);
            return;
        }
        for &x in &self.pools[c] {
            let next = self.step(acc, images, c, x);
            images.push(x as u32);
            self.dfs(c + 1, next, images, out, first_only);
            images.pop();
            if first_only && !out.is_empty() {
                return;
            }
        }
    }

    /// Prefixes of length up to two, used as parallel work items.
    fn prefixes(&self) -> Vec<(Vec<u32>, Elem)> {
        let depth = self.free.min(2);
        let mut items = vec![(Vec::new(), 0usize)];
        for c in 0..depth {
            items = items
                .into_iter()
                .flat_map(|(imgs, acc)| {
                    self.pools[c].iter().map(move |&x| {
                        let next = self.step(acc, &imgs, c, x);
                        let mut v = imgs.clone();
                        v.push(x as u32);
                        (v, next)
                    })
                })
                .collect();
        }
        items
    }

    fn run(&self, first_only: bool) -> Vec<Vec<u32>> {
        let depth = self.free.min(2);
        let items = self.prefixes();
        let work = |(imgs, acc): &(Vec<u32>, Elem)| {
            let mut out = Vec::new();
            let mut images = imgs.clone();
            self.dfs(depth, *acc, &mut images, &mut out, first_only);
            out
        };
        if first_only {
            items.par_iter().map(work).find_map_first(|v| v.into_iter().next()).into_iter().collect()
        } else {
            let mut all: Vec<Vec<u32>> = items.par_iter().flat_map_iter(work).collect();
            all.sort();
            all
        }
    }
}

/// Surface-kernel epimorphisms `Γ → G` for one ordering of the periods, with
/// the first image pinned to conjugacy-class representatives, grouped into
/// `Aut(G)`-orbits (one orbit per kernel).
#[derive(Clone, Debug)]
pub struct EpimorphismSet {
    group: FiniteGroup,
    gamma: u32,
    periods: Vec<u32>,
    pinned: Vec<Vec<u32>>,
    position: HashMap<Vec<u32>, u32>,
    class_of: Vec<u32>,
    classes: Vec<KernelClass>,
    total: u128,
    aut_order: usize,
}

#[derive(Clone, Debug)]
pub struct KernelClass {
    pub representative: GeneratingTuple,
    pub pinned_members: usize,
}

fn pinned_weight(g: &FiniteGroup, first: Elem) -> u128 {
    let cls = g.conjugacy_classes();
    cls.classes()[cls.class_of(first)].len() as u128
}

impl EpimorphismSet {
    pub fn compute(
        g: &FiniteGroup,
        gamma: u32,
        periods: &[u32],
        aut: &AutomorphismGroup,
        opts: SearchOptions,
    ) -> Result<Self> {
        let plan = Plan::new(g, gamma, periods, opts)?;
        let pinned = plan.run(false);
        let total: u128 = pinned.iter().map(|t| pinned_weight(g, t[0] as Elem)).sum();
        let position: HashMap<Vec<u32>, u32> = pinned.iter().enumerate().map(|(i, t)| (t.clone(), i as u32)).collect();
        let mut set = EpimorphismSet {
            group: g.clone(),
            gamma,
            periods: periods.to_vec(),
            pinned,
            position,
            class_of: Vec::new(),
            classes: Vec::new(),
            total,
            aut_order: aut.order(),
        };
        set.group_into_kernels(aut)?;
        Ok(set)
    }

    fn group_into_kernels(&mut self, aut: &AutomorphismGroup) -> Result<()> {
        const UNSET: u32 = u32::MAX;
        let mut class_of = vec![UNSET; self.pinned.len()];
        let mut classes = Vec::new();
        for start in 0..self.pinned.len() {
            if class_of[start] != UNSET {
                continue;
            }
            let id = classes.len() as u32;
            let mut members = 0usize;
            let mut weight = 0u128;
            for alpha in aut.maps() {
                let moved: Vec<u32> = self.pinned[start].iter().map(|&x| alpha[x as usize]).collect();
                let pos = self.lookup_images(&moved).ok_or_else(|| {
                    Error::Inconsistent("automorphic image of an epimorphism missing from the search".into())
                })?;
                match class_of[pos] {
                    UNSET => {
                        class_of[pos] = id;
                        members += 1;
                        weight += pinned_weight(&self.group, self.pinned[pos][0] as Elem);
                    }
                    c if c == id => {}
                    _ => return Err(Error::Inconsistent("kernel classes overlap".into())),
                }
            }
            // Aut(G) acts freely on epimorphisms, so each kernel carries |Aut(G)| of them.
            if weight != aut.order() as u128 {
                return Err(Error::Inconsistent(format!(
                    "kernel class carries {weight} epimorphisms, |Aut| = {}",
                    aut.order()
                )));
            }
            let rep =
                GeneratingTuple::from_images(&self.group, self.gamma, &self.periods, &to_elems(&self.pinned[start]));
            classes.push(KernelClass { representative: rep, pinned_members: members });
        }
        self.class_of = class_of;
        self.classes = classes;
        Ok(())
    }

    /// Conjugates so the first image is its class representative, then finds it.
    fn lookup_images(&self, images: &[u32]) -> Option<usize> {
        let g = &self.group;
        let h = g.conjugacy_classes().conjugator_to_rep(images[0] as Elem);
        let key: Vec<u32> = images.iter().map(|&x| g.conj(h, x as Elem) as u32).collect();
        self.position.get(&key).map(|&p| p as usize)
    }

    /// Kernel class of an arbitrary tuple with this set's periods.
    pub fn kernel_of(&self, t: &GeneratingTuple) -> Option<usize> {
        if t.periods() != self.periods.as_slice() || t.gamma() != self.gamma {
            return None;
        }
        let imgs: Vec<u32> = t.images().iter().map(|&x| x as u32).collect();
        self.lookup_images(&imgs).map(|p| self.class_of[p] as usize)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn periods(&self) -> &[u32] {
        &self.periods
    }

    pub fn classes(&self) -> &[KernelClass] {
        &self.classes
    }

    pub fn num_kernels(&self) -> usize {
        self.classes.len()
    }

    pub fn total_epimorphisms(&self) -> u128 {
        self.total
    }

    pub fn aut_order(&self) -> usize {
        self.aut_order
    }

    /// Every epimorphism with pinned first image.
    pub fn pinned_tuples(&self) -> impl Iterator<Item = GeneratingTuple> + '_ {
        self.pinned.iter().map(|t| GeneratingTuple::from_images(&self.group, self.gamma, &self.periods, &to_elems(t)))
    }
}

fn to_elems(v: &[u32]) -> Vec<Elem> {
    v.iter().map(|&x| x as Elem).collect()
}

/// All surface-kernel epimorphisms `Γ(σ) → G`, grouped by kernel.
pub fn enumerate_epimorphisms(sig: &Signature, g: &FiniteGroup) -> Result<EpimorphismSet> {
    enumerate_epimorphisms_with(sig, g, SearchOptions::default())
}

pub fn enumerate_epimorphisms_with(sig: &Signature, g: &FiniteGroup, opts: SearchOptions) -> Result<EpimorphismSet> {
    let aut = automorphisms(g)?;
    EpimorphismSet::compute(g, sig.gamma(), sig.periods(), &aut, opts)
}

/// Number of epimorphisms `Γ(σ) → G` with torsion-free kernel.
pub fn count_epimorphisms(sig: &Signature, g: &FiniteGroup, opts: SearchOptions) -> Result<u128> {
    let plan = Plan::new(g, sig.gamma(), sig.periods(), opts)?;
    Ok(plan.run(false).iter().map(|t| pinned_weight(g, t[0] as Elem)).sum())
}

/// Number of normal surface subgroups `K ⊴ Γ(σ)` with `Γ/K ≅ G`:
/// epimorphisms divided by `|Aut(G)|`.
pub fn count_kernels(sig: &Signature, g: &FiniteGroup) -> Result<u128> {
    count_kernels_with(sig, g, SearchOptions::default())
}

pub fn count_kernels_with(sig: &Signature, g: &FiniteGroup, opts: SearchOptions) -> Result<u128> {
    let epis = count_epimorphisms(sig, g, opts)?;
    let aut = automorphisms(g)?.order() as u128;
    if epis % aut != 0 {
        return Err(Error::Inconsistent(format!("{epis} epimorphisms not divisible by |Aut| = {aut}")));
    }
    Ok(epis / aut)
}

/// Some surface-kernel epimorphism `Γ(σ) → G`, if one exists.
pub fn find_epimorphism(sig: &Signature, g: &FiniteGroup) -> Result<Option<GeneratingTuple>> {
    find_epimorphism_ordered(g, sig.gamma(), sig.periods(), SearchOptions::default())
}

pub fn find_epimorphism_ordered(
    g: &FiniteGroup,
    gamma: u32,
    periods: &[u32],
    opts: SearchOptions,
) -> Result<Option<GeneratingTuple>> {
    let plan = Plan::new(g, gamma, periods, opts)?;
    Ok(plan.run(true).first().map(|t| GeneratingTuple::from_images(g, gamma, periods, &to_elems(t))))
}
