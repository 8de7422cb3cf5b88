use std::collections::{HashSet, VecDeque};

use super::{enumerate_epimorphisms_with, GeneratingTuple, SearchOptions};
use crate::error::{Error, Result};
use crate::groups::{automorphisms, AutomorphismGroup, FiniteGroup};
use crate::signatures::Signature;

/// Canonical name of a kernel: the period ordering together with the
/// lexicographically least image vector over the `Aut(G)`-orbit.
pub type KernelKey = (Vec<u32>, Vec<u32>);

pub fn kernel_key(t: &GeneratingTuple, aut: &AutomorphismGroup) -> KernelKey {
    let images = t.images();
    let best = aut
        .maps()
        .iter()
        .map(|alpha| images.iter().map(|&x| alpha[x]).collect::<Vec<u32>>())
        .min()
        .expect("Aut(G) contains the identity");
    (t.periods().to_vec(), best)
}

/// `(x_i, x_{i+1}) ↦ (x_i x_{i+1} x_i⁻¹, x_i)`, swapping the two periods.
pub fn braid_move(t: &GeneratingTuple, i: usize) -> Result<GeneratingTuple> {
    let k = t.elliptic().len();
    if t.gamma() != 0 {
        return Err(Error::Unsupported("braid moves are implemented for orbit genus 0 only".into()));
    }
    if i + 1 >= k {
        return Err(Error::Invalid(format!("braid move {i} needs at least {} elliptic generators", i + 2)));
    }
    let g = t.group();
    let mut ell = t.elliptic().to_vec();
    let mut periods = t.periods().to_vec();
    let (a, b) = (ell[i], ell[i + 1]);
    ell[i] = g.conj(a, b);
    ell[i + 1] = a;
    periods.swap(i, i + 1);
    Ok(GeneratingTuple::unchecked(g, periods, vec![], ell))
}

/// One orbit of the braid group combined with `Aut(G)`, i.e. one topological
/// class of actions.
#[derive(Clone, Debug)]
pub struct BraidOrbit {
    /// Indices into the input list.
    pub members: Vec<usize>,
    /// Kernel classes reached, over every ordering of the periods.
    pub kernels_reached: usize,
    /// Kernel classes reached whose period ordering is the ascending one.
    pub ascending_kernels: usize,
}

fn closure(start: &GeneratingTuple, aut: &AutomorphismGroup) -> Result<HashSet<KernelKey>> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(kernel_key(start, aut));
    queue.push_back(start.clone());
    while let Some(t) = queue.pop_front() {
        for i in 0..t.elliptic().len().saturating_sub(1) {
            let u = braid_move(&t, i)?;
            if seen.insert(kernel_key(&u, aut)) {
                queue.push_back(u);
            }
        }
    }
    Ok(seen)
}

/// Partitions genus-0 tuples for a common `(σ, G)` into braid-and-`Aut(G)` orbits.
pub fn braid_orbits(tuples: &[GeneratingTuple], aut: &AutomorphismGroup) -> Result<Vec<BraidOrbit>> {
    let Some(first) = tuples.first() else {
        return Ok(Vec::new());
    };
    let sig = first.signature();
    for t in tuples {
        if t.gamma() != 0 {
            return Err(Error::Unsupported("braid orbits are implemented for orbit genus 0 only".into()));
        }
        if t.signature() != sig || t.group() != first.group() {
            return Err(Error::Invalid("tuples must share signature and group".into()));
        }
    }
    let keys: Vec<KernelKey> = tuples.iter().map(|t| kernel_key(t, aut)).collect();
    let mut assigned = vec![false; tuples.len()];
    let mut orbits = Vec::new();
    for i in 0..tuples.len() {
        if assigned[i] {
            continue;
        }
        let reach = closure(&tuples[i], aut)?;
        let members: Vec<usize> = (0..tuples.len()).filter(|&j| reach.contains(&keys[j])).collect();
        for &j in &members {
            assigned[j] = true;
        }
        let ascending = reach.iter().filter(|(p, _)| p.windows(2).all(|w| w[0] <= w[1])).count();
        orbits.push(BraidOrbit { members, kernels_reached: reach.len(), ascending_kernels: ascending });
    }
    Ok(orbits)
}

/// Topological classes of `G`-actions with signature `σ` (orbit genus 0):
/// braid orbits of the kernel classes for the ascending period ordering.
pub fn topological_classes(sig: &Signature, g: &FiniteGroup, opts: SearchOptions) -> Result<Vec<BraidOrbit>> {
    if sig.gamma() != 0 {
        return Err(Error::Unsupported("topological classes are implemented for orbit genus 0 only".into()));
    }
    let aut = automorphisms(g)?;
    let set = enumerate_epimorphisms_with(sig, g, opts)?;
    let reps: Vec<GeneratingTuple> = set.classes().iter().map(|c| c.representative.clone()).collect();
    braid_orbits(&reps, &aut)
}
