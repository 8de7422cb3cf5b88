//! Finite groups as Cayley tables over element indices `0..n`, with index 0
//! the identity.

mod build;
mod hom;
mod spec;

use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use build::{build_group, semidirect_cyclic_by, PermutationGroupBuilder, MAX_TABLE_ORDER};
pub use hom::{
    automorphisms, automorphisms_with, extend_homomorphism, find_isomorphism, generating_set, is_inner,
    isomorphic_to_spec, AutBudget, AutomorphismGroup, WordTree,
};
pub use spec::GroupSpec;

pub type Elem = usize;

/// 2x2 matrix `[a, b, c, d]` over `F_q` representing a projective element.
pub type Mat2 = [u32; 4];

#[derive(Clone, Debug)]
pub(crate) struct Projective {
    pub q: u32,
    pub matrices: Vec<Mat2>,
}

/// A finite group given by its full multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<Inner>,
}

struct Inner {
    name: String,
    spec: Option<GroupSpec>,
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
    labels: Vec<String>,
    projective: Option<Projective>,
    classes: OnceLock<ConjugacyClasses>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.inner.name, self.inner.n)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.n == other.inner.n && self.inner.table == other.inner.table)
    }
}

impl FiniteGroup {
    /// Builds a group from a row-major table with `table[a*n + b] = a·b`.
    /// Index 0 must be the identity; the group laws are checked.
    pub fn from_table(name: impl Into<String>, table: Vec<u32>, labels: Vec<String>) -> Result<Self> {
        Self::from_parts(name.into(), None, table, labels, None)
    }

    pub(crate) fn from_parts(
        name: String,
        spec: Option<GroupSpec>,
        table: Vec<u32>,
        labels: Vec<String>,
        projective: Option<Projective>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 || table.len() != n * n {
            return Err(Error::InvalidGroup(format!("{name}: table size does not match {n} labels")));
        }
        if table.iter().any(|&x| x as usize >= n) {
            return Err(Error::InvalidGroup(format!("{name}: table entry out of range")));
        }
        for a in 0..n {
            if table[a] as usize != a || table[a * n] as usize != a {
                return Err(Error::InvalidGroup(format!("{name}: index 0 is not the identity")));
            }
        }
        let mut inv = vec![u32::MAX; n];
        for a in 0..n {
            let row = &table[a * n..(a + 1) * n];
            match row.iter().position(|&x| x == 0) {
                Some(b) if table[b * n + a] == 0 => inv[a] = b as u32,
                _ => return Err(Error::InvalidGroup(format!("{name}: element {a} has no two-sided inverse"))),
            }
        }
        let mut orders = vec![0u32; n];
        for a in 0..n {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * n + a] as usize;
                k += 1;
                if k as usize > n {
                    return Err(Error::InvalidGroup(format!("{name}: element {a} has no finite order")));
                }
            }
            orders[a] = k;
        }
        let g = FiniteGroup {
            inner: Arc::new(Inner { name, spec, n, table, inv, orders, labels, projective, classes: OnceLock::new() }),
        };
        g.check_laws(1000)?;
        Ok(g)
    }

    /// Samples random triples for associativity and checks every row is a permutation.
    pub fn check_laws(&self, samples: usize) -> Result<()> {
        let n = self.order();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
        for _ in 0..samples {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::InvalidGroup(format!("{}: ({a}·{b})·{c} ≠ {a}·({b}·{c})", self.name())));
            }
        }
        let mut seen = vec![0usize; n];
        for a in 0..n {
            for b in 0..n {
                let x = self.mul(a, b);
                if seen[x] == a + 1 {
                    return Err(Error::InvalidGroup(format!("{}: row {a} repeats", self.name())));
                }
                seen[x] = a + 1;
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn spec(&self) -> Option<&GroupSpec> {
        self.inner.spec.as_ref()
    }

    pub fn order(&self) -> usize {
        self.inner.n
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.inner.n
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.inner.table[a * self.inner.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inner.inv[a] as usize
    }

    /// `a^e` for any integer exponent.
    pub fn pow(&self, a: Elem, e: i64) -> Elem {
        let m = self.element_order(a) as i64;
        let e = e.rem_euclid(m);
        let mut x = 0;
        for _ in 0..e {
            x = self.mul(x, a);
        }
        x
    }

    #[inline]
    pub fn element_order(&self, a: Elem) -> u32 {
        self.inner.orders[a]
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    /// Product of a sequence, left to right.
    pub fn product(&self, xs: impl IntoIterator<Item = Elem>) -> Elem {
        xs.into_iter().fold(0, |acc, x| self.mul(acc, x))
    }

    pub fn label(&self, a: Elem) -> &str {
        &self.inner.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn find_label(&self, label: &str) -> Option<Elem> {
        self.inner.labels.iter().position(|l| l == label)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<Elem> {
        self.elements().filter(|&z| self.elements().all(|g| self.mul(z, g) == self.mul(g, z))).collect()
    }

    pub fn elements_of_order(&self, m: u32) -> Vec<Elem> {
        self.elements().filter(|&a| self.element_order(a) == m).collect()
    }

    /// Field size and matrix representative for projective linear groups.
    pub fn projective_field(&self) -> Option<u32> {
        self.inner.projective.as_ref().map(|p| p.q)
    }

    pub fn matrix(&self, a: Elem) -> Option<Mat2> {
        self.inner.projective.as_ref().map(|p| p.matrices[a])
    }

    /// Element represented by a 2x2 matrix over `F_q` (projective groups only).
    pub fn element_from_matrix(&self, m: Mat2) -> Option<Elem> {
        let proj = self.inner.projective.as_ref()?;
        let q = proj.q;
        let m = m.map(|x| x % q);
        // Matrices agree projectively when they are proportional.
        (0..self.order()).find(|&i| {
            let r = proj.matrices[i];
            (0..4).all(|s| {
                (0..4).all(|t| (m[s] as u64 * r[t] as u64) % q as u64 == (m[t] as u64 * r[s] as u64) % q as u64)
            })
        })
    }

    pub fn conjugacy_classes(&self) -> &ConjugacyClasses {
        self.inner.classes.get_or_init(|| ConjugacyClasses::compute(self))
    }

    pub fn subgroup_generated(&self, gens: &[Elem]) -> Subgroup {
        let n = self.order();
        let mut member = vec![false; n];
        member[0] = true;
        let mut elems = vec![0usize];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    elems.push(y);
                    queue.push_back(y);
                }
            }
        }
        elems.sort_unstable();
        Subgroup { elements: elems, member }
    }

    /// Whether the given elements generate the whole group.
    pub fn generates(&self, gens: &[Elem]) -> bool {
        self.subgroup_generated(gens).order() == self.order()
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elements: self.elements().collect(), member: vec![true; self.order()] }
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<Elem> = h.elements().to_vec();
        let elems: Vec<Elem> = self.elements().filter(|&x| gens.iter().all(|&y| h.contains(self.conj(x, y)))).collect();
        let mut member = vec![false; self.order()];
        for &x in &elems {
            member[x] = true;
        }
        Subgroup { elements: elems, member }
    }

    /// `H` as a group in its own right; element `i` is `h.elements()[i]`.
    pub fn subgroup_as_group(&self, h: &Subgroup, name: impl Into<String>) -> Result<FiniteGroup> {
        let els = h.elements();
        let n = els.len();
        let mut pos = vec![u32::MAX; self.order()];
        for (i, &x) in els.iter().enumerate() {
            pos[x] = i as u32;
        }
        let mut table = Vec::with_capacity(n * n);
        for &a in els {
            for &b in els {
                let c = pos[self.mul(a, b)];
                if c == u32::MAX {
                    return Err(Error::Invalid("subset is not closed under multiplication".into()));
                }
                table.push(c);
            }
        }
        let labels = els.iter().map(|&x| self.label(x).to_string()).collect();
        FiniteGroup::from_table(name, table, labels)
    }

    /// Number of Sylow `p`-subgroups when `p` divides `|G|` exactly once.
    pub fn count_sylow_of_prime_order(&self, p: u32) -> Result<usize> {
        let n = self.order();
        if !n.is_multiple_of(p as usize) || n.is_multiple_of(p as usize * p as usize) {
            return Err(Error::Unsupported(format!("{p} must divide |G| = {n} exactly once")));
        }
        Ok(self.elements_of_order(p).len() / (p as usize - 1))
    }

    /// The map `x ↦ g x g⁻¹` as an element permutation.
    pub fn inner_automorphism(&self, g: Elem) -> Vec<u32> {
        self.elements().map(|x| self.conj(g, x) as u32).collect()
    }
}

/// Conjugacy classes with, for each element, a conjugator taking it to its class representative.
#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    class_of: Vec<u32>,
    classes: Vec<Vec<Elem>>,
    /// `conjugator[y] = h` with `h y h⁻¹ = rep(class(y))`.
    conjugator: Vec<u32>,
}

impl ConjugacyClasses {
    fn compute(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut class_of = vec![u32::MAX; n];
        let mut conjugator = vec![0u32; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != u32::MAX {
                continue;
            }
            let id = classes.len() as u32;
            let mut members = Vec::new();
            for h in 0..n {
                let y = g.conj(h, x);
                if class_of[y] == u32::MAX {
                    class_of[y] = id;
                    conjugator[y] = g.inv(h) as u32;
                    members.push(y);
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        ConjugacyClasses { class_of, classes, conjugator }
    }

    pub fn classes(&self) -> &[Vec<Elem>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, x: Elem) -> usize {
        self.class_of[x] as usize
    }

    /// Smallest element of the class.
    pub fn representative(&self, class: usize) -> Elem {
        self.classes[class][0]
    }

    pub fn conjugator_to_rep(&self, x: Elem) -> Elem {
        self.conjugator[x] as usize
    }
}

/// A subgroup as a sorted element list plus a membership mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<Elem>,
    member: Vec<bool>,
}

impl Subgroup {
    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.member[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Checks closure, which for a finite nonempty subset makes it a subgroup.
    pub fn is_closed_in(&self, g: &FiniteGroup) -> bool {
        self.contains(0)
            && self.elements.iter().all(|&a| self.contains(g.inv(a)))
            && self.elements.iter().all(|&a| self.elements.iter().all(|&b| self.contains(g.mul(a, b))))
    }

    /// `coset[x]` = index of the left coset `xH`, numbered by first appearance.
    pub fn left_coset_index(&self, g: &FiniteGroup) -> (Vec<u32>, usize) {
        let mut coset = vec![u32::MAX; g.order()];
        let mut count = 0u32;
        for x in g.elements() {
            if coset[x] == u32::MAX {
                for &h in &self.elements {
                    coset[g.mul(x, h)] = count;
                }
                count += 1;
            }
        }
        (coset, count as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(s: &str) -> FiniteGroup {
        build_group(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn orders_of_families() {
        assert_eq!(grp("PSL(2,7)").order(), 168);
        assert_eq!(grp("PGL(2,7)").order(), 336);
        assert_eq!(grp("PSL(2,13)").order(), 1092);
        assert_eq!(grp("PGL(2,13)").order(), 2184);
        assert_eq!(grp("Gpr(7,6)xC2").order(), 84);
        assert_eq!(grp("D5").order(), 10);
        assert_eq!(grp("S5").order(), 120);
    }

    #[test]
    fn element_orders() {
        let g = grp("Gpr(13,6)");
        let a = g.find_label("a").unwrap();
        assert_eq!(g.element_order(0), 1);
        assert_eq!(g.element_order(a), 13);
        let pgl = grp("PGL(2,7)");
        let det = |m: Mat2| (m[0] * m[3] + 49 - m[1] * m[2] % 7) % 7;
        let outer: Vec<_> =
            pgl.elements().filter(|&x| !crate::arith::is_square_mod(det(pgl.matrix(x).unwrap()) as u64, 7)).collect();
        assert_eq!(outer.len(), 168);
        assert!(outer.iter().any(|&x| pgl.element_order(x) == 2));
    }

    #[test]
    fn classes() {
        let c = grp("C9");
        assert_eq!(c.conjugacy_classes().len(), 9);
        let d5 = grp("D5");
        let cls = d5.conjugacy_classes();
        assert_eq!(cls.len(), 4);
        let mut sizes: Vec<_> = cls.classes().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 2, 5]);
        let psl = grp("PSL(2,13)");
        let cls = psl.conjugacy_classes();
        let order7 = cls.classes().iter().filter(|c| psl.element_order(c[0]) == 7).count();
        assert_eq!(order7, 3);
        for x in psl.elements() {
            let h = cls.conjugator_to_rep(x);
            assert_eq!(psl.conj(h, x), cls.representative(cls.class_of(x)));
        }
    }

    #[test]
    fn generated_subgroups() {
        let g = grp("Gpr(11,5)");
        assert!(g.subgroup_generated(&[0]).is_trivial());
        let a = g.find_label("a").unwrap();
        let b = g.find_label("b").unwrap();
        assert_eq!(g.subgroup_generated(&[a]).order(), 11);
        assert_eq!(g.subgroup_generated(&[b]).order(), 5);
        assert!(g.subgroup_generated(&[a, b]).is_closed_in(&g));
        assert!(g.generates(&[a, b]));
    }

    #[test]
    fn sylow_counts() {
        for (p, r) in [(7u32, 3u32), (13, 4), (11, 10)] {
            let g = grp(&format!("Gpr({p},{r})"));
            assert_eq!(g.count_sylow_of_prime_order(p).unwrap(), 1);
        }
        assert_eq!(grp("PSL(2,13)").count_sylow_of_prime_order(13).unwrap(), 14);
    }

    #[test]
    fn matrix_lookup() {
        let g = grp("PSL(2,7)");
        let x = g.element_from_matrix([3, 0, 0, 5]).unwrap();
        assert_eq!(g.element_order(x), 3);
        // scalar multiples name the same element
        assert_eq!(g.element_from_matrix([6, 0, 0, 10]), Some(x));
    }

    #[test]
    fn rejects_bad_tables() {
        // identity not at index 0
        let t = vec![1, 0, 0, 1];
        assert!(FiniteGroup::from_table("bad", t, vec!["a".into(), "b".into()]).is_err());
        let t = vec![0, 1, 1, 1];
        assert!(FiniteGroup::from_table("bad", t, vec!["e".into(), "b".into()]).is_err());
    }
}
