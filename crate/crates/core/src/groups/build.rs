use std::collections::HashMap;

use super::{FiniteGroup, GroupSpec, Mat2, Projective};
use crate::arith::{inv_mod, is_prime, pow_mod};
use crate::error::{Error, Result};

/// Largest group for which a full Cayley table is materialized.
pub const MAX_TABLE_ORDER: usize = 5000;

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    let order = spec.order();
    if order as usize > MAX_TABLE_ORDER {
        return Err(Error::InvalidGroup(format!("{spec} has order {order} > {MAX_TABLE_ORDER}")));
    }
    match spec {
        GroupSpec::Cyclic(n) => cyclic(*n),
        GroupSpec::Dihedral(n) => dihedral(*n),
        GroupSpec::Metacyclic { p, r, omega } => {
            let w = GroupSpec::metacyclic_omega(*p, *r, *omega)?;
            metacyclic(spec.clone(), *p, *r, w)
        }
        GroupSpec::DirectProduct(a, b) => direct_product(spec.clone(), &build_group(a)?, &build_group(b)?),
        GroupSpec::Psl2(q) => projective(spec.clone(), *q, true),
        GroupSpec::Pgl2(q) => projective(spec.clone(), *q, false),
        GroupSpec::Symmetric(n) => symmetric(*n),
        GroupSpec::AffinePlane { p, linear, .. } => affine_plane(spec.clone(), *p, linear),
    }
}

fn cyclic(n: u32) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidGroup("C0".into()));
    }
    let n = n as usize;
    let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
    let labels = (0..n).map(|i| power_label("c", i)).collect();
    FiniteGroup::from_parts(format!("C{n}"), Some(GroupSpec::Cyclic(n as u32)), table, labels, None)
}

fn power_label(sym: &str, i: usize) -> String {
    match i {
        0 => String::new(),
        1 => sym.to_string(),
        _ => format!("{sym}^{i}"),
    }
}

fn word_label(parts: &[String]) -> String {
    let s: String = parts.concat();
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// Pairs `(i, j)` ↦ `a^i b^j` at index `i*r + j`, multiplied by
/// `(i, j)(i', j') = (i + ω^j i', j + j')`.
fn metacyclic(spec: GroupSpec, p: u32, r: u32, w: u32) -> Result<FiniteGroup> {
    let (p, r) = (p as usize, r as usize);
    let n = p * r;
    let wp: Vec<usize> = (0..r).map(|j| pow_mod(w as u64, j as u64, p as u64) as usize).collect();
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        let (i, j) = (x / r, x % r);
        for y in 0..n {
            let (i2, j2) = (y / r, y % r);
            let k = (i + wp[j] * i2) % p;
            table[x * n + y] = (k * r + (j + j2) % r) as u32;
        }
    }
    let labels = (0..n).map(|x| word_label(&[power_label("a", x / r), power_label("b", x % r)])).collect();
    FiniteGroup::from_parts(spec.to_string(), Some(spec), table, labels, None)
}

/// Same layout as the metacyclic family with `ω = −1`: `r^i t^s` at index `2i + s`.
fn dihedral(m: u32) -> Result<FiniteGroup> {
    if m == 0 {
        return Err(Error::InvalidGroup("D0".into()));
    }
    let m = m as usize;
    let n = 2 * m;
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        let (i, s) = (x / 2, x % 2);
        for y in 0..n {
            let (i2, s2) = (y / 2, y % 2);
            let k = if s == 0 { (i + i2) % m } else { (i + m - i2) % m };
            table[x * n + y] = (2 * k + (s + s2) % 2) as u32;
        }
    }
    let labels = (0..n).map(|x| word_label(&[power_label("r", x / 2), power_label("t", x % 2)])).collect();
    FiniteGroup::from_parts(format!("D{m}"), Some(GroupSpec::Dihedral(m as u32)), table, labels, None)
}

/// `(g, h)` at index `g*|H| + h`.
fn direct_product(spec: GroupSpec, g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let (a, b) = (g.order(), h.order());
    let n = a * b;
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            table[x * n + y] = (g.mul(x / b, y / b) * b + h.mul(x % b, y % b)) as u32;
        }
    }
    let labels = (0..n).map(|x| format!("({},{})", g.label(x / b), h.label(x % b))).collect();
    FiniteGroup::from_parts(spec.to_string(), Some(spec), table, labels, None)
}

/// Collects the closure of a set of permutations and emits a Cayley table.
///
/// Products compose as functions: `(a·b)(x) = a(b(x))`. Elements are sorted
/// lexicographically, so the identity lands at index 0.
pub struct PermutationGroupBuilder {
    perms: Vec<Vec<u32>>,
}

impl PermutationGroupBuilder {
    pub fn closure(degree: usize, gens: &[Vec<u32>]) -> Result<Self> {
        let id: Vec<u32> = (0..degree as u32).collect();
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree
                || g.iter().any(|&x| x as usize >= degree || std::mem::replace(&mut seen[x as usize], true))
            {
                return Err(Error::InvalidGroup("generator is not a permutation".into()));
            }
        }
        let mut index: HashMap<Vec<u32>, ()> = HashMap::new();
        let mut perms = vec![id.clone()];
        index.insert(id, ());
        let mut k = 0;
        while k < perms.len() {
            for g in gens {
                let c: Vec<u32> = perms[k].iter().map(|&x| g[x as usize]).collect();
                if !index.contains_key(&c) {
                    if perms.len() >= MAX_TABLE_ORDER {
                        return Err(Error::InvalidGroup(format!(
                            "permutation group exceeds {MAX_TABLE_ORDER} elements"
                        )));
                    }
                    index.insert(c.clone(), ());
                    perms.push(c);
                }
            }
            k += 1;
        }
        perms.sort();
        Ok(PermutationGroupBuilder { perms })
    }

    pub fn from_elements(mut perms: Vec<Vec<u32>>) -> Self {
        perms.sort();
        perms.dedup();
        PermutationGroupBuilder { perms }
    }

    pub fn perms(&self) -> &[Vec<u32>] {
        &self.perms
    }

    pub fn table(&self) -> Result<Vec<u32>> {
        let n = self.perms.len();
        let index: HashMap<&[u32], u32> =
            self.perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i as u32)).collect();
        let mut table = vec![0u32; n * n];
        let mut buf = vec![0u32; self.perms.first().map_or(0, Vec::len)];
        for (a, pa) in self.perms.iter().enumerate() {
            for (b, pb) in self.perms.iter().enumerate() {
                for (slot, &x) in buf.iter_mut().zip(pb) {
                    *slot = pa[x as usize];
                }
                table[a * n + b] = *index
                    .get(buf.as_slice())
                    .ok_or_else(|| Error::InvalidGroup("permutation set is not closed".into()))?;
            }
        }
        Ok(table)
    }

    pub fn into_group(self, name: String, spec: Option<GroupSpec>, labels: Vec<String>) -> Result<FiniteGroup> {
        let table = self.table()?;
        FiniteGroup::from_parts(name, spec, table, labels, None)
    }
}

/// Cycle notation on points `1..n`.
pub fn cycle_label(perm: &[u32]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] as usize == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = perm[x] as usize;
        }
        out.push_str(&format!("({})", cycle.join(",")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

fn symmetric(n: u32) -> Result<FiniteGroup> {
    if n == 0 || n > 7 {
        return Err(Error::InvalidGroup(format!("S{n} is out of range")));
    }
    let n = n as usize;
    let mut gens = Vec::new();
    if n > 1 {
        let mut t: Vec<u32> = (0..n as u32).collect();
        t.swap(0, 1);
        let c: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        gens.push(t);
        gens.push(c);
    }
    let b = PermutationGroupBuilder::closure(n, &gens)?;
    let labels = b.perms().iter().map(|p| cycle_label(p)).collect();
    b.into_group(format!("S{n}"), Some(GroupSpec::Symmetric(n as u32)), labels)
}

/// Möbius action of `[a, b; c, d]` on points `0..q−1` and `q = ∞`.
fn mobius(m: Mat2, q: u32) -> Vec<u32> {
    let q64 = q as u64;
    let [a, b, c, d] = m.map(|x| x as u64);
    (0..=q)
        .map(|z| {
            if z == q {
                return if c == 0 { q } else { (a * inv_mod(c, q64) % q64) as u32 };
            }
            let z = z as u64;
            let num = (a * z + b) % q64;
            let den = (c * z + d) % q64;
            if den == 0 {
                q
            } else {
                (num * inv_mod(den, q64) % q64) as u32
            }
        })
        .collect()
}

fn mat_label(m: Mat2) -> String {
    format!("[{},{};{},{}]", m[0], m[1], m[2], m[3])
}

fn projective(spec: GroupSpec, q: u32, special: bool) -> Result<FiniteGroup> {
    if q < 3 || !is_prime(q as u64) {
        return Err(Error::InvalidGroup(format!("{spec}: q must be an odd prime")));
    }
    let mut reps: HashMap<Vec<u32>, Mat2> = HashMap::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let det = (a as u64 * d as u64 + (q as u64 - (b as u64 * c as u64) % q as u64)) % q as u64;
                    if det == 0 || (special && det != 1) {
                        continue;
                    }
                    let m = [a, b, c, d];
                    reps.entry(mobius(m, q)).or_insert(m);
                }
            }
        }
    }
    let builder = PermutationGroupBuilder::from_elements(reps.keys().cloned().collect());
    let matrices: Vec<Mat2> = builder.perms().iter().map(|p| reps[p]).collect();
    let labels = matrices.iter().map(|&m| mat_label(m)).collect();
    let table = builder.table()?;
    FiniteGroup::from_parts(spec.to_string(), Some(spec), table, labels, Some(Projective { q, matrices }))
}

fn mat_mul(x: Mat2, y: Mat2, p: u32) -> Mat2 {
    let p = p as u64;
    let [a, b, c, d] = x.map(|v| v as u64);
    let [e, f, g, h] = y.map(|v| v as u64);
    [
        ((a * e + b * g) % p) as u32,
        ((a * f + b * h) % p) as u32,
        ((c * e + d * g) % p) as u32,
        ((c * f + d * h) % p) as u32,
    ]
}

/// Size of the matrix group generated by `linear` inside `GL_2(p)`.
pub(crate) fn linear_group_order(p: u32, linear: &[[u32; 4]]) -> u64 {
    let mut seen = vec![[1, 0, 0, 1]];
    let mut k = 0;
    while k < seen.len() {
        for &g in linear {
            let m = mat_mul(seen[k], g, p);
            if !seen.contains(&m) {
                seen.push(m);
            }
        }
        k += 1;
    }
    seen.len() as u64
}

/// Affine maps `v ↦ Mv + t` on `F_p^2`, with points indexed `x + p·y`.
fn affine_plane(spec: GroupSpec, p: u32, linear: &[[u32; 4]]) -> Result<FiniteGroup> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidGroup(format!("{spec}: p must be prime")));
    }
    let pts = (p * p) as usize;
    let apply = |m: Mat2, t: (u32, u32)| -> Vec<u32> {
        (0..pts as u32)
            .map(|v| {
                let (x, y) = (v % p, v / p);
                let nx = (m[0] * x + m[1] * y + t.0) % p;
                let ny = (m[2] * x + m[3] * y + t.1) % p;
                nx + p * ny
            })
            .collect()
    };
    let mut gens = vec![apply([1, 0, 0, 1], (1, 0)), apply([1, 0, 0, 1], (0, 1))];
    for &m in linear {
        gens.push(apply(m.map(|x| x % p), (0, 0)));
    }
    let b = PermutationGroupBuilder::closure(pts, &gens)?;
    let labels = b
        .perms()
        .iter()
        .map(|perm| {
            let t = perm[0];
            let (tx, ty) = (t % p, t / p);
            let col = |v: u32| ((v % p + p - tx) % p, (v / p + p - ty) % p);
            let (a, c) = col(perm[1]);
            let (bb, d) = col(perm[p as usize]);
            format!("[{a},{bb};{c},{d}]+({tx},{ty})")
        })
        .collect();
    b.into_group(spec.to_string(), Some(spec), labels)
}

/// `C_p ⋊_λ Q`: pairs `(i, q)` at index `i·|Q| + q` with
/// `(i, q)(i', q') = (i + λ(q) i', q q')`, where `lambda[q]` is a unit mod `p`.
pub fn semidirect_cyclic_by(p: u32, q: &FiniteGroup, lambda: &[u32]) -> Result<FiniteGroup> {
    let m = q.order();
    if lambda.len() != m {
        return Err(Error::Invalid("λ must assign a unit to every element of Q".into()));
    }
    for x in q.elements() {
        for y in q.elements() {
            if (lambda[x] as u64 * lambda[y] as u64) % p as u64 != lambda[q.mul(x, y)] as u64 % p as u64 {
                return Err(Error::Invalid("λ is not a homomorphism Q → Z_p^*".into()));
            }
        }
    }
    let n = p as usize * m;
    if n > MAX_TABLE_ORDER {
        return Err(Error::InvalidGroup(format!("C{p}:{} is too large", q.name())));
    }
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        let (i, a) = (x / m, x % m);
        for y in 0..n {
            let (i2, b) = (y / m, y % m);
            let k = (i as u64 + lambda[a] as u64 * i2 as u64) % p as u64;
            table[x * n + y] = (k as usize * m + q.mul(a, b)) as u32;
        }
    }
    let labels = (0..n).map(|x| format!("({},{})", x / m, q.label(x % m))).collect();
    FiniteGroup::from_parts(format!("C{p}:{}", q.name()), None, table, labels, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_labels() {
        assert_eq!(cycle_label(&[1, 0, 2]), "(1,2)");
        assert_eq!(cycle_label(&[0, 1]), "()");
    }

    #[test]
    fn affine_groups() {
        for (spec, n) in [(GroupSpec::v25_s3(), 150), (GroupSpec::v25_c3(), 75), (GroupSpec::v25_c2(), 50)] {
            assert_eq!(build_group(&spec).unwrap().order(), n);
        }
    }

    #[test]
    fn semidirect_matches_metacyclic_order() {
        let q = build_group(&GroupSpec::Cyclic(6)).unwrap();
        // λ(c^k) = 3^k mod 7, faithful
        let lambda: Vec<u32> = (0..6).map(|k| pow_mod(3, k, 7) as u32).collect();
        let g = semidirect_cyclic_by(7, &q, &lambda).unwrap();
        assert_eq!(g.order(), 42);
        assert!(!g.is_abelian());
        assert!(semidirect_cyclic_by(7, &q, &[1, 2, 1, 2, 1, 2]).is_err());
    }

    #[test]
    fn oversized_groups_are_rejected() {
        assert!(build_group(&GroupSpec::Psl2(31)).is_err());
        assert!(build_group(&GroupSpec::Psl2(9)).is_err());
    }
}
