use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{Elem, FiniteGroup};
use crate::signatures::Signature;

/// Images of the canonical generators `A_1, B_1, …, A_γ, B_γ, X_1, …, X_k`
/// of Γ(σ) under an epimorphism onto `G`.
///
/// `periods` follow the order of the elliptic images, which need not be
/// ascending (braid moves and triality permute them).
#[derive(Clone, Debug)]
pub struct GeneratingTuple {
    group: FiniteGroup,
    periods: Vec<u32>,
    hyp: Vec<(Elem, Elem)>,
    ell: Vec<Elem>,
}

impl PartialEq for GeneratingTuple {
    fn eq(&self, other: &Self) -> bool {
        self.periods == other.periods && self.hyp == other.hyp && self.ell == other.ell && self.group == other.group
    }
}

impl Eq for GeneratingTuple {}

impl GeneratingTuple {
    /// Builds and verifies a tuple: long relation, exact elliptic orders, generation.
    pub fn new(group: &FiniteGroup, periods: Vec<u32>, hyp: Vec<(Elem, Elem)>, ell: Vec<Elem>) -> Result<Self> {
        let t = Self::unchecked(group, periods, hyp, ell);
        t.verify()?;
        Ok(t)
    }

    pub(crate) fn unchecked(group: &FiniteGroup, periods: Vec<u32>, hyp: Vec<(Elem, Elem)>, ell: Vec<Elem>) -> Self {
        GeneratingTuple { group: group.clone(), periods, hyp, ell }
    }

    /// Triangle tuple `(x, y, (xy)⁻¹)`; periods are read off the element orders.
    pub fn triangle(group: &FiniteGroup, x: Elem, y: Elem) -> Result<Self> {
        let z = group.inv(group.mul(x, y));
        let periods = [x, y, z].iter().map(|&e| group.element_order(e)).collect();
        Self::new(group, periods, vec![], vec![x, y, z])
    }

    /// Rebuilds a tuple from flattened images `a_1, b_1, …, x_1, …`.
    pub fn from_images(group: &FiniteGroup, gamma: u32, periods: &[u32], images: &[Elem]) -> Self {
        let g = gamma as usize;
        let hyp = (0..g).map(|j| (images[2 * j], images[2 * j + 1])).collect();
        Self::unchecked(group, periods.to_vec(), hyp, images[2 * g..].to_vec())
    }

    pub fn verify(&self) -> Result<()> {
        let g = &self.group;
        if self.periods.len() != self.ell.len() {
            return Err(Error::Invalid("one period per elliptic image required".into()));
        }
        for (i, (&x, &m)) in self.ell.iter().zip(&self.periods).enumerate() {
            if g.element_order(x) != m {
                return Err(Error::Invalid(format!(
                    "x{} = {} has order {}, not {m}",
                    i + 1,
                    g.label(x),
                    g.element_order(x)
                )));
            }
        }
        if self.relator() != 0 {
            return Err(Error::Invalid("long relation fails".into()));
        }
        if !g.generates(&self.images()) {
            return Err(Error::Invalid("images do not generate the group".into()));
        }
        Ok(())
    }

    /// `Π[a_j, b_j] · Π x_i`.
    pub fn relator(&self) -> Elem {
        let g = &self.group;
        let comm = self.hyp.iter().fold(0, |acc, &(a, b)| g.mul(acc, g.commutator(a, b)));
        self.ell.iter().fold(comm, |acc, &x| g.mul(acc, x))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn gamma(&self) -> u32 {
        self.hyp.len() as u32
    }

    pub fn periods(&self) -> &[u32] {
        &self.periods
    }

    pub fn hyperbolic(&self) -> &[(Elem, Elem)] {
        &self.hyp
    }

    pub fn elliptic(&self) -> &[Elem] {
        &self.ell
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.gamma(), self.periods.clone()).expect("verified tuples have hyperbolic signatures")
    }

    /// Flattened images `a_1, b_1, …, a_γ, b_γ, x_1, …, x_k`.
    pub fn images(&self) -> Vec<Elem> {
        self.hyp.iter().flat_map(|&(a, b)| [a, b]).chain(self.ell.iter().copied()).collect()
    }

    /// Applies an element map (an automorphism) to every image.
    pub fn map(&self, phi: &[u32]) -> Self {
        let f = |x: Elem| phi[x] as Elem;
        GeneratingTuple {
            group: self.group.clone(),
            periods: self.periods.clone(),
            hyp: self.hyp.iter().map(|&(a, b)| (f(a), f(b))).collect(),
            ell: self.ell.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn conjugate(&self, h: Elem) -> Self {
        let g = &self.group;
        let f = |x: Elem| g.conj(h, x);
        GeneratingTuple {
            group: g.clone(),
            periods: self.periods.clone(),
            hyp: self.hyp.iter().map(|&(a, b)| (f(a), f(b))).collect(),
            ell: self.ell.iter().map(|&x| f(x)).collect(),
        }
    }

    fn require_triangle(&self) -> Result<()> {
        if self.hyp.is_empty() && self.ell.len() == 3 {
            Ok(())
        } else {
            Err(Error::Invalid(format!("{} is not a triangle signature", self.signature())))
        }
    }

    /// `(x, y, z)` for a triangle tuple.
    pub fn xyz(&self) -> Result<(Elem, Elem, Elem)> {
        self.require_triangle()?;
        Ok((self.ell[0], self.ell[1], self.ell[2]))
    }

    pub fn to_json(&self) -> TupleJson {
        let g = &self.group;
        let l = |x: Elem| g.label(x).to_string();
        let (kind, map_type) = if self.hyp.is_empty() && self.ell.len() == 3 {
            let p = &self.periods;
            let kind = format!("({},{},{})", p[0], p[1], p[2]);
            let map_type = (p[0] == 2).then(|| format!("{{{},{}}}", p[1], p[2]));
            (Some(kind), map_type)
        } else {
            (None, None)
        };
        TupleJson {
            group: g.name().to_string(),
            signature: self.signature().to_string(),
            periods: self.periods.clone(),
            hyperbolic: self.hyp.iter().map(|&(a, b)| [l(a), l(b)]).collect(),
            elliptic: self.ell.iter().map(|&x| l(x)).collect(),
            r#type: kind,
            map_type,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TupleJson {
    pub group: String,
    pub signature: String,
    pub periods: Vec<u32>,
    pub hyperbolic: Vec<[String; 2]>,
    pub elliptic: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r#type: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub map_type: Option<String>,
}
