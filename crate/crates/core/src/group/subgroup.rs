//! Subgroups, membership, coset transversals, quotients and the structural
//! checks on two-ended groups.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{CayleyTable, Element, EndKind, Family, Group, Label};
use crate::error::{Error, Result};

/// Search radius for membership questions without a closed form.
pub const DEFAULT_SEARCH_RADIUS: usize = 8;
/// Transversals larger than this are reported as infinite index.
pub const MAX_INDEX: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SubgroupSpec {
    GeneratedBy(Vec<Element>),
    /// The finite core of a two-ended group (the amalgamated subgroup, the HNN
    /// base, or the finite factor of a product).
    Core,
    /// Kernel of the parity map of the end projection: preimage of the
    /// rotations of D∞, or of 2ℤ.
    IndexTwo,
    /// First coordinate of a direct product.
    FirstFactor,
}

impl SubgroupSpec {
    pub fn trivial() -> Self {
        SubgroupSpec::GeneratedBy(Vec::new())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// One representative per right coset `H·t`; the identity represents `H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transversal {
    pub representatives: Vec<Element>,
    pub side: Side,
}

/// Right action of the generators on right cosets: `action[i][s] = j` when
/// `H·tᵢ·s = H·tⱼ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    pub reps: Vec<Element>,
    pub action: Vec<Vec<usize>>,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended Euclid: `(g, x, y)` with `a·x + b·y = g = gcd(a, b) ≥ 0`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        return if a < 0 { (-a, -1, 0) } else { (a, 1, 0) };
    }
    let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
    (g, y, x - a.div_euclid(b) * y)
}

/// Membership oracle for a subgroup of a group whose end quotient is ℤ:
/// `H = K·⟨h₀⟩` with `K = H ∩ core` and `π(h₀) = d`.
struct LineSubgroup {
    d: i64,
    h0: Element,
    kernel: HashSet<Element>,
}

impl LineSubgroup {
    fn build(g: &Group, gens: &[Element]) -> Result<LineSubgroup> {
        let fam = &g.family;
        let proj = |x: &Element| fam.end_projection(x).map(|p| p.0).ok_or(Error::FamilyMismatch);
        let mut h0 = g.identity();
        let mut d = 0i64;
        for x in gens {
            let n = proj(x)?;
            let (gg, u, v) = ext_gcd(d, n);
            if gg != d {
                h0 = g.mul(&g.pow(&h0, u)?, &g.pow(x, v)?)?;
                d = gg;
            }
        }
        debug_assert_eq!(proj(&h0)?, d);
        let mut seeds = Vec::new();
        for x in gens {
            let n = proj(x)?;
            let k = if d == 0 { 0 } else { n / d };
            seeds.push(g.mul(x, &g.pow(&h0, -k)?)?);
        }
        let h0_inv = g.inv(&h0)?;
        let mut kernel: HashSet<Element> = HashSet::from([g.identity()]);
        let mut queue: VecDeque<Element> = VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            let mut next = Vec::new();
            for s in &seeds {
                next.push(g.mul(&x, s)?);
            }
            if d != 0 {
                next.push(g.mul(&g.mul(&h0, &x)?, &h0_inv)?);
            }
            for y in next {
                if kernel.insert(y.clone()) {
                    if kernel.len() > 1 << 16 {
                        return Err(Error::InvalidGroup("core intersection does not close".into()));
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(LineSubgroup { d, h0, kernel })
    }

    fn contains(&self, g: &Group, x: &Element) -> Result<bool> {
        let n = g.family.end_projection(x).ok_or(Error::FamilyMismatch)?.0;
        if self.d == 0 {
            return Ok(self.kernel.contains(x));
        }
        if n % self.d != 0 {
            return Ok(false);
        }
        let y = g.mul(x, &g.pow(&self.h0, -(n / self.d))?)?;
        Ok(self.kernel.contains(&y))
    }
}

impl Group {
    /// Decides `x ∈ H`. Families without a closed form search H-words up to
    /// [`DEFAULT_SEARCH_RADIUS`] and answer [`Error::Undecided`] beyond it.
    pub fn member(&self, h: &SubgroupSpec, x: &Element) -> Result<bool> {
        self.member_with_radius(h, x, DEFAULT_SEARCH_RADIUS)
    }

    pub fn member_with_radius(&self, h: &SubgroupSpec, x: &Element, radius: usize) -> Result<bool> {
        if !self.family.contains(x) {
            return Err(Error::FamilyMismatch);
        }
        match h {
            SubgroupSpec::Core => match (&self.family, x) {
                (Family::Amalgam(_), Element::Amal { reps, .. }) => Ok(reps.is_empty()),
                _ => match self.family.end_projection(x) {
                    Some(p) => Ok(p == (0, false)),
                    None => Err(Error::UnsupportedQuotient("family has no finite core".into())),
                },
            },
            SubgroupSpec::IndexTwo => {
                let kind = self.end_kind().ok_or(Error::NotTwoEnded)?;
                let (k, r) = self.family.end_projection(x).ok_or(Error::NotTwoEnded)?;
                Ok(match kind {
                    EndKind::Dihedral => !r,
                    EndKind::Line => k % 2 == 0,
                })
            }
            SubgroupSpec::FirstFactor => match (&self.family, x) {
                (Family::Product(_, b), Element::Pair(_, y)) => Ok(**y == b.identity()),
                _ => Err(Error::FamilyMismatch),
            },
            SubgroupSpec::GeneratedBy(gens) => self.member_generated(gens, x, radius),
        }
    }

    fn member_generated(&self, gens: &[Element], x: &Element, radius: usize) -> Result<bool> {
        let nontrivial: Vec<&Element> = gens.iter().filter(|g| **g != self.identity()).collect();
        if *x == self.identity() {
            return Ok(true);
        }
        if nontrivial.is_empty() {
            return Ok(false);
        }
        match (&self.family, x) {
            (Family::Integers, Element::Int(n)) => {
                let d = nontrivial.iter().fold(0, |acc, g| match g {
                    Element::Int(k) => gcd(acc, *k),
                    _ => acc,
                });
                Ok(d != 0 && n % d == 0)
            }
            (Family::InfiniteDihedral, Element::Dih { k, r }) => {
                let mut rot = 0i64;
                let mut first_refl: Option<i64> = None;
                for g in &nontrivial {
                    if let Element::Dih { k: gk, r: gr } = g {
                        if *gr {
                            match first_refl {
                                None => first_refl = Some(*gk),
                                Some(m) => rot = gcd(rot, gk - m),
                            }
                        } else {
                            rot = gcd(rot, *gk);
                        }
                    }
                }
                let divides = |n: i64| if rot == 0 { n == 0 } else { n % rot == 0 };
                Ok(if *r {
                    first_refl.is_some_and(|m| divides(k - m))
                } else {
                    divides(*k)
                })
            }
            (Family::Finite(t), Element::Fin(a)) => {
                let g: Vec<u32> = nontrivial
                    .iter()
                    .filter_map(|e| if let Element::Fin(v) = e { Some(*v) } else { None })
                    .collect();
                Ok(t.generated(&g).binary_search(a).is_ok())
            }
            _ if self.end_kind() == Some(EndKind::Line) && self.family.core_elements().is_some() => {
                let owned: Vec<Element> = nontrivial.into_iter().cloned().collect();
                LineSubgroup::build(self, &owned)?.contains(self, x)
            }
            _ => {
                let owned: Vec<Element> = nontrivial.into_iter().cloned().collect();
                let sub = Group::from_elements(self.family.clone(), owned)?;
                let ball = sub.ball(radius)?;
                if ball.iter().any(|(e, _)| e == x) {
                    Ok(true)
                } else if self.family.order().is_some() || ball.last().is_some_and(|b| b.1 < radius) {
                    // the ball closed up before the radius: H is finite and fully listed
                    Ok(false)
                } else {
                    Err(Error::Undecided(radius))
                }
            }
        }
    }

    /// Index of the coset of `x` among `reps`, if any.
    fn find_coset(&self, h: &SubgroupSpec, reps: &[(Element, Element)], x: &Element) -> Result<Option<usize>> {
        for (i, (_, t_inv)) in reps.iter().enumerate() {
            if self.member(h, &self.mul(x, t_inv)?)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Right cosets of `h` with their generator action, found by BFS from the
    /// identity; each representative is reached by the shortlex-least word.
    pub fn coset_table(&self, h: &SubgroupSpec) -> Result<CosetTable> {
        if *h == SubgroupSpec::Core && self.family.order().is_none() {
            return Err(Error::InfiniteIndex);
        }
        let mut reps: Vec<(Element, Element)> = vec![(self.identity(), self.identity())];
        let mut action: Vec<Vec<usize>> = Vec::new();
        let mut head = 0;
        while head < reps.len() {
            let t = reps[head].0.clone();
            let mut row = Vec::with_capacity(self.gens.len());
            for l in 0..self.gens.len() {
                let y = self.step(&t, l)?;
                let j = match self.find_coset(h, &reps, &y)? {
                    Some(j) => j,
                    None => {
                        if reps.len() >= MAX_INDEX {
                            return Err(Error::InfiniteIndex);
                        }
                        let yi = self.inv(&y)?;
                        reps.push((y, yi));
                        reps.len() - 1
                    }
                };
                row.push(j);
            }
            action.push(row);
            head += 1;
        }
        Ok(CosetTable { reps: reps.into_iter().map(|p| p.0).collect(), action })
    }

    pub fn transversal(&self, h: &SubgroupSpec) -> Result<Transversal> {
        let ct = self.coset_table(h)?;
        Ok(Transversal { representatives: ct.reps, side: Side::Right })
    }

    pub fn index(&self, h: &SubgroupSpec) -> Result<usize> {
        Ok(self.coset_table(h)?.reps.len())
    }

    /// Checks normality by conjugating generators of `n` by the generators of
    /// the group. Specs that are normal by construction pass directly.
    pub fn is_normal(&self, n: &SubgroupSpec) -> Result<bool> {
        let gens = match n {
            SubgroupSpec::GeneratedBy(g) => g,
            SubgroupSpec::Core => return Ok(self.end_kind().is_some()),
            SubgroupSpec::IndexTwo | SubgroupSpec::FirstFactor => return Ok(true),
        };
        for x in gens {
            for s in self.gens.iter() {
                let c = self.mul(&self.mul(&self.inv(&s.elem)?, x)?, &s.elem)?;
                if !self.member(n, &c)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The quotient by a normal subgroup of finite index (a table), or of a
    /// two-ended group by its core (ℤ or D∞).
    pub fn quotient(&self, n: &SubgroupSpec) -> Result<Quotient> {
        if *n == SubgroupSpec::Core {
            let kind = self
                .end_kind()
                .ok_or_else(|| Error::UnsupportedQuotient("group is not two-ended".into()))?;
            let fam = match kind {
                EndKind::Line => Family::Integers,
                EndKind::Dihedral => Family::InfiniteDihedral,
            };
            let mut images = Vec::new();
            let mut lifts = Vec::new();
            for (l, s) in self.gens.iter().enumerate() {
                let (k, r) = self.family.end_projection(&s.elem).ok_or(Error::NotTwoEnded)?;
                let e = match kind {
                    EndKind::Line => Element::Int(k),
                    EndKind::Dihedral => Element::dih(k, r),
                };
                if e != fam.identity() && !images.contains(&e) {
                    images.push(e);
                    lifts.push(l);
                }
            }
            if images.is_empty() {
                return Err(Error::UnsupportedQuotient("generators all lie in the core".into()));
            }
            let group = Group::from_elements(fam, images)?;
            return Ok(Quotient { group, kind: QuotientKind::Ends(kind), reps: Vec::new() });
        }
        if !self.is_normal(n)? {
            return Err(Error::NotNormal(format!("{n:?}")));
        }
        let ct = self.coset_table(n)?;
        let m = ct.reps.len();
        let inverses: Vec<(Element, Element)> = ct
            .reps
            .iter()
            .map(|t| Ok((t.clone(), self.inv(t)?)))
            .collect::<Result<_>>()?;
        let mut mul = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                let p = self.mul(&ct.reps[i], &ct.reps[j])?;
                mul[i * m + j] = self.find_coset(n, &inverses, &p)?.ok_or(Error::InfiniteIndex)? as u32;
            }
        }
        let table = CayleyTable::from_table("quotient", m, mul, Vec::new())?;
        let mut images: Vec<Element> = Vec::new();
        for l in 0..self.gens.len() {
            let j = ct.action[0][l];
            if j != 0 && !images.contains(&Element::Fin(j as u32)) {
                images.push(Element::Fin(j as u32));
            }
        }
        if images.is_empty() {
            return Err(Error::UnsupportedQuotient("trivial quotient".into()));
        }
        let group = Group::from_elements(Family::Finite(Arc::new(table)), images)?;
        Ok(Quotient { group, kind: QuotientKind::Table(n.clone()), reps: inverses })
    }

    /// A subgroup of index two in a two-ended group.
    pub fn index_two_subgroup(&self) -> Result<SubgroupSpec> {
        match self.family {
            Family::Integers => Ok(SubgroupSpec::GeneratedBy(vec![Element::Int(2)])),
            Family::InfiniteDihedral => Ok(SubgroupSpec::GeneratedBy(vec![Element::dih(1, false)])),
            _ if self.is_two_ended() => Ok(SubgroupSpec::IndexTwo),
            _ => Err(Error::NotTwoEnded),
        }
    }

    /// Verifies that the core of a two-ended amalgam or HNN extension is
    /// normal by conjugating every core element by every element of the ball.
    pub fn check_core_normal(&self, radius: usize) -> Result<bool> {
        match &self.family {
            Family::Amalgam(am) if !am.is_two_ended() => {
                return Err(Error::HypothesisViolated(format!(
                    "core has index {} and {} in the factors, not 2",
                    am.index_in_factor(0),
                    am.index_in_factor(1)
                )))
            }
            Family::Amalgam(_) | Family::Hnn { .. } => {}
            _ => return Err(Error::FamilyMismatch),
        }
        let core = self.family.core_elements().ok_or(Error::FamilyMismatch)?;
        for (g, _) in self.ball(radius)? {
            let gi = self.inv(&g)?;
            for c in &core {
                let conj = self.mul(&self.mul(&g, c)?, &gi)?;
                if !self.member(&SubgroupSpec::Core, &conj)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `([G:F], rank F)` for a designated free subgroup of finite index.
    pub fn virtually_free_params(&self, f: &SubgroupSpec) -> Result<(usize, usize)> {
        let m = self.index(f)?;
        let rank = match (&self.family, f) {
            (Family::Free { rank }, _) => m * (rank - 1) + 1,
            (Family::Product(a, b), SubgroupSpec::FirstFactor) if b.order().is_some() => match a.as_ref() {
                Family::Free { rank } => *rank,
                Family::Integers => 1,
                _ => return Err(Error::NotFree("first factor is not free".into())),
            },
            _ if self.is_two_ended() => {
                // torsion-free subgroups of two-ended groups are infinite cyclic
                if let Some(core) = self.family.core_elements() {
                    for c in core.iter().filter(|c| **c != self.identity()) {
                        if self.member(f, c)? {
                            return Err(Error::NotFree(format!("contains torsion element {}", self.format(c))));
                        }
                    }
                }
                if let SubgroupSpec::GeneratedBy(gens) = f {
                    for x in gens {
                        if self.has_infinite_order(x) == Some(false) && *x != self.identity() {
                            return Err(Error::NotFree(format!("contains torsion element {}", self.format(x))));
                        }
                    }
                }
                1
            }
            _ => return Err(Error::NotFree("rank not computable for this family".into())),
        };
        Ok((m, rank))
    }
}

#[derive(Debug, Clone)]
pub enum QuotientKind {
    Table(SubgroupSpec),
    Ends(EndKind),
}

/// A quotient group with its projection.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: Group,
    pub kind: QuotientKind,
    /// Coset representatives and their inverses, for table quotients.
    reps: Vec<(Element, Element)>,
}

impl Quotient {
    /// Representative in `G` of the quotient element `Fin(i)` (table quotients).
    pub fn rep(&self, i: usize) -> Option<&Element> {
        self.reps.get(i).map(|p| &p.0)
    }

    pub fn project(&self, g: &Group, x: &Element) -> Result<Element> {
        match &self.kind {
            QuotientKind::Ends(kind) => {
                let (k, r) = g.family.end_projection(x).ok_or(Error::NotTwoEnded)?;
                Ok(match kind {
                    EndKind::Line => Element::Int(k),
                    EndKind::Dihedral => Element::dih(k, r),
                })
            }
            QuotientKind::Table(n) => {
                let i = g.find_coset(n, &self.reps, x)?.ok_or(Error::InfiniteIndex)?;
                Ok(Element::Fin(i as u32))
            }
        }
    }

    /// Quotient label of each generator of `g`, `None` for those in the kernel.
    pub fn label_images(&self, g: &Group) -> Result<Vec<Option<Label>>> {
        g.gens
            .iter()
            .map(|s| Ok(self.group.gens.label_of(&self.project(g, &s.elem)?)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Amalgam;

    fn z4_z2_z4() -> Group {
        let z4 = CayleyTable::cyclic(4).unwrap();
        let am = Amalgam::new(z4.clone(), z4, vec![(0, 0), (2, 2)]).unwrap();
        Group::new(
            Family::Amalgam(Arc::new(am)),
            vec![
                ("x".into(), Element::Amal { core: 0, reps: vec![(0, 1)] }),
                ("y".into(), Element::Amal { core: 0, reps: vec![(1, 1)] }),
            ],
        )
        .unwrap()
    }

    #[test]
    fn integer_membership_and_transversal() {
        let g = Group::integers(&[1]).unwrap();
        let h = SubgroupSpec::GeneratedBy(vec![Element::Int(3)]);
        assert!(g.member(&h, &Element::Int(9)).unwrap());
        assert!(!g.member(&h, &Element::Int(7)).unwrap());
        let t = g.transversal(&h).unwrap();
        assert_eq!(t.representatives, vec![Element::Int(0), Element::Int(1), Element::Int(-1)]);
    }

    #[test]
    fn dihedral_membership() {
        let g = Group::infinite_dihedral(&[(1, false), (0, true)]).unwrap();
        let h = SubgroupSpec::GeneratedBy(vec![Element::dih(1, false)]);
        assert!(!g.member(&h, &Element::dih(2, true)).unwrap());
        assert_eq!(g.index(&h).unwrap(), 2);
        let refl = SubgroupSpec::GeneratedBy(vec![Element::dih(0, true), Element::dih(4, true)]);
        assert!(g.member(&refl, &Element::dih(8, true)).unwrap());
        assert!(!g.member(&refl, &Element::dih(2, true)).unwrap());
        assert!(g.member(&refl, &Element::dih(-4, false)).unwrap());
    }

    #[test]
    fn hnn_core_membership_and_quotient() {
        let g = Group::hnn(3, 2).unwrap();
        assert!(g.member(&SubgroupSpec::Core, &Element::Hnn { i: 2, m: 0 }).unwrap());
        assert!(g.check_core_normal(4).unwrap());
        let q = g.quotient(&SubgroupSpec::Core).unwrap();
        assert!(matches!(q.group.family, Family::Integers));
        assert_eq!(q.group.gens.len(), 2);
    }

    #[test]
    fn finite_quotient_of_integers() {
        let g = Group::integers(&[1]).unwrap();
        let q = g.quotient(&SubgroupSpec::GeneratedBy(vec![Element::Int(4)])).unwrap();
        assert_eq!(q.group.family.order(), Some(4));
        assert_eq!(q.project(&g, &Element::Int(7)).unwrap(), q.project(&g, &Element::Int(-1)).unwrap());
    }

    #[test]
    fn amalgam_quotient_is_infinite_dihedral() {
        let g = z4_z2_z4();
        assert!(g.check_core_normal(4).unwrap());
        let q = g.quotient(&SubgroupSpec::Core).unwrap();
        assert!(matches!(q.group.family, Family::InfiniteDihedral));
        let h = g.index_two_subgroup().unwrap();
        assert_eq!(g.index(&h).unwrap(), 2);
    }

    #[test]
    fn index_three_amalgam_rejected() {
        let z6 = CayleyTable::cyclic(6).unwrap();
        let am = Amalgam::new(z6.clone(), z6, vec![(0, 0), (3, 3)]).unwrap();
        let g = Group::from_elements(
            Family::Amalgam(Arc::new(am)),
            vec![Element::Amal { core: 0, reps: vec![(0, 1)] }],
        )
        .unwrap();
        assert!(matches!(g.check_core_normal(4), Err(Error::HypothesisViolated(_))));
        assert!(!g.is_two_ended());
    }

    #[test]
    fn product_line_subgroup_membership() {
        let z = Group::integers(&[1]).unwrap();
        let z2 = Group::finite(CayleyTable::cyclic(2).unwrap(), &[1]).unwrap();
        let g = Group::product(&z, &z2).unwrap();
        let h = SubgroupSpec::GeneratedBy(vec![Element::pair(Element::Int(1), Element::Fin(1))]);
        assert!(g.member(&h, &Element::pair(Element::Int(2), Element::Fin(0))).unwrap());
        assert!(!g.member(&h, &Element::pair(Element::Int(2), Element::Fin(1))).unwrap());
        assert_eq!(g.index(&h).unwrap(), 2);
        assert_eq!(g.virtually_free_params(&SubgroupSpec::FirstFactor).unwrap(), (2, 1));
    }

    #[test]
    fn virtually_free_params_dihedral() {
        let g = Group::infinite_dihedral(&[(1, false), (0, true)]).unwrap();
        let f = SubgroupSpec::GeneratedBy(vec![Element::dih(1, false)]);
        assert_eq!(g.virtually_free_params(&f).unwrap(), (2, 1));
        let bad = SubgroupSpec::GeneratedBy(vec![Element::dih(1, false), Element::dih(0, true)]);
        assert!(g.virtually_free_params(&bad).is_err());
    }

    #[test]
    fn finite_transversal_and_normality() {
        let s3 = CayleyTable::symmetric(3).unwrap();
        let g = Group::finite(s3.clone(), &s3.generators.clone()).unwrap();
        let rot = (1..6).find(|&x| s3.element_order(x) == 3).unwrap();
        let h = SubgroupSpec::GeneratedBy(vec![Element::Fin(rot)]);
        assert_eq!(g.transversal(&h).unwrap().representatives.len(), 2);
        assert!(g.is_normal(&h).unwrap());
        let refl = (1..6).find(|&x| s3.element_order(x) == 2).unwrap();
        assert!(!g.is_normal(&SubgroupSpec::GeneratedBy(vec![Element::Fin(refl)])).unwrap());
    }
}
