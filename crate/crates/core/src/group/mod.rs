//! Group families with canonical normal forms, and groups as a family plus a
//! symmetric generating set.

pub mod amalgam;
pub mod spec;
pub mod subgroup;
pub mod table;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewrite::{RewriteSystem, Symbol};

pub use amalgam::Amalgam;
pub use spec::{FamilySpec, GroupSpecFile};
pub use subgroup::{CosetTable, Quotient, SubgroupSpec, Transversal};
pub use table::CayleyTable;

/// Index of a generator in a [`GenSet`].
pub type Label = usize;

/// Canonical form of a group element. Equality of canonical forms is equality
/// in the group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Element {
    Int(i64),
    Fin(u32),
    /// `a^k b^r` in the infinite dihedral group.
    Dih { k: i64, r: bool },
    /// Freely reduced word; letter `±(i+1)` is generator `i` or its inverse.
    Free(Vec<i32>),
    Amal { core: u32, reps: Vec<(u8, u32)> },
    /// `k^i t^m` in the HNN extension of ℤ_p.
    Hnn { i: u32, m: i64 },
    /// Shortlex normal form over a completed rewriting system.
    Word(Vec<Symbol>),
    Pair(Box<Element>, Box<Element>),
}

impl Element {
    pub fn pair(a: Element, b: Element) -> Element {
        Element::Pair(Box::new(a), Box::new(b))
    }

    pub fn dih(k: i64, r: bool) -> Element {
        Element::Dih { k, r }
    }
}

/// Image of a two-ended group in its quotient by the finite core.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndKind {
    /// Quotient ℤ.
    Line,
    /// Quotient D∞.
    Dihedral,
}

#[derive(Debug, Clone)]
pub enum Family {
    Integers,
    Finite(Arc<CayleyTable>),
    InfiniteDihedral,
    Free { rank: usize },
    Amalgam(Arc<Amalgam>),
    /// `⟨k, t | k^p, t k t⁻¹ = k^s⟩`.
    Hnn { p: u32, s: u32 },
    Presented(Arc<RewriteSystem>),
    Product(Box<Family>, Box<Family>),
}

fn free_letter_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{}", i + 1)
    }
}

fn mod_pow(base: u64, mut e: u64, p: u64) -> u64 {
    let mut b = base % p;
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    let (mut t, mut nt) = (0i64, 1i64);
    let (mut r, mut nr) = (p as i64, (a % p) as i64);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    (r == 1).then(|| t.rem_euclid(p as i64) as u64)
}

fn free_mul(a: &[i32], b: &[i32]) -> Vec<i32> {
    let mut out = a.to_vec();
    for &x in b {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

impl Family {
    pub fn hnn(p: u32, s: u32) -> Result<Family> {
        if p < 2 {
            return Err(Error::InvalidGroup("HNN base must have order at least 2".into()));
        }
        if mod_inverse(s as u64, p as u64).is_none() {
            return Err(Error::InvalidGroup(format!("gcd({s}, {p}) != 1")));
        }
        Ok(Family::Hnn { p, s: s % p })
    }

    pub fn presented(rs: RewriteSystem) -> Result<Family> {
        if !rs.is_complete() {
            return Err(Error::CompletionFailed("rewriting system is capped".into()));
        }
        let mut rs = rs;
        rs.reindex();
        Ok(Family::Presented(Arc::new(rs)))
    }

    pub fn identity(&self) -> Element {
        match self {
            Family::Integers => Element::Int(0),
            Family::Finite(_) => Element::Fin(0),
            Family::InfiniteDihedral => Element::dih(0, false),
            Family::Free { .. } => Element::Free(vec![]),
            Family::Amalgam(_) => Element::Amal { core: 0, reps: vec![] },
            Family::Hnn { .. } => Element::Hnn { i: 0, m: 0 },
            Family::Presented(_) => Element::Word(vec![]),
            Family::Product(a, b) => Element::pair(a.identity(), b.identity()),
        }
    }

    pub fn contains(&self, e: &Element) -> bool {
        match (self, e) {
            (Family::Integers, Element::Int(_)) => true,
            (Family::Finite(t), Element::Fin(x)) => (*x as usize) < t.order(),
            (Family::InfiniteDihedral, Element::Dih { .. }) => true,
            (Family::Free { rank }, Element::Free(w)) => {
                w.iter().all(|&x| x != 0 && x.unsigned_abs() as usize <= *rank)
                    && w.windows(2).all(|p| p[0] != -p[1])
            }
            (Family::Amalgam(am), Element::Amal { core, reps }) => am.is_valid(&(*core, reps.clone())),
            (Family::Hnn { p, .. }, Element::Hnn { i, .. }) => i < p,
            (Family::Presented(rs), Element::Word(w)) => rs.reduce(w) == *w,
            (Family::Product(a, b), Element::Pair(x, y)) => a.contains(x) && b.contains(y),
            _ => false,
        }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        Ok(match (self, x, y) {
            (Family::Integers, Element::Int(a), Element::Int(b)) => Element::Int(a + b),
            (Family::Finite(t), Element::Fin(a), Element::Fin(b)) => Element::Fin(t.mul(*a, *b)),
            (Family::InfiniteDihedral, Element::Dih { k: k1, r: r1 }, Element::Dih { k: k2, r: r2 }) => {
                Element::dih(k1 + if *r1 { -k2 } else { *k2 }, r1 ^ r2)
            }
            (Family::Free { .. }, Element::Free(a), Element::Free(b)) => Element::Free(free_mul(a, b)),
            (Family::Amalgam(am), Element::Amal { core: c1, reps: r1 }, Element::Amal { core: c2, reps: r2 }) => {
                let (core, reps) = am.mul(&(*c1, r1.clone()), &(*c2, r2.clone()));
                Element::Amal { core, reps }
            }
            (Family::Hnn { p, s }, Element::Hnn { i, m }, Element::Hnn { i: j, m: n }) => {
                let (p64, s64) = (*p as u64, *s as u64);
                let base = if *m >= 0 { s64 } else { mod_inverse(s64, p64).unwrap() };
                let twist = mod_pow(base, m.unsigned_abs(), p64);
                let k = (*i as u64 + *j as u64 * twist) % p64;
                Element::Hnn { i: k as u32, m: m + n }
            }
            (Family::Presented(rs), Element::Word(a), Element::Word(b)) => {
                let mut w = a.clone();
                w.extend_from_slice(b);
                Element::Word(rs.reduce(&w))
            }
            (Family::Product(fa, fb), Element::Pair(a1, b1), Element::Pair(a2, b2)) => {
                Element::pair(fa.mul(a1, a2)?, fb.mul(b1, b2)?)
            }
            _ => return Err(Error::FamilyMismatch),
        })
    }

    pub fn inv(&self, x: &Element) -> Result<Element> {
        Ok(match (self, x) {
            (Family::Integers, Element::Int(a)) => Element::Int(-a),
            (Family::Finite(t), Element::Fin(a)) => Element::Fin(t.inv(*a)),
            (Family::InfiniteDihedral, Element::Dih { k, r }) => {
                if *r {
                    x.clone()
                } else {
                    Element::dih(-k, false)
                }
            }
            (Family::Free { .. }, Element::Free(w)) => Element::Free(w.iter().rev().map(|&l| -l).collect()),
            (Family::Amalgam(am), Element::Amal { core, reps }) => {
                let (core, reps) = am.inv(&(*core, reps.clone()));
                Element::Amal { core, reps }
            }
            (Family::Hnn { p, s }, Element::Hnn { i, m }) => {
                // (k^i t^m)^-1 = t^-m k^-i = k^(-i s^-m) t^-m
                let (p64, s64) = (*p as u64, *s as u64);
                let base = if *m >= 0 { mod_inverse(s64, p64).unwrap() } else { s64 };
                let twist = mod_pow(base, m.unsigned_abs(), p64);
                let k = ((p64 - *i as u64) % p64) * twist % p64;
                Element::Hnn { i: k as u32, m: -m }
            }
            (Family::Presented(rs), Element::Word(w)) => {
                Element::Word(rs.reduce(&crate::rewrite::invert_word(w)))
            }
            (Family::Product(fa, fb), Element::Pair(a, b)) => Element::pair(fa.inv(a)?, fb.inv(b)?),
            _ => return Err(Error::FamilyMismatch),
        })
    }

    pub fn pow(&self, x: &Element, e: i64) -> Result<Element> {
        let base = if e < 0 { self.inv(x)? } else { x.clone() };
        let mut acc = self.identity();
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &b)?;
            }
            b = self.mul(&b, &b)?;
            n >>= 1;
        }
        Ok(acc)
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            Family::Finite(t) => Some(t.order()),
            Family::Product(a, b) => Some(a.order()? * b.order()?),
            _ => None,
        }
    }

    /// Quotient type when the family is two-ended with a finite core.
    pub fn end_kind(&self) -> Option<EndKind> {
        match self {
            Family::Integers | Family::Hnn { .. } => Some(EndKind::Line),
            Family::InfiniteDihedral => Some(EndKind::Dihedral),
            Family::Amalgam(am) if am.is_two_ended() => Some(EndKind::Dihedral),
            Family::Product(a, b) => match (a.order(), b.order()) {
                (None, Some(_)) => a.end_kind(),
                (Some(_), None) => b.end_kind(),
                _ => None,
            },
            _ => None,
        }
    }

    /// Image in ℤ or D∞ (as `a^k b^r`) whose kernel is the finite core.
    pub fn has_infinite_order(&self, x: &Element) -> Option<bool> {
        if self.order().is_some() {
            return Some(false);
        }
        if let Some((k, r)) = self.end_projection(x) {
            return Some(!r && k != 0);
        }
        match (self, x) {
            (Family::Free { .. }, Element::Free(w)) => Some(!w.is_empty()),
            (Family::Product(fa, fb), Element::Pair(a, b)) => match (fa.has_infinite_order(a)?, fb.has_infinite_order(b)?) {
                (false, false) => Some(false),
                _ => Some(true),
            },
            _ => None,
        }
    }

    pub fn end_projection(&self, x: &Element) -> Option<(i64, bool)> {
        match (self, x) {
            (Family::Integers, Element::Int(a)) => Some((*a, false)),
            (Family::InfiniteDihedral, Element::Dih { k, r }) => Some((*k, *r)),
            (Family::Hnn { .. }, Element::Hnn { m, .. }) => Some((*m, false)),
            (Family::Amalgam(am), Element::Amal { reps, .. }) if am.is_two_ended() => {
                // factor-one reps map to b, factor-two reps to ab
                let mut acc = (0i64, false);
                for &(f, _) in reps {
                    let k = f as i64;
                    acc = (acc.0 + if acc.1 { -k } else { k }, !acc.1);
                }
                Some(acc)
            }
            (Family::Product(a, b), Element::Pair(x, y)) => match (a.order(), b.order()) {
                (None, Some(_)) => a.end_projection(x),
                (Some(_), None) => b.end_projection(y),
                _ => None,
            },
            _ => None,
        }
    }

    /// All elements of the finite core (kernel of the end projection).
    pub fn core_elements(&self) -> Option<Vec<Element>> {
        match self {
            Family::Integers => Some(vec![Element::Int(0)]),
            Family::InfiniteDihedral => Some(vec![Element::dih(0, false)]),
            Family::Hnn { p, .. } => Some((0..*p).map(|i| Element::Hnn { i, m: 0 }).collect()),
            Family::Amalgam(am) => {
                Some((0..am.core_order() as u32).map(|c| Element::Amal { core: c, reps: vec![] }).collect())
            }
            Family::Product(a, b) => {
                let (ca, cb) = match (a.order(), b.order()) {
                    (None, Some(_)) => (a.core_elements()?, b.all_elements()?),
                    (Some(_), None) => (a.all_elements()?, b.core_elements()?),
                    _ => return None,
                };
                let mut out = Vec::new();
                for x in &ca {
                    for y in &cb {
                        out.push(Element::pair(x.clone(), y.clone()));
                    }
                }
                Some(out)
            }
            _ => None,
        }
    }

    pub fn all_elements(&self) -> Option<Vec<Element>> {
        match self {
            Family::Finite(t) => Some((0..t.order() as u32).map(Element::Fin).collect()),
            Family::Product(a, b) => {
                let (ea, eb) = (a.all_elements()?, b.all_elements()?);
                let mut out = Vec::new();
                for x in &ea {
                    for y in &eb {
                        out.push(Element::pair(x.clone(), y.clone()));
                    }
                }
                Some(out)
            }
            _ => None,
        }
    }

    pub fn format(&self, x: &Element) -> String {
        match (self, x) {
            (Family::Integers, Element::Int(a)) => a.to_string(),
            (Family::Finite(_), Element::Fin(0)) => "1".into(),
            (Family::Finite(_), Element::Fin(a)) => format!("g{a}"),
            (Family::InfiniteDihedral, Element::Dih { k, r }) => {
                let a = match k {
                    0 => String::new(),
                    1 => "a".into(),
                    _ => format!("a^{k}"),
                };
                match (a.is_empty(), r) {
                    (true, false) => "1".into(),
                    (true, true) => "b".into(),
                    (false, false) => a,
                    (false, true) => format!("{a} b"),
                }
            }
            (Family::Free { .. }, Element::Free(w)) => {
                if w.is_empty() {
                    return "1".into();
                }
                w.iter()
                    .map(|&l| {
                        let n = free_letter_name(l.unsigned_abs() as usize - 1);
                        if l > 0 {
                            n
                        } else {
                            format!("{n}^-1")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            }
            (Family::Amalgam(_), Element::Amal { core, reps }) => {
                let mut parts = Vec::new();
                if *core != 0 || reps.is_empty() {
                    parts.push(if *core == 0 { "1".to_string() } else { format!("c{core}") });
                }
                for &(f, r) in reps {
                    parts.push(format!("{}{r}", if f == 0 { 'x' } else { 'y' }));
                }
                parts.join(" ")
            }
            (Family::Hnn { .. }, Element::Hnn { i, m }) => match (i, m) {
                (0, 0) => "1".into(),
                (0, _) => format!("t^{m}"),
                (_, 0) => format!("k^{i}"),
                _ => format!("k^{i} t^{m}"),
            },
            (Family::Presented(rs), Element::Word(w)) => rs.format_word(w),
            (Family::Product(a, b), Element::Pair(x, y)) => format!("({}, {})", a.format(x), b.format(y)),
            _ => format!("{x:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub elem: Element,
}

/// Symmetric generating set: every generator's inverse is present, and an
/// inverse pair is stored as adjacent labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSet {
    gens: Vec<Generator>,
    inv: Vec<Label>,
    lookup: HashMap<Element, Label>,
}

impl GenSet {
    /// Builds a symmetric set from `(name, element)` pairs, adding missing
    /// inverses as `name^-1`. Duplicates are dropped; the identity is rejected.
    pub fn new(family: &Family, named: Vec<(String, Element)>) -> Result<GenSet> {
        let id = family.identity();
        let mut gens: Vec<Generator> = Vec::new();
        let mut lookup: HashMap<Element, Label> = HashMap::new();
        for (name, e) in named {
            if !family.contains(&e) {
                return Err(Error::FamilyMismatch);
            }
            if e == id {
                return Err(Error::InvalidGroup(format!("generator {name} is the identity")));
            }
            if lookup.contains_key(&e) {
                continue;
            }
            let ei = family.inv(&e)?;
            lookup.insert(e.clone(), gens.len());
            gens.push(Generator { name: name.clone(), elem: e });
            if !lookup.contains_key(&ei) {
                lookup.insert(ei.clone(), gens.len());
                gens.push(Generator { name: format!("{name}^-1"), elem: ei });
            }
        }
        if gens.is_empty() {
            return Err(Error::InvalidGroup("empty generating set".into()));
        }
        let mut inv = Vec::with_capacity(gens.len());
        for g in &gens {
            inv.push(lookup[&family.inv(&g.elem)?]);
        }
        Ok(GenSet { gens, inv, lookup })
    }

    /// Like [`GenSet::new`] with names taken from the family's formatter.
    pub fn from_elements(family: &Family, elems: Vec<Element>) -> Result<GenSet> {
        let named = elems.into_iter().map(|e| (family.format(&e), e)).collect();
        let mut gs = Self::new(family, named)?;
        for g in &mut gs.gens {
            g.name = family.format(&g.elem);
        }
        Ok(gs)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, l: Label) -> Option<&Generator> {
        self.gens.get(l)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }

    pub fn inverse(&self, l: Label) -> Label {
        self.inv[l]
    }

    pub fn label_of(&self, e: &Element) -> Option<Label> {
        self.lookup.get(e).copied()
    }

    /// Label whose name is `name`, ignoring spaces inside names (`ab` finds `a b`).
    pub fn label_by_name(&self, name: &str) -> Option<Label> {
        let squeeze = |s: &str| s.split_whitespace().collect::<String>();
        self.gens.iter().position(|g| g.name == name).or_else(|| self.gens.iter().position(|g| squeeze(&g.name) == name))
    }

    pub fn is_involution(&self, l: Label) -> bool {
        self.inv[l] == l
    }

    /// Number of symbols, counting an involution once and a non-involution twice.
    pub fn symbol_count(&self) -> usize {
        self.gens.len()
    }

    /// Number of classes `{s, s⁻¹}`.
    pub fn pair_count(&self) -> usize {
        (0..self.gens.len()).filter(|&l| self.inv[l] >= l).count()
    }

    /// One label per inverse class, the first in label order.
    pub fn class_reps(&self) -> Vec<Label> {
        (0..self.gens.len()).filter(|&l| self.inv[l] >= l).collect()
    }

    pub fn elements(&self) -> Vec<Element> {
        self.gens.iter().map(|g| g.elem.clone()).collect()
    }
}

/// A group: a family with a symmetric generating set.
#[derive(Debug, Clone)]
pub struct Group {
    pub family: Family,
    pub gens: GenSet,
}

impl Group {
    pub fn new(family: Family, named: Vec<(String, Element)>) -> Result<Group> {
        let gens = GenSet::new(&family, named)?;
        Ok(Group { family, gens })
    }

    pub fn from_elements(family: Family, elems: Vec<Element>) -> Result<Group> {
        let gens = GenSet::from_elements(&family, elems)?;
        Ok(Group { family, gens })
    }

    pub fn with_gens(&self, elems: Vec<Element>) -> Result<Group> {
        Group::from_elements(self.family.clone(), elems)
    }

    /// ℤ with generators `±d` for each `d` in `steps`.
    pub fn integers(steps: &[i64]) -> Result<Group> {
        Self::from_elements(Family::Integers, steps.iter().map(|&d| Element::Int(d)).collect())
    }

    /// D∞ with generators `a^k b^r` for each `(k, r)`.
    pub fn infinite_dihedral(gens: &[(i64, bool)]) -> Result<Group> {
        Self::from_elements(Family::InfiniteDihedral, gens.iter().map(|&(k, r)| Element::dih(k, r)).collect())
    }

    pub fn free(rank: usize) -> Result<Group> {
        if rank == 0 {
            return Err(Error::BadRank);
        }
        let named = (0..rank)
            .map(|i| (free_letter_name(i), Element::Free(vec![i as i32 + 1])))
            .collect();
        Self::new(Family::Free { rank }, named)
    }

    /// Amalgam generated by the factor elements `(factor, element)`.
    pub fn amalgam(am: Amalgam, gens: &[(usize, u32)]) -> Result<Group> {
        let elems = gens
            .iter()
            .map(|&(f, x)| {
                let (core, reps) = am.embed(f, x);
                Element::Amal { core, reps }
            })
            .collect();
        Self::from_elements(Family::Amalgam(Arc::new(am)), elems)
    }

    /// `ℤ_{2m} ∗_{ℤ_m} ℤ_{2m}` generated by a generator of each factor, plus
    /// a generator of the core when `with_core`.
    pub fn cyclic_amalgam(m: usize, with_core: bool) -> Result<Group> {
        let z = CayleyTable::cyclic(2 * m)?;
        let core = (0..m as u32).map(|i| (2 * i, 2 * i)).collect();
        let am = Amalgam::new(z.clone(), z, core)?;
        let mut gens = vec![(0, 1), (1, 1)];
        if with_core && m > 1 {
            gens.push((0, 2));
        }
        Self::amalgam(am, &gens)
    }

    pub fn finite(table: CayleyTable, gens: &[u32]) -> Result<Group> {
        Self::from_elements(Family::Finite(Arc::new(table)), gens.iter().map(|&g| Element::Fin(g)).collect())
    }

    /// HNN extension of ℤ_p with generators `k` and `t`.
    pub fn hnn(p: u32, s: u32) -> Result<Group> {
        let fam = Family::hnn(p, s)?;
        Self::new(
            fam,
            vec![("k".into(), Element::Hnn { i: 1, m: 0 }), ("t".into(), Element::Hnn { i: 0, m: 1 })],
        )
    }

    /// Group presented by a completed rewriting system, generated by the
    /// presentation's generators.
    pub fn presented(rs: RewriteSystem) -> Result<Group> {
        let fam = Family::presented(rs)?;
        let Family::Presented(rs) = &fam else { unreachable!() };
        let mut named = Vec::new();
        for (i, g) in rs.presentation.generators.iter().enumerate() {
            named.push((g.clone(), Element::Word(rs.reduce(&[2 * i as Symbol]))));
        }
        Self::new(fam, named)
    }

    pub fn product(a: &Group, b: &Group) -> Result<Group> {
        let fam = Family::Product(Box::new(a.family.clone()), Box::new(b.family.clone()));
        let mut named = Vec::new();
        for g in a.gens.iter() {
            named.push((g.name.clone(), Element::pair(g.elem.clone(), b.family.identity())));
        }
        for g in b.gens.iter() {
            named.push((g.name.clone(), Element::pair(a.family.identity(), g.elem.clone())));
        }
        Self::new(fam, named)
    }

    pub fn identity(&self) -> Element {
        self.family.identity()
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        self.family.mul(a, b)
    }

    pub fn inv(&self, a: &Element) -> Result<Element> {
        self.family.inv(a)
    }

    pub fn pow(&self, a: &Element, e: i64) -> Result<Element> {
        self.family.pow(a, e)
    }

    pub fn gen(&self, l: Label) -> Result<&Element> {
        self.gens.get(l).map(|g| &g.elem).ok_or_else(|| Error::UnknownGenerator(l.to_string()))
    }

    /// Right multiplication by generator `l`.
    pub fn step(&self, a: &Element, l: Label) -> Result<Element> {
        self.mul(a, self.gen(l)?)
    }

    /// Product of the word's letters, left to right.
    pub fn evaluate(&self, w: &[Label]) -> Result<Element> {
        let mut acc = self.identity();
        for &l in w {
            acc = self.step(&acc, l)?;
        }
        Ok(acc)
    }

    pub fn evaluate_from(&self, base: &Element, w: &[Label]) -> Result<Element> {
        let mut acc = base.clone();
        for &l in w {
            acc = self.step(&acc, l)?;
        }
        Ok(acc)
    }

    /// Label `s` with `a·s = b`, if `a` and `b` are adjacent.
    pub fn edge_label(&self, a: &Element, b: &Element) -> Result<Option<Label>> {
        let d = self.mul(&self.inv(a)?, b)?;
        Ok(self.gens.label_of(&d))
    }

    pub fn format(&self, e: &Element) -> String {
        self.family.format(e)
    }

    pub fn format_word(&self, w: &[Label]) -> String {
        w.iter()
            .map(|&l| self.gens.get(l).map_or("?".to_string(), |g| g.name.clone()))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Parses whitespace-separated generator names.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Label>> {
        text.split_whitespace()
            .map(|t| self.gens.label_by_name(t).ok_or_else(|| Error::UnknownGenerator(t.to_string())))
            .collect()
    }

    /// Ball of radius `r` around the identity in BFS order, with distances.
    pub fn ball(&self, r: usize) -> Result<Vec<(Element, usize)>> {
        let mut out = vec![(self.identity(), 0)];
        let mut seen: HashMap<Element, usize> = HashMap::from([(self.identity(), 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let (x, d) = out[i].clone();
            if d == r {
                continue;
            }
            for l in 0..self.gens.len() {
                let y = self.step(&x, l)?;
                if !seen.contains_key(&y) {
                    seen.insert(y.clone(), out.len());
                    queue.push_back(out.len());
                    out.push((y, d + 1));
                }
            }
        }
        Ok(out)
    }

    pub fn end_kind(&self) -> Option<EndKind> {
        self.family.end_kind()
    }

    pub fn is_two_ended(&self) -> bool {
        self.end_kind().is_some()
    }

    /// Whether `x` has infinite order, when decidable from the family.
    pub fn has_infinite_order(&self, x: &Element) -> Option<bool> {
        self.family.has_infinite_order(x)
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.family {
            Family::Integers => "Z".to_string(),
            Family::Finite(t) => t.name.clone(),
            Family::InfiniteDihedral => "Dinf".into(),
            Family::Free { rank } => format!("F{rank}"),
            Family::Amalgam(am) => format!(
                "{} *_{} {}",
                am.factors[0].name,
                am.core_order(),
                am.factors[1].name
            ),
            Family::Hnn { p, s } => format!("HNN(Z{p}, k -> k^{s})"),
            Family::Presented(rs) => rs.presentation.to_string(),
            Family::Product(..) => "product".into(),
        };
        let names: Vec<&str> = self.gens.iter().map(|g| g.name.as_str()).collect();
        write!(f, "{kind} with S = {{{}}}", names.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_arithmetic() {
        let g = Group::infinite_dihedral(&[(1, false), (0, true)]).unwrap();
        let x = Element::dih(2, true);
        let y = Element::dih(3, true);
        assert_eq!(g.mul(&x, &y).unwrap(), Element::dih(-1, false));
        assert_eq!(g.inv(&Element::dih(3, true)).unwrap(), Element::dih(3, true));
        let b = g.gens.label_by_name("b").unwrap();
        let a = g.gens.label_by_name("a").unwrap();
        assert_eq!(g.evaluate(&[b, a, b]).unwrap(), Element::dih(-1, false));
        assert_eq!(g.gens.len(), 3);
        assert!(g.gens.is_involution(b));
    }

    #[test]
    fn hnn_twisted_product() {
        let g = Group::hnn(5, 2).unwrap();
        let x = Element::Hnn { i: 1, m: 1 };
        let y = Element::Hnn { i: 1, m: 0 };
        assert_eq!(g.mul(&x, &y).unwrap(), Element::Hnn { i: 3, m: 1 });
        for e in [x, y, Element::Hnn { i: 4, m: -3 }] {
            assert_eq!(g.mul(&e, &g.inv(&e).unwrap()).unwrap(), g.identity());
        }
    }

    #[test]
    fn integer_words_and_inverses() {
        let g = Group::integers(&[2, 3]).unwrap();
        assert_eq!(g.gens.len(), 4);
        let w = g.parse_word("2 3 -2").unwrap();
        assert_eq!(g.evaluate(&w).unwrap(), Element::Int(3));
        assert_eq!(g.inv(&Element::Int(5)).unwrap(), Element::Int(-5));
        assert!(matches!(g.evaluate(&[9]), Err(Error::UnknownGenerator(_))));
    }

    #[test]
    fn free_group_inverse_reverses() {
        let g = Group::free(2).unwrap();
        let w = Element::Free(vec![1, -2]);
        assert_eq!(g.inv(&w).unwrap(), Element::Free(vec![2, -1]));
        assert_eq!(g.format(&w), "a b^-1");
        assert_eq!(g.ball(2).unwrap().len(), 17);
    }

    #[test]
    fn identity_generator_rejected() {
        assert!(Group::integers(&[0]).is_err());
        assert!(Group::from_elements(Family::Integers, vec![Element::dih(1, false)]).is_err());
    }

    #[test]
    fn family_mismatch() {
        let g = Group::integers(&[1]).unwrap();
        assert_eq!(g.mul(&Element::Int(1), &Element::Fin(0)), Err(Error::FamilyMismatch));
    }

    #[test]
    fn amalgam_end_projection_is_a_homomorphism() {
        let z4 = CayleyTable::cyclic(4).unwrap();
        let am = Amalgam::new(z4.clone(), z4, vec![(0, 0), (2, 2)]).unwrap();
        let fam = Family::Amalgam(Arc::new(am));
        let x = Element::Amal { core: 0, reps: vec![(0, 1)] };
        let y = Element::Amal { core: 0, reps: vec![(1, 1)] };
        let g = Group::from_elements(fam, vec![x, y]).unwrap();
        let ball = g.ball(3).unwrap();
        for (u, _) in ball.iter().take(20) {
            for (v, _) in ball.iter().take(20) {
                let pu = g.family.end_projection(u).unwrap();
                let pv = g.family.end_projection(v).unwrap();
                let d = Family::InfiniteDihedral;
                let expect = d.mul(&Element::dih(pu.0, pu.1), &Element::dih(pv.0, pv.1)).unwrap();
                let got = g.family.end_projection(&g.mul(u, v).unwrap()).unwrap();
                assert_eq!(Element::dih(got.0, got.1), expect);
            }
        }
    }

    mod laws {
        use super::*;
        use proptest::prelude::*;
        use std::sync::OnceLock;

        fn groups() -> &'static [Group] {
            static G: OnceLock<Vec<Group>> = OnceLock::new();
            G.get_or_init(|| {
                let s3 = CayleyTable::symmetric(3).unwrap().generators.clone();
                let s3 = Group::finite(CayleyTable::symmetric(3).unwrap(), &s3).unwrap();
                let pres = crate::rewrite::complete_default(
                    &crate::rewrite::Presentation::parse("gen: a b ; rel: b^2, (b a)^2").unwrap(),
                )
                .unwrap();
                vec![
                    Group::integers(&[2, 3]).unwrap(),
                    Group::infinite_dihedral(&[(1, false), (0, true)]).unwrap(),
                    Group::free(2).unwrap(),
                    Group::cyclic_amalgam(3, false).unwrap(),
                    Group::hnn(3, 2).unwrap(),
                    s3.clone(),
                    Group::presented(pres).unwrap(),
                    Group::product(&Group::infinite_dihedral(&[(1, false), (0, true)]).unwrap(), &s3).unwrap(),
                ]
            })
        }

        fn element(g: &Group, raw: &[usize]) -> Element {
            let w: Vec<Label> = raw.iter().map(|&x| x % g.gens.len()).collect();
            g.evaluate(&w).unwrap()
        }

        proptest! {
            #[test]
            fn group_axioms(
                which in 0usize..8,
                x in proptest::collection::vec(0usize..32, 0..7),
                y in proptest::collection::vec(0usize..32, 0..7),
                z in proptest::collection::vec(0usize..32, 0..7),
            ) {
                let g = &groups()[which];
                let (x, y, z) = (element(g, &x), element(g, &y), element(g, &z));
                let e = g.identity();
                prop_assert_eq!(g.mul(&g.mul(&x, &y).unwrap(), &z).unwrap(), g.mul(&x, &g.mul(&y, &z).unwrap()).unwrap());
                prop_assert_eq!(&g.mul(&e, &x).unwrap(), &x);
                prop_assert_eq!(&g.mul(&x, &e).unwrap(), &x);
                prop_assert_eq!(g.mul(&x, &g.inv(&x).unwrap()).unwrap(), e.clone());
                prop_assert_eq!(g.inv(&g.mul(&x, &y).unwrap()).unwrap(), g.mul(&g.inv(&y).unwrap(), &g.inv(&x).unwrap()).unwrap());
            }
        }
    }
}
