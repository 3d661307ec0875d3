//! Circles after adding the generator of an infinite cyclic normal subgroup
//! of finite index.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, Group, Label, SubgroupSpec};
use crate::oracle::SearchBudget;
use crate::rays::{CircleDescription, DoubleRay, GeneratorWord, Tail};

use super::{certify, finite_hamilton_word, label_for, Certificate, Construction, HamiltonObject};

/// Signs with `a·x_i = x_i·a^{sign}`, one per letter of a transversal word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistVector {
    pub signs: Vec<i8>,
}

impl TwistVector {
    /// Computes and checks each sign by multiplication in `g`.
    pub fn compute(g: &Group, a: &Element, xs: &[Element]) -> Result<TwistVector> {
        let a_inv = g.inv(a)?;
        let mut signs = Vec::with_capacity(xs.len());
        for x in xs {
            let conj = g.mul(&g.mul(&g.inv(x)?, a)?, x)?;
            signs.push(if conj == *a {
                1
            } else if conj == a_inv {
                -1
            } else {
                return Err(Error::NotNormal(format!("{} conjugates a outside {{a, a^-1}}", g.format(x))));
            });
        }
        Ok(TwistVector { signs })
    }

    pub fn product(&self) -> i8 {
        self.signs.iter().product()
    }

    pub fn is_mixed(&self) -> bool {
        self.signs.contains(&1) && self.signs.contains(&-1)
    }
}

/// For `H = ⟨a⟩` normal of finite index and `a` of infinite order, a Hamilton
/// circle of the Cayley graph over `S ∪ {a^±}`: the `a`-line and one double
/// ray sweeping the other cosets back and forth along a quotient Hamilton
/// cycle `[x₁, …, x_n]`. Returns the enlarged group with the circle.
pub fn add_generator_circle(g: &Group, a: &Element) -> Result<(Group, Construction<HamiltonObject>)> {
    if g.has_infinite_order(a) != Some(true) {
        return Err(Error::NotInfiniteOrder);
    }
    let h = SubgroupSpec::GeneratedBy(vec![a.clone()]);
    if !g.is_normal(&h)? {
        return Err(Error::NotNormal(g.format(a)));
    }
    let q = g.quotient(&h)?;
    let n = q.group.family.order().unwrap_or(0);
    if n < 2 {
        return Err(Error::BadParameters("⟨a⟩ must be a proper subgroup".into()));
    }
    let images = q.label_images(g)?;
    let preimage = |ql: Label| images.iter().position(|im| *im == Some(ql)).expect("quotient generator has a preimage");
    let xs: Vec<Label> = if n == 2 {
        vec![preimage(0)]
    } else {
        let w = finite_hamilton_word(&q.group, true, SearchBudget::default())?.ok_or(Error::QuotientNotHamiltonian)?;
        w.into_iter().map(preimage).collect()
    };
    let x_elems: Vec<Element> = xs.iter().map(|&l| g.gen(l).cloned()).collect::<Result<_>>()?;
    let twist = TwistVector::compute(g, a, &x_elems)?;

    let mut elems = g.gens.elements();
    elems.push(a.clone());
    let big = g.with_gens(elems)?;
    let mut cert = Certificate::new("add-gen", if n == 2 { "double ladder" } else { "coset sweep" }, &big);
    cert.check("a has infinite order", true);
    cert.check("<a> is normal", true);
    cert.check("quotient has a Hamilton cycle", true);
    cert.note(format!("quotient order {n}, twist signs {:?}", twist.signs));

    let la = label_for(&big, a)?;
    let la_inv = big.gens.inverse(la);
    let x: Vec<Label> = x_elems.iter().map(|e| label_for(&big, e)).collect::<Result<_>>()?;
    let r1 = DoubleRay::line(&big, big.identity(), la)?;
    let mid: GeneratorWord = if n == 2 { Vec::new() } else { x[1..n - 1].to_vec() };
    let back: GeneratorWord = mid.iter().rev().map(|&l| big.gens.inverse(l)).collect();
    // conjugating a through the middle letters gives a^τ
    let tau: i8 = if n == 2 { 1 } else { twist.signs[1..n - 1].iter().product() };
    let (a_tau, a_tau_inv) = if tau == 1 { (la, la_inv) } else { (la_inv, la) };
    let pos: GeneratorWord = [mid.clone(), vec![a_tau], back.clone(), vec![la]].concat();
    let neg: GeneratorWord = [vec![la_inv], mid, vec![a_tau_inv], back].concat();
    let r2 = DoubleRay::new(x_elems[0].clone(), Tail::periodic(pos)?, Tail::periodic(neg)?);
    let mut out = Construction { object: HamiltonObject::Circle(CircleDescription::TwoRayCircle(r1, r2)), certificate: cert };
    if twist.is_mixed() {
        let reps = certify(&big, &mut out, &[6])?;
        if !reps.iter().all(|r| r.is_consistent()) {
            return Err(Error::UnsupportedTwistPattern);
        }
    }
    Ok((big, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CayleyTable;

    fn check(g: &Group, a: &Element) -> Construction<HamiltonObject> {
        let (big, mut c) = add_generator_circle(g, a).unwrap();
        let reps = certify(&big, &mut c, &[8]).unwrap();
        assert!(reps[0].is_consistent(), "{}\n{}", c.object.render(&big), reps[0].render(&big));
        c
    }

    #[test]
    fn product_with_z3() {
        let z3 = Group::finite(CayleyTable::cyclic(3).unwrap(), &[1]).unwrap();
        let z = Group::integers(&[1]).unwrap();
        let g = Group::product(&z, &z3).unwrap().with_gens(vec![Element::pair(Element::Int(1), Element::Fin(1))]).unwrap();
        let c = check(&g, &Element::pair(Element::Int(1), Element::Fin(0)));
        assert_eq!(c.certificate.route, "coset sweep");
    }

    #[test]
    fn dihedral_reflections() {
        let g = Group::infinite_dihedral(&[(0, true), (1, true)]).unwrap();
        let c = check(&g, &Element::dih(1, false));
        assert_eq!(c.certificate.route, "double ladder");
    }

    #[test]
    fn twists_in_a_bigger_quotient() {
        // D∞ over ⟨a³⟩: quotient of order 6 mixes centralizing and inverting letters
        let g = Group::infinite_dihedral(&[(1, false), (0, true)]).unwrap();
        check(&g, &Element::dih(3, false));
    }

    #[test]
    fn twist_signs() {
        let g = Group::infinite_dihedral(&[(1, false), (0, true)]).unwrap();
        let t = TwistVector::compute(&g, &Element::dih(1, false), &[Element::dih(0, true), Element::dih(2, false)]).unwrap();
        assert_eq!(t.signs, vec![-1, 1]);
    }

    #[test]
    fn finite_order_is_rejected() {
        let g = Group::infinite_dihedral(&[(1, false), (0, true)]).unwrap();
        assert!(matches!(add_generator_circle(&g, &Element::dih(0, true)), Err(Error::NotInfiniteOrder)));
    }
}
