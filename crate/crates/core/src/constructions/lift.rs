//! Lifting double rays and circles from an index-two subgroup.

use crate::error::{Error, Result};
use crate::group::{Element, Family, Group, Label, SubgroupSpec};
use crate::rays::{CircleDescription, DoubleRay};

use super::integers::directed_int_ray;
use super::{label_for, Certificate, Construction, HamiltonObject};

/// An object in the Cayley graph of the index-two subgroup `H` with respect
/// to `g·S`, where `g` is the interleaving generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftInner {
    DoubleRay(DoubleRay),
    /// Two double rays forming a circle of the subgroup's two-ended graph.
    Circle(DoubleRay, DoubleRay),
}

/// The subgroup group `(H, g·S)` in the family of `g`, with `g = gen(interleave)`.
/// The identity (from `g·g⁻¹`) is dropped.
pub fn index2_inner_group(g: &Group, interleave: Label) -> Result<Group> {
    let gl = g.gen(interleave)?.clone();
    let id = g.identity();
    let mut elems = Vec::new();
    for s in g.gens.iter() {
        let y = g.mul(&gl, &s.elem)?;
        if y != id && !elems.contains(&y) {
            elems.push(y);
        }
    }
    if elems.is_empty() {
        return Err(Error::InnerInvalid("g·S has no nonidentity element".into()));
    }
    g.with_gens(elems)
}

/// Expands every inner letter `y` into `[g, g⁻¹y]` (outward letters into
/// `[s⁻¹, g⁻¹]`), turning a Hamilton double ray or circle of `(H, gS)` into
/// one of `(G, S)`. Inner forward letters must lie in `gS`.
pub fn lift_index2(
    g: &Group,
    h: &SubgroupSpec,
    interleave: Label,
    inner_group: &Group,
    inner: &LiftInner,
) -> Result<Construction<HamiltonObject>> {
    let mut cert = Certificate::new("lift-index2", "interleave", g);
    for s in g.gens.iter() {
        if g.member(h, &s.elem)? {
            return Err(Error::HypothesisViolated(format!("generator {} lies in H", s.name)));
        }
    }
    cert.check("S meets H trivially", true);
    let index = g.index(h)?;
    if index != 2 {
        return Err(Error::HypothesisViolated(format!("H has index {index}, not 2")));
    }
    cert.check("H has index 2", true);
    for s in inner_group.gens.iter() {
        if !g.member(h, &s.elem)? {
            return Err(Error::InnerInvalid(format!("inner generator {} is not in H", s.name)));
        }
    }
    let lift = |r: &DoubleRay| -> Result<DoubleRay> {
        if !g.member(h, &r.base)? {
            return Err(Error::InnerInvalid("inner base is not in H".into()));
        }
        r.concatenate_lift(inner_group, g, interleave)
    };
    let object = match inner {
        LiftInner::DoubleRay(r) => HamiltonObject::DoubleRay(lift(r)?),
        LiftInner::Circle(a, b) => HamiltonObject::Circle(CircleDescription::TwoRayCircle(lift(a)?, lift(b)?)),
    };
    cert.note(format!("interleaving generator {}", g.gens.get(interleave).unwrap().name));
    Ok(Construction { object, certificate: cert })
}

/// A Hamilton double ray of `(ℤ, S)` with every step odd, lifted from the
/// even integers stepping by `s₀ + S`.
pub fn lift_index2_integers(g: &Group) -> Result<Construction<HamiltonObject>> {
    if !matches!(g.family, Family::Integers) {
        return Err(Error::FamilyMismatch);
    }
    let interleave = 0;
    let steps: Vec<i64> = g.gens.elements().iter().map(|e| if let Element::Int(n) = e { *n } else { unreachable!("integer family") }).collect();
    if steps.iter().any(|n| n % 2 == 0) {
        return Err(Error::HypothesisViolated("a step is even".into()));
    }
    // forward steps of the even integers: s₀ + S
    let halves: Vec<i64> = steps.iter().map(|n| (steps[interleave] + n) / 2).filter(|&n| n != 0).collect();
    let inner = index2_inner_group(g, interleave)?;
    let ray = directed_int_ray(&halves)?
        .ok_or_else(|| Error::UnsupportedRoute("halved steps give no directed Hamilton double ray".into()))?;
    let scaled = ray.to_double_ray(Element::Int(0), |n| label_for(&inner, &Element::Int(2 * n)))?;
    let h = SubgroupSpec::GeneratedBy(vec![Element::Int(2)]);
    lift_index2(g, &h, interleave, &inner, &LiftInner::DoubleRay(scaled))
}
