//! Hamilton double rays and circles in Cayley graphs of D∞.

use crate::error::{Error, Result};
use crate::group::{Element, Family, Group, Label, SubgroupSpec};
use crate::oracle::SearchBudget;
use crate::rays::{CircleDescription, DoubleRay, GeneratorWord};

use super::integers::{directed_int_ray, gcd, int_ray, step_sizes, IntRay};
use super::lift::{index2_inner_group, lift_index2, LiftInner};
use super::{finite_hamilton_word, label_for, Certificate, Construction, HamiltonObject};

fn lcm2(q: usize) -> usize {
    if q.is_multiple_of(2) {
        q
    } else {
        2 * q
    }
}

/// Rotation amounts and reflection offsets of the generators.
fn split_gens(g: &Group) -> Result<(Vec<i64>, Vec<i64>)> {
    if !matches!(g.family, Family::InfiniteDihedral) {
        return Err(Error::FamilyMismatch);
    }
    let (mut rot, mut refl) = (Vec::new(), Vec::new());
    for e in g.gens.elements() {
        match e {
            Element::Dih { k, r: false } => rot.push(k),
            Element::Dih { k, r: true } => refl.push(k),
            _ => unreachable!("dihedral family"),
        }
    }
    let diffs = refl.iter().map(|m| m - refl.first().copied().unwrap_or(0));
    let rot_gcd = rot.iter().copied().chain(diffs).fold(0, gcd);
    if refl.is_empty() || rot_gcd != 1 {
        return Err(Error::NotGenerating("generators do not generate D∞".into()));
    }
    Ok((rot, refl))
}

/// Pieces of the quotient snake: the reflection word `X` tracing a Hamilton
/// path of `D∞/⟨a^i⟩`, and the `⟨a^i⟩`-ray in rotation steps.
struct Snake {
    x: GeneratorWord,
    ray: IntRay,
    i: i64,
}

fn snake(g: &Group, rot: &[i64]) -> Result<Snake> {
    let i = rot.iter().copied().fold(0, gcd);
    let sizes: Vec<i64> = step_sizes(rot).iter().map(|s| s / i).collect();
    let ray = int_ray(&sizes)?;
    let q = g.quotient(&SubgroupSpec::GeneratedBy(vec![Element::dih(i, false)]))?;
    let word = finite_hamilton_word(&q.group, false, SearchBudget::default())?
        .ok_or(Error::SearchExhausted)?;
    let images = q.label_images(g)?;
    let x = word
        .iter()
        .map(|ql| images.iter().position(|im| *im == Some(*ql)).expect("quotient label has a preimage"))
        .collect::<Vec<Label>>();
    debug_assert_eq!(x.len() as i64, 2 * i - 1);
    Ok(Snake { x, ray, i })
}

impl Snake {
    fn rot_label(&self, g: &Group, n: i64) -> Label {
        label_for(g, &Element::dih(n * self.i, false)).expect("rotation step is a generator")
    }

    /// Blocks `X s⁻¹ X̄ s X s⁻¹ …` along the `⟨a^i⟩`-ray, where `X̄` is the
    /// reversal of `x`. With `twisted` the crossing step is inverted after an
    /// odd number of reflections.
    fn double_ray(&self, g: &Group, x: &[Label], twisted: bool) -> Result<DoubleRay> {
        let rev: GeneratorWord = x.iter().rev().copied().collect();
        let (pos, neg) = (&self.ray.pos, &self.ray.neg);
        let step = |n: i64, flip: bool| self.rot_label(g, if flip && twisted { -n } else { n });
        let pos_block = |j: usize| {
            let mut b = if j.is_multiple_of(2) { x.to_vec() } else { rev.clone() };
            b.push(step(pos.letter(j), j.is_multiple_of(2)));
            b
        };
        let neg_block = |j: usize| {
            let mut b = vec![step(neg.letter(j), j % 2 == 1)];
            b.extend(if j.is_multiple_of(2) { x.to_vec() } else { rev.clone() });
            b
        };
        DoubleRay::from_blocks(
            g.identity(),
            pos_block,
            (pos.prefix.len(), lcm2(pos.period.len())),
            neg_block,
            (neg.prefix.len(), lcm2(neg.period.len())),
        )
    }

    fn h_ray(&self, g: &Group, base: Element) -> Result<DoubleRay> {
        self.ray.to_double_ray(base, |n| Ok(self.rot_label(g, n)))
    }
}

/// Forward steps `d` of the rotation subgroup `⟨a⟩` reachable as `g·s` for
/// the reflection `g = a^m₀ b`.
fn lift_steps(refl: &[i64], m0: i64) -> Vec<i64> {
    refl.iter().map(|m| m0 - m).filter(|&d| d != 0).collect()
}

fn rotations() -> SubgroupSpec {
    SubgroupSpec::GeneratedBy(vec![Element::dih(1, false)])
}

/// A directed Hamilton double ray of `(⟨a⟩, gS)` for some reflection `g`.
fn reflection_lift_ray(g: &Group, refl: &[i64]) -> Result<Construction<HamiltonObject>> {
    for &m0 in refl {
        let Some(ray) = directed_int_ray(&lift_steps(refl, m0))? else { continue };
        let gl = label_for(g, &Element::dih(m0, true))?;
        let inner = index2_inner_group(g, gl)?;
        let r = ray.to_double_ray(inner.identity(), |n| label_for(&inner, &Element::dih(n, false)))?;
        let mut c = lift_index2(g, &rotations(), gl, &inner, &LiftInner::DoubleRay(r))?;
        c.certificate.construction = "double-ray-dinf".into();
        c.certificate.route = "index-two lift".into();
        return Ok(c);
    }
    Err(Error::UnsupportedRoute("no reflection gives a directed Hamilton double ray of the rotations".into()))
}

/// A Hamilton double ray of a Cayley graph of D∞, based at the identity.
pub fn double_ray_dinf(g: &Group) -> Result<Construction<HamiltonObject>> {
    let (rot, refl) = split_gens(g)?;
    if rot.is_empty() {
        return reflection_lift_ray(g, &refl);
    }
    let sn = snake(g, &rot)?;
    let mut cert = Certificate::new("double-ray-dinf", "quotient snake", g);
    cert.check("S generates D∞", true);
    cert.note(format!("H = <a^{}>, quotient path {}", sn.i, g.format_word(&sn.x)));
    let object = HamiltonObject::DoubleRay(sn.double_ray(g, &sn.x, true)?);
    Ok(Construction { object, certificate: cert })
}

/// A Hamilton circle of a Cayley graph of D∞ with at least three symbols.
pub fn circle_dinf(g: &Group) -> Result<Construction<HamiltonObject>> {
    let (rot, refl) = split_gens(g)?;
    if g.gens.symbol_count() < 3 {
        return Err(Error::TooFewGenerators(format!("{} symbols", g.gens.symbol_count())));
    }
    if rot.is_empty() {
        return reflection_lift_circle(g, &refl);
    }
    let sn = snake(g, &rot)?;
    let mut cert = Certificate::new("dinf-circle", "quotient snake", g);
    cert.check("at least three symbols", true);
    let short = &sn.x[..sn.x.len() - 1];
    let r1 = sn.double_ray(g, short, false)?;
    let corner = g.evaluate(&sn.x)?;
    let r2 = sn.h_ray(g, corner)?;
    Ok(Construction { object: HamiltonObject::Circle(CircleDescription::TwoRayCircle(r1, r2)), certificate: cert })
}

/// Lifts the circle of even and odd rotations, stepping by `±2`.
fn reflection_lift_circle(g: &Group, refl: &[i64]) -> Result<Construction<HamiltonObject>> {
    for &m0 in refl {
        let Some(&d) = lift_steps(refl, m0).iter().find(|x| x.abs() == 2) else { continue };
        let gl = label_for(g, &Element::dih(m0, true))?;
        let inner = index2_inner_group(g, gl)?;
        let fwd = label_for(&inner, &Element::dih(d, false))?;
        let ray = |base| DoubleRay::line(&inner, base, fwd);
        let circle = LiftInner::Circle(ray(Element::dih(0, false))?, ray(Element::dih(1, false))?);
        let mut c = lift_index2(g, &rotations(), gl, &inner, &circle)?;
        c.certificate.construction = "dinf-circle".into();
        c.certificate.route = "index-two lift".into();
        c.certificate.route_differs = true;
        return Ok(c);
    }
    Err(Error::UnsupportedRoute("no reflection pair differs by a rotation of length 2".into()))
}
