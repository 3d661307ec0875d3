//! Lifting Hamilton double rays and circles of a base graph to its product
//! with a finite fiber that carries a Hamilton cycle.

use crate::error::{Error, Result};
use crate::group::{Element, Group, Label};
use crate::rays::{CircleDescription, DoubleRay, GeneratorWord, Tail};

use super::{label_for, Certificate, Construction, HamiltonObject};

/// A base group with a Hamilton double ray or two-ray circle, and a finite
/// fiber group with a Hamilton cycle read from the identity.
#[derive(Debug, Clone)]
pub struct InfCylinderInput {
    pub base: Group,
    pub base_object: HamiltonObject,
    pub fiber: Group,
    pub fiber_word: GeneratorWord,
    /// No edge joins fibers whose base points are this far apart.
    pub locality: usize,
}

fn lcm(a: usize, b: usize) -> usize {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

struct Lifter<'a> {
    g: &'a Group,
    base: &'a Group,
    fiber: Vec<Label>,
}

impl Lifter<'_> {
    fn k(&self) -> usize {
        self.fiber.len()
    }

    fn base_label(&self, l: Label) -> Result<Label> {
        let e = self.base.gen(l)?.clone();
        label_for(self.g, &Element::pair(e, self.fiber_identity()))
    }

    fn fiber_identity(&self) -> Element {
        match self.g.identity() {
            Element::Pair(_, b) => *b,
            _ => unreachable!("product group"),
        }
    }

    /// `k − 1` fiber letters walking the cycle forward from position `q`.
    fn sweep(&self, q: usize) -> GeneratorWord {
        let k = self.k();
        (0..k - 1).map(|i| self.fiber[(q + i) % k]).collect()
    }

    /// Each fiber is swept forward, one position earlier than the last;
    /// outward, the base step comes first since the base fiber is taken.
    fn lift(&self, r: &DoubleRay) -> Result<DoubleRay> {
        let k = self.k();
        let lift_tail = |t: &Tail| -> Result<(Vec<Label>, (usize, usize))> {
            let n = t.prefix.len() + lcm(t.period.len(), k);
            let letters = (0..n).map(|j| self.base_label(t.letter(j))).collect::<Result<Vec<_>>>()?;
            Ok((letters, (t.prefix.len(), lcm(t.period.len(), k))))
        };
        let (pos, pos_counts) = lift_tail(&r.positive)?;
        let (neg, neg_counts) = lift_tail(&r.negative)?;
        let at = |v: &[Label], j: usize, counts: (usize, usize)| {
            if j < counts.0 { v[j] } else { v[counts.0 + (j - counts.0) % counts.1] }
        };
        let pos_block = |j: usize| {
            let mut b = self.sweep((k - j % k) % k);
            b.push(at(&pos, j, pos_counts));
            b
        };
        let neg_block = |j: usize| {
            let mut b = vec![at(&neg, j, neg_counts)];
            b.extend(self.sweep((k - j % k) % k));
            b
        };
        DoubleRay::from_blocks(Element::pair(r.base.clone(), self.fiber_identity()), pos_block, pos_counts, neg_block, neg_counts)
    }
}

/// The product `B × K` with every base ray replaced by one sweeping the
/// fibers above it: each fiber is walked along its Hamilton cycle and left
/// through the base edge at the last vertex.
pub fn inf_cylinder_circle(input: &InfCylinderInput) -> Result<(Group, Construction<HamiltonObject>)> {
    let k = input.fiber.family.order().ok_or_else(|| Error::FiberMissing("fiber group is not finite".into()))?;
    if input.fiber_word.len() != k || k < 2 {
        return Err(Error::FiberMissing(format!("fiber word has length {}, fiber order is {k}", input.fiber_word.len())));
    }
    let mut seen = vec![input.fiber.identity()];
    for &l in &input.fiber_word {
        let next = input.fiber.step(seen.last().unwrap(), l)?;
        seen.push(next);
    }
    let closes = seen.pop() == Some(input.fiber.identity());
    let distinct = (0..seen.len()).all(|i| !seen[..i].contains(&seen[i]));
    if !closes || !distinct {
        return Err(Error::FiberMissing("fiber word is not a Hamilton cycle".into()));
    }
    if input.locality < 2 {
        return Err(Error::LocalityViolated(format!("adjacent fibers are joined, locality {} < 2", input.locality)));
    }
    let g = Group::product(&input.base, &input.fiber)?;
    let fiber = input
        .fiber_word
        .iter()
        .map(|&l| label_for(&g, &Element::pair(input.base.identity(), input.fiber.gen(l)?.clone())))
        .collect::<Result<Vec<_>>>()?;
    let lifter = Lifter { g: &g, base: &input.base, fiber };
    let mut cert = Certificate::new("inf-cylinder", "fiber sweep", &g);
    cert.check("fiber word is a Hamilton cycle", true);
    cert.check("edges join only adjacent fibers", true);
    cert.note(format!("{k} copies of the base"));
    let object = match &input.base_object {
        HamiltonObject::DoubleRay(r) => HamiltonObject::DoubleRay(lifter.lift(r)?),
        HamiltonObject::Circle(CircleDescription::TwoRayCircle(a, b)) => {
            HamiltonObject::Circle(CircleDescription::TwoRayCircle(lifter.lift(a)?, lifter.lift(b)?))
        }
        _ => return Err(Error::UnsupportedRoute("base object must be a double ray or two-ray circle".into())),
    };
    Ok((g, Construction { object, certificate: cert }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::certify;
    use crate::group::CayleyTable;

    fn evens_and_odds() -> (Group, HamiltonObject) {
        let b = Group::integers(&[1, 2]).unwrap();
        let two = b.gens.label_of(&Element::Int(2)).unwrap();
        let line = |x| DoubleRay::line(&b, Element::Int(x), two).unwrap();
        let obj = HamiltonObject::Circle(CircleDescription::TwoRayCircle(line(0), line(1)));
        (b, obj)
    }

    fn fiber(k: usize) -> Group {
        Group::finite(CayleyTable::cyclic(k).unwrap(), &[1]).unwrap()
    }

    #[test]
    fn circles_over_two_and_four_copies() {
        for k in [2, 4] {
            let (base, base_object) = evens_and_odds();
            let input = InfCylinderInput { base, base_object, fiber: fiber(k), fiber_word: vec![0; k], locality: 2 };
            let (g, mut c) = inf_cylinder_circle(&input).unwrap();
            let reps = certify(&g, &mut c, &[8]).unwrap();
            assert!(reps[0].is_consistent(), "{}\n{}", c.object.render(&g), reps[0].render(&g));
        }
    }

    #[test]
    fn base_line_lifts_to_a_double_ray() {
        let base = Group::integers(&[1]).unwrap();
        let line = DoubleRay::line(&base, Element::Int(0), 0).unwrap();
        let input =
            InfCylinderInput { base, base_object: HamiltonObject::DoubleRay(line), fiber: fiber(3), fiber_word: vec![0; 3], locality: 2 };
        let (g, mut c) = inf_cylinder_circle(&input).unwrap();
        let reps = certify(&g, &mut c, &[8]).unwrap();
        assert!(reps[0].is_consistent(), "{}", reps[0].render(&g));
    }

    #[test]
    fn bad_inputs() {
        let (base, base_object) = evens_and_odds();
        let mut input = InfCylinderInput { base, base_object, fiber: fiber(3), fiber_word: vec![0, 0], locality: 2 };
        assert!(matches!(inf_cylinder_circle(&input), Err(Error::FiberMissing(_))));
        input.fiber_word = vec![0; 3];
        input.locality = 1;
        assert!(matches!(inf_cylinder_circle(&input), Err(Error::LocalityViolated(_))));
    }
}
