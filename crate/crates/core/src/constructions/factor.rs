//! Lifting a Hamilton cycle of a Schreier coset graph to the Cayley graph.

use crate::error::{Error, Result};
use crate::group::{Element, Group, Label, SubgroupSpec};
use crate::rays::{CircleDescription, DoubleRay, GeneratorWord, HamiltonCover, Tail};

use super::{Certificate, Construction, HamiltonObject};

/// Checks that `cycle` walks the right cosets of `h` from `H` once each and
/// returns to `H`; returns the index.
fn check_schreier_cycle(g: &Group, h: &SubgroupSpec, cycle: &[Label]) -> Result<usize> {
    let ct = g.coset_table(h)?;
    let n = ct.reps.len();
    if n < 2 {
        return Err(Error::HypothesisViolated("H must be a proper subgroup".into()));
    }
    if cycle.len() != n {
        return Err(Error::NotHamiltonInSchreier(format!("cycle has length {}, index is {n}", cycle.len())));
    }
    let mut seen = vec![false; n];
    let mut c = 0;
    for &l in cycle {
        if seen[c] {
            return Err(Error::NotHamiltonInSchreier(format!("coset {c} is visited twice")));
        }
        seen[c] = true;
        c = *ct.action[c].get(l).ok_or_else(|| Error::UnknownGenerator(format!("label {l}")))?;
    }
    if c != 0 {
        return Err(Error::NotHamiltonInSchreier("cycle does not return to H".into()));
    }
    Ok(n)
}

fn power(g: &Group, a: &Element, k: i64) -> Result<Element> {
    let base = if k < 0 { g.inv(a)? } else { a.clone() };
    let mut x = g.identity();
    for _ in 0..k.unsigned_abs() {
        x = g.mul(&x, &base)?;
    }
    Ok(x)
}

fn infinite_ray(g: &Group, cycle: &[Label]) -> Result<DoubleRay> {
    let back: GeneratorWord = cycle.iter().rev().map(|&l| g.gens.inverse(l)).collect();
    Ok(DoubleRay::new(g.identity(), Tail::periodic(cycle.to_vec())?, Tail::periodic(back)?))
}

/// Repeats a Hamilton cycle `[x₁, …, x_n]` of the Schreier graph of `H`
/// whose product `a` generates `H`: `ord(a)` times around for finite `G`
/// (a Hamilton cycle), forever in both directions otherwise (a Hamilton
/// double ray).
pub fn factor_group_lift(g: &Group, h: &SubgroupSpec, cycle: &[Label]) -> Result<Construction<HamiltonObject>> {
    let n = check_schreier_cycle(g, h, cycle)?;
    let a = g.evaluate(cycle)?;
    let mut cert = Certificate::new("factor-lift", "", g);
    cert.check("cycle is Hamilton in the Schreier graph", true);
    let generates = g.member(h, &a)? && g.index(&SubgroupSpec::GeneratedBy(vec![a.clone()]))? == n;
    if !generates {
        return Err(Error::ProductDoesNotGenerate);
    }
    cert.check("the cycle product generates H", true);
    cert.note(format!("product {}, index {n}", g.format(&a)));
    let object = match g.family.order() {
        Some(order) => {
            let ell = order / n;
            cert.route = "finite repetition".into();
            cert.note(format!("{ell} turns"));
            HamiltonObject::Circle(CircleDescription::FiniteCycle { base: g.identity(), word: cycle.repeat(ell) })
        }
        None => {
            if g.has_infinite_order(&a) != Some(true) {
                return Err(Error::NotInfiniteOrder);
            }
            cert.route = "infinite repetition".into();
            HamiltonObject::DoubleRay(infinite_ray(g, cycle)?)
        }
    };
    Ok(Construction { object, certificate: cert })
}

/// For `H = ⟨a⟩` normal with `a` of infinite order and a Schreier Hamilton
/// cycle with product `a^k`: the `a^j`-translates (`0 ≤ j < k`) of the
/// repeated cycle partition the Cayley graph. One ray for `k = 1`, a circle
/// for `k = 2`, a cover of order `k` beyond.
pub fn hamilton_cover_from_factor(g: &Group, a: &Element, cycle: &[Label]) -> Result<Construction<HamiltonObject>> {
    if g.has_infinite_order(a) != Some(true) {
        return Err(Error::NotInfiniteOrder);
    }
    let h = SubgroupSpec::GeneratedBy(vec![a.clone()]);
    if !g.is_normal(&h)? {
        return Err(Error::NotNormal(g.format(a)));
    }
    let n = check_schreier_cycle(g, &h, cycle)?;
    let x = g.evaluate(cycle)?;
    let bound = (cycle.len() * 4 + 4) as i64;
    let k = (1..=bound).find(|&k| power(g, a, k).is_ok_and(|p| p == x)).ok_or(Error::ProductDoesNotGenerate)?;
    let mut cert = Certificate::new("cover", &format!("order {k}"), g);
    cert.check("a has infinite order", true);
    cert.check("<a> is normal", true);
    cert.check("cycle is Hamilton in the Schreier graph", true);
    cert.note(format!("product a^{k}, index {n}"));
    let base = infinite_ray(g, cycle)?;
    let object = match k {
        1 => HamiltonObject::DoubleRay(base),
        2 => {
            let other = base.translate(g, a)?;
            HamiltonObject::Circle(CircleDescription::TwoRayCircle(base, other))
        }
        _ => {
            let rays = (0..k).map(|j| base.translate(g, &power(g, a, j)?)).collect::<Result<Vec<_>>>()?;
            HamiltonObject::Cover(HamiltonCover { rays })
        }
    };
    Ok(Construction { object, certificate: cert })
}
