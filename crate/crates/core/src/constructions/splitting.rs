//! Circles of two-ended groups splitting over a finite cyclic core.

use crate::error::{Error, Result};
use crate::group::{Element, Family, Group, Label, SubgroupSpec};
use crate::rays::{CircleDescription, DoubleRay};

use super::cylinder::{cylinder_circle, CylinderInput};
use super::{double_ray_dinf, double_ray_z, relabel, Certificate, Construction, HamiltonObject};

/// A Hamilton double ray of the quotient by the core, lifted letter by letter
/// to the first generator with each image. Its vertices meet every core coset
/// once.
pub(crate) fn quotient_column(g: &Group) -> Result<DoubleRay> {
    let q = g.quotient(&SubgroupSpec::Core)?;
    let qr = match q.group.family {
        Family::Integers => double_ray_z(&q.group)?.object,
        _ => match double_ray_dinf(&q.group)?.object {
            HamiltonObject::DoubleRay(r) => r,
            _ => unreachable!("double ray construction"),
        },
    };
    let images = q.label_images(g)?;
    let lift = |ql: Label| images.iter().position(|im| *im == Some(ql)).expect("quotient generator has a preimage");
    relabel(&qr, g.identity(), lift)
}

fn core_labels(g: &Group) -> Result<(Vec<Element>, Vec<Label>)> {
    let core = g.family.core_elements().ok_or(Error::NotTwoEnded)?;
    if !g.is_two_ended() {
        return Err(Error::NotTwoEnded);
    }
    let labels = (0..g.gens.len()).filter(|&l| core.contains(g.gen(l).unwrap())).collect();
    Ok((core, labels))
}

fn check_normal_core(g: &Group, cert: &mut Certificate) -> Result<()> {
    if matches!(g.family, Family::Amalgam(_) | Family::Hnn { .. }) {
        let ok = g.check_core_normal(4)?;
        cert.check("core is normal (conjugation on the radius-4 ball)", ok);
        if !ok {
            return Err(Error::HypothesisViolated("core is not normal".into()));
        }
    }
    Ok(())
}

/// A circle for a two-ended group whose generating set meets the finite
/// cyclic core in one generator and its inverse: the core cosets along a
/// Hamilton double ray of the quotient are cylinder blocks.
pub fn circle_split_zp(g: &Group) -> Result<Construction<HamiltonObject>> {
    let (core, in_core) = core_labels(g)?;
    if in_core.is_empty() {
        return Err(Error::CoreNotMet);
    }
    if in_core.len() > 2 {
        return Err(Error::NotMinimal(format!("{} generator symbols lie in the core", in_core.len())));
    }
    let k = in_core[0];
    let p = core.len();
    let mut cert = Certificate::new("split-zp", "core cylinder", g);
    check_normal_core(g, &mut cert)?;
    let ke = g.gen(k)?;
    let order = (1..=p).find(|&n| g.pow(ke, n as i64).map(|x| x == g.identity()).unwrap_or(false));
    if order != Some(p) {
        return Err(Error::HypothesisViolated("the core generator does not generate the core".into()));
    }
    cert.check("S meets the core in one generator and its inverse", true);
    let column = quotient_column(g)?;
    let locality = 2 * (column.max_prefix() + column.max_period()) + 2;
    let input = CylinderInput { column, block_word: vec![k; p], locality };
    let c = cylinder_circle(g, &input)?;
    cert.hypotheses.extend(c.certificate.hypotheses);
    cert.note(format!("core of order {p}"));
    Ok(Construction { object: c.object, certificate: cert })
}

/// A circle for a two-ended group with core of order two. When the
/// generating set misses the core, the lifted quotient ray and its translate
/// by the core element form the circle.
pub fn circle_split_z2(g: &Group) -> Result<Construction<HamiltonObject>> {
    let (core, in_core) = core_labels(g)?;
    if core.len() != 2 {
        return Err(Error::CoreNotZ2);
    }
    if !in_core.is_empty() {
        let mut c = circle_split_zp(g)?;
        c.certificate.construction = "split-z2".into();
        return Ok(c);
    }
    let mut cert = Certificate::new("split-z2", "parallel rays", g);
    check_normal_core(g, &mut cert)?;
    cert.check("core has order two", true);
    let kappa = core.iter().find(|x| **x != g.identity()).unwrap().clone();
    let r = quotient_column(g)?;
    let r2 = r.translate(g, &kappa)?;
    Ok(Construction { object: HamiltonObject::Circle(CircleDescription::TwoRayCircle(r, r2)), certificate: cert })
}
