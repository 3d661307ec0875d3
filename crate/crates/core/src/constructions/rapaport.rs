//! Circles of cubic Cayley graphs generated by three involutions `a, b, c`
//! with `ab = ba`, in the 2-connected case.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{EndsHint, FiniteGraph};
use crate::group::{Element, Group, SubgroupSpec};
use crate::oracle::{hamilton_cycle, SearchBudget, SearchOutcome};
use crate::rays::{CircleDescription, DoubleRay, Tail};
use crate::rewrite::{complete_strict, Presentation, DEFAULT_MAX_LEN, DEFAULT_MAX_RULES};

use super::{word_between, Certificate, Construction, HamiltonObject};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RapaportCase {
    /// `⟨a, b, c | a², b², c², (ab)², (abc)^m⟩`
    I,
    /// `⟨a, b, c | a², b², c², (ab)², (ac)^m⟩`
    II,
}

/// The presented group of the given case.
pub fn rapaport_group(case: RapaportCase, m: usize) -> Result<Group> {
    let min = match case {
        RapaportCase::I => 1,
        RapaportCase::II => 2,
    };
    if m < min {
        return Err(Error::BadParameters(format!("m must be at least {min}")));
    }
    let last = match case {
        RapaportCase::I => format!("(a b c)^{m}"),
        RapaportCase::II => format!("(a c)^{m}"),
    };
    let p = Presentation::parse(&format!("gen: a b c ; rel: a^2, b^2, c^2, (a b)^2, {last}"))?;
    let rs = complete_strict(&p, DEFAULT_MAX_RULES, DEFAULT_MAX_LEN)
        .map_err(|e| Error::CompletionFailed(e.to_string()))?;
    Group::presented(rs)
}

/// Elements of a finite group, found by growing balls until they stop.
fn finite_elements(g: &Group, limit: usize) -> Result<Vec<Element>> {
    let mut r = 1;
    let mut prev = g.ball(0)?.len();
    loop {
        let ball = g.ball(r)?;
        if ball.len() == prev {
            return Ok(ball.into_iter().map(|(x, _)| x).collect());
        }
        if ball.len() > limit {
            return Err(Error::BadParameters("group is not small and finite".into()));
        }
        prev = ball.len();
        r += 1;
    }
}

/// The group of the given case with a Hamilton circle of its Cayley graph
/// over `{a, b, c}`: the translates of the alternating `a, c` (case i) or
/// `b, c` (case ii) double ray, one per coset; for case i with `m = 1` the
/// group is finite and the cycle comes from the oracle.
pub fn rapaport_k2_circle(case: RapaportCase, m: usize) -> Result<(Group, Construction<HamiltonObject>)> {
    let g = rapaport_group(case, m)?;
    let name = |n: &str| g.gens.label_by_name(n).ok_or_else(|| Error::UnknownGenerator(n.into()));
    let (a, b, c) = (name("a")?, name("b")?, name("c")?);
    let mut cert = Certificate::new("rapaport-k2", "", &g);
    cert.check("generators are involutions with ab = ba", {
        let ab = g.evaluate(&[a, b])?;
        [a, b, c].iter().all(|&l| g.gens.is_involution(l)) && ab == g.evaluate(&[b, a])?
    });
    if case == RapaportCase::I && m == 1 {
        cert.route = "finite oracle".into();
        let elems = finite_elements(&g, 4096)?;
        let mut fg = FiniteGraph::new(elems.len());
        for (u, x) in elems.iter().enumerate() {
            for l in 0..g.gens.len() {
                let y = g.step(x, l)?;
                let v = elems.iter().position(|e| *e == y).unwrap();
                if u < v {
                    fg.add_edge(u, v, &g.gens.get(l).unwrap().name)?;
                }
            }
        }
        let seq = match hamilton_cycle(&fg, SearchBudget::default())? {
            SearchOutcome::Found(s) => s,
            SearchOutcome::None => return Err(Error::SearchExhausted),
            SearchOutcome::BudgetExceeded => return Err(Error::BudgetExceeded),
        };
        let verts: Vec<Element> = seq.iter().map(|&i| elems[i].clone()).collect();
        let word = word_between(&g, &verts, true)?;
        let object = HamiltonObject::Circle(CircleDescription::FiniteCycle { base: verts[0].clone(), word });
        return Ok((g, Construction { object, certificate: cert }));
    }
    // the alternating pair generates an infinite dihedral subgroup
    let (x, y, cut_label, cut_cycle) = match case {
        RapaportCase::I => (a, c, c, vec![a, b, a, b]),
        RapaportCase::II => (b, c, b, [a, c].repeat(m)),
    };
    cert.route = "coset ray family".into();
    let template = DoubleRay::new(g.identity(), Tail::periodic(vec![x, y])?, Tail::periodic(vec![y, x])?);
    let coset_subgroup = SubgroupSpec::GeneratedBy(vec![g.gen(x)?.clone(), g.gen(y)?.clone()]);
    cert.cuts = Some(EndsHint::LabelCuts { label: cut_label, cycle: cut_cycle });
    cert.note(format!(
        "translates of the {}{} ray; cuts are pairs of {}-edges",
        g.gens.get(x).unwrap().name,
        g.gens.get(y).unwrap().name,
        g.gens.get(cut_label).unwrap().name
    ));
    let object = HamiltonObject::Circle(CircleDescription::RayFamily { template, coset_subgroup });
    Ok((g, Construction { object, certificate: cert }))
}
