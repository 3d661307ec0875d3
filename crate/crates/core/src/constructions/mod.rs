//! Constructions of Hamilton double rays, circles and covers, each returned
//! with a certificate of the route taken and the hypotheses checked.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{cayley_window, defining_cut_sequence, EdgeCut, EndsHint, FiniteGraph, GraphWindow};
use crate::group::{Group, Label};
use crate::oracle::{hamilton_cycle, hamilton_path, SearchBudget, SearchOutcome};
use crate::rays::{CircleDescription, DoubleRay, GeneratorWord, HamiltonCover};
use crate::verify::{verify_circle, verify_cover, verify_double_ray, HypothesisCheck, VerificationReport};

mod add_generator;
mod cylinder;
mod dihedral;
mod factor;
mod gensets;
mod inf_cylinder;
mod integers;
mod lift;
mod rapaport;
mod splitting;

pub use add_generator::{add_generator_circle, TwistVector};
pub use cylinder::{cylinder_circle, CylinderInput};
pub use gensets::{context_free_bound, context_free_genset, free_group_genset, pak_genset, Genset, GensetReport};
pub use factor::{factor_group_lift, hamilton_cover_from_factor};
pub use dihedral::{circle_dinf, double_ray_dinf};
pub use inf_cylinder::{inf_cylinder_circle, InfCylinderInput};
pub use integers::double_ray_z;
pub use rapaport::{rapaport_group, rapaport_k2_circle, RapaportCase};
pub use splitting::{circle_split_z2, circle_split_zp};
pub use lift::{index2_inner_group, lift_index2, lift_index2_integers, LiftInner};

/// What a construction produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum HamiltonObject {
    DoubleRay(DoubleRay),
    Circle(CircleDescription),
    Cover(HamiltonCover),
}

impl HamiltonObject {
    pub fn render(&self, g: &Group) -> String {
        match self {
            HamiltonObject::DoubleRay(r) => format!("double ray {}", r.render(g)),
            HamiltonObject::Circle(c) => c.render(g),
            HamiltonObject::Cover(h) => {
                let lines: Vec<String> = h.rays.iter().map(|r| format!("  {}", r.render(g))).collect();
                format!("cover of order {}\n{}", h.order(), lines.join("\n"))
            }
        }
    }

    /// Runs the matching verifier on one window.
    pub fn verify(&self, w: &GraphWindow, g: &Group, cuts: &[EdgeCut]) -> Result<VerificationReport> {
        match self {
            HamiltonObject::DoubleRay(r) => verify_double_ray(w, g, r),
            HamiltonObject::Circle(c) => verify_circle(w, g, c, cuts),
            HamiltonObject::Cover(h) => verify_cover(w, g, h),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Certificate {
    pub construction: String,
    pub route: String,
    /// Set when the route is not the one of the original argument.
    pub route_differs: bool,
    pub hypotheses: Vec<HypothesisCheck>,
    pub symbol_count: usize,
    pub pair_count: usize,
    pub verified_radii: Vec<usize>,
    /// Cut family used for circle verification.
    pub cuts: Option<EndsHint>,
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn new(construction: &str, route: &str, g: &Group) -> Self {
        Certificate {
            construction: construction.into(),
            route: route.into(),
            symbol_count: g.gens.symbol_count(),
            pair_count: g.gens.pair_count(),
            ..Default::default()
        }
    }

    pub fn check(&mut self, name: &str, passed: bool) {
        self.hypotheses.push(HypothesisCheck { name: name.into(), passed, witness: None });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }
}

/// A construction result with its certificate.
#[derive(Debug, Clone)]
pub struct Construction<T> {
    pub object: T,
    pub certificate: Certificate,
}

impl<T> Construction<T> {
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Construction<U> {
        Construction { object: f(self.object), certificate: self.certificate }
    }
}

/// Verifies `object` at each radius, with cuts derived from the certificate's
/// hint (two-ended cuts when none is given), and records the radii that
/// passed. Stops at the first refutation. Radii too small to separate the
/// ends are skipped with a note.
pub fn certify(g: &Group, c: &mut Construction<HamiltonObject>, radii: &[usize]) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let mut too_small = None;
    for &r in radii {
        let w = cayley_window(g, r)?;
        let cuts = match (&c.object, &c.certificate.cuts) {
            (HamiltonObject::Circle(CircleDescription::FiniteCycle { .. }), _) => Ok(Vec::new()),
            (HamiltonObject::Circle(_), Some(hint)) => defining_cut_sequence(&w, g, hint),
            (HamiltonObject::Circle(_), None) => defining_cut_sequence(&w, g, &EndsHint::TwoEnded),
            _ => Ok(Vec::new()),
        };
        let cuts = match cuts {
            Err(Error::HintUnsupported(why)) => {
                c.certificate.note(format!("radius {r} skipped: {why}"));
                too_small = Some(Error::HintUnsupported(why));
                continue;
            }
            other => other?,
        };
        let rep = c.object.verify(&w, g, &cuts)?;
        let ok = rep.is_consistent();
        out.push(rep);
        if !ok {
            break;
        }
        c.certificate.verified_radii.push(r);
    }
    match too_small {
        Some(e) if out.is_empty() => Err(e),
        _ => Ok(out),
    }
}

/// Label of a generator of `g` equal to `x`.
pub(crate) fn label_for(g: &Group, x: &crate::group::Element) -> Result<Label> {
    g.gens
        .label_of(x)
        .ok_or_else(|| Error::NotGenerating(format!("{} is not a generator", g.format(x))))
}

/// Labels of `g` along a vertex sequence of its finite Cayley graph.
pub(crate) fn word_between(g: &Group, verts: &[crate::group::Element], closed: bool) -> Result<GeneratorWord> {
    let n = verts.len();
    let steps = if closed { n } else { n.saturating_sub(1) };
    (0..steps)
        .map(|i| {
            g.edge_label(&verts[i], &verts[(i + 1) % n])?
                .ok_or_else(|| Error::MalformedCycle("consecutive vertices are not adjacent".into()))
        })
        .collect()
}

/// A Hamilton cycle (`closed`) or path of the Cayley graph of a finite group,
/// as a word read from the identity.
pub fn finite_hamilton_word(g: &Group, closed: bool, budget: SearchBudget) -> Result<Option<GeneratorWord>> {
    let elems = g.family.all_elements().ok_or_else(|| Error::InvalidGroup("group is not finite".into()))?;
    let fg = FiniteGraph::cayley(g)?;
    let outcome = if closed { hamilton_cycle(&fg, budget)? } else { hamilton_path(&fg, budget)? };
    let seq = match outcome {
        SearchOutcome::Found(s) => s,
        SearchOutcome::None => return Ok(None),
        SearchOutcome::BudgetExceeded => return Err(Error::BudgetExceeded),
    };
    let verts: Vec<_> = seq.iter().map(|&i| elems[i].clone()).collect();
    // a Cayley graph is vertex-transitive, so the word can be read from the identity
    Ok(Some(word_between(g, &verts, closed)?))
}


/// The double ray with the same letters passed through `f`, based at `base`.
pub(crate) fn relabel(r: &DoubleRay, base: crate::group::Element, f: impl Fn(Label) -> Label) -> Result<DoubleRay> {
    let t = |t: &crate::rays::Tail| {
        crate::rays::Tail::new(t.prefix.iter().map(|&l| f(l)).collect(), t.period.iter().map(|&l| f(l)).collect())
    };
    Ok(DoubleRay::new(base, t(&r.positive)?, t(&r.negative)?))
}
