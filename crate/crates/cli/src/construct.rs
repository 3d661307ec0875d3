//! `construct <id>`: runs one construction, optionally verifies it, and
//! writes the object with its certificate.

use std::fs;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use hamcircle::constructions::{
    add_generator_circle, certify, circle_dinf, circle_split_z2, circle_split_zp, context_free_genset, cylinder_circle,
    double_ray_dinf, double_ray_z, factor_group_lift, finite_hamilton_word, free_group_genset, hamilton_cover_from_factor,
    inf_cylinder_circle, lift_index2_integers, pak_genset, rapaport_k2_circle, Certificate, Construction, CylinderInput,
    GensetReport, HamiltonObject, InfCylinderInput, RapaportCase,
};
use hamcircle::graphs::cayley_window;
use hamcircle::oracle::SearchBudget;
use hamcircle::rays::{CircleDescription, DoubleRay};
use hamcircle::verify::VerificationReport;
use hamcircle::{Element, Family, FamilySpec, Group, GroupSpecFile, SubgroupSpec};

use crate::input::{elements, word, GroupArgs};
use crate::{print_json, summarize, Failure, Outcome};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionId {
    #[value(name = "arcZ")]
    ArcZ,
    #[value(name = "arcDinf")]
    ArcDinf,
    DinfCircle,
    LiftIndex2,
    Cylinder,
    SplitZp,
    SplitZ2,
    RapaportK2,
    AddGen,
    FactorLift,
    Cover,
    Pak,
    FreeGenset,
    CfGenset,
    InfCylinder,
}

impl ConstructionId {
    fn name(self) -> String {
        self.to_possible_value().expect("named").get_name().to_string()
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum CaseArg {
    I,
    Ii,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    id: ConstructionId,
    #[command(flatten)]
    group: GroupArgs,
    /// Verify at these radii (default 4, 6, 8 with --verify).
    #[arg(long = "radius")]
    radii: Vec<usize>,
    /// Refuse to write an object whose verification is refuted.
    #[arg(long)]
    verify: bool,
    /// Directory for `<id>.json` and `<id>.dot`; stdout otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    case: Option<CaseArg>,
    #[arg(long)]
    m: Option<usize>,
    /// Fiber size of the cylinder.
    #[arg(long)]
    n: Option<usize>,
    /// Element added or whose powers translate, as a word.
    #[arg(long)]
    a: Option<String>,
    /// Schreier cycle, as a word.
    #[arg(long)]
    cycle: Option<String>,
    /// Subgroup generators, words separated by commas.
    #[arg(long)]
    subgroup: Option<String>,
    /// Basis of a free normal subgroup, words separated by commas.
    #[arg(long)]
    basis: Option<String>,
    #[arg(long)]
    rank: Option<usize>,
    /// Fiber table for the infinite cylinder (`Z4`, `S3`, …).
    #[arg(long)]
    fiber: Option<String>,
}

/// Everything `construct` writes; `verify` reads it back.
#[derive(Debug, Serialize, Deserialize)]
pub struct Artifact {
    pub construction: String,
    pub group: GroupSpecFile,
    /// Generators of the group the object lives in.
    pub generators: Vec<Element>,
    pub object: HamiltonObject,
    pub certificate: Certificate,
    #[serde(default)]
    pub reports: Vec<VerificationReport>,
}

struct Built {
    spec: GroupSpecFile,
    group: Group,
    construction: Option<Construction<HamiltonObject>>,
    genset: Option<GensetReport>,
}

fn spec(family: FamilySpec) -> GroupSpecFile {
    GroupSpecFile { family, words: Vec::new() }
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> Result<T, Failure> {
    v.clone().ok_or_else(|| Failure::usage(format!("--{flag} is required")))
}

fn built(spec: GroupSpecFile, group: Group, c: Construction<HamiltonObject>) -> Built {
    Built { spec, group, construction: Some(c), genset: None }
}

fn group_or(args: &ConstructArgs, default: FamilySpec) -> Result<(GroupSpecFile, Group), Failure> {
    let s = if args.group.is_given() { args.group.spec_file()? } else { spec(default) };
    let g = s.build()?;
    Ok((s, g))
}

fn given_group(args: &ConstructArgs) -> Result<(GroupSpecFile, Group), Failure> {
    let s = args.group.spec_file()?;
    let g = s.build()?;
    Ok((s, g))
}

fn build(args: &ConstructArgs, budget: SearchBudget) -> Result<Built, Failure> {
    use ConstructionId::*;
    Ok(match args.id {
        ArcZ => {
            let (s, g) = given_group(args)?;
            let c = double_ray_z(&g)?.map(HamiltonObject::DoubleRay);
            built(s, g, c)
        }
        ArcDinf => {
            let (s, g) = given_group(args)?;
            let c = double_ray_dinf(&g)?;
            built(s, g, c)
        }
        DinfCircle => {
            let (s, g) = given_group(args)?;
            let c = circle_dinf(&g)?;
            built(s, g, c)
        }
        LiftIndex2 => {
            let (s, g) = given_group(args)?;
            let c = match g.family {
                Family::Integers => lift_index2_integers(&g)?,
                Family::InfiniteDihedral => {
                    let c = double_ray_dinf(&g)?;
                    if c.certificate.route != "index-two lift" {
                        return Err(Failure::usage("lift-index2 on D∞ needs reflection generators only"));
                    }
                    c
                }
                _ => return Err(Failure::usage("lift-index2 supports ℤ and D∞")),
            };
            built(s, g, c)
        }
        Cylinder => {
            let n = args.n.unwrap_or(3);
            let s = spec(FamilySpec::Product {
                left: Box::new(spec(FamilySpec::Integers { gens: vec![1] })),
                right: Box::new(spec(FamilySpec::Finite { table: format!("Z{n}") })),
            });
            let g = s.build()?;
            let label = |e: Element| g.gens.label_of(&e).ok_or_else(|| Failure::usage("missing generator"));
            let t = label(Element::pair(Element::Int(1), Element::Fin(0)))?;
            let k = label(Element::pair(Element::Int(0), Element::Fin(1)))?;
            let column = DoubleRay::line(&g, g.identity(), t)?;
            let c = cylinder_circle(&g, &CylinderInput { column, block_word: vec![k; n], locality: 2 })?;
            built(s, g, c)
        }
        SplitZp => {
            let (s, g) = group_or(args, FamilySpec::CyclicAmalgam { m: args.m.unwrap_or(3), with_core: true })?;
            let c = circle_split_zp(&g)?;
            built(s, g, c)
        }
        SplitZ2 => {
            let (s, g) = group_or(args, FamilySpec::CyclicAmalgam { m: 2, with_core: false })?;
            let c = circle_split_z2(&g)?;
            built(s, g, c)
        }
        RapaportK2 => {
            let m = need(&args.m, "m")?;
            let (case, last) = match need(&args.case, "case")? {
                CaseArg::I => (RapaportCase::I, format!("(a b c)^{m}")),
                CaseArg::Ii => (RapaportCase::II, format!("(a c)^{m}")),
            };
            let (g, c) = rapaport_k2_circle(case, m)?;
            let presentation = format!("gen: a b c ; rel: a^2, b^2, c^2, (a b)^2, {last}");
            built(spec(FamilySpec::Presented { presentation }), g, c)
        }
        AddGen => {
            let (s, g) = given_group(args)?;
            let a = g.evaluate(&word(&g, &need(&args.a, "a")?)?)?;
            let (big, c) = add_generator_circle(&g, &a)?;
            built(s, big, c)
        }
        FactorLift => {
            let (s, g) = given_group(args)?;
            let h = SubgroupSpec::GeneratedBy(elements(&g, &need(&args.subgroup, "subgroup")?)?);
            let cycle = word(&g, &need(&args.cycle, "cycle")?)?;
            let c = factor_group_lift(&g, &h, &cycle)?;
            built(s, g, c)
        }
        Cover => {
            let (s, g) = given_group(args)?;
            let a = g.evaluate(&word(&g, &need(&args.a, "a")?)?)?;
            let cycle = word(&g, &need(&args.cycle, "cycle")?)?;
            let c = hamilton_cover_from_factor(&g, &a, &cycle)?;
            built(s, g, c)
        }
        Pak => {
            let (s, g) = given_group(args)?;
            let gs = pak_genset(&g, budget)?;
            Built { spec: s, group: gs.group, construction: gs.circle, genset: Some(gs.report) }
        }
        FreeGenset => {
            let r = need(&args.rank, "rank")?;
            let gs = free_group_genset(r)?;
            Built { spec: spec(FamilySpec::Free { rank: r }), group: gs.group, construction: None, genset: Some(gs.report) }
        }
        CfGenset => {
            let (s, g) = given_group(args)?;
            let basis = elements(&g, &need(&args.basis, "basis")?)?;
            let gs = context_free_genset(&g, &basis, budget)?;
            Built { spec: s, group: gs.group, construction: gs.circle, genset: Some(gs.report) }
        }
        InfCylinder => {
            let (base_spec, base) = given_group(args)?;
            if !matches!(base.family, Family::Integers) {
                return Err(Failure::usage("inf-cylinder takes an integer base (--gens)"));
            }
            let table = need(&args.fiber, "fiber")?;
            let fiber_spec = spec(FamilySpec::Finite { table: table.clone() });
            let fiber = fiber_spec.build()?;
            let fiber_word = finite_hamilton_word(&fiber, true, budget)?
                .ok_or_else(|| Failure::refuted("fiber has no Hamilton cycle"))?;
            // evens and odds form a circle when 2 is a step; otherwise a double ray
            let base_object = match base.gens.label_of(&Element::Int(2)) {
                Some(two) => HamiltonObject::Circle(CircleDescription::TwoRayCircle(
                    DoubleRay::line(&base, Element::Int(0), two)?,
                    DoubleRay::line(&base, Element::Int(1), two)?,
                )),
                None => HamiltonObject::DoubleRay(double_ray_z(&base)?.object),
            };
            let input = InfCylinderInput { base, base_object, fiber, fiber_word, locality: 2 };
            let (g, c) = inf_cylinder_circle(&input)?;
            let s = spec(FamilySpec::Product { left: Box::new(base_spec), right: Box::new(fiber_spec) });
            built(s, g, c)
        }
    })
}

pub fn run(args: ConstructArgs, budget: SearchBudget) -> Outcome {
    if args.radii.iter().any(|&r| r < 2) {
        return Err(Failure::usage("radii must be at least 2"));
    }
    let id = args.id.name();
    let mut b = build(&args, budget)?;
    let Some(mut c) = b.construction.take() else {
        print_json(&json!({ "construction": id, "report": b.genset }));
        return Ok(());
    };
    let radii = if args.radii.is_empty() && args.verify { vec![4, 6, 8] } else { args.radii.clone() };
    let reports = if radii.is_empty() { Vec::new() } else { certify(&b.group, &mut c, &radii)? };
    let (_, consistent) = summarize(&reports);
    let refuted = !reports.is_empty() && !consistent;
    if refuted && args.verify {
        print_json(&json!({ "construction": id, "reports": reports }));
        return Err(Failure::refuted("verification refuted the construction; nothing written"));
    }
    let art = Artifact {
        construction: id.clone(),
        group: b.spec,
        generators: b.group.gens.elements(),
        object: c.object,
        certificate: c.certificate,
        reports,
    };
    match &args.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let json_path = dir.join(format!("{id}.json"));
            fs::write(&json_path, serde_json::to_string_pretty(&art).expect("artifact serializes") + "\n")?;
            let mut files = vec![json_path.display().to_string()];
            if let (Some(last), Some(&r)) = (art.reports.last(), radii.last()) {
                let w = cayley_window(&b.group, r)?;
                let dot_path = dir.join(format!("{id}.dot"));
                fs::write(&dot_path, w.to_dot(&b.group, &last.object_edges))?;
                files.push(dot_path.display().to_string());
            }
            let verdicts: Vec<bool> = art.reports.iter().map(|r| r.is_consistent()).collect();
            print_json(&json!({
                "construction": id,
                "route": art.certificate.route,
                "verified_radii": art.certificate.verified_radii,
                "consistent": verdicts,
                "genset": b.genset,
                "files": files,
            }));
        }
        None => print_json(&art),
    }
    if refuted {
        Err(Failure::refuted("verification refuted the construction"))
    } else {
        Ok(())
    }
}
