//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::{HashMap, HashSet};
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use hamcircle::constructions::{
    certify, circle_dinf, circle_split_z2, circle_split_zp, context_free_bound, context_free_genset, double_ray_dinf,
    double_ray_z, factor_group_lift, finite_hamilton_word, free_group_genset, hamilton_cover_from_factor, index2_inner_group,
    lift_index2, lift_index2_integers, pak_genset, rapaport_k2_circle, Construction, HamiltonObject, LiftInner, RapaportCase,
};
use hamcircle::graphs::{cayley_window, is_k_connected_window, EndsHint, Evidence, FiniteGraph};
use hamcircle::group::{Amalgam, CayleyTable};
use hamcircle::oracle::{hamilton_cycle, validate_hamilton, SearchBudget, SearchOutcome};
use hamcircle::rays::{cycle_vertices, CircleDescription, DoubleRay};
use hamcircle::rewrite::{complete_default, Presentation, Symbol};
use hamcircle::verify::{verify_double_ray, Coverage, Injectivity, VerificationReport};
use hamcircle::{Element, Family, Group, SubgroupSpec};

/// Verification radii and time limits.
const R_INTEGERS: usize = 20;
const R_DIHEDRAL: usize = 10;
const R_LIFT: usize = 10;
const R_SPLIT: usize = 8;
const R_NORMAL: usize = 4;
const R_RAPAPORT: usize = 8;
const R_FACTOR: usize = 12;
const R_COVER: usize = 10;
const R_VIRTUALLY_Z: usize = 10;
const R_NEGATIVE: usize = 4;
const MAX_WORD: usize = 8;
const LIMIT_INTEGERS: Duration = Duration::from_secs(5);
const LIMIT_CORPUS: Duration = Duration::from_secs(60);
/// Size bounds are compared exactly; this only absorbs float rounding.
const BOUND_EPS: f64 = 1e-9;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn consistent(g: &Group, mut c: Construction<HamiltonObject>, r: usize, what: &str) -> Result<VerificationReport, String> {
    let reps = ok(certify(g, &mut c, &[r]), what)?;
    let rep = reps.into_iter().next().ok_or_else(|| format!("{what}: radius {r} not checked"))?;
    ensure(rep.is_consistent(), || format!("{what}: {}", rep.render(g)))?;
    Ok(rep)
}

fn integers() -> Outcome {
    let start = Instant::now();
    for steps in [vec![1], vec![2, 3], vec![2, 5], vec![3, 4, 5]] {
        let g = ok(Group::integers(&steps), "group")?;
        let c = ok(double_ray_z(&g), "double_ray_z")?;
        let w = ok(cayley_window(&g, R_INTEGERS), "window")?;
        let rep = ok(verify_double_ray(&w, &g, &c.object), "verify")?;
        ensure(rep.coverage == Coverage::Exact, || format!("{steps:?}: coverage {:?}", rep.coverage))?;
        ensure(rep.injectivity == Injectivity::Pass, || format!("{steps:?}: {:?}", rep.injectivity))?;
        ensure(rep.tails_split == Some(true), || format!("{steps:?}: tails split {:?}", rep.tails_split))?;
        ensure(rep.is_consistent(), || format!("{steps:?}: {}", rep.render(&g)))?;
    }
    let t = start.elapsed();
    ensure(t < LIMIT_INTEGERS, || format!("took {t:?}"))?;
    Ok(format!("4 step sets at radius {R_INTEGERS} in {:.2}s", t.as_secs_f64()))
}

fn dihedral() -> Outcome {
    let mut routes = HashSet::new();
    let ray_sets: [&[(i64, bool)]; 5] = [
        &[(1, false), (0, true)],
        &[(2, false), (0, true), (1, true)],
        &[(2, false), (3, false), (0, true)],
        &[(0, true), (1, true)],
        &[(0, true), (2, true), (3, true)],
    ];
    for gens in ray_sets {
        let g = ok(Group::infinite_dihedral(gens), "group")?;
        let c = ok(double_ray_dinf(&g), "double_ray_dinf")?;
        routes.insert(c.certificate.route.clone());
        consistent(&g, c, R_DIHEDRAL, &format!("ray {gens:?}"))?;
    }
    ensure(routes.len() >= 2, || format!("only routes {routes:?}"))?;
    let circle_sets: [&[(i64, bool)]; 5] = [
        &[(1, false), (0, true)],
        &[(1, false), (0, true), (1, true)],
        &[(2, false), (0, true), (1, true)],
        &[(3, false), (0, true), (1, true)],
        &[(0, true), (1, true), (2, true)],
    ];
    let (mut cuts, mut max_raw) = (0, 0);
    for gens in circle_sets {
        let g = ok(Group::infinite_dihedral(gens), "group")?;
        ensure(g.gens.symbol_count() >= 3, || format!("{gens:?} has fewer than 3 symbols"))?;
        let rep = consistent(&g, ok(circle_dinf(&g), "circle_dinf")?, R_DIHEDRAL, &format!("circle {gens:?}"))?;
        ensure(!rep.crossings.is_empty(), || format!("{gens:?}: no cuts sampled"))?;
        for c in &rep.crossings {
            ensure(c.linkage == Some(2), || format!("{gens:?}: cut {} linkage {:?}", c.id, c.linkage))?;
            max_raw = max_raw.max(c.count);
        }
        cuts += rep.crossings.len();
    }
    let mut routes: Vec<_> = routes.into_iter().collect();
    routes.sort();
    Ok(format!("5 double rays (routes {routes:?}), 5 circles, {cuts} cuts each with end linkage 2 (raw crossings up to {max_raw})"))
}

fn alternates(g: &Group, h: &SubgroupSpec, r: &DoubleRay, steps: usize) -> Result<(), String> {
    let v = ok(r.unroll(g, steps), "unroll")?;
    for pair in v.windows(2) {
        let (a, b) = (ok(g.member(h, &pair[0]), "member")?, ok(g.member(h, &pair[1]), "member")?);
        ensure(a != b, || format!("consecutive {} and {} share a coset", g.format(&pair[0]), g.format(&pair[1])))?;
    }
    Ok(())
}

fn lifting() -> Outcome {
    let evens = SubgroupSpec::GeneratedBy(vec![Element::Int(2)]);
    for steps in [vec![1, 3], vec![1, 5, 7], vec![3, 5]] {
        let g = ok(Group::integers(&steps), "group")?;
        for s in g.gens.iter() {
            ensure(!ok(g.member(&evens, &s.elem), "member")?, || format!("{steps:?}: generator in H"))?;
        }
        let c = ok(lift_index2_integers(&g), "lift")?;
        let HamiltonObject::DoubleRay(r) = &c.object else { return Err("integer lift is not a double ray".into()) };
        alternates(&g, &evens, r, 4 * R_LIFT)?;
        consistent(&g, c, R_LIFT, &format!("{steps:?}"))?;
    }
    let g = ok(Group::infinite_dihedral(&[(0, true), (1, true)]), "group")?;
    let b = g.gens.label_of(&Element::dih(0, true)).ok_or("b missing")?;
    let inner = ok(index2_inner_group(&g, b), "inner")?;
    let step = inner.gens.label_of(&Element::dih(-1, false)).ok_or("inner step missing")?;
    let line = ok(DoubleRay::line(&inner, inner.identity(), step), "line")?;
    let rotations = SubgroupSpec::GeneratedBy(vec![Element::dih(1, false)]);
    let c = ok(lift_index2(&g, &rotations, b, &inner, &LiftInner::DoubleRay(line)), "dihedral lift")?;
    let HamiltonObject::DoubleRay(r) = &c.object else { return Err("dihedral lift is not a double ray".into()) };
    alternates(&g, &rotations, r, 4 * R_LIFT)?;
    consistent(&g, c, R_LIFT, "reflections")?;
    Ok(format!("3 integer sets and D∞ reflections lifted, verified at radius {R_LIFT}, cosets alternate"))
}

fn splitting() -> Outcome {
    let cases: Vec<(&str, Group, bool, &str)> = vec![
        ("Z6 *_Z3 Z6", ok(Group::cyclic_amalgam(3, true), "group")?, false, "core cylinder"),
        ("Z4 *_Z2 Z4 core met", ok(Group::cyclic_amalgam(2, true), "group")?, true, "core cylinder"),
        ("Z4 *_Z2 Z4 core missed", ok(Group::cyclic_amalgam(2, false), "group")?, true, "parallel rays"),
        ("HNN(3,2)", ok(Group::hnn(3, 2), "group")?, false, "core cylinder"),
    ];
    for (name, g, z2, route) in cases {
        ensure(ok(g.check_core_normal(R_NORMAL), "normality")?, || format!("{name}: core not normal on the ball"))?;
        let c = ok(if z2 { circle_split_z2(&g) } else { circle_split_zp(&g) }, name)?;
        ensure(c.certificate.route == route, || format!("{name}: route {:?}", c.certificate.route))?;
        consistent(&g, c, R_SPLIT, name)?;
    }
    Ok(format!("4 circles at radius {R_SPLIT}, Z4 *_Z2 Z4 by both routes, core normal at radius {R_NORMAL}"))
}

fn rapaport() -> Outcome {
    let mut total = 0;
    for (case, m, cut) in [(RapaportCase::I, 2, "c"), (RapaportCase::I, 3, "c"), (RapaportCase::II, 2, "b")] {
        let (g, c) = ok(rapaport_k2_circle(case, m), "rapaport")?;
        let Some(EndsHint::LabelCuts { label, .. }) = &c.certificate.cuts else {
            return Err(format!("{case:?} m={m}: no label cuts"));
        };
        let name = &g.gens.get(*label).ok_or("cut label")?.name;
        ensure(name == cut, || format!("{case:?} m={m}: cuts on {name}"))?;
        let rep = consistent(&g, c, R_RAPAPORT, &format!("{case:?} m={m}"))?;
        ensure(!rep.crossings.is_empty(), || format!("{case:?} m={m}: no cuts"))?;
        for x in &rep.crossings {
            ensure(x.count == 2, || format!("{case:?} m={m}: cut {} crossed {}", x.id, x.count))?;
        }
        total += rep.crossings.len();
    }
    let (g, c) = ok(rapaport_k2_circle(RapaportCase::I, 1), "m = 1")?;
    ensure(c.certificate.route == "finite oracle", || format!("m = 1 route {:?}", c.certificate.route))?;
    let HamiltonObject::Circle(CircleDescription::FiniteCycle { base, word }) = &c.object else {
        return Err("m = 1 is not a finite cycle".into());
    };
    let (base, word) = (base.clone(), word.clone());
    ensure(oracle_validates(&g, &base, &word)?, || "m = 1 cycle rejected by the oracle".into())?;
    Ok(format!("3 ray families at radius {R_RAPAPORT}, {total} label cuts each crossed twice; m = 1 finite cycle of length {}", word.len()))
}

/// Elements of a finite group, from its family or from balls that stop growing.
fn finite_elements(g: &Group) -> Result<Vec<Element>, String> {
    if let Some(e) = g.family.all_elements() {
        return Ok(e);
    }
    let mut prev = 1;
    for r in 1..64 {
        let ball = ok(g.ball(r), "ball")?;
        if ball.len() == prev {
            return Ok(ball.into_iter().map(|(x, _)| x).collect());
        }
        prev = ball.len();
    }
    Err("group is not small and finite".into())
}

/// Whether the oracle's checker accepts the cycle as Hamiltonian.
fn oracle_validates(g: &Group, base: &Element, word: &[usize]) -> Result<bool, String> {
    let elems = finite_elements(g)?;
    let index: HashMap<&Element, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut fg = FiniteGraph::new(elems.len());
    for (u, x) in elems.iter().enumerate() {
        for l in 0..g.gens.len() {
            let v = index[&ok(g.step(x, l), "step")?];
            if u < v {
                ok(fg.add_edge(u, v, &g.gens.get(l).ok_or("label")?.name), "edge")?;
            }
        }
    }
    let verts = ok(cycle_vertices(g, base, word), "cycle")?;
    let seq: Vec<usize> = verts.iter().map(|v| index[v]).collect();
    Ok(validate_hamilton(&fg, &seq, true))
}

fn pak() -> Outcome {
    let start = Instant::now();
    let corpus = CayleyTable::corpus();
    let mut worst = (0usize, 0usize);
    for t in &corpus {
        let n = t.order();
        let g = ok(Group::finite(t.clone(), &t.generators), &t.name)?;
        let p = ok(pak_genset(&g, SearchBudget::default()), &t.name)?;
        let bound = n.ilog2() as usize;
        ensure(p.report.pair_count <= bound, || format!("{}: {} pairs > {bound}", t.name, p.report.pair_count))?;
        let c = p.circle.as_ref().ok_or_else(|| format!("{}: no cycle", t.name))?;
        let HamiltonObject::Circle(CircleDescription::FiniteCycle { base, word }) = &c.object else {
            return Err(format!("{}: not a finite cycle", t.name));
        };
        ensure(oracle_validates(&p.group, base, word)?, || format!("{}: cycle rejected", t.name))?;
        worst = worst.max((p.report.pair_count, bound));
    }
    let t = start.elapsed();
    ensure(t < LIMIT_CORPUS, || format!("took {t:?}"))?;
    Ok(format!("{} groups within ⌊log2 |G|⌋ pairs in {:.2}s", corpus.len(), t.as_secs_f64()))
}

fn factor() -> Outcome {
    // S3 on two transpositions, D8 on two reflections; H is the rotations
    let s3 = CayleyTable::symmetric(3).map_err(|e| e.to_string())?;
    let inv: Vec<u32> = (1..6).filter(|&x| s3.element_order(x) == 2).collect();
    let d8 = CayleyTable::dihedral(4).map_err(|e| e.to_string())?;
    let (r, s) = (d8.generators[0], d8.generators[1]);
    let refl = [s, d8.mul(s, r)];
    let mut finite = Vec::new();
    for (name, g) in [("S3", Group::finite(s3, &inv[..2])), ("D8", Group::finite(d8, &refl))] {
        let g = ok(g, name)?;
        let rot = ok(g.evaluate(&[0, 1]), "product")?;
        let h = SubgroupSpec::GeneratedBy(vec![rot]);
        let c = ok(factor_group_lift(&g, &h, &[0, 1]), name)?;
        let HamiltonObject::Circle(CircleDescription::FiniteCycle { base, word }) = &c.object else {
            return Err(format!("{name}: not a finite cycle"));
        };
        ensure(word.len() == g.family.order().unwrap(), || format!("{name}: length {}", word.len()))?;
        ensure(oracle_validates(&g, base, word)?, || format!("{name}: rejected by the oracle"))?;
        let found = ok(finite_hamilton_word(&g, true, SearchBudget::default()), "oracle")?;
        ensure(found.is_some(), || format!("{name}: oracle finds no cycle"))?;
        finite.push(name);
    }
    let z = ok(Group::integers(&[1]), "Z")?;
    let c = ok(factor_group_lift(&z, &SubgroupSpec::GeneratedBy(vec![Element::Int(5)]), &[0; 5]), "Z")?;
    ensure(matches!(c.object, HamiltonObject::DoubleRay(_)), || "Z: not a double ray".into())?;
    consistent(&z, c, R_FACTOR, "Z")?;
    let z2 = ok(Group::finite(CayleyTable::cyclic(2).map_err(|e| e.to_string())?, &[1]), "Z2")?;
    let zz2 = ok(Group::product(&z, &z2), "ZxZ2")?;
    let one = zz2.gens.label_of(&Element::pair(Element::Int(1), Element::Fin(0))).ok_or("(1,0)")?;
    let flip = zz2.gens.label_of(&Element::pair(Element::Int(0), Element::Fin(1))).ok_or("(0,1)")?;
    let diag = SubgroupSpec::GeneratedBy(vec![Element::pair(Element::Int(1), Element::Fin(1))]);
    let c = ok(factor_group_lift(&zz2, &diag, &[one, flip]), "ZxZ2")?;
    ensure(matches!(c.object, HamiltonObject::DoubleRay(_)), || "ZxZ2: not a double ray".into())?;
    consistent(&zz2, c, R_FACTOR, "ZxZ2")?;
    let g = ok(Group::integers(&[1, 3]), "Z{1,3}")?;
    let (a, b) = (g.gens.label_of(&Element::Int(1)).ok_or("1")?, g.gens.label_of(&Element::Int(3)).ok_or("3")?);
    let bad = factor_group_lift(&g, &SubgroupSpec::GeneratedBy(vec![Element::Int(2)]), &[a, b]);
    ensure(matches!(bad, Err(hamcircle::Error::ProductDoesNotGenerate)), || format!("counterexample gave {bad:?}"))?;
    Ok(format!("{finite:?} cycles accepted by the oracle; Z and ZxZ2 double rays at radius {R_FACTOR}; 1+3 = 4 in 2Z rejected"))
}

fn covers() -> Outcome {
    let g = ok(Group::integers(&[1, 3]), "group")?;
    let (one, three) = (g.gens.label_of(&Element::Int(1)).ok_or("1")?, g.gens.label_of(&Element::Int(3)).ok_or("3")?);
    for (cycle, k) in [(vec![one, one], 1), (vec![one, three], 2), (vec![three, three], 3)] {
        let c = ok(hamilton_cover_from_factor(&g, &Element::Int(2), &cycle), "cover")?;
        let kind_ok = match (&c.object, k) {
            (HamiltonObject::DoubleRay(_), 1) => true,
            (HamiltonObject::Circle(CircleDescription::TwoRayCircle(..)), 2) => true,
            (HamiltonObject::Cover(h), 3) => h.order() == 3,
            _ => false,
        };
        ensure(kind_ok, || format!("x = a^{k}: wrong object kind"))?;
        let rep = consistent(&g, c, R_COVER, &format!("x = a^{k}"))?;
        ensure(rep.coverage == Coverage::Exact, || format!("x = a^{k}: partition not exact"))?;
    }
    Ok(format!("double ray, circle and order-3 cover at radius {R_COVER}"))
}

fn genset_arithmetic() -> Outcome {
    for r in 2..=5 {
        let n = ok(free_group_genset(r), "free")?.report.symbol_count;
        ensure(n == 6 * r - 2, || format!("rank {r}: {n} symbols"))?;
    }
    let z3 = ok(Group::finite(CayleyTable::cyclic(3).map_err(|e| e.to_string())?, &[1]), "Z3")?;
    let g = ok(Group::product(&ok(Group::free(2), "F2")?, &z3), "F2xZ3")?;
    let basis = [Element::pair(Element::Free(vec![1]), Element::Fin(0)), Element::pair(Element::Free(vec![2]), Element::Fin(0))];
    let c = ok(context_free_genset(&g, &basis, SearchBudget::default()), "F2xZ3")?;
    let expect = 3f64.log2() + 1.0 + 6.0 * 2.0 * (6.0 * 2.0 + 1.0);
    let got = c.report.size_bound.ok_or("no bound")?;
    ensure((got - expect).abs() < BOUND_EPS, || format!("F2xZ3 bound {got} != {expect}"))?;
    ensure((context_free_bound(3, 2) - expect).abs() < BOUND_EPS, || "bound formula".into())?;
    let z2 = ok(Group::finite(CayleyTable::cyclic(2).map_err(|e| e.to_string())?, &[1]), "Z2")?;
    let zz2 = ok(Group::product(&ok(Group::integers(&[1]), "Z")?, &z2), "ZxZ2")?;
    let mut v = ok(context_free_genset(&zz2, &[Element::pair(Element::Int(1), Element::Fin(0))], SearchBudget::default()), "ZxZ2")?;
    let expect1 = 1.0 + 1.0 + 6.0 * 7.0;
    let got1 = v.report.size_bound.ok_or("no bound")?;
    ensure((got1 - expect1).abs() < BOUND_EPS, || format!("ZxZ2 bound {got1} != {expect1}"))?;
    let circle = v.circle.take().ok_or("virtually-Z route built no circle")?;
    consistent(&v.group, circle, R_VIRTUALLY_Z, "ZxZ2 circle")?;
    Ok(format!("6r-2 for r = 2..5; bounds {got:.3} (m=3, rank 2) and {got1} (m=2, rank 1); circle at radius {R_VIRTUALLY_Z}"))
}

fn oracle() -> Outcome {
    let b = SearchBudget::default();
    ensure(ok(hamilton_cycle(&FiniteGraph::petersen(), b), "petersen")? == SearchOutcome::None, || "Petersen has a cycle".into())?;
    let mut graphs = vec![("Q3".to_string(), FiniteGraph::hypercube(3)), ("K4".to_string(), FiniteGraph::complete(4))];
    for t in CayleyTable::corpus() {
        let cyclic = t.name.strip_prefix('Z').is_some_and(|n| n.chars().all(|c| c.is_ascii_digit()));
        if cyclic {
            let g = ok(Group::finite(t.clone(), &t.generators), &t.name)?;
            graphs.push((format!("C{}(1)", t.order()), ok(FiniteGraph::cayley(&g), "cayley")?));
            graphs.push((format!("C{}(1,2)", t.order()), FiniteGraph::circulant(t.order(), &[1, 2])));
        }
    }
    for (name, fg) in &graphs {
        let SearchOutcome::Found(seq) = ok(hamilton_cycle(fg, b), name)? else { return Err(format!("{name}: no cycle")) };
        ensure(validate_hamilton(fg, &seq, true), || format!("{name}: invalid cycle"))?;
    }
    let run = || -> Result<String, String> {
        let mut s = String::new();
        for (name, fg) in &graphs {
            s += &format!("{:?}\n", ok(hamilton_cycle(fg, b), name)?);
        }
        s += &format!("{:?}\n", ok(hamilton_cycle(&FiniteGraph::petersen(), b), "petersen")?);
        Ok(s)
    };
    ensure(run()? == run()?, || "two runs differ".into())?;
    Ok(format!("Petersen has none; {} graphs have validated cycles; two runs byte-identical", graphs.len()))
}

/// All words of length at most `n` over `k` symbols.
fn words(k: usize, n: usize) -> Vec<Vec<Symbol>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..n {
        let next: Vec<Vec<Symbol>> =
            layer.iter().flat_map(|w: &Vec<Symbol>| (0..k as Symbol).map(move |s| [w.as_slice(), &[s]].concat())).collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Normal forms agree with the closed form exactly when the map between
/// them is well defined and injective on all words.
fn agrees<T: Clone + Eq + std::hash::Hash + std::fmt::Debug>(
    rs: &hamcircle::rewrite::RewriteSystem,
    eval: impl Fn(&[Symbol]) -> T,
    k: usize,
) -> Result<usize, String> {
    let mut fwd: HashMap<Vec<Symbol>, T> = HashMap::new();
    let mut back: HashMap<T, Vec<Symbol>> = HashMap::new();
    let all = words(k, MAX_WORD);
    for w in &all {
        let nf = ok(rs.normalize(w), "normalize")?;
        let x = eval(w);
        if let Some(y) = fwd.insert(nf.clone(), x.clone()) {
            ensure(y == x, || format!("word {w:?}: normal form {nf:?} maps to {y:?} and {x:?}"))?;
        }
        if let Some(m) = back.insert(x.clone(), nf.clone()) {
            ensure(m == nf, || format!("word {w:?}: {x:?} has normal forms {m:?} and {nf:?}"))?;
        }
    }
    Ok(all.len())
}

fn rewriting() -> Outcome {
    let dinf = ok(complete_default(&ok(Presentation::parse("gen: a b ; rel: b^2, (b a)^2"), "parse")?), "complete")?;
    let d = Family::InfiniteDihedral;
    let gens = [Element::dih(1, false), Element::dih(-1, false), Element::dih(0, true), Element::dih(0, true)];
    let n1 = agrees(&dinf, |w| w.iter().fold(d.identity(), |x, &s| d.mul(&x, &gens[s as usize]).unwrap()), 4)?;
    // (abc)^2 with a, b, c involutions and ab = ba is the amalgam of ⟨a, b⟩ and ⟨ab, c⟩ over ⟨ab⟩
    let pres = ok(Presentation::parse("gen: a b c ; rel: a^2, b^2, c^2, (a b)^2, (a b c)^2"), "parse")?;
    let rs = ok(complete_default(&pres), "complete")?;
    let k = CayleyTable::elementary_abelian_2(2).map_err(|e| e.to_string())?;
    let (x, y) = (k.generators[0], k.generators[1]);
    let xy = k.mul(x, y);
    let am = ok(Amalgam::new(k.clone(), k, vec![(0, 0), (xy, x)]), "amalgam")?;
    let letters = [am.embed(0, x), am.embed(0, y), am.embed(1, y)];
    let n2 = agrees(
        &rs,
        |w| w.iter().fold(am.embed(0, 0), |acc, &s| am.mul(&acc, &letters[s as usize / 2])),
        6,
    )?;
    Ok(format!("{n1} D∞ words and {n2} case-(i) m=2 words up to length {MAX_WORD} agree"))
}

fn negative_control() -> Outcome {
    let z2 = CayleyTable::cyclic(2).map_err(|e| e.to_string())?;
    let k = CayleyTable::elementary_abelian_2(2).map_err(|e| e.to_string())?;
    let (x, y) = (k.generators[0], k.generators[1]);
    let am = ok(Amalgam::new(z2, k, vec![(0, 0)]), "amalgam")?;
    let el = |f: u8, g: u32| Element::Amal { core: 0, reps: vec![(f, g)] };
    let g = ok(Group::from_elements(Family::Amalgam(Arc::new(am)), vec![el(0, 1), el(1, x), el(1, y)]), "group")?;
    let w = ok(cayley_window(&g, R_NEGATIVE), "window")?;
    match ok(is_k_connected_window(&w, &g, 2), "connectivity")? {
        Evidence::RefutedWithCut { cut_edge: Some((u, l, v)), .. } => {
            let name = &g.gens.get(l).ok_or("label")?.name;
            Ok(format!("cut edge {} -{name}- {} at radius {R_NEGATIVE}", g.format(&u), g.format(&v)))
        }
        Evidence::RefutedWithCut { cut_edge: None, vertices, .. } => Err(format!("cut vertices {} but no cut edge", vertices.len())),
        Evidence::Supported { note } => Err(format!("window looks 2-connected: {note}")),
    }
}

/// Writes past the test harness's output capture so every run shows the lines.
fn report(line: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}").and_then(|_| out.flush());
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 12] = [
        ("integer double rays", integers),
        ("D∞ double rays and circles", dihedral),
        ("index-two lifts", lifting),
        ("splittings over a finite core", splitting),
        ("cubic involution circles", rapaport),
        ("small Hamiltonian generating sets", pak),
        ("factor-group lift", factor),
        ("Hamilton covers", covers),
        ("generating-set size arithmetic", genset_arithmetic),
        ("oracle ground truth", oracle),
        ("rewriting against closed forms", rewriting),
        ("negative control", negative_control),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        match out {
            Ok(detail) => report(&format!("PASS {:>2} {name}: {detail}", i + 1)),
            Err(why) => {
                report(&format!("FAIL {:>2} {name}: {why}", i + 1));
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria {failed:?}");
}
