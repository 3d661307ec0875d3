//! Window verification of double rays, circles and covers, and the checker
//! for the disjoint-cycle / 4-cycle hypotheses on one-ended graphs.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{defining_cut_sequence, cayley_window, EdgeCut, EndsHint, FiniteGraph, GraphWindow};
use crate::group::{Element, Group};
use crate::oracle::validate_hamilton;
use crate::rays::{cycle_vertices, CircleDescription, DoubleRay, GeneratorWord, HamiltonCover, Tail};

/// Periods that must lie entirely outside the window before a tail stops
/// being unrolled.
pub const EXIT_PERIODS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coverage {
    Exact,
    Violated { witness: Element },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Injectivity {
    Pass,
    Collision { witness: Element },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Degrees {
    AllTwo,
    Violation { witness: Element, degree: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutCrossing {
    pub id: String,
    pub count: usize,
    /// Edge-disjoint paths of the object joining the far boundaries of the two
    /// sides of the cut (the degree of the separated ends in the object).
    pub linkage: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    ConsistentWithHamiltonCircle { evidence: String },
    Refuted { reason: String, witness: Vec<Element> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub radius: usize,
    pub window_vertices: usize,
    pub unrolled_steps: usize,
    pub coverage: Coverage,
    pub injectivity: Injectivity,
    pub degrees: Degrees,
    pub crossings: Vec<CutCrossing>,
    /// Whether every ray sends its two tails to different sides of every
    /// two-sided cut; `None` when not checked.
    pub tails_split: Option<bool>,
    pub verdict: Verdict,
    /// Window edges `(i, j)`, `i < j`, used by the object.
    #[serde(skip)]
    pub object_edges: HashSet<(usize, usize)>,
}

impl VerificationReport {
    pub fn is_consistent(&self) -> bool {
        matches!(self.verdict, Verdict::ConsistentWithHamiltonCircle { .. })
    }

    /// Line-oriented text form.
    pub fn render(&self, g: &Group) -> String {
        let mut s = format!("radius {}\nwindow {}\nunrolled {}\n", self.radius, self.window_vertices, self.unrolled_steps);
        s += &match &self.coverage {
            Coverage::Exact => "coverage exact\n".to_string(),
            Coverage::Violated { witness } => format!("coverage violated at {}\n", g.format(witness)),
        };
        s += &match &self.injectivity {
            Injectivity::Pass => "injectivity pass\n".to_string(),
            Injectivity::Collision { witness } => format!("injectivity collision at {}\n", g.format(witness)),
        };
        s += &match &self.degrees {
            Degrees::AllTwo => "degrees all-2\n".to_string(),
            Degrees::Violation { witness, degree } => format!("degree {} at {}\n", degree, g.format(witness)),
        };
        for c in &self.crossings {
            match c.linkage {
                Some(l) => s += &format!("cut {} crossed {} linkage {}\n", c.id, c.count, l),
                None => s += &format!("cut {} crossed {}\n", c.id, c.count),
            }
        }
        if let Some(t) = self.tails_split {
            s += &format!("tails split {t}\n");
        }
        s += &match &self.verdict {
            Verdict::ConsistentWithHamiltonCircle { evidence } => format!("verdict consistent ({evidence})\n"),
            Verdict::Refuted { reason, witness } => {
                let ws: Vec<String> = witness.iter().map(|x| g.format(x)).collect();
                format!("verdict refuted: {} [{}]\n", reason, ws.join(", "))
            }
        };
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    DoubleRay,
    Circle,
    Family,
    Cover,
}

struct RayTrace {
    pos_exit: Option<usize>,
    neg_exit: Option<usize>,
}

/// Accumulates unrolled rays of one object.
struct Trace<'a> {
    g: &'a Group,
    w: &'a GraphWindow,
    owner: HashMap<Element, usize>,
    edges: Vec<(Element, Element)>,
    collision: Option<Element>,
    steps: usize,
    cap: usize,
}

impl<'a> Trace<'a> {
    fn new(g: &'a Group, w: &'a GraphWindow) -> Self {
        Trace { g, w, owner: HashMap::new(), edges: Vec::new(), collision: None, steps: 0, cap: 64 * w.len() + 4096 }
    }

    fn visit(&mut self, v: &Element, id: usize) -> bool {
        if self.owner.contains_key(v) {
            self.collision = Some(v.clone());
            return false;
        }
        self.owner.insert(v.clone(), id);
        true
    }

    /// Walks `tail` from `base` until `EXIT_PERIODS` consecutive periods stay
    /// outside the window. Returns the last in-window vertex index.
    fn walk(&mut self, base: &Element, tail: &Tail, id: usize) -> Result<Option<usize>> {
        let mut v = base.clone();
        let mut last = self.w.index_of(base);
        let p = tail.period.len();
        let mut outside_periods = 0;
        let mut block_inside = false;
        let mut i = 0usize;
        loop {
            if i >= tail.prefix.len() && (i - tail.prefix.len()).is_multiple_of(p) && i > tail.prefix.len() {
                outside_periods = if block_inside { 0 } else { outside_periods + 1 };
                block_inside = false;
                if outside_periods >= EXIT_PERIODS {
                    return Ok(last);
                }
            }
            if i > self.cap {
                return Err(Error::UnrollTooShort(format!("tail still meets the window after {} steps", self.cap)));
            }
            let u = self.g.step(&v, tail.letter(i))?;
            self.edges.push((v.clone(), u.clone()));
            self.steps += 1;
            if !self.visit(&u, id) {
                return Ok(last);
            }
            if let Some(k) = self.w.index_of(&u) {
                last = Some(k);
                if i >= tail.prefix.len() {
                    block_inside = true;
                }
            }
            v = u;
            i += 1;
        }
    }

    fn double_ray(&mut self, r: &DoubleRay, id: usize) -> Result<Option<RayTrace>> {
        r.check_labels(self.g)?;
        if !self.visit(&r.base, id) {
            return Ok(None);
        }
        let pos_exit = self.walk(&r.base, &r.positive, id)?;
        if self.collision.is_some() {
            return Ok(None);
        }
        let neg_exit = self.walk(&r.base, &r.negative, id)?;
        if self.collision.is_some() {
            return Ok(None);
        }
        Ok(Some(RayTrace { pos_exit, neg_exit }))
    }

    fn finish(self, rays: &[RayTrace], cuts: &[EdgeCut], mode: Mode) -> VerificationReport {
        let w = self.w;
        let mut reasons: Vec<(String, Vec<Element>)> = Vec::new();
        let injectivity = match &self.collision {
            None => Injectivity::Pass,
            Some(x) => {
                reasons.push(("vertex visited twice".into(), vec![x.clone()]));
                Injectivity::Collision { witness: x.clone() }
            }
        };
        let coverage = match (0..w.len()).find(|&u| !self.owner.contains_key(&w.vertices[u])) {
            None => Coverage::Exact,
            Some(u) => {
                reasons.push(("window vertex not covered".into(), vec![w.vertices[u].clone()]));
                Coverage::Violated { witness: w.vertices[u].clone() }
            }
        };
        let mut deg = vec![0usize; w.len()];
        let mut ray_edges = HashSet::new();
        for (a, b) in &self.edges {
            let (ia, ib) = (w.index_of(a), w.index_of(b));
            if let Some(i) = ia {
                deg[i] += 1;
            }
            if let Some(i) = ib {
                deg[i] += 1;
            }
            if let (Some(i), Some(j)) = (ia, ib) {
                ray_edges.insert(GraphWindow::edge_key(i, j));
            }
        }
        let degrees = match (0..w.len()).find(|&u| self.owner.contains_key(&w.vertices[u]) && deg[u] != 2) {
            None => Degrees::AllTwo,
            Some(u) if self.collision.is_none() => {
                reasons.push(("covered vertex without degree two".into(), vec![w.vertices[u].clone()]));
                Degrees::Violation { witness: w.vertices[u].clone(), degree: deg[u] }
            }
            Some(u) => Degrees::Violation { witness: w.vertices[u].clone(), degree: deg[u] },
        };
        let crossings: Vec<CutCrossing> = cuts
            .iter()
            .map(|c| CutCrossing {
                id: c.id.clone(),
                count: c.edges.iter().filter(|e| ray_edges.contains(e)).count(),
                linkage: (mode == Mode::Circle && c.sides.len() == 2).then(|| linkage(w, &ray_edges, c)),
            })
            .collect();
        if self.collision.is_none() {
            for (c, x) in cuts.iter().zip(&crossings) {
                let bad = match mode {
                    Mode::DoubleRay => x.count % 2 == 0,
                    Mode::Circle => x.count % 2 == 1 || x.count == 0 || x.linkage.is_some_and(|l| l != 2),
                    Mode::Family => x.count != 2,
                    Mode::Cover => false,
                };
                if bad {
                    let ends: Vec<Element> = c.edges.iter().flat_map(|&(a, b)| [w.vertices[a].clone(), w.vertices[b].clone()]).collect();
                    let why = match x.linkage {
                        Some(l) if l != 2 => format!("cut {} joined by {} disjoint paths", c.id, l),
                        _ => format!("cut {} crossed {} times", c.id, x.count),
                    };
                    reasons.push((why, ends));
                }
            }
        }
        let tails_split = if matches!(mode, Mode::DoubleRay | Mode::Circle) && self.collision.is_none() && !cuts.is_empty() {
            let mut ok = true;
            'outer: for c in cuts.iter().filter(|c| c.sides.len() == 2) {
                let side = |u: Option<usize>| u.and_then(|u| c.sides.iter().position(|s| s.contains(&u)));
                for r in rays {
                    let (a, b) = (side(r.pos_exit), side(r.neg_exit));
                    if a.is_none() || a == b {
                        let wit: Vec<Element> = [r.pos_exit, r.neg_exit].iter().flatten().map(|&u| w.vertices[u].clone()).collect();
                        reasons.push((format!("both tails end on one side of cut {}", c.id), wit));
                        ok = false;
                        break 'outer;
                    }
                }
            }
            Some(ok)
        } else {
            None
        };
        let verdict = match reasons.into_iter().next() {
            Some((reason, witness)) => Verdict::Refuted { reason, witness },
            None => Verdict::ConsistentWithHamiltonCircle {
                evidence: match mode {
                    Mode::Family => "cut-crossing evidence on labeled cuts".into(),
                    _ if cuts.is_empty() => "window coverage and injectivity".into(),
                    _ => "window coverage, injectivity and cut crossings".into(),
                },
            },
        };
        VerificationReport {
            radius: w.radius,
            window_vertices: w.len(),
            unrolled_steps: self.steps,
            coverage,
            injectivity,
            degrees,
            crossings,
            tails_split,
            verdict,
            object_edges: ray_edges,
        }
    }
}

/// Maximum number of edge-disjoint paths along `edges` between the boundary
/// vertices of the two sides of `cut`.
fn linkage(w: &GraphWindow, edges: &HashSet<(usize, usize)>, cut: &EdgeCut) -> usize {
    let far = |side: &Vec<usize>| -> HashSet<usize> { side.iter().copied().filter(|&u| w.dist[u] == w.radius).collect() };
    let (src, dst) = (far(&cut.sides[0]), far(&cut.sides[1]));
    let mut adj: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut flow: HashMap<(usize, usize), i32> = HashMap::new();
    let mut total = 0;
    loop {
        let mut parent: HashMap<usize, usize> = HashMap::new();
        let mut seen: HashSet<usize> = src.clone();
        let mut queue: VecDeque<usize> = {
            let mut v: Vec<usize> = src.iter().copied().collect();
            v.sort_unstable();
            v.into()
        };
        let mut end = None;
        while let Some(u) = queue.pop_front() {
            if dst.contains(&u) {
                end = Some(u);
                break;
            }
            for &v in adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
                if !seen.contains(&v) && flow.get(&(u, v)).copied().unwrap_or(0) < 1 {
                    seen.insert(v);
                    parent.insert(v, u);
                    queue.push_back(v);
                }
            }
        }
        let Some(mut v) = end else { return total };
        while let Some(&u) = parent.get(&v) {
            *flow.entry((u, v)).or_default() += 1;
            *flow.entry((v, u)).or_default() -= 1;
            v = u;
        }
        total += 1;
    }
}

fn two_ended_cuts(w: &GraphWindow, g: &Group) -> Result<Vec<EdgeCut>> {
    if !g.is_two_ended() || w.radius < 4 {
        return Ok(Vec::new());
    }
    match defining_cut_sequence(w, g, &EndsHint::TwoEnded) {
        Ok(c) => Ok(c),
        Err(Error::HintUnsupported(_)) => Ok(Vec::new()),
        Err(e) => Err(e),
    }
}

/// Checks that `r` is a spanning double ray of the window whose tails go to
/// different ends (when the group is two-ended).
pub fn verify_double_ray(w: &GraphWindow, g: &Group, r: &DoubleRay) -> Result<VerificationReport> {
    let cuts = two_ended_cuts(w, g)?;
    let mut t = Trace::new(g, w);
    let rays: Vec<RayTrace> = t.double_ray(r, 0)?.into_iter().collect();
    Ok(t.finish(&rays, &cuts, Mode::DoubleRay))
}

/// Checks a circle description against a window and the supplied cuts.
pub fn verify_circle(w: &GraphWindow, g: &Group, c: &CircleDescription, cuts: &[EdgeCut]) -> Result<VerificationReport> {
    match c {
        CircleDescription::FiniteCycle { base, word } => verify_finite_cycle(w, g, base, word),
        CircleDescription::TwoRayCircle(r1, r2) => {
            if cuts.is_empty() {
                return Err(Error::CutsMissing);
            }
            let mut t = Trace::new(g, w);
            let mut rays = Vec::new();
            for (id, r) in [r1, r2].into_iter().enumerate() {
                match t.double_ray(r, id)? {
                    Some(tr) => rays.push(tr),
                    None => break,
                }
            }
            Ok(t.finish(&rays, cuts, Mode::Circle))
        }
        CircleDescription::RayFamily { template, .. } => {
            if cuts.is_empty() {
                return Err(Error::CutsMissing);
            }
            let mut t = Trace::new(g, w);
            let mut rays = Vec::new();
            for u in 0..w.len() {
                let v = &w.vertices[u];
                if t.owner.contains_key(v) {
                    continue;
                }
                let copy = template.translate(g, v)?;
                match t.double_ray(&copy, rays.len())? {
                    Some(tr) => rays.push(tr),
                    None => break,
                }
            }
            Ok(t.finish(&rays, cuts, Mode::Family))
        }
    }
}

fn verify_finite_cycle(w: &GraphWindow, g: &Group, base: &Element, word: &GeneratorWord) -> Result<VerificationReport> {
    let verts = cycle_vertices(g, base, word)?;
    let mut t = Trace::new(g, w);
    for (i, v) in verts.iter().enumerate() {
        if !t.visit(v, 0) {
            break;
        }
        t.edges.push((v.clone(), verts[(i + 1) % verts.len()].clone()));
        t.steps += 1;
    }
    let mut report = t.finish(&[], &[], Mode::Circle);
    if report.is_consistent() && verts.len() < 3 {
        report.verdict = Verdict::Refuted { reason: "cycle shorter than 3".into(), witness: verts.clone() };
    }
    // cross-check against the whole Cayley graph when the window is the group
    if report.is_consistent() && g.family.order() == Some(w.len()) {
        let fg = FiniteGraph::cayley(g)?;
        let elems = g.family.all_elements().unwrap();
        let index: HashMap<&Element, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let seq: Vec<usize> = verts.iter().map(|v| index[v]).collect();
        if !validate_hamilton(&fg, &seq, true) {
            report.verdict = Verdict::Refuted { reason: "not a Hamilton cycle of the Cayley graph".into(), witness: verts };
        }
    }
    Ok(report)
}

/// Checks that the rays of `h` partition the window.
pub fn verify_cover(w: &GraphWindow, g: &Group, h: &HamiltonCover) -> Result<VerificationReport> {
    let cuts = two_ended_cuts(w, g)?;
    let mut t = Trace::new(g, w);
    let mut rays = Vec::new();
    for (id, r) in h.rays.iter().enumerate() {
        match t.double_ray(r, id)? {
            Some(tr) => rays.push(tr),
            None => break,
        }
    }
    Ok(t.finish(&rays, &cuts, Mode::Cover))
}

/// Verifies at each radius in turn; stops at the first refutation.
pub fn verify_at_radii<F>(g: &Group, radii: &[usize], mut check: F) -> Result<Vec<VerificationReport>>
where
    F: FnMut(&GraphWindow) -> Result<VerificationReport>,
{
    let mut out = Vec::new();
    for &r in radii {
        let w = cayley_window(g, r)?;
        let rep = check(&w)?;
        let stop = !rep.is_consistent();
        out.push(rep);
        if stop {
            break;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub checks: Vec<HypothesisCheck>,
}

impl HypothesisReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

type Edge = (Element, Element);

fn cycle_edges(verts: &[Element]) -> HashSet<Edge> {
    (0..verts.len())
        .map(|i| {
            let (a, b) = (verts[i].clone(), verts[(i + 1) % verts.len()].clone());
            if a <= b { (a, b) } else { (b, a) }
        })
        .collect()
}

/// Evaluates, inside the window, the hypotheses on a family `r` of disjoint
/// cycles and a family `s4` of 4-cycles: `r` partitions the vertices, `s4`
/// covers them, two 4-cycles meet in at most one vertex, an `r`-cycle meets a
/// 4-cycle in a common edge or not at all, and every edge lies on some cycle.
/// Covering is checked on vertices at distance at most `radius − longest cycle`.
pub fn check_rapaport_hypotheses(
    w: &GraphWindow,
    g: &Group,
    r: &[(Element, GeneratorWord)],
    s4: &[(Element, GeneratorWord)],
) -> Result<HypothesisReport> {
    let rv: Vec<Vec<Element>> = r.iter().map(|(b, wd)| cycle_vertices(g, b, wd)).collect::<Result<_>>()?;
    let mut sv = Vec::new();
    for (b, wd) in s4 {
        if wd.len() != 4 {
            return Err(Error::MalformedCycle(format!("expected a 4-cycle, got length {}", wd.len())));
        }
        let v = cycle_vertices(g, b, wd)?;
        if v.iter().collect::<HashSet<_>>().len() != 4 {
            return Err(Error::MalformedCycle("4-cycle repeats a vertex".into()));
        }
        sv.push(v);
    }
    let longest = rv.iter().chain(&sv).map(|c| c.len()).max().unwrap_or(0);
    let inner: Vec<usize> = w.interior(longest.min(w.radius));
    let fmt = |x: &Element| g.format(x);
    let mut checks = Vec::new();
    let mut push = |name: &str, witness: Option<String>| {
        checks.push(HypothesisCheck { name: name.into(), passed: witness.is_none(), witness })
    };

    let mut r_owner: HashMap<&Element, usize> = HashMap::new();
    let mut clash = None;
    for (i, c) in rv.iter().enumerate() {
        for v in c {
            if let Some(&j) = r_owner.get(v) {
                if j != i && clash.is_none() {
                    clash = Some(fmt(v));
                }
            }
            r_owner.insert(v, i);
        }
    }
    push("disjoint cycles are pairwise disjoint", clash);
    let miss = inner.iter().find(|&&u| !r_owner.contains_key(&w.vertices[u]));
    push("disjoint cycles cover every vertex", miss.map(|&u| fmt(&w.vertices[u])));

    let mut s_of: HashMap<&Element, Vec<usize>> = HashMap::new();
    for (i, c) in sv.iter().enumerate() {
        for v in c {
            s_of.entry(v).or_default().push(i);
        }
    }
    let miss = inner.iter().find(|&&u| !s_of.contains_key(&w.vertices[u]));
    push("4-cycles cover every vertex", miss.map(|&u| fmt(&w.vertices[u])));

    let sets: Vec<HashSet<&Element>> = sv.iter().map(|c| c.iter().collect()).collect();
    let mut bad = None;
    'pairs: for list in s_of.values() {
        for (x, &i) in list.iter().enumerate() {
            for &j in &list[x + 1..] {
                if sets[i].intersection(&sets[j]).count() > 1 {
                    bad = Some(format!("{} / {}", fmt(&sv[i][0]), fmt(&sv[j][0])));
                    break 'pairs;
                }
            }
        }
    }
    push("two 4-cycles meet in a single vertex", bad);

    let s_edges: Vec<HashSet<Edge>> = sv.iter().map(|c| cycle_edges(c)).collect();
    let r_edges: Vec<HashSet<Edge>> = rv.iter().map(|c| cycle_edges(c)).collect();
    let mut bad = None;
    'rs: for (i, c) in rv.iter().enumerate() {
        let touching: HashSet<usize> = c.iter().flat_map(|v| s_of.get(v).cloned().unwrap_or_default()).collect();
        let mut touching: Vec<usize> = touching.into_iter().collect();
        touching.sort_unstable();
        for j in touching {
            let common: Vec<&Element> = c.iter().filter(|v| sets[j].contains(v)).collect();
            let shared = r_edges[i].intersection(&s_edges[j]).count();
            if common.len() != 2 || shared != 1 {
                bad = Some(format!("{} / {}", fmt(&c[0]), fmt(&sv[j][0])));
                break 'rs;
            }
        }
    }
    push("a disjoint cycle meets a 4-cycle in a common edge", bad);

    let all_edges: HashSet<&Edge> = r_edges.iter().chain(&s_edges).flatten().collect();
    let inner_set: HashSet<usize> = inner.iter().copied().collect();
    let miss = w.edges.iter().find(|&&(u, _, v)| {
        if !inner_set.contains(&u) || !inner_set.contains(&v) {
            return false;
        }
        let (a, b) = (w.vertices[u].clone(), w.vertices[v].clone());
        let e = if a <= b { (a, b) } else { (b, a) };
        !all_edges.contains(&e)
    });
    push(
        "every edge lies on a cycle",
        miss.map(|&(u, l, v)| format!("{} -{}- {}", fmt(&w.vertices[u]), w.labels[l], fmt(&w.vertices[v]))),
    );
    Ok(HypothesisReport { checks })
}
