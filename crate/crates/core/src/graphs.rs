//! Finite windows of Cayley graphs, finite graphs for quotients and Schreier
//! graphs, edge cuts, connectivity evidence and export.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, Group, Label, SubgroupSpec};
use crate::rays::GeneratorWord;

/// The ball of radius `r` around the identity in a Cayley graph.
#[derive(Debug, Clone)]
pub struct GraphWindow {
    pub radius: usize,
    pub vertices: Vec<Element>,
    pub dist: Vec<usize>,
    index: HashMap<Element, usize>,
    /// `adj[u]` lists `(v, s)` with `vertices[u]·s = vertices[v]`, in label order.
    adj: Vec<Vec<(usize, Label)>>,
    /// Undirected edges `(u, s, v)` with `u·s = v` and `s` the lesser label of
    /// `{s, s⁻¹}`; sorted.
    pub edges: Vec<(usize, Label, usize)>,
    pub labels: Vec<String>,
}

pub fn cayley_window(g: &Group, r: usize) -> Result<GraphWindow> {
    let ball = g.ball(r)?;
    let vertices: Vec<Element> = ball.iter().map(|b| b.0.clone()).collect();
    let dist: Vec<usize> = ball.iter().map(|b| b.1).collect();
    let index: HashMap<Element, usize> = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let mut adj = vec![Vec::new(); vertices.len()];
    let mut edges = Vec::new();
    for (u, x) in vertices.iter().enumerate() {
        for l in 0..g.gens.len() {
            let y = g.step(x, l)?;
            if let Some(&v) = index.get(&y) {
                adj[u].push((v, l));
                let li = g.gens.inverse(l);
                if l < li || (l == li && u < v) {
                    edges.push((u, l, v));
                }
            }
        }
    }
    edges.sort_unstable();
    let labels = g.gens.iter().map(|s| s.name.clone()).collect();
    Ok(GraphWindow { radius: r, vertices, dist, index, adj, edges, labels })
}

impl GraphWindow {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn neighbors(&self, u: usize) -> &[(usize, Label)] {
        &self.adj[u]
    }

    pub fn boundary(&self) -> Vec<usize> {
        (0..self.len()).filter(|&u| self.dist[u] == self.radius).collect()
    }

    /// Vertices at distance at most `radius − margin`.
    pub fn interior(&self, margin: usize) -> Vec<usize> {
        let lim = self.radius.saturating_sub(margin);
        (0..self.len()).filter(|&u| self.dist[u] <= lim).collect()
    }

    pub fn edge_key(u: usize, v: usize) -> (usize, usize) {
        (u.min(v), u.max(v))
    }

    /// Components of the window with `removed_vertices` and `removed_edges`
    /// deleted, as sorted vertex lists in order of their least vertex.
    pub fn components(&self, removed_vertices: &HashSet<usize>, removed_edges: &HashSet<(usize, usize)>) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if comp[s] != usize::MAX || removed_vertices.contains(&s) {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut head = 0;
            while head < members.len() {
                let u = members[head];
                head += 1;
                for &(v, _) in &self.adj[u] {
                    if comp[v] == usize::MAX
                        && !removed_vertices.contains(&v)
                        && !removed_edges.contains(&Self::edge_key(u, v))
                    {
                        comp[v] = id;
                        members.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    fn touches_boundary(&self, comp: &[usize]) -> bool {
        comp.iter().any(|&u| self.dist[u] == self.radius)
    }

    /// Edges with exactly one endpoint in `side`.
    pub fn edge_boundary(&self, side: &HashSet<usize>) -> Vec<(usize, usize)> {
        let mut out = BTreeSet::new();
        for &u in side {
            for &(v, _) in &self.adj[u] {
                if !side.contains(&v) {
                    out.insert(Self::edge_key(u, v));
                }
            }
        }
        out.into_iter().collect()
    }

    /// Restriction to the ball of a smaller radius.
    pub fn restrict(&self, r: usize) -> GraphWindow {
        let keep: Vec<usize> = (0..self.len()).filter(|&u| self.dist[u] <= r).collect();
        let remap: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let vertices: Vec<Element> = keep.iter().map(|&u| self.vertices[u].clone()).collect();
        let dist = keep.iter().map(|&u| self.dist[u]).collect();
        let index = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let adj = keep
            .iter()
            .map(|&u| self.adj[u].iter().filter_map(|&(v, l)| remap.get(&v).map(|&v2| (v2, l))).collect())
            .collect();
        let mut edges: Vec<(usize, Label, usize)> = self
            .edges
            .iter()
            .filter_map(|&(u, l, v)| Some((*remap.get(&u)?, l, *remap.get(&v)?)))
            .collect();
        edges.sort_unstable();
        GraphWindow { radius: r, vertices, dist, index, adj, edges, labels: self.labels.clone() }
    }

    /// One line per edge; `highlight` edges are drawn bold and red.
    pub fn to_dot(&self, g: &Group, highlight: &HashSet<(usize, usize)>) -> String {
        let mut s = String::from("graph window {\n");
        for (u, x) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{u} [label=\"{}\"];", g.format(x));
        }
        for &(u, l, v) in &self.edges {
            let style = if highlight.contains(&Self::edge_key(u, v)) { ", color=red, penwidth=3" } else { "" };
            let _ = writeln!(s, "  v{u} -- v{v} [label=\"{}\"{style}];", self.labels[l]);
        }
        s.push_str("}\n");
        s
    }

    /// Stable text dump: vertices with distances, then edges.
    pub fn to_text(&self, g: &Group) -> String {
        let mut s = format!("radius {}\nvertices {}\n", self.radius, self.len());
        for (u, x) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "{u} {} {}", self.dist[u], g.format(x));
        }
        let _ = writeln!(s, "edges {}", self.edges.len());
        for &(u, l, v) in &self.edges {
            let _ = writeln!(s, "{u} {v} {}", self.labels[l]);
        }
        s
    }
}

/// An undirected simple graph; parallel labels between the same pair of
/// vertices are kept as a list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGraph {
    pub names: Vec<String>,
    adj: Vec<Vec<usize>>,
    labels: BTreeMap<(usize, usize), Vec<String>>,
}

impl FiniteGraph {
    pub fn new(n: usize) -> Self {
        FiniteGraph { names: (0..n).map(|i| i.to_string()).collect(), adj: vec![Vec::new(); n], labels: BTreeMap::new() }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v, "")?;
        }
        Ok(g)
    }

    /// Adds `{u, v}`; loops are ignored and repeated pairs only add a label.
    pub fn add_edge(&mut self, u: usize, v: usize, label: &str) -> Result<()> {
        let n = self.adj.len();
        if u >= n || v >= n {
            return Err(Error::MalformedCycle(format!("edge ({u}, {v}) out of range")));
        }
        if u == v {
            return Ok(());
        }
        let key = GraphWindow::edge_key(u, v);
        let entry = self.labels.entry(key).or_default();
        if entry.is_empty() {
            self.adj[u].push(v);
            self.adj[v].push(u);
            self.adj[u].sort_unstable();
            self.adj[v].sort_unstable();
        }
        if !label.is_empty() && !entry.iter().any(|l| l == label) {
            entry.push(label.to_string());
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.labels.contains_key(&GraphWindow::edge_key(u, v))
    }

    pub fn edge_labels(&self, u: usize, v: usize) -> &[String] {
        self.labels.get(&GraphWindow::edge_key(u, v)).map_or(&[], |v| v.as_slice())
    }

    pub fn edge_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.labels.keys().copied()
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.len()
    }

    /// Cayley graph of a finite group.
    pub fn cayley(g: &Group) -> Result<Self> {
        let elems = g
            .family
            .all_elements()
            .ok_or_else(|| Error::InvalidGroup("group is not finite".into()))?;
        let index: HashMap<&Element, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut out = Self::new(elems.len());
        out.names = elems.iter().map(|e| g.format(e)).collect();
        for (u, x) in elems.iter().enumerate() {
            for (l, s) in g.gens.iter().enumerate() {
                let v = index[&g.step(x, l)?];
                let li = g.gens.inverse(l);
                let name = if l <= li { &s.name } else { &g.gens.get(li).unwrap().name };
                out.add_edge(u, v, name)?;
            }
        }
        Ok(out)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v, "").unwrap();
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::new(n);
        for u in 1..n {
            g.add_edge(u - 1, u, "").unwrap();
        }
        g
    }

    pub fn star(leaves: usize) -> Self {
        let mut g = Self::new(leaves + 1);
        for u in 1..=leaves {
            g.add_edge(0, u, "").unwrap();
        }
        g
    }

    pub fn hypercube(d: usize) -> Self {
        let n = 1 << d;
        let mut g = Self::new(n);
        for u in 0..n {
            for b in 0..d {
                g.add_edge(u, u ^ (1 << b), "").unwrap();
            }
        }
        g
    }

    pub fn circulant(n: usize, jumps: &[usize]) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for &j in jumps {
                g.add_edge(u, (u + j) % n, "").unwrap();
            }
        }
        g
    }

    pub fn petersen() -> Self {
        let mut g = Self::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5, "").unwrap();
            g.add_edge(i, i + 5, "").unwrap();
            g.add_edge(5 + i, 5 + (i + 2) % 5, "").unwrap();
        }
        g
    }

    /// Text format: first line the vertex count, then one `u v` pair per line.
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty graph file".into()))?
            .parse()
            .map_err(|_| Error::Parse("first line must be the vertex count".into()))?;
        let mut g = Self::new(n);
        for l in lines {
            let parts: Vec<&str> = l.split_whitespace().collect();
            if parts.len() < 2 {
                return Err(Error::Parse(format!("bad edge line {l:?}")));
            }
            let u = parts[0].parse().map_err(|_| Error::Parse(format!("bad vertex {}", parts[0])))?;
            let v = parts[1].parse().map_err(|_| Error::Parse(format!("bad vertex {}", parts[1])))?;
            g.add_edge(u, v, parts.get(2).copied().unwrap_or(""))?;
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.len());
        for ((u, v), ls) in &self.labels {
            let _ = writeln!(s, "{u} {v} {}", ls.join(","));
        }
        s
    }

    pub fn to_dot(&self, highlight: &HashSet<(usize, usize)>) -> String {
        let mut s = String::from("graph g {\n");
        for (u, name) in self.names.iter().enumerate() {
            let _ = writeln!(s, "  v{u} [label=\"{name}\"];");
        }
        for ((u, v), ls) in &self.labels {
            let style = if highlight.contains(&(*u, *v)) { ", color=red, penwidth=3" } else { "" };
            let _ = writeln!(s, "  v{u} -- v{v} [label=\"{}\"{style}];", ls.join(","));
        }
        s.push_str("}\n");
        s
    }
}

/// Schreier graph on the right cosets `H·g`, with `H·g ~ H·g·s`.
#[derive(Debug, Clone)]
pub struct SchreierGraph {
    pub graph: FiniteGraph,
    pub reps: Vec<Element>,
    /// `action[i][s]`: coset reached from coset `i` by generator `s`.
    pub action: Vec<Vec<usize>>,
}

pub fn schreier_graph(g: &Group, h: &SubgroupSpec) -> Result<SchreierGraph> {
    let ct = g.coset_table(h)?;
    let mut graph = FiniteGraph::new(ct.reps.len());
    graph.names = ct.reps.iter().map(|r| format!("H{}", g.format(r))).collect();
    for (i, row) in ct.action.iter().enumerate() {
        for (l, &j) in row.iter().enumerate() {
            graph.add_edge(i, j, &g.gens.get(l).unwrap().name)?;
        }
    }
    Ok(SchreierGraph { graph, reps: ct.reps, action: ct.action })
}

impl SchreierGraph {
    /// Labels `s` with `i·s = j`.
    pub fn labels_between(&self, i: usize, j: usize) -> Vec<Label> {
        self.action[i].iter().enumerate().filter(|&(_, &t)| t == j).map(|(l, _)| l).collect()
    }
}

/// Finite edge cut of a window with its boundary-touching sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCut {
    pub id: String,
    /// Edges as sorted vertex-index pairs.
    pub edges: Vec<(usize, usize)>,
    /// Components of `window ∖ edges` touching the boundary.
    pub sides: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndsHint {
    TwoEnded,
    /// Cuts made of `label`-edges leaving translates of the cycle `1[cycle]`.
    LabelCuts { label: Label, cycle: GeneratorWord },
}

/// Nested cuts localizing the ends seen by the window.
///
/// `TwoEnded`: for each `i`, the edges leaving the ball `B_i` (as seen from
/// the two boundary-touching components of `window ∖ B_i`), when there are
/// exactly two such components. `LabelCuts`: pairs of `label`-edges at
/// vertices of a translate of the cycle whose removal separates the window.
pub fn defining_cut_sequence(w: &GraphWindow, g: &Group, hint: &EndsHint) -> Result<Vec<EdgeCut>> {
    if w.radius < 4 {
        return Err(Error::WindowTooSmall(w.radius));
    }
    match hint {
        EndsHint::TwoEnded => {
            let mut out = Vec::new();
            let mut prev_right: Option<HashSet<usize>> = None;
            for i in 0..w.radius {
                let ball: HashSet<usize> = (0..w.len()).filter(|&u| w.dist[u] <= i).collect();
                let comps: Vec<Vec<usize>> = w
                    .components(&ball, &HashSet::new())
                    .into_iter()
                    .filter(|c| w.touches_boundary(c))
                    .collect();
                if comps.len() != 2 {
                    continue;
                }
                let (mut left, mut right) = (comps[0].clone(), comps[1].clone());
                if let Some(pr) = &prev_right {
                    if !right.iter().all(|u| pr.contains(u)) {
                        std::mem::swap(&mut left, &mut right);
                    }
                }
                for (tag, side) in [("L", &left), ("R", &right)] {
                    let edges = min_cut_to_boundary(w, &ball, side);
                    let removed: HashSet<(usize, usize)> = edges.iter().copied().collect();
                    let sides: Vec<Vec<usize>> = w
                        .components(&HashSet::new(), &removed)
                        .into_iter()
                        .filter(|c| w.touches_boundary(c))
                        .collect();
                    if sides.len() == 2 {
                        out.push(EdgeCut { id: format!("shell{i}{tag}"), edges, sides });
                    }
                }
                prev_right = Some(right.iter().copied().collect());
            }
            if out.is_empty() {
                return Err(Error::HintUnsupported("no radius splits the window into two ends".into()));
            }
            Ok(out)
        }
        EndsHint::LabelCuts { label, cycle } => {
            let cyc = crate::rays::cycle_vertices(g, &g.identity(), cycle)?;
            let start = w.index_of(&g.identity()).unwrap();
            let probe = |x: &Element| -> Result<Option<EdgeCut>> { label_cut_at(w, g, x, &cyc, *label) };
            // find which pairs separate at the identity, then translate
            let base = probe(&w.vertices[start])?;
            if base.is_none() {
                return Err(Error::HintUnsupported("label edges around the cycle do not separate".into()));
            }
            let mut out = Vec::new();
            let mut seen = HashSet::new();
            for u in w.interior(cycle.len() + 1) {
                if let Some(cut) = probe(&w.vertices[u])? {
                    if seen.insert(cut.edges.clone()) {
                        out.push(cut);
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Minimum edge cut between `ball` and the boundary vertices of `side`,
/// inside the subgraph induced by `ball ∪ side`; the cut closest to the ball.
fn min_cut_to_boundary(w: &GraphWindow, ball: &HashSet<usize>, side: &[usize]) -> Vec<(usize, usize)> {
    let inside: HashSet<usize> = ball.iter().chain(side).copied().collect();
    let sink: HashSet<usize> = side.iter().copied().filter(|&u| w.dist[u] == w.radius).collect();
    // unit capacity in each direction of every undirected edge
    let mut flow: HashMap<(usize, usize), i32> = HashMap::new();
    let residual = |flow: &HashMap<(usize, usize), i32>, u: usize, v: usize| 1 - flow.get(&(u, v)).copied().unwrap_or(0);
    loop {
        let mut parent: HashMap<usize, usize> = HashMap::new();
        let mut queue: VecDeque<usize> = ball.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let mut seen: HashSet<usize> = ball.clone();
        let mut end = None;
        while let Some(u) = queue.pop_front() {
            if sink.contains(&u) {
                end = Some(u);
                break;
            }
            for &(v, _) in &w.adj[u] {
                if inside.contains(&v) && !seen.contains(&v) && residual(&flow, u, v) > 0 {
                    seen.insert(v);
                    parent.insert(v, u);
                    queue.push_back(v);
                }
            }
        }
        match end {
            Some(mut v) => {
                while let Some(&u) = parent.get(&v) {
                    *flow.entry((u, v)).or_default() += 1;
                    *flow.entry((v, u)).or_default() -= 1;
                    v = u;
                }
            }
            None => {
                let mut cut = BTreeSet::new();
                for &u in &seen {
                    for &(v, _) in &w.adj[u] {
                        if inside.contains(&v) && !seen.contains(&v) {
                            cut.insert(GraphWindow::edge_key(u, v));
                        }
                    }
                }
                return cut.into_iter().collect();
            }
        }
    }
}

/// The two `label`-edges leaving the cycle `x·cyc` on one side, if removing
/// them splits the window into at least two boundary-touching components.
fn label_cut_at(w: &GraphWindow, g: &Group, x: &Element, cyc: &[Element], label: Label) -> Result<Option<EdgeCut>> {
    let mut stubs = Vec::new();
    for c in cyc {
        let v = g.mul(x, c)?;
        let (Some(u), Some(t)) = (w.index_of(&v), w.index_of(&g.step(&v, label)?)) else { return Ok(None) };
        stubs.push((u, t));
    }
    for i in 0..stubs.len() {
        for j in i + 1..stubs.len() {
            let removed: HashSet<(usize, usize)> =
                [stubs[i], stubs[j]].iter().map(|&(a, b)| GraphWindow::edge_key(a, b)).collect();
            if removed.len() < 2 {
                continue;
            }
            let comps: Vec<Vec<usize>> = w
                .components(&HashSet::new(), &removed)
                .into_iter()
                .filter(|c| w.touches_boundary(c))
                .collect();
            if comps.len() >= 2 {
                let mut edges: Vec<(usize, usize)> = removed.into_iter().collect();
                edges.sort_unstable();
                return Ok(Some(EdgeCut { id: format!("{}@{}", w.labels[label], g.format(x)), edges, sides: comps }));
            }
        }
    }
    Ok(None)
}

/// Window evidence about k-connectivity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Evidence {
    Supported { note: String },
    RefutedWithCut { vertices: Vec<Element>, cut_edge: Option<(Element, Label, Element)>, note: String },
}

const EVIDENCE_NOTE: &str = "window evidence only; says nothing certain about the infinite graph";

/// Looks for a set `X` of fewer than `k` vertices at distance at most
/// `radius − 2` whose removal leaves the neighbours of `X` in more than one
/// component of the window.
pub fn is_k_connected_window(w: &GraphWindow, g: &Group, k: usize) -> Result<Evidence> {
    if w.radius < 2 {
        return Err(Error::WindowTooSmall(w.radius));
    }
    if !(2..=3).contains(&k) {
        return Err(Error::BadParameters(format!("k = {k} (supported: 2, 3)")));
    }
    let candidates = w.interior(2);
    let mut sets: Vec<Vec<usize>> = candidates.iter().map(|&u| vec![u]).collect();
    if k == 3 {
        for &u in &candidates {
            let near = ball_around(w, u, 2);
            for v in near {
                if v > u && w.dist[v] + 2 <= w.radius {
                    sets.push(vec![u, v]);
                }
            }
        }
    }
    for x in sets {
        let removed: HashSet<usize> = x.iter().copied().collect();
        let nbrs: BTreeSet<usize> =
            x.iter().flat_map(|&u| w.adj[u].iter().map(|p| p.0)).filter(|v| !removed.contains(v)).collect();
        let comps = w.components(&removed, &HashSet::new());
        let mut comp_of = vec![usize::MAX; w.len()];
        for (i, c) in comps.iter().enumerate() {
            for &u in c {
                comp_of[u] = i;
            }
        }
        let hit: BTreeSet<usize> = nbrs.iter().map(|&v| comp_of[v]).collect();
        if hit.len() > 1 {
            let cut_edge = x.iter().find_map(|&u| {
                w.adj[u].iter().find_map(|&(v, l)| {
                    let single: HashSet<(usize, usize)> = [GraphWindow::edge_key(u, v)].into_iter().collect();
                    let c = w.components(&HashSet::new(), &single);
                    let split = c.iter().any(|comp| comp.contains(&u) && !comp.contains(&v));
                    split.then(|| (w.vertices[u].clone(), l, w.vertices[v].clone()))
                })
            });
            return Ok(Evidence::RefutedWithCut {
                vertices: x.iter().map(|&u| w.vertices[u].clone()).collect(),
                cut_edge,
                note: EVIDENCE_NOTE.into(),
            });
        }
        let _ = g;
    }
    Ok(Evidence::Supported { note: EVIDENCE_NOTE.into() })
}

fn ball_around(w: &GraphWindow, s: usize, r: usize) -> Vec<usize> {
    let mut dist: HashMap<usize, usize> = HashMap::from([(s, 0)]);
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let d = dist[&u];
        if d == r {
            continue;
        }
        for &(v, _) in &w.adj[u] {
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(v) {
                e.insert(d + 1);
                queue.push_back(v);
            }
        }
    }
    let mut out: Vec<usize> = dist.into_keys().collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::table::CayleyTable;

    #[test]
    fn integer_window_is_a_path() {
        let g = Group::integers(&[1]).unwrap();
        let w = cayley_window(&g, 3).unwrap();
        assert_eq!(w.len(), 7);
        assert_eq!(w.edges.len(), 6);
        assert_eq!(w.boundary().len(), 2);
    }

    #[test]
    fn free_group_window_and_tree_cut() {
        let g = Group::free(2).unwrap();
        let w = cayley_window(&g, 2).unwrap();
        assert_eq!(w.len(), 17);
        match is_k_connected_window(&w, &g, 2).unwrap() {
            Evidence::RefutedWithCut { vertices, cut_edge, .. } => {
                assert_eq!(vertices, vec![g.identity()]);
                assert!(cut_edge.is_some());
            }
            e => panic!("expected refutation, got {e:?}"),
        }
    }

    #[test]
    fn restriction_matches_smaller_window() {
        let g = Group::infinite_dihedral(&[(1, false), (0, true)]).unwrap();
        let big = cayley_window(&g, 5).unwrap();
        let small = cayley_window(&g, 4).unwrap();
        let r = big.restrict(4);
        assert_eq!(r.vertices, small.vertices);
        assert_eq!(r.edges, small.edges);
    }

    #[test]
    fn integer_shell_cuts_are_single_edges() {
        let g = Group::integers(&[1]).unwrap();
        let w = cayley_window(&g, 5).unwrap();
        let cuts = defining_cut_sequence(&w, &g, &EndsHint::TwoEnded).unwrap();
        // one cut per side for each of the shells 0..5
        assert_eq!(cuts.len(), 10);
        for c in &cuts {
            assert_eq!(c.edges.len(), 1);
            assert_eq!(c.sides.len(), 2);
        }
        let right: Vec<&EdgeCut> = cuts.iter().filter(|c| c.id.ends_with('R')).collect();
        let far = |c: &EdgeCut| c.sides.iter().min_by_key(|s| s.len()).unwrap().clone();
        for p in right.windows(2) {
            assert!(far(p[1]).iter().all(|u| far(p[0]).contains(u)));
        }
    }

    #[test]
    fn ladder_shell_cuts() {
        let z = Group::integers(&[1]).unwrap();
        let z2 = Group::finite(CayleyTable::cyclic(2).unwrap(), &[1]).unwrap();
        let g = Group::product(&z, &z2).unwrap();
        let w = cayley_window(&g, 6).unwrap();
        let cuts = defining_cut_sequence(&w, &g, &EndsHint::TwoEnded).unwrap();
        assert!(!cuts.is_empty());
        for c in &cuts {
            assert_eq!(c.edges.len(), 2, "minimum cut of a ladder side");
        }
    }

    #[test]
    fn schreier_graphs() {
        let g = Group::integers(&[1]).unwrap();
        let h = SubgroupSpec::GeneratedBy(vec![Element::Int(5)]);
        let s = schreier_graph(&g, &h).unwrap();
        assert_eq!(s.graph.len(), 5);
        assert_eq!(s.graph.edge_count(), 5);
        let g2 = Group::integers(&[2]).unwrap();
        let s2 = schreier_graph(&g2, &h).unwrap();
        assert_eq!(s2.graph.edge_count(), 5);
        assert!((0..5).all(|u| s2.graph.degree(u) == 2));
        let d = Group::infinite_dihedral(&[(1, false), (0, true)]).unwrap();
        let sd = schreier_graph(&d, &SubgroupSpec::GeneratedBy(vec![Element::dih(1, false)])).unwrap();
        assert_eq!(sd.graph.len(), 2);
        assert_eq!(sd.graph.edge_count(), 1);
    }

    #[test]
    fn trivial_schreier_graph_is_cayley_graph() {
        let t = CayleyTable::symmetric(3).unwrap();
        let g = Group::finite(t.clone(), &t.generators.clone()).unwrap();
        let s = schreier_graph(&g, &SubgroupSpec::trivial()).unwrap();
        let c = FiniteGraph::cayley(&g).unwrap();
        assert_eq!(s.graph.len(), c.len());
        assert_eq!(s.graph.edge_count(), c.edge_count());
    }

    #[test]
    fn graph_text_roundtrip() {
        let p = FiniteGraph::petersen();
        assert_eq!(p.edge_count(), 15);
        let q = FiniteGraph::parse(&p.to_text()).unwrap();
        assert_eq!(q.edge_count(), 15);
        assert!(FiniteGraph::parse("x").is_err());
    }

    #[test]
    fn small_window_rejected() {
        let g = Group::integers(&[1]).unwrap();
        let w = cayley_window(&g, 1).unwrap();
        assert_eq!(is_k_connected_window(&w, &g, 2), Err(Error::WindowTooSmall(1)));
        let w3 = cayley_window(&g, 3).unwrap();
        assert!(defining_cut_sequence(&w3, &g, &EndsHint::TwoEnded).is_err());
    }
}
