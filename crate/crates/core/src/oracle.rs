//! Exact backtracking search for Hamilton cycles and paths, and the search for
//! small generating sets with Hamiltonian Cayley graphs.

use std::time::{Duration, Instant};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::FiniteGraph;
use crate::group::{Element, Group};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub time_limit: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_nodes: 50_000_000, time_limit: Duration::from_secs(30) }
    }
}

impl SearchBudget {
    pub fn new(max_nodes: u64, time_limit: Duration) -> Result<Self> {
        if max_nodes == 0 || time_limit.is_zero() {
            return Err(Error::BadParameters("budget must be positive".into()));
        }
        Ok(SearchBudget { max_nodes, time_limit })
    }
}

/// Outcome of an exact search. `None` is a proof of absence; running out of
/// budget is reported separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchOutcome<T> {
    Found(T),
    None,
    BudgetExceeded,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }
}

struct Search<'a> {
    g: &'a FiniteGraph,
    budget: SearchBudget,
    start: Instant,
    nodes: u64,
    visited: Vec<bool>,
    path: Vec<usize>,
    closed: bool,
    exhausted: bool,
}

impl<'a> Search<'a> {
    fn new(g: &'a FiniteGraph, budget: SearchBudget, closed: bool) -> Self {
        Search {
            g,
            budget,
            start: Instant::now(),
            nodes: 0,
            visited: vec![false; g.len()],
            path: Vec::with_capacity(g.len()),
            closed,
            exhausted: false,
        }
    }

    fn free_degree(&self, v: usize) -> usize {
        self.g.neighbors(v).iter().filter(|&&w| !self.visited[w]).count()
    }

    /// Prunes when some unvisited vertex can no longer get enough path edges,
    /// or when the unvisited vertices are split.
    fn feasible(&self) -> bool {
        let end = *self.path.last().unwrap();
        let first = self.path[0];
        let mut dead_ends = 0;
        for v in 0..self.g.len() {
            if self.visited[v] {
                continue;
            }
            let mut avail = self.free_degree(v);
            if self.g.has_edge(v, end) {
                avail += 1;
            }
            if self.closed && self.g.has_edge(v, first) && first != end {
                avail += 1;
            }
            if avail == 0 {
                return false;
            }
            if avail == 1 {
                dead_ends += 1;
            }
        }
        if dead_ends > if self.closed { 0 } else { 1 } {
            return false;
        }
        // the unvisited vertices must be reachable from the current end
        let remaining = self.visited.iter().filter(|&&b| !b).count();
        if remaining == 0 {
            return true;
        }
        let mut seen = vec![false; self.g.len()];
        let mut stack = vec![end];
        seen[end] = true;
        let mut count = 0;
        while let Some(u) = stack.pop() {
            for &w in self.g.neighbors(u) {
                if !seen[w] && !self.visited[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == remaining
    }

    fn over_budget(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes
            || (self.nodes.is_multiple_of(4096) && self.start.elapsed() > self.budget.time_limit)
        {
            self.exhausted = true;
        }
        self.exhausted
    }

    fn extend(&mut self) -> bool {
        if self.over_budget() {
            return false;
        }
        let n = self.g.len();
        let end = *self.path.last().unwrap();
        if self.path.len() == n {
            return !self.closed || self.g.has_edge(end, self.path[0]);
        }
        if !self.feasible() {
            return false;
        }
        let mut cands: Vec<usize> = self.g.neighbors(end).iter().copied().filter(|&w| !self.visited[w]).collect();
        cands.sort_by_key(|&w| (self.free_degree(w), w));
        for w in cands {
            self.visited[w] = true;
            self.path.push(w);
            if self.extend() {
                return true;
            }
            self.path.pop();
            self.visited[w] = false;
            if self.exhausted {
                return false;
            }
        }
        false
    }

    fn run_from(&mut self, s: usize) -> bool {
        self.visited.iter_mut().for_each(|b| *b = false);
        self.path.clear();
        self.visited[s] = true;
        self.path.push(s);
        self.extend()
    }
}

/// A Hamilton cycle as a vertex sequence starting at vertex 0 (the closing
/// edge back to vertex 0 is implied).
pub fn hamilton_cycle(g: &FiniteGraph, budget: SearchBudget) -> Result<SearchOutcome<Vec<usize>>> {
    if g.len() < 3 {
        return Err(Error::BadParameters("a Hamilton cycle needs at least 3 vertices".into()));
    }
    if !g.is_connected() || (0..g.len()).any(|v| g.degree(v) < 2) {
        return Ok(SearchOutcome::None);
    }
    let mut s = Search::new(g, budget, true);
    if s.run_from(0) {
        return Ok(SearchOutcome::Found(s.path));
    }
    Ok(if s.exhausted { SearchOutcome::BudgetExceeded } else { SearchOutcome::None })
}

/// A Hamilton path, trying start vertices in increasing order.
pub fn hamilton_path(g: &FiniteGraph, budget: SearchBudget) -> Result<SearchOutcome<Vec<usize>>> {
    if g.is_empty() {
        return Err(Error::BadParameters("empty graph".into()));
    }
    if !g.is_connected() {
        return Ok(SearchOutcome::None);
    }
    let mut s = Search::new(g, budget, false);
    for start in 0..g.len() {
        if s.run_from(start) {
            return Ok(SearchOutcome::Found(s.path));
        }
        if s.exhausted {
            return Ok(SearchOutcome::BudgetExceeded);
        }
    }
    Ok(SearchOutcome::None)
}

/// Checks that `seq` visits every vertex once along edges of `g`, closing up
/// when `closed`.
pub fn validate_hamilton(g: &FiniteGraph, seq: &[usize], closed: bool) -> bool {
    if seq.len() != g.len() {
        return false;
    }
    let mut seen = vec![false; g.len()];
    for &v in seq {
        if v >= g.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    let steps_ok = seq.windows(2).all(|p| g.has_edge(p[0], p[1]));
    steps_ok && (!closed || g.has_edge(seq[seq.len() - 1], seq[0]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Requirement {
    Cycle,
    Path,
}

/// Generating set found by [`genset_search`].
#[derive(Debug, Clone)]
pub struct GensetResult {
    pub group: Group,
    pub pair_count: usize,
    pub symbol_count: usize,
    pub witness: Vec<usize>,
}

/// Searches symmetric generating sets of a finite group by increasing number
/// of inverse classes `{x, x⁻¹}`, returning the first whose Cayley graph has
/// a Hamilton cycle (or path).
pub fn genset_search(
    g: &Group,
    max_pairs: usize,
    require: Requirement,
    budget: SearchBudget,
) -> Result<SearchOutcome<GensetResult>> {
    let order = g.family.order().ok_or_else(|| Error::InvalidGroup("group is not finite".into()))?;
    if order < 3 {
        return Err(Error::BadParameters("group order must be at least 3".into()));
    }
    let elems = g.family.all_elements().unwrap();
    let id = g.identity();
    let mut classes: Vec<Element> = Vec::new();
    for x in &elems {
        if *x == id {
            continue;
        }
        let xi = g.inv(x)?;
        if xi >= *x && !classes.contains(&xi) {
            classes.push(x.clone());
        }
    }
    let mut budget_hit = false;
    for k in 1..=max_pairs.min(classes.len()) {
        for combo in classes.iter().combinations(k) {
            let cand = g.with_gens(combo.into_iter().cloned().collect())?;
            if cand.ball(order)?.len() != order {
                continue;
            }
            let graph = FiniteGraph::cayley(&cand)?;
            let outcome = match require {
                Requirement::Cycle => hamilton_cycle(&graph, budget)?,
                Requirement::Path => hamilton_path(&graph, budget)?,
            };
            match outcome {
                SearchOutcome::Found(w) => {
                    let pair_count = cand.gens.pair_count();
                    let symbol_count = cand.gens.symbol_count();
                    return Ok(SearchOutcome::Found(GensetResult { group: cand, pair_count, symbol_count, witness: w }));
                }
                SearchOutcome::BudgetExceeded => budget_hit = true,
                SearchOutcome::None => {}
            }
        }
    }
    Ok(if budget_hit { SearchOutcome::BudgetExceeded } else { SearchOutcome::None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CayleyTable;

    fn b() -> SearchBudget {
        SearchBudget::default()
    }

    #[test]
    fn small_graphs() {
        let k4 = FiniteGraph::complete(4);
        let c = hamilton_cycle(&k4, b()).unwrap().found().unwrap();
        assert!(validate_hamilton(&k4, &c, true));
        let q3 = FiniteGraph::hypercube(3);
        let c = hamilton_cycle(&q3, b()).unwrap().found().unwrap();
        assert_eq!(c.len(), 8);
        assert!(validate_hamilton(&q3, &c, true));
        assert_eq!(hamilton_cycle(&FiniteGraph::petersen(), b()).unwrap(), SearchOutcome::None);
        let p = hamilton_path(&FiniteGraph::petersen(), b()).unwrap().found().unwrap();
        assert!(validate_hamilton(&FiniteGraph::petersen(), &p, false));
    }

    #[test]
    fn paths_and_stars() {
        let p5 = FiniteGraph::path(5);
        assert_eq!(hamilton_path(&p5, b()).unwrap(), SearchOutcome::Found(vec![0, 1, 2, 3, 4]));
        assert_eq!(hamilton_path(&FiniteGraph::star(3), b()).unwrap(), SearchOutcome::None);
        assert_eq!(hamilton_cycle(&p5, b()).unwrap(), SearchOutcome::None);
    }

    #[test]
    fn budget_is_not_absence() {
        let tiny = SearchBudget::new(3, Duration::from_secs(1)).unwrap();
        let out = hamilton_cycle(&FiniteGraph::petersen(), tiny).unwrap();
        assert_eq!(out, SearchOutcome::BudgetExceeded);
    }

    #[test]
    fn deterministic() {
        let g = FiniteGraph::circulant(12, &[1, 5]);
        let a = hamilton_cycle(&g, b()).unwrap();
        let c = hamilton_cycle(&g, b()).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn genset_examples() {
        let z4 = Group::finite(CayleyTable::cyclic(4).unwrap(), &[1]).unwrap();
        let r = genset_search(&z4, 2, Requirement::Cycle, b()).unwrap().found().unwrap();
        assert_eq!(r.pair_count, 1);
        assert_eq!(r.group.gens.elements(), vec![Element::Fin(1), Element::Fin(3)]);
        let v4 = Group::finite(CayleyTable::elementary_abelian_2(2).unwrap(), &[1]).unwrap();
        let r = genset_search(&v4, 2, Requirement::Cycle, b()).unwrap().found().unwrap();
        assert_eq!((r.pair_count, r.symbol_count), (2, 2));
        let e16 = Group::finite(CayleyTable::elementary_abelian_2(4).unwrap(), &[1]).unwrap();
        let r = genset_search(&e16, 4, Requirement::Cycle, b()).unwrap().found().unwrap();
        assert!(r.pair_count <= 4);
    }
}
