//! Small generating sets with Hamilton cycles or circles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, Family, Group, SubgroupSpec};
use crate::oracle::{genset_search, Requirement, SearchBudget, SearchOutcome};
use crate::rays::CircleDescription;

use super::add_generator::add_generator_circle;
use super::{word_between, Certificate, Construction, HamiltonObject};

/// Summary of a generating set: its elements, both size conventions and the
/// size bound it is measured against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GensetReport {
    pub generators: Vec<String>,
    pub symbol_count: usize,
    pub pair_count: usize,
    pub size_bound: Option<f64>,
    pub route: String,
    pub notes: Vec<String>,
}

impl GensetReport {
    fn new(g: &Group, route: &str) -> Self {
        GensetReport {
            generators: g.gens.iter().map(|s| s.name.clone()).collect(),
            symbol_count: g.gens.symbol_count(),
            pair_count: g.gens.pair_count(),
            size_bound: None,
            route: route.into(),
            notes: Vec::new(),
        }
    }
}

/// A generating set with its report and, when one is built, a Hamilton
/// cycle or circle of its Cayley graph.
#[derive(Debug, Clone)]
pub struct Genset {
    pub group: Group,
    pub report: GensetReport,
    pub circle: Option<Construction<HamiltonObject>>,
}

/// A generating set of a finite group with at most `⌊log₂|G|⌋` inverse pairs
/// whose Cayley graph has a Hamilton cycle, found by search.
pub fn pak_genset(g: &Group, budget: SearchBudget) -> Result<Genset> {
    let order = g.family.order().ok_or_else(|| Error::InvalidGroup("group is not finite".into()))?;
    let bound = order.ilog2() as usize;
    let found = match genset_search(g, bound, Requirement::Cycle, budget)? {
        SearchOutcome::Found(r) => r,
        SearchOutcome::None => return Err(Error::SearchExhausted),
        SearchOutcome::BudgetExceeded => return Err(Error::BudgetExceeded),
    };
    let cand = found.group;
    let elems = cand.family.all_elements().expect("finite");
    let verts: Vec<Element> = found.witness.iter().map(|&i| elems[i].clone()).collect();
    let word = word_between(&cand, &verts, true)?;
    let mut cert = Certificate::new("pak", "search", &cand);
    cert.check(&format!("{} pairs within log2 {order}", found.pair_count), found.pair_count <= bound);
    let circle = Construction {
        object: HamiltonObject::Circle(CircleDescription::FiniteCycle { base: verts[0].clone(), word }),
        certificate: cert,
    };
    let mut report = GensetReport::new(&cand, "search");
    report.size_bound = Some((order as f64).log2());
    Ok(Genset { group: cand, report, circle: Some(circle) })
}

/// `T = {s_i, s_i², s₁s_j : j ≥ 2}` in the free group of rank `r`; the
/// symmetric set has `6r − 2` symbols.
pub fn free_group_genset(r: usize) -> Result<Genset> {
    if r < 2 {
        return Err(Error::BadRank);
    }
    let f = Group::free(r)?;
    let s = |i: usize| i as i32 + 1;
    let mut t: Vec<Element> = (0..r).map(|i| Element::Free(vec![s(i)])).collect();
    t.extend((0..r).map(|i| Element::Free(vec![s(i), s(i)])));
    t.extend((1..r).map(|i| Element::Free(vec![s(0), s(i)])));
    let g = f.with_gens(t)?;
    let mut report = GensetReport::new(&g, "free genset");
    report.size_bound = Some((6 * r - 2) as f64);
    Ok(Genset { group: g, report, circle: None })
}

/// Size bound `log₂ m + 1 + 6ρ(6ρ + 1)` for a normal free subgroup of index
/// `m` and rank `ρ`.
pub fn context_free_bound(m: usize, rank: usize) -> f64 {
    let r = rank as f64;
    (m as f64).log2() + 1.0 + 6.0 * r * (6.0 * r + 1.0)
}

/// Whether `basis` is the standard basis of a free first factor.
fn is_free_factor_basis(g: &Group, basis: &[Element]) -> bool {
    let Family::Product(a, b) = &g.family else { return false };
    let Family::Free { rank } = **a else { return false };
    rank == basis.len()
        && basis.iter().enumerate().all(|(i, x)| *x == Element::pair(Element::Free(vec![i as i32 + 1]), b.identity()))
}

/// Composes a generating set from coset representatives of a quotient
/// generating set and generators of the normal free subgroup `F = ⟨basis⟩`.
/// For rank one the set carries a Hamilton circle built by adding the
/// generator of `F`; for higher rank only the size arithmetic is reported.
pub fn context_free_genset(g: &Group, basis: &[Element], budget: SearchBudget) -> Result<Genset> {
    let rank = basis.len();
    if rank == 0 || basis.iter().any(|b| g.has_infinite_order(b) != Some(true)) {
        return Err(Error::NotFree("basis elements must have infinite order".into()));
    }
    if rank >= 2 && !matches!(g.family, Family::Product(..)) {
        return Err(Error::NotFree("free rank above one is supported for free-by-finite products".into()));
    }
    let f = if is_free_factor_basis(g, basis) { SubgroupSpec::FirstFactor } else { SubgroupSpec::GeneratedBy(basis.to_vec()) };
    let q = g.quotient(&f)?;
    let m = q.group.family.order().ok_or(Error::InfiniteIndex)?;
    if m < 2 {
        return Err(Error::BadParameters("F must be a proper subgroup".into()));
    }
    // representatives of a quotient generating set
    let (reps, quotient_pairs): (Vec<Element>, usize) = if m == 2 {
        (vec![q.rep(1).ok_or(Error::InfiniteIndex)?.clone()], 1)
    } else {
        let p = pak_genset(&q.group, budget)?;
        let reps = p
            .group
            .gens
            .class_reps()
            .into_iter()
            .map(|l| match p.group.gen(l)? {
                Element::Fin(i) => q.rep(*i as usize).cloned().ok_or(Error::InfiniteIndex),
                _ => unreachable!("quotient is a table"),
            })
            .collect::<Result<Vec<_>>>()?;
        (reps, p.report.pair_count)
    };
    let bound = context_free_bound(m, rank);
    if rank == 1 {
        let (big, circle) = add_generator_circle(&g.with_gens(reps)?, &basis[0])?;
        let mut report = GensetReport::new(&big, "added generator");
        report.size_bound = Some(bound);
        report.notes.push(format!("rank-one bound log2 {m} + 2 = {:.3} pairs", (m as f64).log2() + 2.0));
        report.notes.push(format!("quotient pairs {quotient_pairs}"));
        return Ok(Genset { group: big, report, circle: Some(circle) });
    }
    let free = free_group_genset(rank)?;
    let mut elems = reps;
    for s in free.group.gens.class_reps() {
        let Element::Free(w) = free.group.gen(s)? else { unreachable!() };
        let mut x = g.identity();
        for &letter in w {
            let b = &basis[letter.unsigned_abs() as usize - 1];
            x = g.mul(&x, &if letter > 0 { b.clone() } else { g.inv(b)? })?;
        }
        elems.push(x);
    }
    let big = g.with_gens(elems)?;
    let route = if m == 2 { "free ladder" } else { "free composition" };
    let mut report = GensetReport::new(&big, route);
    report.size_bound = Some(bound);
    report.notes.push(format!("index {m}, rank {rank}, quotient pairs {quotient_pairs}"));
    Ok(Genset { group: big, report, circle: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::certify;
    use crate::graphs::{cayley_window, is_k_connected_window, Evidence};
    use crate::group::CayleyTable;

    #[test]
    fn pak_small_cases() {
        for (t, pairs) in [
            (CayleyTable::cyclic(3).unwrap(), 1),
            (CayleyTable::elementary_abelian_2(3).unwrap(), 3),
            (CayleyTable::symmetric(3).unwrap(), 2),
        ] {
            let g = Group::finite(t, &[1]).unwrap();
            let mut p = pak_genset(&g, SearchBudget::default()).unwrap();
            assert_eq!(p.report.pair_count, pairs);
            let c = p.circle.as_mut().unwrap();
            assert!(certify(&p.group, c, &[2]).unwrap()[0].is_consistent());
        }
    }

    #[test]
    fn free_sizes() {
        for r in 2..=5 {
            assert_eq!(free_group_genset(r).unwrap().report.symbol_count, 6 * r - 2);
        }
        assert!(matches!(free_group_genset(1), Err(Error::BadRank)));
    }

    #[test]
    fn free_genset_is_two_connected_near_the_identity() {
        let g = free_group_genset(2).unwrap().group;
        let w = cayley_window(&g, 3).unwrap();
        assert!(matches!(is_k_connected_window(&w, &g, 2).unwrap(), Evidence::Supported { .. }));
    }

    #[test]
    fn virtually_cyclic() {
        let z2 = Group::finite(CayleyTable::cyclic(2).unwrap(), &[1]).unwrap();
        let g = Group::product(&Group::integers(&[1]).unwrap(), &z2).unwrap();
        let mut c = context_free_genset(&g, &[Element::pair(Element::Int(1), Element::Fin(0))], SearchBudget::default()).unwrap();
        assert!(c.report.pair_count <= 3);
        assert_eq!(c.report.size_bound, Some(context_free_bound(2, 1)));
        let reps = certify(&c.group, c.circle.as_mut().unwrap(), &[8]).unwrap();
        assert!(reps[0].is_consistent(), "{}", reps[0].render(&c.group));
    }

    #[test]
    fn free_by_finite_arithmetic() {
        let z3 = Group::finite(CayleyTable::cyclic(3).unwrap(), &[1]).unwrap();
        let g = Group::product(&Group::free(2).unwrap(), &z3).unwrap();
        let basis = [Element::pair(Element::Free(vec![1]), Element::Fin(0)), Element::pair(Element::Free(vec![2]), Element::Fin(0))];
        let c = context_free_genset(&g, &basis, SearchBudget::default()).unwrap();
        assert_eq!(c.report.route, "free composition");
        assert_eq!(c.report.pair_count, 1 + 5);
        assert_eq!(c.report.size_bound, Some(context_free_bound(3, 2)));
    }

    #[test]
    fn bound_arithmetic() {
        assert_eq!(context_free_bound(2, 1), 1.0 + 1.0 + 42.0);
        assert_eq!(context_free_bound(4, 2), 2.0 + 1.0 + 12.0 * 13.0);
    }
}
