//! Free products of two finite groups amalgamated along a common subgroup.
//!
//! An element is stored as `h · r₁ · r₂ ⋯ r_n` where `h` lies in the core `C`
//! and the `rⱼ` are nontrivial right-coset representatives of `C`, taken
//! alternately from the two factors. Representatives are the least table
//! index in each coset `C·g`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::table::CayleyTable;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Amalgam {
    pub factors: [CayleyTable; 2],
    /// Core element `i` is `core[i].0` in the first factor and `core[i].1` in
    /// the second. Index 0 is the identity.
    pub core: Vec<(u32, u32)>,
    /// For each factor element `g`: `(core index c, representative r)` with `g = c·r`.
    coset: [Vec<(u32, u32)>; 2],
    core_index: [HashMap<u32, u32>; 2],
}

/// Normal form `h · reps` of an amalgam element.
pub type AmalgamWord = (u32, Vec<(u8, u32)>);

impl Amalgam {
    pub fn new(g1: CayleyTable, g2: CayleyTable, core: Vec<(u32, u32)>) -> Result<Self> {
        let mut core = core;
        if let Some(pos) = core.iter().position(|&p| p == (0, 0)) {
            core.swap(0, pos);
        } else {
            return Err(Error::InvalidGroup("core embedding must contain the identity".into()));
        }
        let factors = [g1, g2];
        let mut core_index: [HashMap<u32, u32>; 2] = [HashMap::new(), HashMap::new()];
        for (i, &(x, y)) in core.iter().enumerate() {
            if x as usize >= factors[0].order() || y as usize >= factors[1].order() {
                return Err(Error::InvalidGroup("core element out of range".into()));
            }
            if core_index[0].insert(x, i as u32).is_some() || core_index[1].insert(y, i as u32).is_some() {
                return Err(Error::InvalidGroup("core embedding is not injective".into()));
            }
        }
        for &(x1, y1) in &core {
            for &(x2, y2) in &core {
                let a = core_index[0].get(&factors[0].mul(x1, x2));
                let b = core_index[1].get(&factors[1].mul(y1, y2));
                if a.is_none() || a != b {
                    return Err(Error::InvalidGroup("core embeddings are not a common subgroup".into()));
                }
            }
        }
        let mut coset: [Vec<(u32, u32)>; 2] = [Vec::new(), Vec::new()];
        for f in 0..2 {
            let t = &factors[f];
            let mut table = vec![(u32::MAX, u32::MAX); t.order()];
            for g in 0..t.order() as u32 {
                if table[g as usize].0 != u32::MAX {
                    continue;
                }
                // g is the least element of its coset C·g
                for (ci, c) in core.iter().enumerate() {
                    let ce = if f == 0 { c.0 } else { c.1 };
                    table[t.mul(ce, g) as usize] = (ci as u32, g);
                }
            }
            coset[f] = table;
        }
        Ok(Amalgam { factors, core, coset, core_index })
    }

    pub fn core_order(&self) -> usize {
        self.core.len()
    }

    pub fn index_in_factor(&self, f: usize) -> usize {
        self.factors[f].order() / self.core.len()
    }

    /// Both factors contain the core with index two.
    pub fn is_two_ended(&self) -> bool {
        self.index_in_factor(0) == 2 && self.index_in_factor(1) == 2
    }

    pub fn core_in(&self, f: usize, c: u32) -> u32 {
        let p = self.core[c as usize];
        if f == 0 {
            p.0
        } else {
            p.1
        }
    }

    /// Core index of a factor element, if it lies in the core.
    pub fn core_of(&self, f: usize, g: u32) -> Option<u32> {
        self.core_index[f].get(&g).copied()
    }

    pub fn coset_reps(&self, f: usize) -> Vec<u32> {
        let mut reps: Vec<u32> = self.coset[f].iter().map(|p| p.1).collect();
        reps.sort_unstable();
        reps.dedup();
        reps
    }

    pub fn is_valid(&self, w: &AmalgamWord) -> bool {
        if w.0 as usize >= self.core.len() {
            return false;
        }
        let mut last: Option<u8> = None;
        for &(f, r) in &w.1 {
            if f > 1 || Some(f) == last || r as usize >= self.factors[f as usize].order() {
                return false;
            }
            let (c, rep) = self.coset[f as usize][r as usize];
            if c != 0 || rep != r || r == 0 {
                return false;
            }
            last = Some(f);
        }
        true
    }

    /// Right multiplication by a core element: push it leftwards through the reps.
    fn mul_core(&self, w: &mut AmalgamWord, mut c: u32) {
        for slot in w.1.iter_mut().rev() {
            let f = slot.0 as usize;
            let y = self.factors[f].mul(slot.1, self.core_in(f, c));
            let (c2, r) = self.coset[f][y as usize];
            slot.1 = r;
            c = c2;
        }
        let h = self.factors[0].mul(self.core_in(0, w.0), self.core_in(0, c));
        w.0 = self.core_index[0][&h];
    }

    /// Right multiplication by the element `g` of factor `f`.
    pub fn mul_factor(&self, w: &mut AmalgamWord, f: usize, g: u32) {
        match w.1.last() {
            Some(&(lf, lr)) if lf as usize == f => {
                w.1.pop();
                let y = self.factors[f].mul(lr, g);
                let (c, r) = self.coset[f][y as usize];
                self.mul_core(w, c);
                if r != 0 {
                    w.1.push((f as u8, r));
                }
            }
            _ => {
                let (c, r) = self.coset[f][g as usize];
                self.mul_core(w, c);
                if r != 0 {
                    w.1.push((f as u8, r));
                }
            }
        }
    }

    /// Canonical form of a factor element.
    pub fn embed(&self, f: usize, g: u32) -> AmalgamWord {
        let mut w = (0, Vec::new());
        self.mul_factor(&mut w, f, g);
        w
    }

    pub fn mul(&self, a: &AmalgamWord, b: &AmalgamWord) -> AmalgamWord {
        let mut w = a.clone();
        self.mul_core(&mut w, b.0);
        for &(f, r) in &b.1 {
            self.mul_factor(&mut w, f as usize, r);
        }
        w
    }

    pub fn inv(&self, a: &AmalgamWord) -> AmalgamWord {
        let mut w = (0, Vec::new());
        for &(f, r) in a.1.iter().rev() {
            let t = &self.factors[f as usize];
            self.mul_factor(&mut w, f as usize, t.inv(r));
        }
        let cinv = self.factors[0].inv(self.core_in(0, a.0));
        self.mul_factor(&mut w, 0, cinv);
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// ℤ₄ ∗_{ℤ₂} ℤ₄ with the squares identified.
    fn z4_z2_z4() -> Amalgam {
        let z4 = CayleyTable::cyclic(4).unwrap();
        Amalgam::new(z4.clone(), z4, vec![(0, 0), (2, 2)]).unwrap()
    }

    #[test]
    fn fourth_power_of_generator_is_trivial() {
        let g = z4_z2_z4();
        assert!(g.is_two_ended());
        let x = g.embed(0, 1);
        let mut w = (0, Vec::new());
        for _ in 0..4 {
            w = g.mul(&w, &x);
        }
        assert_eq!(w, (0, vec![]));
        // x² is the core element
        let x2 = g.mul(&x, &x);
        assert_eq!(x2, (1, vec![]));
    }

    #[test]
    fn inverse_and_normal_forms_are_valid() {
        let g = z4_z2_z4();
        let x = g.embed(0, 1);
        let y = g.embed(1, 3);
        let mut w = (0, Vec::new());
        for i in 0..7 {
            w = g.mul(&w, if i % 2 == 0 { &x } else { &y });
            assert!(g.is_valid(&w));
            assert_eq!(g.mul(&w, &g.inv(&w)), (0, vec![]));
        }
        assert_eq!(w.1.len(), 7);
    }

    #[test]
    fn rejects_non_subgroup_core() {
        let z4 = CayleyTable::cyclic(4).unwrap();
        assert!(Amalgam::new(z4.clone(), z4.clone(), vec![(0, 0), (1, 1)]).is_err());
        assert!(Amalgam::new(z4.clone(), z4, vec![(2, 2)]).is_err());
    }

    #[test]
    fn index_three_is_not_two_ended() {
        let z6 = CayleyTable::cyclic(6).unwrap();
        let g = Amalgam::new(z6.clone(), z6, vec![(0, 0), (3, 3)]).unwrap();
        assert_eq!(g.index_in_factor(0), 3);
        assert!(!g.is_two_ended());
    }
}
