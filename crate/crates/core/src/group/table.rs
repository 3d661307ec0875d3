//! Finite groups as explicit multiplication tables, plus a small corpus.

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Multiplication table of a finite group. Index 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyTable {
    pub name: String,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    /// Indices of the elements used to build the table, in input order.
    pub generators: Vec<u32>,
}

impl CayleyTable {
    /// Closes `gens` under `mul`. Elements are numbered in BFS order over the
    /// generators, so smaller indices have shorter words.
    pub fn closure<T, F>(name: &str, identity: T, gens: &[T], mul: F) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        const MAX_ORDER: usize = 1 << 16;
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, u32> = HashMap::from([(identity, 0)]);
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head].clone();
            head += 1;
            for g in gens {
                let y = mul(&x, g);
                if !index.contains_key(&y) {
                    if elems.len() >= MAX_ORDER {
                        return Err(Error::InvalidGroup(format!("{name}: order exceeds {MAX_ORDER}")));
                    }
                    index.insert(y.clone(), elems.len() as u32);
                    elems.push(y);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                let z = mul(x, y);
                table[i * n + j] = *index
                    .get(&z)
                    .ok_or_else(|| Error::InvalidGroup(format!("{name}: not closed")))?;
            }
        }
        let generators = gens.iter().map(|g| index[g]).collect();
        Self::from_table(name, n, table, generators)
    }

    pub fn from_table(name: &str, order: usize, mul: Vec<u32>, generators: Vec<u32>) -> Result<Self> {
        if order == 0 || mul.len() != order * order {
            return Err(Error::InvalidGroup(format!("{name}: table size mismatch")));
        }
        if mul.iter().any(|&x| x as usize >= order) {
            return Err(Error::InvalidGroup(format!("{name}: entry out of range")));
        }
        for i in 0..order {
            if mul[i] as usize != i || mul[i * order] as usize != i {
                return Err(Error::InvalidGroup(format!("{name}: 0 is not the identity")));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for i in 0..order {
            for j in 0..order {
                if mul[i * order + j] == 0 {
                    inv[i] = j as u32;
                    break;
                }
            }
            if inv[i] == u32::MAX {
                return Err(Error::InvalidGroup(format!("{name}: element {i} has no inverse")));
            }
        }
        Ok(CayleyTable { name: name.to_string(), order, mul, inv, generators })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order as u32).all(|a| (0..self.order as u32).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        Self::closure(&format!("Z{n}"), 0usize, &[1 % n], |a, b| (a + b) % n)
    }

    /// Dihedral group of order `2n` as pairs (rotation, reflection bit);
    /// generators are the rotation and the reflection.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGroup("dihedral group needs n >= 2".into()));
        }
        let mul = move |x: &(usize, bool), y: &(usize, bool)| {
            let k = if x.1 { (x.0 + n - y.0) % n } else { (x.0 + y.0) % n };
            (k, x.1 ^ y.1)
        };
        Self::closure(&format!("D{}", 2 * n), (0, false), &[(1, false), (0, true)], mul)
    }

    pub fn elementary_abelian_2(k: usize) -> Result<Self> {
        let gens: Vec<u32> = (0..k).map(|i| 1u32 << i).collect();
        Self::closure(&format!("Z2^{k}"), 0u32, &gens, |a, b| a ^ b)
    }

    /// Symmetric group on `n` points, generated by a transposition and an n-cycle.
    pub fn symmetric(n: usize) -> Result<Self> {
        let id: Vec<u8> = (0..n as u8).collect();
        let mut t = id.clone();
        t.swap(0, 1);
        let c: Vec<u8> = (0..n as u8).map(|i| (i + 1) % n as u8).collect();
        Self::closure(&format!("S{n}"), id, &[t, c], |p, q| compose(p, q))
    }

    /// Alternating group on 4 points.
    pub fn alternating4() -> Result<Self> {
        Self::closure("A4", vec![0u8, 1, 2, 3], &[vec![1u8, 2, 0, 3], vec![1u8, 0, 3, 2]], |p, q| compose(p, q))
    }

    /// Quaternion group, as unit quaternions with integer coordinates.
    pub fn quaternion() -> Result<Self> {
        Self::closure("Q8", [1i8, 0, 0, 0], &[[0, 1, 0, 0], [0, 0, 1, 0]], quat_mul)
    }

    /// Dicyclic group of order 12: ⟨a, x | a⁶, x² = a³, x a x⁻¹ = a⁻¹⟩,
    /// elements a^k x^e with e ∈ {0,1}.
    pub fn dicyclic12() -> Result<Self> {
        let mul = |p: &(u8, bool), q: &(u8, bool)| {
            let k2 = if p.1 { (6 - q.0) % 6 } else { q.0 };
            let mut k = (p.0 + k2) % 6;
            if p.1 && q.1 {
                k = (k + 3) % 6;
            }
            (k, p.1 ^ q.1)
        };
        Self::closure("Dic12", (0u8, false), &[(1, false), (0, true)], mul)
    }

    pub fn direct_product(a: &CayleyTable, b: &CayleyTable) -> Result<Self> {
        let mut gens: Vec<(u32, u32)> = a.generators.iter().map(|&g| (g, 0)).collect();
        gens.extend(b.generators.iter().map(|&g| (0, g)));
        Self::closure(&format!("{}x{}", a.name, b.name), (0u32, 0u32), &gens, |x, y| {
            (a.mul(x.0, y.0), b.mul(x.1, y.1))
        })
    }

    /// Groups of order 3..=16 used as the test corpus.
    pub fn corpus() -> Vec<CayleyTable> {
        let z = |n| Self::cyclic(n).unwrap();
        let mut out: Vec<CayleyTable> = (3..=16).map(z).collect();
        for n in 2..=8 {
            out.push(Self::dihedral(n).unwrap());
        }
        for k in 2..=4 {
            out.push(Self::elementary_abelian_2(k).unwrap());
        }
        out.push(Self::symmetric(3).unwrap());
        out.push(Self::quaternion().unwrap());
        out.push(Self::alternating4().unwrap());
        out.push(Self::dicyclic12().unwrap());
        let prod = |a: CayleyTable, b: CayleyTable| Self::direct_product(&a, &b).unwrap();
        out.push(prod(z(4), z(2)));
        out.push(prod(z(3), z(3)));
        out.push(prod(z(6), z(2)));
        out.push(prod(z(4), z(4)));
        out.push(prod(z(8), z(2)));
        out.push(prod(Self::dihedral(4).unwrap(), z(2)));
        out.push(prod(Self::quaternion().unwrap(), z(2)));
        out.push(prod(prod(z(4), z(2)), z(2)));
        out
    }
}

/// `(p ∘ q)(i) = q(p(i))`: apply `p` first, matching right actions.
fn compose(p: &[u8], q: &[u8]) -> Vec<u8> {
    p.iter().map(|&i| q[i as usize]).collect()
}

fn quat_mul(p: &[i8; 4], q: &[i8; 4]) -> [i8; 4] {
    let [a1, b1, c1, d1] = *p;
    let [a2, b2, c2, d2] = *q;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_group_laws(t: &CayleyTable) {
        let n = t.order() as u32;
        for a in 0..n {
            assert_eq!(t.mul(a, t.inv(a)), 0);
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(t.mul(t.mul(a, b), c), t.mul(a, t.mul(b, c)), "{}", t.name);
                }
            }
        }
    }

    #[test]
    fn corpus_orders_and_laws() {
        let corpus = CayleyTable::corpus();
        for t in &corpus {
            assert!((3..=16).contains(&t.order()), "{} has order {}", t.name, t.order());
            check_group_laws(t);
        }
        let q8 = corpus.iter().find(|t| t.name == "Q8").unwrap();
        assert_eq!(q8.order(), 8);
        assert!(!q8.is_abelian());
        // Q8 has a unique involution
        assert_eq!((1..8).filter(|&x| q8.element_order(x) == 2).count(), 1);
        let a4 = corpus.iter().find(|t| t.name == "A4").unwrap();
        assert_eq!(a4.order(), 12);
        let dic = corpus.iter().find(|t| t.name == "Dic12").unwrap();
        assert_eq!(dic.order(), 12);
        assert_eq!((1..12).filter(|&x| dic.element_order(x) == 2).count(), 1);
    }

    #[test]
    fn dihedral_and_symmetric_agree_on_order_six() {
        let d6 = CayleyTable::dihedral(3).unwrap();
        let s3 = CayleyTable::symmetric(3).unwrap();
        assert_eq!(d6.order(), 6);
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        let inv_count = |t: &CayleyTable| (1..6).filter(|&x| t.element_order(x) == 2).count();
        assert_eq!(inv_count(&d6), 3);
        assert_eq!(inv_count(&s3), 3);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(CayleyTable::from_table("bad", 2, vec![0, 1, 1, 1], vec![]).is_err());
        assert!(CayleyTable::from_table("bad", 2, vec![0, 1, 1], vec![]).is_err());
    }

    #[test]
    fn generated_subgroup() {
        let z12 = CayleyTable::cyclic(12).unwrap();
        // in BFS order the generator is element 1 and i = 1^i
        assert_eq!(z12.generated(&[4]).len(), 3);
        assert_eq!(z12.generated(&[]).len(), 1);
    }
}
