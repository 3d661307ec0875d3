//! Two double rays zig-zagging through finite blocks strung along a column.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{Element, Group, Label};
use crate::rays::{CircleDescription, DoubleRay, GeneratorWord, Tail};

use super::{Certificate, Construction, HamiltonObject};

/// Blocks `X_i = v_i·N` along the column double ray `(v_i)`, where `N` is the
/// finite subgroup traced by the closed word `block_word` from the identity.
/// Consecutive blocks are matched by the column letter between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylinderInput {
    pub column: DoubleRay,
    /// Hamilton cycle of `N` read from the identity; `[k, k]` for blocks of two.
    pub block_word: GeneratorWord,
    /// No generator edge joins blocks whose indices differ by this much.
    pub locality: usize,
}

struct Blocks<'a> {
    g: &'a Group,
    word: &'a [Label],
    elems: Vec<Element>,
    pos: HashMap<Element, usize>,
}

impl<'a> Blocks<'a> {
    fn new(g: &'a Group, word: &'a [Label]) -> Result<Self> {
        let p = word.len();
        if p < 2 {
            return Err(Error::BlockNotHamiltonian("block word needs at least two letters".into()));
        }
        let mut elems = vec![g.identity()];
        for &l in &word[..p - 1] {
            let next = g.step(elems.last().unwrap(), l)?;
            elems.push(next);
        }
        if g.step(&elems[p - 1], word[p - 1])? != g.identity() {
            return Err(Error::BlockNotHamiltonian("block word does not close".into()));
        }
        let pos: HashMap<Element, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        if pos.len() != p {
            return Err(Error::BlockNotHamiltonian("block word repeats a vertex".into()));
        }
        for a in &elems {
            for b in &elems {
                if !pos.contains_key(&g.mul(a, b)?) {
                    return Err(Error::BlockNotHamiltonian("block vertices do not form a subgroup".into()));
                }
            }
        }
        Ok(Blocks { g, word, elems, pos })
    }

    fn len(&self) -> usize {
        self.word.len()
    }

    /// Position of `t⁻¹·w_q·t` in the next block reached through `t`.
    fn across(&self, q: usize, t: Label) -> Result<usize> {
        let te = self.g.gen(t)?;
        let c = self.g.mul(&self.g.mul(&self.g.inv(te)?, &self.elems[q])?, te)?;
        self.pos.get(&c).copied().ok_or_else(|| {
            Error::NotAMatching(format!("{} does not normalize the block", self.g.gens.get(t).unwrap().name))
        })
    }

    /// Letters walking forward around the cycle from `from` to `to`.
    fn arc(&self, from: usize, to: usize) -> GeneratorWord {
        let p = self.len();
        let n = (to + p - from) % p;
        (0..n).map(|k| self.word[(from + k) % p]).collect()
    }

    /// Letters walking backward around the cycle from `from` to `to`.
    fn arc_back(&self, from: usize, to: usize) -> GeneratorWord {
        let p = self.len();
        let n = (from + p - to) % p;
        (0..n).map(|k| self.g.gens.inverse(self.word[(from + p - k - 1) % p])).collect()
    }
}

/// Phase of a tail letter index: the index itself in the prefix, then the
/// position inside the period.
fn phase(t: &Tail, i: usize) -> usize {
    if i < t.prefix.len() {
        i
    } else {
        t.prefix.len() + (i - t.prefix.len()) % t.period.len()
    }
}

/// Runs `step` from `state` until a `(state, phase)` pair repeats, and
/// returns the blocks emitted as `(prefix, period)` tails for each ray.
fn periodic_blocks(
    tail: &Tail,
    mut state: (usize, usize),
    mut step: impl FnMut(usize, (usize, usize)) -> Result<((usize, usize), [GeneratorWord; 2])>,
) -> Result<[Tail; 2]> {
    let mut seen: HashMap<((usize, usize), usize), usize> = HashMap::new();
    let mut blocks: Vec<[GeneratorWord; 2]> = Vec::new();
    let mut i = 0;
    loop {
        let key = (state, phase(tail, i));
        if let Some(&start) = seen.get(&key) {
            let mk = |r: usize| -> Result<Tail> {
                let pre: GeneratorWord = blocks[..start].iter().flat_map(|b| b[r].clone()).collect();
                let per: GeneratorWord = blocks[start..].iter().flat_map(|b| b[r].clone()).collect();
                Tail::new(pre, per)
            };
            return Ok([mk(0)?, mk(1)?]);
        }
        seen.insert(key, i);
        let (next, b) = step(i, state)?;
        blocks.push(b);
        state = next;
        i += 1;
    }
}

/// Checks on a stretch of the column that generator edges only join blocks
/// less than `locality` apart.
fn check_locality(g: &Group, input: &CylinderInput, blocks: &Blocks) -> Result<bool> {
    let k = input.locality.max(1);
    let span = 2 * k + 4;
    let column = input.column.unroll(g, span)?;
    let mut index: HashMap<Element, i64> = HashMap::new();
    for (j, v) in column.iter().enumerate() {
        for w in &blocks.elems {
            index.insert(g.mul(v, w)?, j as i64 - span as i64);
        }
    }
    for (j, v) in column.iter().enumerate().skip(k + 2).take(column.len() - 2 * (k + 2)) {
        let i = j as i64 - span as i64;
        for w in &blocks.elems {
            let x = g.mul(v, w)?;
            for l in 0..g.gens.len() {
                match index.get(&g.step(&x, l)?) {
                    Some(&m) if (m - i).unsigned_abs() < k as u64 => {}
                    _ => return Ok(false),
                }
            }
        }
    }
    Ok(true)
}

/// Two double rays that split every block into two arcs of its cycle, each
/// continuing into the next block through the matching edge at its end.
pub fn cylinder_circle(g: &Group, input: &CylinderInput) -> Result<Construction<HamiltonObject>> {
    let blocks = Blocks::new(g, &input.block_word)?;
    let p = blocks.len();
    let col = &input.column;
    let mut cert = Certificate::new("cylinder", "block zig-zag", g);
    cert.check("blocks carry Hamilton cycles", true);
    for &t in col.positive.prefix.iter().chain(&col.positive.period).chain(&col.negative.prefix).chain(&col.negative.period) {
        blocks.across(0, t)?;
    }
    cert.check("column letters match consecutive blocks", true);
    if !check_locality(g, input, &blocks)? {
        return Err(Error::HypothesisViolated(format!("edges join blocks at distance {} or more", input.locality)));
    }
    cert.check("edges join only nearby blocks", true);

    // state (e, h): R1 holds the arc [e, h), R2 the arc [h, e)
    let (e0, h0) = (0usize, 1usize);
    let pos_tails = periodic_blocks(&col.positive, (e0, h0), |i, (e, h)| {
        let t = col.positive.letter(i);
        let (f, last2) = ((h + p - 1) % p, (e + p - 1) % p);
        let mut r1 = blocks.arc(e, f);
        r1.push(t);
        let mut r2 = blocks.arc(h, last2);
        r2.push(t);
        let (e1, h1) = (blocks.across(f, t)?, blocks.across(last2, t)?);
        Ok(((e1, h1), [r1, r2]))
    })?;
    // outward: leave block 0 from the ray bases, then sweep each block backwards
    let neg_tails = periodic_blocks(&col.negative, (e0, h0), |i, (e, h)| {
        let u = col.negative.letter(i);
        let f = blocks.across(e, u)?;
        let last2 = blocks.across(h, u)?;
        let (e1, h1) = ((last2 + 1) % p, (f + 1) % p);
        let mut r1 = vec![u];
        r1.extend(blocks.arc_back(f, e1));
        let mut r2 = vec![u];
        r2.extend(blocks.arc_back(last2, h1));
        Ok(((e1, h1), [r1, r2]))
    })?;
    let [p1, p2] = pos_tails;
    let [n1, n2] = neg_tails;
    let r1 = DoubleRay::new(g.mul(&col.base, &blocks.elems[e0])?, p1, n1);
    let r2 = DoubleRay::new(g.mul(&col.base, &blocks.elems[h0])?, p2, n2);
    cert.note(format!("blocks of size {p}"));
    Ok(Construction { object: HamiltonObject::Circle(CircleDescription::TwoRayCircle(r1, r2)), certificate: cert })
}
