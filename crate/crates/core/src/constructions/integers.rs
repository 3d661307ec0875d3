//! Hamilton double rays in Cayley graphs of ℤ.

use crate::error::{Error, Result};
use crate::group::{Element, Family, Group};
use crate::rays::{DoubleRay, Tail};

use super::{label_for, Certificate, Construction};

/// Integer steps of an eventually periodic double ray in ℤ: `pos` lists the
/// forward steps from 0, `neg` the outward steps of the negative tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IntRay {
    pub pos: IntTail,
    pub neg: IntTail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct IntTail {
    pub prefix: Vec<i64>,
    pub period: Vec<i64>,
}

impl IntTail {
    pub fn letter(&self, i: usize) -> i64 {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    fn from_blocks(pre: usize, per: usize, block: impl Fn(usize) -> Vec<i64>) -> IntTail {
        IntTail {
            prefix: (0..pre).flat_map(&block).collect(),
            period: (pre..pre + per).flat_map(&block).collect(),
        }
    }

    fn scaled(&self, d: i64) -> IntTail {
        IntTail {
            prefix: self.prefix.iter().map(|x| x * d).collect(),
            period: self.period.iter().map(|x| x * d).collect(),
        }
    }

    fn to_tail(&self, map: &impl Fn(i64) -> Result<usize>) -> Result<Tail> {
        let conv = |v: &[i64]| v.iter().map(|&x| map(x)).collect::<Result<Vec<_>>>();
        Tail::new(conv(&self.prefix)?, conv(&self.period)?)
    }
}

impl IntRay {
    pub fn to_double_ray(&self, base: Element, map: impl Fn(i64) -> Result<usize>) -> Result<DoubleRay> {
        Ok(DoubleRay::new(base, self.pos.to_tail(&map)?, self.neg.to_tail(&map)?))
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a as i64, b as i64) as usize * b
}

/// Distinct absolute values, in order of first appearance.
pub(crate) fn step_sizes(values: &[i64]) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::new();
    for v in values.iter().map(|v| v.abs()).filter(|&v| v != 0) {
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// A Hamilton double ray of ℤ using steps `±s` for `s` in `sizes` (positive,
/// distinct, with gcd 1). The last size zig-zags through the cosets of the
/// subgroup generated by the others.
pub(crate) fn int_ray(sizes: &[i64]) -> Result<IntRay> {
    let g = sizes.iter().fold(0, |acc, &x| gcd(acc, x));
    if sizes.is_empty() || g != 1 {
        return Err(Error::NotGenerating(format!("step sizes {sizes:?} have gcd {g}")));
    }
    if sizes.len() == 1 {
        return Ok(IntRay {
            pos: IntTail { prefix: vec![], period: vec![1] },
            neg: IntTail { prefix: vec![], period: vec![-1] },
        });
    }
    let (&s, rest) = sizes.split_last().unwrap();
    let d = rest.iter().fold(0, |acc, &x| gcd(acc, x));
    let reduced: Vec<i64> = rest.iter().map(|x| x / d).collect();
    let inner = int_ray(&reduced)?;
    if d == 1 {
        return Ok(inner);
    }
    let (pos, neg) = (inner.pos.scaled(d), inner.neg.scaled(d));
    let k = (d - 1) as usize;
    let sweep = move |i: usize| vec![if i.is_multiple_of(2) { s } else { -s }; k];
    let pos_blocks = |i: usize| {
        let mut b = sweep(i);
        b.push(pos.letter(i));
        b
    };
    let neg_blocks = |i: usize| {
        let mut b = vec![neg.letter(i)];
        b.extend(sweep(i));
        b
    };
    Ok(IntRay {
        pos: IntTail::from_blocks(inner.pos.prefix.len(), lcm(2, inner.pos.period.len()), pos_blocks),
        neg: IntTail::from_blocks(inner.neg.prefix.len(), lcm(2, inner.neg.period.len()), neg_blocks),
    })
}

/// A Hamilton double ray of a Cayley graph of ℤ, based at 0.
/// A Hamilton double ray of `ℤ` whose forward steps lie in `d` and whose
/// outward steps are negatives of elements of `d`: the zig-zag on the
/// symmetric part of `d` when that generates, else a unit line.
pub(crate) fn directed_int_ray(d: &[i64]) -> Result<Option<IntRay>> {
    let sym: Vec<i64> = d.iter().copied().filter(|x| d.contains(&-x)).collect();
    if sym.iter().copied().fold(0, gcd) == 1 {
        return int_ray(&step_sizes(&sym)).map(Some);
    }
    Ok(d.iter().find(|x| x.abs() == 1).map(|&u| IntRay {
        pos: IntTail { prefix: vec![], period: vec![u] },
        neg: IntTail { prefix: vec![], period: vec![-u] },
    }))
}

pub fn double_ray_z(g: &Group) -> Result<Construction<DoubleRay>> {
    if !matches!(g.family, Family::Integers) {
        return Err(Error::FamilyMismatch);
    }
    let values: Vec<i64> = g
        .gens
        .elements()
        .into_iter()
        .map(|e| match e {
            Element::Int(n) => n,
            _ => unreachable!("integer family"),
        })
        .collect();
    let sizes = step_sizes(&values);
    let mut cert = Certificate::new("double-ray-z", "coset zig-zag", g);
    let gcd_all = sizes.iter().fold(0, |acc, &x| gcd(acc, x));
    cert.check("generating set generates Z", gcd_all == 1);
    let ray = int_ray(&sizes)?;
    let object = ray.to_double_ray(Element::Int(0), |n| label_for(g, &Element::Int(n)))?;
    Ok(Construction { object, certificate: cert })
}
