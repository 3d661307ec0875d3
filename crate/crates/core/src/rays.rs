//! Generator words, eventually periodic rays, double rays and circle
//! descriptions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Element, Group, Label, SubgroupSpec};

pub type GeneratorWord = Vec<Label>;

/// Letter stream `prefix · period^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tail {
    pub prefix: GeneratorWord,
    pub period: GeneratorWord,
}

impl Tail {
    pub fn new(prefix: GeneratorWord, period: GeneratorWord) -> Result<Tail> {
        if period.is_empty() {
            return Err(Error::InvalidGroup("empty period".into()));
        }
        Ok(Tail { prefix, period })
    }

    pub fn periodic(period: GeneratorWord) -> Result<Tail> {
        Self::new(Vec::new(), period)
    }

    /// The `i`-th letter (0-based).
    pub fn letter(&self, i: usize) -> Label {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn letters(&self, n: usize) -> GeneratorWord {
        (0..n).map(|i| self.letter(i)).collect()
    }

    /// Smallest step count after which `k` full periods have been traversed.
    pub fn steps_for_periods(&self, k: usize) -> usize {
        self.prefix.len() + k * self.period.len()
    }

    fn check_labels(&self, g: &Group) -> Result<()> {
        for &l in self.prefix.iter().chain(&self.period) {
            g.gen(l)?;
        }
        Ok(())
    }
}

/// `base[prefix, period, period, …]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventuallyPeriodicRay {
    pub base: Element,
    pub tail: Tail,
}

impl EventuallyPeriodicRay {
    /// The first `steps` vertices, starting with the base.
    pub fn unroll(&self, g: &Group, steps: usize) -> Result<Vec<Element>> {
        let mut out = Vec::with_capacity(steps);
        if steps == 0 {
            return Ok(out);
        }
        let mut v = self.base.clone();
        out.push(v.clone());
        for i in 0..steps - 1 {
            v = g.step(&v, self.tail.letter(i))?;
            out.push(v.clone());
        }
        Ok(out)
    }
}

/// A double ray through `base`. Both tails list letters walking *away* from
/// the base: `v₁ = base·positive[0]`, `v₋₁ = base·negative[0]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleRay {
    pub base: Element,
    pub positive: Tail,
    pub negative: Tail,
}

impl DoubleRay {
    pub fn new(base: Element, positive: Tail, negative: Tail) -> Self {
        DoubleRay { base, positive, negative }
    }

    /// The line through `base` with period `[s]`, negative period `[s⁻¹]`.
    pub fn line(g: &Group, base: Element, s: Label) -> Result<Self> {
        g.gen(s)?;
        Ok(DoubleRay {
            base,
            positive: Tail::periodic(vec![s])?,
            negative: Tail::periodic(vec![g.gens.inverse(s)])?,
        })
    }

    pub fn positive_ray(&self) -> EventuallyPeriodicRay {
        EventuallyPeriodicRay { base: self.base.clone(), tail: self.positive.clone() }
    }

    pub fn negative_ray(&self) -> EventuallyPeriodicRay {
        EventuallyPeriodicRay { base: self.base.clone(), tail: self.negative.clone() }
    }

    /// Label of the edge from `v_{j−1}` to `v_j`.
    pub fn forward_letter(&self, g: &Group, j: i64) -> Label {
        if j >= 1 {
            self.positive.letter(j as usize - 1)
        } else {
            g.gens.inverse(self.negative.letter((-j) as usize))
        }
    }

    /// Vertices `v_{−neg}, …, v₀ = base, …, v_{pos}` in forward order.
    pub fn unroll_range(&self, g: &Group, neg: usize, pos: usize) -> Result<Vec<Element>> {
        let mut left = self.negative_ray().unroll(g, neg + 1)?;
        left.reverse();
        let right = self.positive_ray().unroll(g, pos + 1)?;
        left.extend(right.into_iter().skip(1));
        Ok(left)
    }

    /// `2·steps + 1` vertices centred at the base.
    pub fn unroll(&self, g: &Group, steps: usize) -> Result<Vec<Element>> {
        self.unroll_range(g, steps, steps)
    }

    /// Left translate `x·R`.
    pub fn translate(&self, g: &Group, x: &Element) -> Result<Self> {
        Ok(DoubleRay { base: g.mul(x, &self.base)?, ..self.clone() })
    }

    /// Same vertex sequence traversed in the opposite direction.
    pub fn reversed(&self) -> Self {
        DoubleRay { base: self.base.clone(), positive: self.negative.clone(), negative: self.positive.clone() }
    }

    pub fn max_period(&self) -> usize {
        self.positive.period.len().max(self.negative.period.len())
    }

    pub fn max_prefix(&self) -> usize {
        self.positive.prefix.len().max(self.negative.prefix.len())
    }

    pub fn check_labels(&self, g: &Group) -> Result<()> {
        self.positive.check_labels(g)?;
        self.negative.check_labels(g)
    }

    /// Builds a double ray from block generators: the positive tail is the
    /// concatenation of `pos(0), pos(1), …`, which must satisfy
    /// `pos(j + period) = pos(j)` for `j ≥ prefix`; likewise for `neg`.
    /// The periodicity claim is checked on three periods.
    pub fn from_blocks(
        base: Element,
        pos: impl Fn(usize) -> GeneratorWord,
        pos_counts: (usize, usize),
        neg: impl Fn(usize) -> GeneratorWord,
        neg_counts: (usize, usize),
    ) -> Result<Self> {
        Ok(DoubleRay { base, positive: blocks_to_tail(&pos, pos_counts)?, negative: blocks_to_tail(&neg, neg_counts)? })
    }

    /// Expands each inner letter `y ∈ g·S` into `[g, g⁻¹y]`, turning a double
    /// ray of the index-two subgroup `⟨gS⟩` into one of the whole group.
    /// `inner` generates the subgroup with the elements of `gS`; the tails of
    /// `r` use its labels.
    pub fn concatenate_lift(&self, inner: &Group, g: &Group, interleave: Label) -> Result<DoubleRay> {
        let gl = g.gen(interleave)?.clone();
        let gl_inv = g.inv(&gl)?;
        let expand_forward = |y: Label| -> Result<Label> {
            let ye = inner.gen(y)?;
            g.gens.label_of(&g.mul(&gl_inv, ye)?).ok_or_else(|| {
                Error::InnerInvalid(format!("forward letter {} is not in gS", inner.format(ye)))
            })
        };
        let lift_pos = |w: &[Label]| -> Result<GeneratorWord> {
            let mut out = Vec::with_capacity(2 * w.len());
            for &y in w {
                out.push(interleave);
                out.push(expand_forward(y)?);
            }
            Ok(out)
        };
        // an outward letter y is the forward letter y⁻¹ = g·s read backwards: [s⁻¹, g⁻¹]
        let lift_neg = |w: &[Label]| -> Result<GeneratorWord> {
            let mut out = Vec::with_capacity(2 * w.len());
            for &y in w {
                let s = expand_forward(inner.gens.inverse(y))?;
                out.push(g.gens.inverse(s));
                out.push(g.gens.inverse(interleave));
            }
            Ok(out)
        };
        Ok(DoubleRay {
            base: self.base.clone(),
            positive: Tail { prefix: lift_pos(&self.positive.prefix)?, period: lift_pos(&self.positive.period)? },
            negative: Tail { prefix: lift_neg(&self.negative.prefix)?, period: lift_neg(&self.negative.period)? },
        })
    }

    /// Human-readable form using generator names.
    pub fn render(&self, g: &Group) -> String {
        let w = |v: &[Label]| g.format_word(v);
        format!(
            "[{}]({})^w <- {} -> [{}]({})^w",
            w(&self.negative.prefix),
            w(&self.negative.period),
            g.format(&self.base),
            w(&self.positive.prefix),
            w(&self.positive.period)
        )
    }
}

fn blocks_to_tail(block: &dyn Fn(usize) -> GeneratorWord, (pre, per): (usize, usize)) -> Result<Tail> {
    if per == 0 {
        return Err(Error::InvalidGroup("period block count must be positive".into()));
    }
    for j in pre..pre + 3 * per {
        if block(j) != block(j + per) {
            return Err(Error::InvalidGroup(format!("block {j} does not repeat after {per} blocks")));
        }
    }
    let prefix: GeneratorWord = (0..pre).flat_map(block).collect();
    let period: GeneratorWord = (pre..pre + per).flat_map(block).collect();
    Tail::new(prefix, period)
}

/// A Hamilton circle candidate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CircleDescription {
    FiniteCycle { base: Element, word: GeneratorWord },
    /// Two disjoint double rays whose closure is a circle (two-ended case).
    TwoRayCircle(DoubleRay, DoubleRay),
    /// Translates `x·template`, one per coset `x·H` of `coset_subgroup`.
    RayFamily { template: DoubleRay, coset_subgroup: SubgroupSpec },
}

impl CircleDescription {
    pub fn render(&self, g: &Group) -> String {
        match self {
            CircleDescription::FiniteCycle { base, word } => {
                format!("cycle {}[{}]", g.format(base), g.format_word(word))
            }
            CircleDescription::TwoRayCircle(a, b) => format!("R1 = {}\nR2 = {}", a.render(g), b.render(g)),
            CircleDescription::RayFamily { template, coset_subgroup } => {
                format!("family over cosets of {coset_subgroup:?}: {}", template.render(g))
            }
        }
    }
}

/// Disjoint double rays that together cover every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonCover {
    pub rays: Vec<DoubleRay>,
}

impl HamiltonCover {
    pub fn order(&self) -> usize {
        self.rays.len()
    }
}

/// Vertices of a finite closed walk `base[word]` (the start is not repeated).
pub fn cycle_vertices(g: &Group, base: &Element, word: &[Label]) -> Result<Vec<Element>> {
    let mut out = vec![base.clone()];
    let mut v = base.clone();
    for &l in word {
        v = g.step(&v, l)?;
        out.push(v.clone());
    }
    if out.last() != Some(base) {
        return Err(Error::MalformedCycle("word does not close up".into()));
    }
    out.pop();
    Ok(out)
}
