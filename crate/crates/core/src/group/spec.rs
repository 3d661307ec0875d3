//! Group spec files: a family tag with its parameters, and optionally a
//! generating set given as words in the family's default generators.
//!
//! ```toml
//! family = "infinite-dihedral"
//! gens = [[1, false], [0, true]]
//! words = ["a a", "b"]
//! ```

use serde::{Deserialize, Serialize};

use super::{CayleyTable, Group};
use crate::error::{Error, Result};
use crate::rewrite::{complete_strict, Presentation, DEFAULT_MAX_LEN, DEFAULT_MAX_RULES};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilySpec {
    Integers { gens: Vec<i64> },
    /// Generators `a^k b^r` as `[k, r]`.
    InfiniteDihedral { gens: Vec<(i64, bool)> },
    /// A named table (`Z6`, `D8`, `Z2^3`, `S3`, `A4`, `Q8`, `Dic12`, products
    /// joined by `x`) with its default generators.
    Finite { table: String },
    Free { rank: usize },
    /// `ℤ_{2m} ∗_{ℤ_m} ℤ_{2m}`.
    CyclicAmalgam { m: usize, #[serde(default)] with_core: bool },
    Hnn { p: u32, s: u32 },
    /// Presentation text `gen: … ; rel: …`, completed by Knuth–Bendix.
    Presented { presentation: String },
    Product { left: Box<GroupSpecFile>, right: Box<GroupSpecFile> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSpecFile {
    #[serde(flatten)]
    pub family: FamilySpec,
    /// Generating set as words in the default generators; empty keeps them.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub words: Vec<String>,
}

/// Parses a table name such as `Z4xZ2` or `D8`.
pub fn named_table(name: &str) -> Result<CayleyTable> {
    let name = name.trim();
    if let Some((a, b)) = name.split_once('x') {
        return CayleyTable::direct_product(&named_table(a)?, &named_table(b)?);
    }
    let bad = || Error::Parse(format!("unknown table {name:?}"));
    let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
    match name {
        "S3" => CayleyTable::symmetric(3),
        "S4" => CayleyTable::symmetric(4),
        "A4" => CayleyTable::alternating4(),
        "Q8" => CayleyTable::quaternion(),
        "Dic12" => CayleyTable::dicyclic12(),
        _ => {
            if let Some(k) = name.strip_prefix("Z2^") {
                CayleyTable::elementary_abelian_2(num(k)?)
            } else if let Some(n) = name.strip_prefix('Z') {
                CayleyTable::cyclic(num(n)?)
            } else if let Some(n) = name.strip_prefix('D') {
                let n = num(n)?;
                if n % 2 != 0 {
                    return Err(bad());
                }
                CayleyTable::dihedral(n / 2)
            } else {
                Err(bad())
            }
        }
    }
}

impl GroupSpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        toml::to_string(self).expect("spec serializes")
    }

    pub fn build(&self) -> Result<Group> {
        let g = match &self.family {
            FamilySpec::Integers { gens } => Group::integers(gens)?,
            FamilySpec::InfiniteDihedral { gens } => Group::infinite_dihedral(gens)?,
            FamilySpec::Finite { table } => {
                let t = named_table(table)?;
                let gens = t.generators.clone();
                Group::finite(t, &gens)?
            }
            FamilySpec::Free { rank } => Group::free(*rank)?,
            FamilySpec::CyclicAmalgam { m, with_core } => Group::cyclic_amalgam(*m, *with_core)?,
            FamilySpec::Hnn { p, s } => Group::hnn(*p, *s)?,
            FamilySpec::Presented { presentation } => {
                let p = Presentation::parse(presentation)?;
                let rs = complete_strict(&p, DEFAULT_MAX_RULES, DEFAULT_MAX_LEN)
                    .map_err(|e| Error::CompletionFailed(e.to_string()))?;
                Group::presented(rs)?
            }
            FamilySpec::Product { left, right } => Group::product(&left.build()?, &right.build()?)?,
        };
        if self.words.is_empty() {
            return Ok(g);
        }
        let elems = self.words.iter().map(|w| g.evaluate(&g.parse_word(w)?)).collect::<Result<Vec<_>>>()?;
        g.with_gens(elems)
    }
}
