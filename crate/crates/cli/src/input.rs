//! Group and word arguments shared by the subcommands.

use std::fs;
use std::path::PathBuf;
use std::time::Duration;

use clap::Args;

use hamcircle::oracle::SearchBudget;
use hamcircle::{Element, FamilySpec, Group, GroupSpecFile, Label};

use crate::Failure;

#[derive(Args, Debug, Clone, Default)]
pub struct GroupArgs {
    /// Group spec file (TOML).
    #[arg(long, conflicts_with = "gens")]
    pub spec: Option<PathBuf>,
    /// Steps of ℤ (`2,3`) or D∞ generators `r<k>` = a^k, `s<k>` = a^k b (`r1,s0`).
    #[arg(long, allow_hyphen_values = true)]
    pub gens: Option<String>,
}

impl GroupArgs {
    pub fn is_given(&self) -> bool {
        self.spec.is_some() || self.gens.is_some()
    }

    pub fn spec_file(&self) -> Result<GroupSpecFile, Failure> {
        if let Some(p) = &self.spec {
            return Ok(GroupSpecFile::parse(&fs::read_to_string(p)?)?);
        }
        let text = self.gens.as_deref().ok_or_else(|| Failure::usage("give --spec or --gens"))?;
        let tokens: Vec<&str> = text.split(',').map(str::trim).filter(|t| !t.is_empty()).collect();
        let bad = |t: &str| Failure::usage(format!("bad generator {t:?}"));
        let family = if tokens.iter().all(|t| t.starts_with('r') || t.starts_with('s')) {
            let gens = tokens
                .iter()
                .map(|t| Ok((t[1..].parse::<i64>().map_err(|_| bad(t))?, t.starts_with('s'))))
                .collect::<Result<Vec<_>, Failure>>()?;
            FamilySpec::InfiniteDihedral { gens }
        } else {
            let gens = tokens.iter().map(|t| t.parse::<i64>().map_err(|_| bad(t))).collect::<Result<Vec<_>, _>>()?;
            FamilySpec::Integers { gens }
        };
        Ok(GroupSpecFile { family, words: Vec::new() })
    }

    pub fn build(&self) -> Result<Group, Failure> {
        Ok(self.spec_file()?.build()?)
    }
}

/// Search budget from the flag, then `HC_BUDGET_MS`, then the default.
pub fn budget(flag: Option<u64>) -> Result<SearchBudget, Failure> {
    let ms = match flag {
        Some(ms) => Some(ms),
        None => match std::env::var("HC_BUDGET_MS") {
            Ok(v) => Some(v.trim().parse::<u64>().map_err(|_| Failure::usage(format!("HC_BUDGET_MS={v:?} is not a number")))?),
            Err(_) => None,
        },
    };
    match ms {
        Some(ms) => Ok(SearchBudget::new(SearchBudget::default().max_nodes, Duration::from_millis(ms))?),
        None => Ok(SearchBudget::default()),
    }
}

/// A word of generator names separated by spaces.
pub fn word(g: &Group, text: &str) -> Result<Vec<Label>, Failure> {
    Ok(g.parse_word(text)?)
}

/// Elements given as words separated by commas.
pub fn elements(g: &Group, text: &str) -> Result<Vec<Element>, Failure> {
    text.split(',').map(|w| Ok(g.evaluate(&word(g, w)?)?)).collect()
}
