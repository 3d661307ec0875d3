//! Knuth–Bendix completion of group presentations into shortlex string
//! rewriting systems.
//!
//! Symbols are numbered so that generator `i` is symbol `2i` and its formal
//! inverse is symbol `2i + 1`. Shortlex compares length first and then the
//! symbol numbers, which puts every inverse immediately after its base symbol.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Symbol = u16;

/// Default caps for [`complete`].
pub const DEFAULT_MAX_RULES: usize = 10_000;
pub const DEFAULT_MAX_LEN: usize = 64;

#[inline]
pub fn inverse_symbol(s: Symbol) -> Symbol {
    s ^ 1
}

pub fn invert_word(w: &[Symbol]) -> Vec<Symbol> {
    w.iter().rev().map(|&s| inverse_symbol(s)).collect()
}

pub fn shortlex_cmp(u: &[Symbol], v: &[Symbol]) -> Ordering {
    u.len().cmp(&v.len()).then_with(|| u.cmp(v))
}

/// A finite group presentation over named generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<Symbol>>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Vec<Symbol>>) -> Result<Self> {
        let p = Presentation { generators, relators };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.generators.is_empty() {
            return Err(Error::IllFormedPresentation("no generators".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for g in &self.generators {
            if !seen.insert(g) {
                return Err(Error::IllFormedPresentation(format!("duplicate generator {g}")));
            }
        }
        let n = self.symbol_count() as Symbol;
        for r in &self.relators {
            if let Some(bad) = r.iter().find(|&&s| s >= n) {
                return Err(Error::IllFormedPresentation(format!("undeclared symbol {bad}")));
            }
        }
        Ok(())
    }

    pub fn symbol_count(&self) -> usize {
        2 * self.generators.len()
    }

    pub fn symbol_names(&self) -> Vec<String> {
        self.generators
            .iter()
            .flat_map(|g| [g.clone(), format!("{g}^-1")])
            .collect()
    }

    /// Parses `gen: a b c ; rel: a^2, b^2, (a b)^2, (a b c)^3`.
    ///
    /// Powers may be negative; `x^-1` is the formal inverse. An unknown
    /// identifier made only of single-letter generators (`ab`) is split.
    pub fn parse(text: &str) -> Result<Self> {
        let (gen_part, rel_part) = match text.split_once(';') {
            Some((g, r)) => (g.trim(), r.trim()),
            None => (text.trim(), ""),
        };
        let gens = gen_part
            .strip_prefix("gen:")
            .ok_or_else(|| Error::Parse("expected `gen:`".into()))?;
        let generators: Vec<String> = gens.split_whitespace().map(str::to_string).collect();
        let mut relators = Vec::new();
        if !rel_part.is_empty() {
            let rels = rel_part
                .strip_prefix("rel:")
                .ok_or_else(|| Error::Parse("expected `rel:`".into()))?;
            for r in rels.split(',') {
                let r = r.trim();
                if r.is_empty() {
                    continue;
                }
                relators.push(parse_word(r, &generators)?);
            }
        }
        Presentation::new(generators, relators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.symbol_names();
        write!(f, "gen: {} ; rel: ", self.generators.join(" "))?;
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| r.iter().map(|&s| names[s as usize].as_str()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", rels.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Int(i64),
    Caret,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '^' {
            out.push(Token::Caret);
            i += 1;
        } else if c == '(' {
            out.push(Token::Open);
            i += 1;
        } else if c == ')' {
            out.push(Token::Close);
            i += 1;
        } else if c == '-' || c.is_ascii_digit() {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Token::Int(lit.parse().map_err(|_| Error::Parse(format!("bad integer {lit}")))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

/// Parses a word over `generators` (see [`Presentation::parse`]).
pub fn parse_word(s: &str, generators: &[String]) -> Result<Vec<Symbol>> {
    let tokens = tokenize(s)?;
    let mut pos = 0;
    let w = parse_seq(&tokens, &mut pos, generators)?;
    if pos != tokens.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(w)
}

fn lookup(name: &str, generators: &[String]) -> Result<Vec<Symbol>> {
    if let Some(i) = generators.iter().position(|g| g == name) {
        return Ok(vec![2 * i as Symbol]);
    }
    let mut out = Vec::new();
    for c in name.chars() {
        let i = generators
            .iter()
            .position(|g| g.len() == c.len_utf8() && g.starts_with(c))
            .ok_or_else(|| Error::IllFormedPresentation(format!("unknown symbol {name}")))?;
        out.push(2 * i as Symbol);
    }
    Ok(out)
}

fn power(w: Vec<Symbol>, e: i64) -> Vec<Symbol> {
    let base = if e < 0 { invert_word(&w) } else { w };
    let mut out = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
    for _ in 0..e.unsigned_abs() {
        out.extend_from_slice(&base);
    }
    out
}

fn parse_seq(tokens: &[Token], pos: &mut usize, generators: &[String]) -> Result<Vec<Symbol>> {
    let mut out = Vec::new();
    while *pos < tokens.len() {
        let atom = match &tokens[*pos] {
            Token::Ident(name) => {
                *pos += 1;
                lookup(name, generators)?
            }
            Token::Open => {
                *pos += 1;
                let inner = parse_seq(tokens, pos, generators)?;
                if tokens.get(*pos) != Some(&Token::Close) {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                *pos += 1;
                inner
            }
            Token::Close => break,
            t => return Err(Error::Parse(format!("unexpected token {t:?}"))),
        };
        let atom = if tokens.get(*pos) == Some(&Token::Caret) {
            *pos += 1;
            match tokens.get(*pos) {
                Some(Token::Int(e)) => {
                    *pos += 1;
                    power(atom, *e)
                }
                _ => return Err(Error::Parse("expected exponent after ^".into())),
            }
        } else {
            atom
        };
        out.extend(atom);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Complete,
    Capped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rule {
    pub lhs: Vec<Symbol>,
    pub rhs: Vec<Symbol>,
}

/// A shortlex-oriented string rewriting system for a presented group.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RewriteSystem {
    pub presentation: Presentation,
    pub rules: Vec<Rule>,
    pub status: Status,
    #[serde(skip)]
    index: HashMap<Symbol, Vec<usize>>,
}

impl PartialEq for RewriteSystem {
    fn eq(&self, other: &Self) -> bool {
        self.presentation == other.presentation && self.rules == other.rules && self.status == other.status
    }
}

impl Eq for RewriteSystem {}

fn build_index(rules: &[Rule]) -> HashMap<Symbol, Vec<usize>> {
    let mut index: HashMap<Symbol, Vec<usize>> = HashMap::new();
    for (i, r) in rules.iter().enumerate() {
        if let Some(&last) = r.lhs.last() {
            index.entry(last).or_default().push(i);
        }
    }
    index
}

fn rewrite_with<'a>(
    w: &[Symbol],
    index: &HashMap<Symbol, Vec<usize>>,
    rule_at: impl Fn(usize) -> Option<&'a Rule>,
) -> Vec<Symbol> {
    let mut out: Vec<Symbol> = Vec::with_capacity(w.len());
    let mut pending: Vec<Symbol> = w.iter().rev().copied().collect();
    while let Some(s) = pending.pop() {
        out.push(s);
        if let Some(candidates) = index.get(&s) {
            for &ri in candidates {
                let Some(rule) = rule_at(ri) else { continue };
                let n = rule.lhs.len();
                if n <= out.len() && out[out.len() - n..] == rule.lhs[..] {
                    out.truncate(out.len() - n);
                    pending.extend(rule.rhs.iter().rev());
                    break;
                }
            }
        }
    }
    out
}

impl RewriteSystem {
    /// Rebuilds the lookup index (needed after deserialization).
    pub fn reindex(&mut self) {
        self.index = build_index(&self.rules);
    }

    pub fn is_complete(&self) -> bool {
        self.status == Status::Complete
    }

    pub fn symbol_names(&self) -> Vec<String> {
        self.presentation.symbol_names()
    }

    /// Shortlex normal form; requires a complete system.
    pub fn normalize(&self, w: &[Symbol]) -> Result<Vec<Symbol>> {
        if !self.is_complete() {
            return Err(Error::IncompleteSystem);
        }
        Ok(self.reduce(w))
    }

    /// Reduces with whatever rules exist. Sound for a capped system, but equal
    /// elements may reduce to different words.
    pub fn reduce(&self, w: &[Symbol]) -> Vec<Symbol> {
        rewrite_with(w, &self.index, |i| self.rules.get(i))
    }

    /// Checks every critical pair of the rule set for joinability.
    pub fn is_locally_confluent(&self) -> bool {
        for r1 in &self.rules {
            for r2 in &self.rules {
                for (a, b) in critical_pairs(r1, r2) {
                    if self.reduce(&a) != self.reduce(&b) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn format_word(&self, w: &[Symbol]) -> String {
        let names = self.symbol_names();
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&s| names[s as usize].as_str()).collect::<Vec<_>>().join(" ")
    }
}

fn critical_pairs(r1: &Rule, r2: &Rule) -> Vec<(Vec<Symbol>, Vec<Symbol>)> {
    let mut out = Vec::new();
    let (l1, l2) = (&r1.lhs, &r2.lhs);
    for k in 1..l1.len().min(l2.len()) {
        if l1[l1.len() - k..] == l2[..k] {
            let mut a = r1.rhs.clone();
            a.extend_from_slice(&l2[k..]);
            let mut b = l1[..l1.len() - k].to_vec();
            b.extend_from_slice(&r2.rhs);
            out.push((a, b));
        }
    }
    // r2 strictly inside r1
    if l2.len() < l1.len() {
        for start in 0..=l1.len() - l2.len() {
            if l1[start..start + l2.len()] == l2[..] {
                let a = r1.rhs.clone();
                let mut b = l1[..start].to_vec();
                b.extend_from_slice(&r2.rhs);
                b.extend_from_slice(&l1[start + l2.len()..]);
                out.push((a, b));
            }
        }
    }
    out
}

struct Completion {
    rules: Vec<Option<Rule>>,
    index: HashMap<Symbol, Vec<usize>>,
    alive: usize,
    capped: bool,
    max_len: usize,
}

impl Completion {
    fn reduce(&self, w: &[Symbol]) -> Vec<Symbol> {
        rewrite_with(w, &self.index, |i| self.rules[i].as_ref())
    }

    fn add_equation(&mut self, u: Vec<Symbol>, v: Vec<Symbol>, queue: &mut VecDeque<(Vec<Symbol>, Vec<Symbol>)>) {
        let u = self.reduce(&u);
        let v = self.reduce(&v);
        let (lhs, rhs) = match shortlex_cmp(&u, &v) {
            Ordering::Equal => return,
            Ordering::Greater => (u, v),
            Ordering::Less => (v, u),
        };
        if lhs.len() > self.max_len {
            self.capped = true;
            return;
        }
        let id = self.rules.len();
        let new_rule = Rule { lhs, rhs };
        // interreduce against the new rule
        for j in 0..self.rules.len() {
            let Some(r) = &self.rules[j] else { continue };
            if contains(&r.lhs, &new_rule.lhs) {
                let r = self.rules[j].take().unwrap();
                self.alive -= 1;
                queue.push_back((r.lhs, r.rhs));
            }
        }
        self.index.entry(*new_rule.lhs.last().unwrap()).or_default().push(id);
        self.rules.push(Some(new_rule));
        self.alive += 1;
        for j in 0..id {
            if let Some(r) = &self.rules[j] {
                let rhs = self.reduce(&r.rhs);
                self.rules[j].as_mut().unwrap().rhs = rhs;
            }
        }
    }

    fn drain(&mut self, queue: &mut VecDeque<(Vec<Symbol>, Vec<Symbol>)>) {
        while let Some((u, v)) = queue.pop_front() {
            self.add_equation(u, v, queue);
        }
    }
}

fn contains(hay: &[Symbol], needle: &[Symbol]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Runs Knuth–Bendix completion with the given caps.
///
/// A system that hits a cap is returned with [`Status::Capped`]; use
/// [`complete_strict`] to turn that into an error.
pub fn complete(p: &Presentation, max_rules: usize, max_len: usize) -> Result<RewriteSystem> {
    p.validate()?;
    if max_rules == 0 || max_len == 0 {
        return Err(Error::IllFormedPresentation("caps must be positive".into()));
    }
    let mut c = Completion { rules: Vec::new(), index: HashMap::new(), alive: 0, capped: false, max_len };
    let mut queue = VecDeque::new();
    for g in 0..p.generators.len() as Symbol {
        queue.push_back((vec![2 * g, 2 * g + 1], vec![]));
        queue.push_back((vec![2 * g + 1, 2 * g], vec![]));
    }
    for r in &p.relators {
        queue.push_back((r.clone(), vec![]));
    }
    c.drain(&mut queue);

    let mut i = 0;
    'outer: while i < c.rules.len() {
        if c.alive > max_rules {
            c.capped = true;
            break;
        }
        for j in 0..=i {
            let (Some(ri), Some(rj)) = (c.rules[i].clone(), c.rules[j].clone()) else {
                if c.rules[i].is_none() {
                    break;
                }
                continue;
            };
            for (a, b) in critical_pairs(&ri, &rj).into_iter().chain(critical_pairs(&rj, &ri)) {
                queue.push_back((a, b));
            }
            c.drain(&mut queue);
            if c.alive > max_rules {
                c.capped = true;
                break 'outer;
            }
        }
        i += 1;
    }

    let mut rules: Vec<Rule> = c.rules.into_iter().flatten().collect();
    rules.sort_by(|a, b| shortlex_cmp(&a.lhs, &b.lhs));
    let index = build_index(&rules);
    Ok(RewriteSystem {
        presentation: p.clone(),
        rules,
        status: if c.capped { Status::Capped } else { Status::Complete },
        index,
    })
}

pub fn complete_default(p: &Presentation) -> Result<RewriteSystem> {
    complete(p, DEFAULT_MAX_RULES, DEFAULT_MAX_LEN)
}

/// Like [`complete`] but reports a capped run as [`Error::CapExceeded`].
pub fn complete_strict(p: &Presentation, max_rules: usize, max_len: usize) -> Result<RewriteSystem> {
    let rs = complete(p, max_rules, max_len)?;
    if rs.is_complete() {
        Ok(rs)
    } else {
        Err(Error::CapExceeded { rules: rs.rules.len(), max_len })
    }
}
