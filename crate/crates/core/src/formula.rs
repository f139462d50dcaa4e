//! The object language: binary formulas over letters, `T` and `F`.
//!
//! Concrete grammar (shared with the command-line front end):
//!
//! ```text
//! disj := conj ('|' conj)*
//! conj := atom ('&' atom)*
//! atom := letter | 'T' | 'F' | '(' disj ')'
//! ```
//!
//! `&` binds tighter than `|`; both connectives parse left-associated.
//! Letters match `[a-z][a-zA-Z0-9_]*`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A unit constant: `T` (the `&` unit) or `F` (the `|` unit).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Unit {
    Top,
    Bot,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Letter(String),
    Top,
    Bot,
    Conj(Box<Formula>, Box<Formula>),
    Disj(Box<Formula>, Box<Formula>),
}

pub fn letter(name: &str) -> Formula {
    Formula::Letter(name.to_string())
}

pub fn conj(a: Formula, b: Formula) -> Formula {
    Formula::Conj(Box::new(a), Box::new(b))
}

pub fn disj(a: Formula, b: Formula) -> Formula {
    Formula::Disj(Box::new(a), Box::new(b))
}

/// One step into a binary tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    L,
    R,
}

/// An occurrence address: the list of steps from the root.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(pub Vec<Dir>);

impl Path {
    pub fn root() -> Self {
        Path(Vec::new())
    }

    pub fn child(&self, d: Dir) -> Self {
        let mut v = self.0.clone();
        v.push(d);
        Path(v)
    }

    pub fn join(&self, rest: &[Dir]) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(rest);
        Path(v)
    }

    /// `Some(suffix)` when `self` extends `prefix`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<&[Dir]> {
        if self.0.len() < prefix.0.len() {
            return None;
        }
        if self.0[..prefix.0.len()] == prefix.0[..] {
            Some(&self.0[prefix.0.len()..])
        } else {
            None
        }
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        other.strip_prefix(self).is_some()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "root");
        }
        for d in &self.0 {
            write!(f, "{}", if *d == Dir::L { 'L' } else { 'R' })?;
        }
        Ok(())
    }
}

impl Formula {
    /// Multiset of letter names; units contribute nothing.
    pub fn letters(&self) -> BTreeMap<String, usize> {
        let mut out = BTreeMap::new();
        self.fold_letters(&mut out);
        out
    }

    fn fold_letters(&self, out: &mut BTreeMap<String, usize>) {
        match self {
            Formula::Letter(p) => *out.entry(p.clone()).or_insert(0) += 1,
            Formula::Top | Formula::Bot => {}
            Formula::Conj(a, b) | Formula::Disj(a, b) => {
                a.fold_letters(out);
                b.fold_letters(out);
            }
        }
    }

    /// Letter occurrences left to right.
    pub fn letter_row(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.fold_row(&mut out);
        out
    }

    fn fold_row<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Formula::Letter(p) => out.push(p),
            Formula::Top | Formula::Bot => {}
            Formula::Conj(a, b) | Formula::Disj(a, b) => {
                a.fold_row(out);
                b.fold_row(out);
            }
        }
    }

    /// Number of letter occurrences.
    pub fn occ_count(&self) -> usize {
        match self {
            Formula::Letter(_) => 1,
            Formula::Top | Formula::Bot => 0,
            Formula::Conj(a, b) | Formula::Disj(a, b) => a.occ_count() + b.occ_count(),
        }
    }

    pub fn is_constant_free(&self) -> bool {
        match self {
            Formula::Letter(_) => true,
            Formula::Top | Formula::Bot => false,
            Formula::Conj(a, b) | Formula::Disj(a, b) => {
                a.is_constant_free() && b.is_constant_free()
            }
        }
    }

    pub fn is_letterless(&self) -> bool {
        self.occ_count() == 0
    }

    /// True when every letter occurs at most once.
    pub fn is_diversified(&self) -> bool {
        self.letters().values().all(|&k| k == 1)
    }

    pub fn subformula(&self, path: &Path) -> Option<&Formula> {
        let mut cur = self;
        for d in &path.0 {
            cur = match (cur, d) {
                (Formula::Conj(a, _), Dir::L) | (Formula::Disj(a, _), Dir::L) => a,
                (Formula::Conj(_, b), Dir::R) | (Formula::Disj(_, b), Dir::R) => b,
                _ => return None,
            };
        }
        Some(cur)
    }

    /// Rebuild with `repl` grafted at `path`.
    pub fn replace(&self, path: &[Dir], repl: Formula) -> Formula {
        match path.split_first() {
            None => repl,
            Some((d, rest)) => match (self, d) {
                (Formula::Conj(a, b), Dir::L) => conj(a.replace(rest, repl), (**b).clone()),
                (Formula::Conj(a, b), Dir::R) => conj((**a).clone(), b.replace(rest, repl)),
                (Formula::Disj(a, b), Dir::L) => disj(a.replace(rest, repl), (**b).clone()),
                (Formula::Disj(a, b), Dir::R) => disj((**a).clone(), b.replace(rest, repl)),
                _ => panic!("replace: path does not resolve"),
            },
        }
    }

    /// The normal form: units are cancelled against their own connective
    /// and letterless subtrees collapse to a single constant.
    pub fn normal_form(&self) -> Formula {
        match self {
            Formula::Letter(_) | Formula::Top | Formula::Bot => self.clone(),
            Formula::Conj(a, b) => nu_binary(true, a.normal_form(), b.normal_form()),
            Formula::Disj(a, b) => nu_binary(false, a.normal_form(), b.normal_form()),
        }
    }

    /// No occurrence of `zeta` in the normal form.
    pub fn is_zeta_pure(&self, zeta: Unit) -> bool {
        !contains_unit(&self.normal_form(), zeta)
    }

    /// Pure: both `T`-pure and `F`-pure.
    pub fn is_pure(&self) -> bool {
        let nf = self.normal_form();
        !contains_unit(&nf, Unit::Top) && !contains_unit(&nf, Unit::Bot)
    }

    /// Rename repeated letters with left-to-right occurrence suffixes
    /// (`p` becomes `p_1`, `p_2`, ...). Letters occurring once keep their
    /// name. Returns the renamed formula and the map from new letters back
    /// to the originals; the map covers exactly the renamed letters.
    pub fn diversify(&self) -> (Formula, BTreeMap<String, String>) {
        let mult = self.letters();
        let taken: std::collections::BTreeSet<String> = mult.keys().cloned().collect();
        let mut used = taken.clone();
        let mut seen: BTreeMap<String, usize> = BTreeMap::new();
        let mut map = BTreeMap::new();
        let renamed = self.rename_walk(&mult, &mut seen, &mut used, &mut map);
        (renamed, map)
    }

    fn rename_walk(
        &self,
        mult: &BTreeMap<String, usize>,
        seen: &mut BTreeMap<String, usize>,
        used: &mut std::collections::BTreeSet<String>,
        map: &mut BTreeMap<String, String>,
    ) -> Formula {
        match self {
            Formula::Letter(p) => {
                if mult[p] == 1 {
                    return Formula::Letter(p.clone());
                }
                let n = seen.entry(p.clone()).or_insert(0);
                *n += 1;
                let mut idx = *n;
                let mut fresh = format!("{p}_{idx}");
                while used.contains(&fresh) {
                    idx += 1;
                    fresh = format!("{p}_{idx}");
                }
                *seen.get_mut(p).unwrap() = idx;
                used.insert(fresh.clone());
                map.insert(fresh.clone(), p.clone());
                Formula::Letter(fresh)
            }
            Formula::Top | Formula::Bot => self.clone(),
            Formula::Conj(a, b) => conj(
                a.rename_walk(mult, seen, used, map),
                b.rename_walk(mult, seen, used, map),
            ),
            Formula::Disj(a, b) => disj(
                a.rename_walk(mult, seen, used, map),
                b.rename_walk(mult, seen, used, map),
            ),
        }
    }

    /// Apply a letter renaming everywhere it is defined.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> Formula {
        match self {
            Formula::Letter(p) => Formula::Letter(map.get(p).cloned().unwrap_or_else(|| p.clone())),
            Formula::Top | Formula::Bot => self.clone(),
            Formula::Conj(a, b) => conj(a.rename(map), b.rename(map)),
            Formula::Disj(a, b) => disj(a.rename(map), b.rename(map)),
        }
    }
}

fn nu_binary(is_conj: bool, a: Formula, b: Formula) -> Formula {
    let unit_a = as_unit(&a);
    let unit_b = as_unit(&b);
    match (unit_a, unit_b) {
        (Some(x), Some(y)) if x == y => a,
        _ => {
            // the unit of the connective cancels against a non-unit side
            let absorbing = if is_conj { Unit::Top } else { Unit::Bot };
            if unit_a == Some(absorbing) && unit_b != Some(absorbing) {
                b
            } else if unit_b == Some(absorbing) && unit_a != Some(absorbing) {
                a
            } else if is_conj {
                conj(a, b)
            } else {
                disj(a, b)
            }
        }
    }
}

fn as_unit(f: &Formula) -> Option<Unit> {
    match f {
        Formula::Top => Some(Unit::Top),
        Formula::Bot => Some(Unit::Bot),
        _ => None,
    }
}

fn contains_unit(f: &Formula, zeta: Unit) -> bool {
    match f {
        Formula::Letter(_) => false,
        Formula::Top => zeta == Unit::Top,
        Formula::Bot => zeta == Unit::Bot,
        Formula::Conj(a, b) | Formula::Disj(a, b) => {
            contains_unit(a, zeta) || contains_unit(b, zeta)
        }
    }
}

// ---------------------------------------------------------------------------
// printing

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(self, f, Ctx::Top)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Ctx {
    Top,
    ConjL,
    ConjR,
    DisjR,
}

fn write_formula(t: &Formula, f: &mut fmt::Formatter<'_>, ctx: Ctx) -> fmt::Result {
    let parens = match t {
        Formula::Conj(..) => ctx == Ctx::ConjR,
        Formula::Disj(..) => matches!(ctx, Ctx::ConjL | Ctx::ConjR | Ctx::DisjR),
        _ => false,
    };
    if parens {
        write!(f, "(")?;
    }
    match t {
        Formula::Letter(p) => write!(f, "{p}")?,
        Formula::Top => write!(f, "T")?,
        Formula::Bot => write!(f, "F")?,
        Formula::Conj(a, b) => {
            write_formula(a, f, Ctx::ConjL)?;
            write!(f, "&")?;
            write_formula(b, f, Ctx::ConjR)?;
        }
        Formula::Disj(a, b) => {
            write_formula(a, f, Ctx::Top)?;
            write!(f, "|")?;
            write_formula(b, f, Ctx::DisjR)?;
        }
    }
    if parens {
        write!(f, ")")?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// parsing

pub(crate) struct Lexer<'a> {
    src: &'a [u8],
    pub pos: usize,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    pub fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(format!("expected '{}'", c as char))),
        }
    }

    pub fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn err(&self, msg: String) -> Error {
        Error::Parse { at: self.pos, msg }
    }

    /// `[a-z][a-zA-Z0-9_]*`
    pub fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_lowercase() => self.pos += 1,
            _ => return Err(self.err("expected a letter".into())),
        }
        while let Some(c) = self.src.get(self.pos) {
            if c.is_ascii_alphanumeric() || *c == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string())
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    pub fn formula(&mut self) -> Result<Formula> {
        let mut acc = self.conj_level()?;
        while self.eat(b'|') {
            let rhs = self.conj_level()?;
            acc = disj(acc, rhs);
        }
        Ok(acc)
    }

    fn conj_level(&mut self) -> Result<Formula> {
        let mut acc = self.atom()?;
        while self.eat(b'&') {
            let rhs = self.atom()?;
            acc = conj(acc, rhs);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(b'T') => {
                self.pos += 1;
                Ok(Formula::Top)
            }
            Some(b'F') => {
                self.pos += 1;
                Ok(Formula::Bot)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.formula()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_lowercase() => Ok(Formula::Letter(self.ident()?)),
            _ => Err(self.err("expected a letter, 'T', 'F' or '('".into())),
        }
    }
}

pub fn parse_formula(src: &str) -> Result<Formula> {
    let mut lx = Lexer::new(src);
    let f = lx.formula()?;
    if !lx.at_end() {
        return Err(lx.err("trailing input".into()));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn parse_precedence_and_associativity() {
        assert_eq!(p("p&q|r"), disj(conj(letter("p"), letter("q")), letter("r")));
        assert_eq!(p("p&q&r"), conj(conj(letter("p"), letter("q")), letter("r")));
        assert_eq!(p("p|q|r"), disj(disj(letter("p"), letter("q")), letter("r")));
        assert_eq!(p("p&(q&r)"), conj(letter("p"), conj(letter("q"), letter("r"))));
    }

    #[test]
    fn print_parse_round_trip() {
        for s in [
            "p", "T", "F", "p&q", "p|q", "p&(q&r)", "(p|q)&r", "p&q|r&s", "p|(q|r)", "T&F|p",
        ] {
            let f = p(s);
            assert_eq!(p(&f.to_string()), f, "round trip through {s}");
        }
    }

    #[test]
    fn letters_multiset() {
        let m = p("p&(q|p)").letters();
        assert_eq!(m.get("p"), Some(&2));
        assert_eq!(m.get("q"), Some(&1));
        assert!(p("T|F").letters().is_empty());
        let m = p("(p&q)|(r&s)").letters();
        assert!(m.values().all(|&k| k == 1));
        assert_eq!(m.len(), 4);
    }

    #[test]
    fn diversified_predicate() {
        assert!(p("(p&q)|(r&s)").is_diversified());
        assert!(!p("p&p").is_diversified());
        assert!(p("T").is_diversified());
    }

    #[test]
    fn diversify_examples() {
        let (d, m) = p("p&p").diversify();
        assert_eq!(d, p("p_1&p_2"));
        assert_eq!(m.get("p_1").map(String::as_str), Some("p"));
        assert_eq!(m.get("p_2").map(String::as_str), Some("p"));

        let f = p("(p&q)|(r&s)");
        let (d, m) = f.diversify();
        assert_eq!(d, f);
        assert!(m.is_empty());

        let (d, m) = p("(p|q)&p").diversify();
        assert_eq!(d, p("(p_1|q)&p_2"));
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn diversify_avoids_captured_names() {
        let (d, m) = p("p_1&(p&p)").diversify();
        assert!(d.is_diversified());
        assert_eq!(d.rename(&m), p("p_1&(p&p)"));
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(p("p&T").normal_form(), p("p"));
        assert_eq!(p("F&F").normal_form(), p("F"));
        assert_eq!(p("p&F").normal_form(), p("p&F"));
        assert_eq!(p("(p|F)&(T&q)").normal_form(), p("p&q"));
        assert_eq!(p("T&F").normal_form(), p("F"));
        assert_eq!(p("T|F").normal_form(), p("T"));
        assert_eq!(p("T|T").normal_form(), p("T"));
    }

    #[test]
    fn purity_examples() {
        assert!(p("p&(q|F)").is_pure());
        assert!(!p("p&F").is_zeta_pure(Unit::Bot));
        assert!(!p("T").is_zeta_pure(Unit::Top));
        assert!(p("T").is_zeta_pure(Unit::Bot));
    }

    #[test]
    fn normal_form_letterless_collapses() {
        for s in ["T&(F|F)", "(T|F)&(F|T)", "F|(T&T)"] {
            let nf = p(s).normal_form();
            assert!(nf == Formula::Top || nf == Formula::Bot, "{s} gave {nf}");
        }
    }
}
