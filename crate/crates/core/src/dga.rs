//! Free noncommutative Z-graded differential graded algebras over GF(2).
//!
//! A [`Dga`] is a list of graded generators together with the differential
//! of each generator, written as a GF(2) sum of words in the generators. The
//! empty word is the unit `1`. The differential extends to words by the
//! Leibniz rule, which carries no signs in characteristic two.
//!
//! # Text format
//!
//! ```text
//! # comment
//! dim 1
//! gen a1 1
//! gen b1 0 @knot
//! d a1 = 1 + b1 + b1*b1
//! d b1 = 0
//! ```
//!
//! Every generator receives exactly one `d` line. `d` lines may appear
//! before or after the generators they mention.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    /// Link component the chord belongs to. Informational only.
    pub component: Option<String>,
}

/// A word in the generators, stored as generator indices. The empty word is `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[usize] {
        &self.0
    }
}

// Shorter words first, then lexicographic by generator index.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A GF(2) linear combination of words; addition is symmetric difference.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly(BTreeSet<Word>);

impl Poly {
    pub fn zero() -> Self {
        Poly(BTreeSet::new())
    }

    pub fn unit() -> Self {
        Poly::from_word(Word::unit())
    }

    pub fn from_word(w: Word) -> Self {
        let mut p = Poly::zero();
        p.toggle(w);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> + '_ {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.0.contains(w)
    }

    /// Adds a single word, cancelling it if already present.
    pub fn toggle(&mut self, w: Word) {
        if !self.0.remove(&w) {
            self.0.insert(w);
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for w in &other.0 {
            self.toggle(w.clone());
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for a in &self.0 {
            for b in &other.0 {
                let mut w = a.0.clone();
                w.extend_from_slice(&b.0);
                out.toggle(Word(w));
            }
        }
        out
    }
}

impl FromIterator<Word> for Poly {
    fn from_iter<I: IntoIterator<Item = Word>>(iter: I) -> Self {
        let mut p = Poly::zero();
        for w in iter {
            p.toggle(w);
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dga {
    dim: i64,
    generators: Vec<Generator>,
    differential: Vec<Poly>,
    index: HashMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("duplicate generator '{0}'")]
    DuplicateGenerator(String),
    #[error("generator '{0}' has more than one differential")]
    DuplicateDifferential(String),
    #[error("generator '{0}' has no differential")]
    MissingDifferential(String),
    #[error("missing 'dim' header")]
    MissingDimension,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// One problem found by [`Dga::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    /// A word of `d(generator)` does not have degree `degree(generator) - 1`.
    Degree {
        generator: String,
        word: String,
        expected: i64,
        actual: i64,
    },
    /// `d(d(generator))` is nonzero.
    SquareNonzero { generator: String, square: String },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::Degree {
                generator,
                word,
                expected,
                actual,
            } => write!(
                f,
                "degree: term {word} of d {generator} has degree {actual}, expected {expected}"
            ),
            ValidationIssue::SquareNonzero { generator, square } => {
                write!(f, "d^2 {generator} = {square} (nonzero)")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl Dga {
    pub fn dim(&self) -> i64 {
        self.dim
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, idx: usize) -> &Generator {
        &self.generators[idx]
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// The differential of generator `idx`.
    pub fn d(&self, idx: usize) -> &Poly {
        &self.differential[idx]
    }

    pub fn word_degree(&self, w: &Word) -> i64 {
        w.0.iter().map(|&g| self.generators[g].degree).sum()
    }

    /// Indices of degree-0 generators, in declaration order.
    pub fn degree_zero_generators(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.generators[i].degree == 0)
            .collect()
    }

    /// Differential of an arbitrary element via the Leibniz rule.
    pub fn d_poly(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for w in p.words() {
            for (i, &g) in w.0.iter().enumerate() {
                for inner in self.differential[g].words() {
                    let mut expanded = Vec::with_capacity(w.len() + inner.len());
                    expanded.extend_from_slice(&w.0[..i]);
                    expanded.extend_from_slice(&inner.0);
                    expanded.extend_from_slice(&w.0[i + 1..]);
                    out.toggle(Word(expanded));
                }
            }
        }
        out
    }

    /// Checks that the differential has degree -1 and squares to zero.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (g, gen) in self.generators.iter().enumerate() {
            for w in self.differential[g].words() {
                let actual = self.word_degree(w);
                if actual != gen.degree - 1 {
                    report.issues.push(ValidationIssue::Degree {
                        generator: gen.name.clone(),
                        word: self.format_word(w),
                        expected: gen.degree - 1,
                        actual,
                    });
                }
            }
        }
        for (g, gen) in self.generators.iter().enumerate() {
            let square = self.d_poly(&self.differential[g]);
            if !square.is_zero() {
                report.issues.push(ValidationIssue::SquareNonzero {
                    generator: gen.name.clone(),
                    square: self.format_poly(&square),
                });
            }
        }
        report
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_unit() {
            return "1".to_owned();
        }
        let names: Vec<&str> =
            w.0.iter()
                .map(|&g| self.generators[g].name.as_str())
                .collect();
        names.join("*")
    }

    pub fn format_poly(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".to_owned();
        }
        let terms: Vec<String> = p.words().map(|w| self.format_word(w)).collect();
        terms.join(" + ")
    }

    /// Parses a polynomial in this DGA's generators, e.g. `1 + b1*b2`.
    pub fn parse_poly(&self, text: &str) -> Result<Poly, ParseError> {
        parse_poly_at(text, 1, 1, &|name| self.index_of(name))
    }

    /// Canonical text form; generators in declaration order.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, "dim {}", self.dim).unwrap();
        for gen in &self.generators {
            write!(out, "gen {} {}", gen.name, gen.degree).unwrap();
            if let Some(c) = &gen.component {
                write!(out, " @{c}").unwrap();
            }
            out.push('\n');
        }
        for (g, gen) in self.generators.iter().enumerate() {
            writeln!(
                out,
                "d {} = {}",
                gen.name,
                self.format_poly(&self.differential[g])
            )
            .unwrap();
        }
        out
    }

    pub fn parse(text: &str) -> Result<Dga, ParseError> {
        parse_dga(text)
    }
}

/// Programmatic construction of a [`Dga`] with the same checks as the parser.
#[derive(Debug, Clone)]
pub struct DgaBuilder {
    dim: i64,
    generators: Vec<Generator>,
    diffs: Vec<(String, String)>,
}

impl DgaBuilder {
    pub fn new(dim: i64) -> Self {
        Self {
            dim,
            generators: Vec::new(),
            diffs: Vec::new(),
        }
    }

    pub fn gen(mut self, name: &str, degree: i64) -> Self {
        self.generators.push(Generator {
            name: name.to_owned(),
            degree,
            component: None,
        });
        self
    }

    pub fn gen_on(mut self, name: &str, degree: i64, component: &str) -> Self {
        self.generators.push(Generator {
            name: name.to_owned(),
            degree,
            component: Some(component.to_owned()),
        });
        self
    }

    /// Sets the differential of `name`; unset differentials are zero.
    pub fn d(mut self, name: &str, poly: &str) -> Self {
        self.diffs.push((name.to_owned(), poly.to_owned()));
        self
    }

    pub fn build(self) -> Result<Dga, ParseError> {
        let mut text = format!("dim {}\n", self.dim);
        for g in &self.generators {
            text.push_str(&format!("gen {} {}", g.name, g.degree));
            if let Some(c) = &g.component {
                text.push_str(&format!(" @{c}"));
            }
            text.push('\n');
        }
        let set: BTreeSet<&str> = self.diffs.iter().map(|(n, _)| n.as_str()).collect();
        for (n, p) in &self.diffs {
            text.push_str(&format!("d {n} = {p}\n"));
        }
        for g in &self.generators {
            if !set.contains(g.name.as_str()) {
                text.push_str(&format!("d {} = 0\n", g.name));
            }
        }
        parse_dga(&text)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        kind: ParseErrorKind::Syntax(msg.into()),
    }
}

/// Splits a line into whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_poly_at(
    text: &str,
    line: usize,
    column: usize,
    lookup: &dyn Fn(&str) -> Option<usize>,
) -> Result<Poly, ParseError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(syntax(line, column, "empty polynomial"));
    }
    if trimmed == "0" {
        return Ok(Poly::zero());
    }
    let mut poly = Poly::zero();
    let mut offset = 0;
    for term in text.split('+') {
        let term_col = column + offset + (term.len() - term.trim_start().len());
        offset += term.len() + 1;
        let term = term.trim();
        if term.is_empty() {
            return Err(syntax(line, term_col, "empty term"));
        }
        if term == "1" {
            poly.toggle(Word::unit());
            continue;
        }
        let mut word = Vec::new();
        let mut factor_off = 0;
        for factor in term.split('*') {
            let fcol = term_col + factor_off + (factor.len() - factor.trim_start().len());
            factor_off += factor.len() + 1;
            let factor = factor.trim();
            if !is_identifier(factor) {
                return Err(syntax(line, fcol, format!("invalid factor '{factor}'")));
            }
            match lookup(factor) {
                Some(g) => word.push(g),
                None => {
                    return Err(ParseError {
                        line,
                        column: fcol,
                        kind: ParseErrorKind::UnknownGenerator(factor.to_owned()),
                    })
                }
            }
        }
        poly.toggle(Word(word));
    }
    Ok(poly)
}

/// Parses the DGA text format. Differential laws are not checked here; see
/// [`Dga::validate`].
pub fn parse_dga(text: &str) -> Result<Dga, ParseError> {
    let mut dim = None;
    let mut generators: Vec<Generator> = Vec::new();
    let mut index = HashMap::new();
    // (line, column of poly text, generator name, name column, poly text)
    let mut pending: Vec<(usize, usize, String, usize, String)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(kw_col, kw)) = toks.first() else {
            continue;
        };
        match kw {
            "dim" => {
                if dim.is_some() {
                    return Err(syntax(line, kw_col, "duplicate 'dim' header"));
                }
                let [_, (col, value)] = toks[..] else {
                    return Err(syntax(line, kw_col, "expected 'dim <integer>'"));
                };
                match value.parse::<i64>() {
                    Ok(v) if v >= 0 => dim = Some(v),
                    _ => return Err(syntax(line, col, format!("invalid dimension '{value}'"))),
                }
            }
            "gen" => {
                if toks.len() < 3 || toks.len() > 4 {
                    return Err(syntax(
                        line,
                        kw_col,
                        "expected 'gen <name> <degree> [@<component>]'",
                    ));
                }
                let (ncol, name) = toks[1];
                if !is_identifier(name) {
                    return Err(syntax(
                        line,
                        ncol,
                        format!("invalid generator name '{name}'"),
                    ));
                }
                let (dcol, deg) = toks[2];
                let degree = deg
                    .parse::<i64>()
                    .map_err(|_| syntax(line, dcol, format!("invalid degree '{deg}'")))?;
                let component = match toks.get(3) {
                    None => None,
                    Some(&(ccol, tag)) => match tag.strip_prefix('@') {
                        Some(c) if is_identifier(c) => Some(c.to_owned()),
                        _ => {
                            return Err(syntax(
                                line,
                                ccol,
                                format!("invalid component tag '{tag}'"),
                            ))
                        }
                    },
                };
                if index.contains_key(name) {
                    return Err(ParseError {
                        line,
                        column: ncol,
                        kind: ParseErrorKind::DuplicateGenerator(name.to_owned()),
                    });
                }
                index.insert(name.to_owned(), generators.len());
                generators.push(Generator {
                    name: name.to_owned(),
                    degree,
                    component,
                });
            }
            "d" => {
                let rest = &content[kw_col..];
                let Some(eq) = rest.find('=') else {
                    return Err(syntax(line, kw_col, "expected 'd <name> = <poly>'"));
                };
                let lhs = &rest[..eq];
                let name = lhs.trim();
                let name_col = kw_col + 1 + (lhs.len() - lhs.trim_start().len());
                if !is_identifier(name) {
                    return Err(syntax(
                        line,
                        name_col,
                        format!("invalid generator name '{name}'"),
                    ));
                }
                let poly_col = kw_col + 1 + eq + 1;
                pending.push((
                    line,
                    poly_col,
                    name.to_owned(),
                    name_col,
                    rest[eq + 1..].to_owned(),
                ));
            }
            other => return Err(syntax(line, kw_col, format!("unknown keyword '{other}'"))),
        }
    }

    let dim = dim.ok_or(ParseError {
        line: 1,
        column: 1,
        kind: ParseErrorKind::MissingDimension,
    })?;
    let mut differential: Vec<Option<Poly>> = vec![None; generators.len()];
    let lookup = |n: &str| index.get(n).copied();
    for (line, poly_col, name, name_col, poly) in pending {
        let Some(g) = lookup(&name) else {
            return Err(ParseError {
                line,
                column: name_col,
                kind: ParseErrorKind::UnknownGenerator(name),
            });
        };
        if differential[g].is_some() {
            return Err(ParseError {
                line,
                column: name_col,
                kind: ParseErrorKind::DuplicateDifferential(name),
            });
        }
        differential[g] = Some(parse_poly_at(&poly, line, poly_col, &lookup)?);
    }
    let differential = differential
        .into_iter()
        .enumerate()
        .map(|(g, d)| {
            d.ok_or_else(|| ParseError {
                line: text.lines().count().max(1),
                column: 1,
                kind: ParseErrorKind::MissingDifferential(generators[g].name.clone()),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Dga {
        dim,
        generators,
        differential,
        index,
    })
}
