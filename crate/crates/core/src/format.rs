//! Plain-text structure files: `[section]` headers, `key = value` lines and
//! whitespace-separated tables of element labels.
//!
//! ```text
//! [semiring]
//! name = boolean
//! elements = 0 1
//! zero = 0
//! one = 1
//!
//! [add]
//! 0 1
//! 1 1
//!
//! [mul]
//! 0 0
//! 0 1
//!
//! [pair]
//! a0 = 0
//! tangible = 1
//! ```
//!
//! A hyperring replaces `[add]` by `[hyper]`, whose cells are subset literals
//! such as `{0,1}`. Optional sections: `[relation]` (a `kind = ...` line and a
//! 0/1 table), `[negation]` (one row of images), and `[module]` with
//! `[module.add]` and `[module.act]` (one action row per base element).
//! Lines starting with `#` are comments. [`StructureFile::to_text`] writes
//! the canonical form, which parses back to the same bytes.

use std::fmt;

use serde::Serialize;

use crate::error::Error;
use crate::hyper::{SemiHypergroup, SemiHyperring};
use crate::modules::{verify_module_pair, FiniteModule, ModulePair};
use crate::pairs::{FinitePair, SurpassKind};
use crate::semiring::{verify_semiring_axioms, FiniteSemiring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParseErrorKind {
    Syntax,
    UnknownLabel,
    Dimension,
    Axiom,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::UnknownLabel => "unknown element",
            ParseErrorKind::Dimension => "dimension error",
            ParseErrorKind::Axiom => "axiom failure",
        })
    }
}

/// A located load failure. Lines and columns count from 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}: {}", self.line, self.col, self.kind, self.message)
    }
}

impl std::error::Error for ParseError {}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Config(e.to_string())
    }
}

fn err(line: usize, col: usize, kind: ParseErrorKind, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        kind,
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Addition {
    Single(Vec<Vec<usize>>),
    Hyper(Vec<Vec<Vec<usize>>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSection {
    pub a0: Vec<usize>,
    pub tangible: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSection {
    pub kind: SurpassKind,
    pub table: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleSection {
    pub elements: Vec<String>,
    pub zero: usize,
    pub sub: Vec<usize>,
    pub tangible: Vec<usize>,
    pub add: Vec<Vec<usize>>,
    pub act: Vec<Vec<usize>>,
}

/// Everything a structure file can hold, with all labels resolved to
/// indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureFile {
    pub name: String,
    pub elements: Vec<String>,
    pub zero: usize,
    pub one: usize,
    pub addition: Addition,
    pub mul: Vec<Vec<usize>>,
    pub pair: Option<PairSection>,
    pub relation: Option<RelationSection>,
    pub negation: Option<Vec<usize>>,
    pub module: Option<ModuleSection>,
}

#[derive(Debug, Clone)]
struct Token {
    text: String,
    col: usize,
}

#[derive(Debug, Clone)]
struct Line {
    number: usize,
    tokens: Vec<Token>,
    raw: String,
}

#[derive(Debug, Clone)]
struct Section {
    name: String,
    line: usize,
    lines: Vec<Line>,
}

fn tokenize(raw: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let chars: Vec<char> = raw.chars().collect();
    for (i, c) in chars.iter().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: chars[s..i].iter().collect(),
                    col: s + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: chars[s..].iter().collect(),
            col: s + 1,
        });
    }
    out
}

fn split_sections(text: &str) -> Result<Vec<Section>, ParseError> {
    let mut sections: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if trimmed.starts_with('[') && !trimmed.contains(char::is_whitespace) {
            let col = raw.find('[').unwrap_or(0) + 1;
            let name = trimmed
                .strip_prefix('[')
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| err(number, col, ParseErrorKind::Syntax, "unterminated section header"))?;
            if sections.iter().any(|s| s.name == name) {
                return Err(err(number, col, ParseErrorKind::Syntax, format!("duplicate section [{name}]")));
            }
            sections.push(Section {
                name: name.to_string(),
                line: number,
                lines: Vec::new(),
            });
            continue;
        }
        let section = sections.last_mut().ok_or_else(|| {
            err(number, 1, ParseErrorKind::Syntax, "content before the first section header")
        })?;
        section.lines.push(Line {
            number,
            tokens: tokenize(raw),
            raw: raw.to_string(),
        });
    }
    Ok(sections)
}

const KNOWN_SECTIONS: [&str; 10] = [
    "semiring",
    "add",
    "hyper",
    "mul",
    "pair",
    "relation",
    "negation",
    "module",
    "module.add",
    "module.act",
];

struct KeyValues<'a> {
    section: &'a Section,
    entries: Vec<(String, String, usize, usize)>,
}

impl<'a> KeyValues<'a> {
    fn parse(section: &'a Section, allowed: &[&str]) -> Result<Self, ParseError> {
        let mut entries: Vec<(String, String, usize, usize)> = Vec::new();
        for line in &section.lines {
            let col = line.raw.len() - line.raw.trim_start().len() + 1;
            let (key, value) = line.raw.split_once('=').ok_or_else(|| {
                err(line.number, col, ParseErrorKind::Syntax, "expected `key = value`")
            })?;
            let key = key.trim().to_string();
            if !allowed.contains(&key.as_str()) {
                return Err(err(
                    line.number,
                    col,
                    ParseErrorKind::Syntax,
                    format!("unknown key `{key}` in [{}]", section.name),
                ));
            }
            if entries.iter().any(|e| e.0 == key) {
                return Err(err(line.number, col, ParseErrorKind::Syntax, format!("duplicate key `{key}`")));
            }
            let value_col = line.raw.find('=').map_or(col, |i| {
                let after = &line.raw[i + 1..];
                i + 2 + after.len() - after.trim_start().len()
            });
            entries.push((key, value.trim().to_string(), line.number, value_col));
        }
        Ok(KeyValues { section, entries })
    }

    fn get(&self, key: &str) -> Option<&(String, String, usize, usize)> {
        self.entries.iter().find(|e| e.0 == key)
    }

    fn require(&self, key: &str) -> Result<&(String, String, usize, usize), ParseError> {
        self.get(key).ok_or_else(|| {
            err(
                self.section.line,
                1,
                ParseErrorKind::Syntax,
                format!("[{}] is missing `{key}`", self.section.name),
            )
        })
    }
}

fn lookup(labels: &[String], text: &str, line: usize, col: usize) -> Result<usize, ParseError> {
    labels
        .iter()
        .position(|l| l == text)
        .ok_or_else(|| err(line, col, ParseErrorKind::UnknownLabel, format!("`{text}` is not an element")))
}

/// Labels listed in a `key = a b c` value.
fn label_list(
    labels: &[String],
    entry: Option<&(String, String, usize, usize)>,
) -> Result<Vec<usize>, ParseError> {
    let Some((_, value, line, col)) = entry else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for t in tokenize(value) {
        out.push(lookup(labels, &t.text, *line, col + t.col - 1)?);
    }
    Ok(out)
}

fn table_rows<'a>(section: &'a Section, rows: usize, cols: usize) -> Result<&'a [Line], ParseError> {
    for line in &section.lines {
        if line.tokens.len() != cols {
            let col = line.tokens.get(cols).map_or(line.raw.trim_end().len() + 1, |t| t.col);
            return Err(err(
                line.number,
                col,
                ParseErrorKind::Dimension,
                format!(
                    "[{}] row has {} entries, expected {cols}",
                    section.name,
                    line.tokens.len()
                ),
            ));
        }
    }
    if section.lines.len() != rows {
        let line = section.lines.get(rows).map_or(section.line, |l| l.number);
        return Err(err(
            line,
            1,
            ParseErrorKind::Dimension,
            format!("[{}] has {} rows, expected {rows}", section.name, section.lines.len()),
        ));
    }
    Ok(&section.lines)
}

fn label_table(section: &Section, labels: &[String], rows: usize) -> Result<Vec<Vec<usize>>, ParseError> {
    table_rows(section, rows, labels.len())?
        .iter()
        .map(|line| {
            line.tokens
                .iter()
                .map(|t| lookup(labels, &t.text, line.number, t.col))
                .collect()
        })
        .collect()
}

fn parse_subset(labels: &[String], t: &Token, line: usize) -> Result<Vec<usize>, ParseError> {
    let inner = t
        .text
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| err(line, t.col, ParseErrorKind::Syntax, format!("expected a subset literal, found `{}`", t.text)))?;
    if inner.is_empty() {
        return Err(err(line, t.col, ParseErrorKind::Syntax, "empty subset"));
    }
    let mut offset = t.col + 1;
    let mut out = Vec::new();
    for part in inner.split(',') {
        out.push(lookup(labels, part, line, offset)?);
        offset += part.chars().count() + 1;
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn check_labels(labels: &[String], line: usize, col: usize) -> Result<(), ParseError> {
    if labels.is_empty() {
        return Err(err(line, col, ParseErrorKind::Syntax, "no elements listed"));
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(err(line, col, ParseErrorKind::Syntax, format!("duplicate element `{l}`")));
        }
        let header_like = labels.len() == 1 && l.starts_with('[');
        if l.contains('=') || l.starts_with('#') || header_like {
            return Err(err(line, col, ParseErrorKind::Syntax, format!("element `{l}` uses a reserved character")));
        }
    }
    Ok(())
}

/// Parses and resolves a structure file. Laws are not checked here; see
/// [`load_structure`].
pub fn parse_structure(text: &str) -> Result<StructureFile, ParseError> {
    let sections = split_sections(text)?;
    if let Some(s) = sections.iter().find(|s| !KNOWN_SECTIONS.contains(&s.name.as_str())) {
        return Err(err(s.line, 1, ParseErrorKind::Syntax, format!("unknown section [{}]", s.name)));
    }
    let find = |name: &str| sections.iter().find(|s| s.name == name);
    let head = find("semiring").ok_or_else(|| err(1, 1, ParseErrorKind::Syntax, "missing [semiring] section"))?;
    let kv = KeyValues::parse(head, &["name", "elements", "zero", "one"])?;
    let (_, elems, eline, ecol) = kv.require("elements")?;
    let elements: Vec<String> = tokenize(elems).into_iter().map(|t| t.text).collect();
    check_labels(&elements, *eline, *ecol)?;
    let n = elements.len();
    let single = |key: &str| -> Result<usize, ParseError> {
        let (_, v, line, col) = kv.require(key)?;
        lookup(&elements, v, *line, *col)
    };
    let zero = single("zero")?;
    let one = single("one")?;
    let name = kv.get("name").map(|e| e.1.clone()).unwrap_or_default();

    let addition = match (find("add"), find("hyper")) {
        (Some(a), None) => Addition::Single(label_table(a, &elements, n)?),
        (None, Some(h)) => {
            if let Some(l) = elements.iter().find(|l| l.contains([',', '{', '}'])) {
                return Err(err(*eline, *ecol, ParseErrorKind::Syntax, format!("element `{l}` cannot appear in subset literals")));
            }
            let rows = table_rows(h, n, n)?;
            let mut table = Vec::with_capacity(n);
            for line in rows {
                let row: Result<Vec<Vec<usize>>, ParseError> = line
                    .tokens
                    .iter()
                    .map(|t| parse_subset(&elements, t, line.number))
                    .collect();
                table.push(row?);
            }
            Addition::Hyper(table)
        }
        (Some(_), Some(h)) => {
            return Err(err(h.line, 1, ParseErrorKind::Syntax, "both [add] and [hyper] given"));
        }
        (None, None) => {
            return Err(err(head.line, 1, ParseErrorKind::Syntax, "missing [add] or [hyper] section"));
        }
    };
    let mul_section = find("mul").ok_or_else(|| err(head.line, 1, ParseErrorKind::Syntax, "missing [mul] section"))?;
    let mul = label_table(mul_section, &elements, n)?;

    let pair = match find("pair") {
        Some(s) => {
            let kv = KeyValues::parse(s, &["a0", "tangible"])?;
            Some(PairSection {
                a0: label_list(&elements, kv.get("a0"))?,
                tangible: label_list(&elements, kv.get("tangible"))?,
            })
        }
        None => None,
    };

    let relation = match find("relation") {
        Some(s) => {
            let (first, rest) = s
                .lines
                .split_first()
                .ok_or_else(|| err(s.line, 1, ParseErrorKind::Syntax, "[relation] is empty"))?;
            let kind = match first.raw.split_once('=').map(|(k, v)| (k.trim(), v.trim())) {
                Some(("kind", "subset_inclusion")) => SurpassKind::SubsetInclusion,
                Some(("kind", "custom")) => SurpassKind::Custom,
                _ => {
                    return Err(err(
                        first.number,
                        1,
                        ParseErrorKind::Syntax,
                        "expected `kind = subset_inclusion` or `kind = custom`",
                    ))
                }
            };
            let body = Section {
                name: s.name.clone(),
                line: s.line,
                lines: rest.to_vec(),
            };
            let mut table = Vec::with_capacity(n);
            for line in table_rows(&body, n, n)? {
                let row: Result<Vec<bool>, ParseError> = line
                    .tokens
                    .iter()
                    .map(|t| match t.text.as_str() {
                        "0" => Ok(false),
                        "1" => Ok(true),
                        other => Err(err(line.number, t.col, ParseErrorKind::Syntax, format!("expected 0 or 1, found `{other}`"))),
                    })
                    .collect();
                table.push(row?);
            }
            Some(RelationSection { kind, table })
        }
        None => None,
    };

    let negation = match find("negation") {
        Some(s) => Some(label_table(s, &elements, 1)?.remove(0)),
        None => None,
    };

    let module = match find("module") {
        Some(s) => {
            let kv = KeyValues::parse(s, &["elements", "zero", "sub", "tangible"])?;
            let (_, elems, line, col) = kv.require("elements")?;
            let melems: Vec<String> = tokenize(elems).into_iter().map(|t| t.text).collect();
            check_labels(&melems, *line, *col)?;
            let (_, z, zl, zc) = kv.require("zero")?;
            let mzero = lookup(&melems, z, *zl, *zc)?;
            let add_s = find("module.add").ok_or_else(|| err(s.line, 1, ParseErrorKind::Syntax, "missing [module.add]"))?;
            let act_s = find("module.act").ok_or_else(|| err(s.line, 1, ParseErrorKind::Syntax, "missing [module.act]"))?;
            Some(ModuleSection {
                zero: mzero,
                sub: label_list(&melems, kv.get("sub"))?,
                tangible: label_list(&melems, kv.get("tangible"))?,
                add: label_table(add_s, &melems, melems.len())?,
                act: label_table(act_s, &melems, n)?,
                elements: melems,
            })
        }
        None => {
            if let Some(s) = find("module.add").or(find("module.act")) {
                return Err(err(s.line, 1, ParseErrorKind::Syntax, "module tables without a [module] section"));
            }
            None
        }
    };

    Ok(StructureFile {
        name,
        elements,
        zero,
        one,
        addition,
        mul,
        pair,
        relation,
        negation,
        module,
    })
}

/// Line of a section header in `text`, for attaching later diagnostics.
fn section_line(text: &str, name: &str) -> usize {
    let header = format!("[{name}]");
    text.lines()
        .position(|l| l.trim() == header)
        .map_or(1, |i| i + 1)
}

fn first_violation(report: &crate::report::AxiomReport) -> Option<String> {
    report
        .violations()
        .next()
        .map(|bad| format!("{} fails at {:?}", bad.axiom, bad.witness.clone().unwrap_or_default()))
}

/// Parses, then checks the semiring (or hyperring) laws and, when present,
/// the module laws. Axiom failures point at the offending section.
pub fn load_structure(text: &str) -> Result<StructureFile, ParseError> {
    let file = parse_structure(text)?;
    match &file.addition {
        Addition::Single(_) => {
            let s = file.semiring().map_err(|e| err(1, 1, ParseErrorKind::Dimension, e.to_string()))?;
            let report = verify_semiring_axioms(&s);
            if let Some(message) = first_violation(&report) {
                return Err(err(section_line(text, "add"), 1, ParseErrorKind::Axiom, message));
            }
        }
        Addition::Hyper(_) => {
            let h = file.hyperring().map_err(|e| err(1, 1, ParseErrorKind::Dimension, e.to_string()))?;
            let report = crate::hyper::verify_semihyperring(&h);
            if let Some(message) = first_violation(&report) {
                return Err(err(section_line(text, "hyper"), 1, ParseErrorKind::Axiom, message));
            }
        }
    }
    if file.module.is_some() {
        let mp = file.module_pair().map_err(|e| err(section_line(text, "module"), 1, ParseErrorKind::Dimension, e.to_string()))?;
        let report = verify_module_pair(&mp, false);
        if let Some(message) = first_violation(&report) {
            return Err(err(section_line(text, "module"), 1, ParseErrorKind::Axiom, message));
        }
    }
    Ok(file)
}

impl StructureFile {
    pub fn is_hyper(&self) -> bool {
        matches!(self.addition, Addition::Hyper(_))
    }

    pub fn semiring(&self) -> crate::error::Result<FiniteSemiring> {
        match &self.addition {
            Addition::Single(add) => FiniteSemiring::new(
                self.elements.clone(),
                add.clone(),
                self.mul.clone(),
                self.zero,
                self.one,
            ),
            Addition::Hyper(_) => Err(Error::Unsupported(
                "multivalued addition: build the hyperring or its powerset pair".into(),
            )),
        }
    }

    pub fn hyperring(&self) -> crate::error::Result<SemiHyperring> {
        let table = match &self.addition {
            Addition::Hyper(t) => t.clone(),
            Addition::Single(t) => t.iter().map(|r| r.iter().map(|&x| vec![x]).collect()).collect(),
        };
        let g = SemiHypergroup::new(self.elements.clone(), table, self.zero)?;
        SemiHyperring::new(g, self.mul.clone(), self.one)
    }

    /// The pair from the `[pair]` section, or `(A, {0})` with every nonzero
    /// element tangible when it is missing.
    pub fn pair(&self) -> crate::error::Result<FinitePair> {
        let s = self.semiring()?;
        let (a0, t) = match &self.pair {
            Some(p) => (p.a0.clone(), p.tangible.clone()),
            None => (vec![self.zero], (0..self.elements.len()).filter(|&i| i != self.zero).collect()),
        };
        let mut p = FinitePair::new(self.name.clone(), s, &a0, &t)?;
        if let Some(r) = &self.relation {
            p = p.with_relation(r.kind, r.table.clone())?;
        }
        if let Some(neg) = &self.negation {
            p = p.with_negation(neg.clone())?;
        }
        Ok(p)
    }

    pub fn module_pair(&self) -> crate::error::Result<ModulePair> {
        let m = self
            .module
            .as_ref()
            .ok_or_else(|| Error::Config("no [module] section".into()))?;
        let module = FiniteModule::new(
            m.elements.clone(),
            m.add.clone(),
            m.act.clone(),
            m.zero,
            self.elements.len(),
        )?;
        ModulePair::new(self.pair()?, module, &m.sub, &m.tangible)
    }

    pub fn from_pair(p: &FinitePair) -> Self {
        let s = p.semiring();
        StructureFile {
            name: p.name().to_string(),
            elements: s.label_list().to_vec(),
            zero: s.zero_index(),
            one: s.one_index(),
            addition: Addition::Single(s.add_table().to_vec()),
            mul: s.mul_table().to_vec(),
            pair: Some(PairSection {
                a0: p.a0_indices(),
                tangible: p.tangible_indices(),
            }),
            relation: p.relation_table().map(|t| RelationSection {
                kind: crate::pairs::Pair::native_relation(p),
                table: t.clone(),
            }),
            negation: p.negation_table().cloned(),
            module: None,
        }
    }

    pub fn from_hyperring(h: &SemiHyperring, name: &str) -> Self {
        StructureFile {
            name: name.to_string(),
            elements: h.group.labels().to_vec(),
            zero: h.zero(),
            one: h.one(),
            addition: Addition::Hyper(h.group.table().to_vec()),
            mul: h.mul_table().to_vec(),
            pair: None,
            relation: None,
            negation: None,
            module: None,
        }
    }

    pub fn with_module(mut self, mp: &ModulePair) -> Self {
        let m = mp.module();
        self.module = Some(ModuleSection {
            elements: m.label_list().to_vec(),
            zero: m.zero(),
            sub: mp.sub_indices(),
            tangible: mp.tangible_indices(),
            add: m.add_table().to_vec(),
            act: m.act_table().to_vec(),
        });
        self
    }

    /// Canonical text form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let names = |labels: &[String], idx: &[usize]| idx.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join(" ");
        let table = |out: &mut String, labels: &[String], rows: &[Vec<usize>]| {
            for row in rows {
                out.push_str(&names(labels, row));
                out.push('\n');
            }
        };
        let e = &self.elements;
        out.push_str("[semiring]\n");
        if !self.name.is_empty() {
            out.push_str(&format!("name = {}\n", self.name));
        }
        out.push_str(&format!("elements = {}\n", e.join(" ")));
        out.push_str(&format!("zero = {}\none = {}\n", e[self.zero], e[self.one]));
        match &self.addition {
            Addition::Single(add) => {
                out.push_str("\n[add]\n");
                table(&mut out, e, add);
            }
            Addition::Hyper(h) => {
                out.push_str("\n[hyper]\n");
                for row in h {
                    let cells: Vec<String> = row
                        .iter()
                        .map(|set| format!("{{{}}}", set.iter().map(|&i| e[i].as_str()).collect::<Vec<_>>().join(",")))
                        .collect();
                    out.push_str(&cells.join(" "));
                    out.push('\n');
                }
            }
        }
        out.push_str("\n[mul]\n");
        table(&mut out, e, &self.mul);
        if let Some(p) = &self.pair {
            out.push_str("\n[pair]\n");
            out.push_str(&format!("a0 = {}\n", names(e, &p.a0)).replace(" \n", "\n"));
            out.push_str(&format!("tangible = {}\n", names(e, &p.tangible)).replace(" \n", "\n"));
        }
        if let Some(r) = &self.relation {
            out.push_str("\n[relation]\n");
            out.push_str(match r.kind {
                SurpassKind::SubsetInclusion => "kind = subset_inclusion\n",
                _ => "kind = custom\n",
            });
            for row in &r.table {
                let cells: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
        }
        if let Some(neg) = &self.negation {
            out.push_str("\n[negation]\n");
            out.push_str(&names(e, neg));
            out.push('\n');
        }
        if let Some(m) = &self.module {
            let me = &m.elements;
            out.push_str("\n[module]\n");
            out.push_str(&format!("elements = {}\n", me.join(" ")));
            out.push_str(&format!("zero = {}\n", me[m.zero]));
            out.push_str(&format!("sub = {}\n", names(me, &m.sub)).replace(" \n", "\n"));
            out.push_str(&format!("tangible = {}\n", names(me, &m.tangible)).replace(" \n", "\n"));
            out.push_str("\n[module.add]\n");
            table(&mut out, me, &m.add);
            out.push_str("\n[module.act]\n");
            table(&mut out, me, &m.act);
        }
        out
    }
}

/// The shipped fixture files, by file name.
pub fn shipped_fixture_texts() -> Vec<(&'static str, String)> {
    use crate::fixtures;
    vec![
        ("boolean.pair", StructureFile::from_pair(&fixtures::boolean_pair()).to_text()),
        ("doubled-boolean.pair", StructureFile::from_pair(&fixtures::doubled_boolean()).to_text()),
        ("supertropical.pair", StructureFile::from_pair(&fixtures::supertropical_three()).to_text()),
        (
            "krasner.hyper",
            StructureFile::from_hyperring(&crate::hyper::krasner_hyperfield(), "krasner").to_text(),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hyper::{powerset_pair, A0Choice};
    use crate::modules::free_module_pair;
    use crate::pairs::verify_admissible;
    use crate::semiring::boolean;

    const BOOLEAN: &str = "[semiring]\nname = boolean\nelements = 0 1\nzero = 0\none = 1\n\n[add]\n0 1\n1 1\n\n[mul]\n0 0\n0 1\n\n[pair]\na0 = 0\ntangible = 1\n";

    #[test]
    fn boolean_file_loads() {
        let f = load_structure(BOOLEAN).unwrap();
        assert_eq!(f.semiring().unwrap(), boolean());
        assert_eq!(f.to_text(), BOOLEAN);
    }

    #[test]
    fn wide_table_is_a_dimension_error_on_its_line() {
        let text = BOOLEAN.replace("[add]\n0 1\n1 1\n", "[add]\n0 1 1\n1 1 1\n");
        let e = parse_structure(&text).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Dimension);
        assert_eq!((e.line, e.col), (8, 5));
    }

    #[test]
    fn short_table_is_a_dimension_error() {
        let text = BOOLEAN.replace("[add]\n0 1\n1 1\n", "[add]\n0 1\n");
        let e = parse_structure(&text).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Dimension);
    }

    #[test]
    fn unknown_label_is_located() {
        let text = BOOLEAN.replace("[mul]\n0 0\n0 1\n", "[mul]\n0 0\n0 2\n");
        let e = parse_structure(&text).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownLabel);
        assert_eq!((e.line, e.col), (13, 3));
        assert!(e.to_string().starts_with("line 13, column 3"));
    }

    #[test]
    fn syntax_errors() {
        for bad in [
            "elements = 0 1\n",
            "[semiring\n",
            "[semiring]\nelements 0 1\n",
            "[semiring]\nelements = 0 1\nzero = 0\none = 1\n[add]\n0 1\n1 1\n",
            "[bogus]\n",
        ] {
            let e = parse_structure(bad).unwrap_err();
            assert_eq!(e.kind, ParseErrorKind::Syntax, "{bad:?}: {e}");
        }
    }

    #[test]
    fn broken_laws_are_axiom_errors() {
        // 1 + 1 = 0 with the Boolean product is still a semiring (Z/2), so
        // break distributivity instead: 1 * 1 = 0.
        let text = BOOLEAN.replace("[mul]\n0 0\n0 1\n", "[mul]\n0 0\n0 0\n");
        assert!(parse_structure(&text).is_ok());
        let e = load_structure(&text).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Axiom);
        assert_eq!(e.line, 7);
    }

    #[test]
    fn fixtures_round_trip() {
        for (name, text) in shipped_fixture_texts() {
            let f = load_structure(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(f.to_text(), text, "{name}");
        }
        for p in fixtures::all_pairs() {
            let text = StructureFile::from_pair(&p).to_text();
            let back = load_structure(&text).unwrap().pair().unwrap();
            assert_eq!(back.semiring(), p.semiring());
            assert_eq!(back.a0_indices(), p.a0_indices());
            assert_eq!(back.tangible_indices(), p.tangible_indices());
            assert_eq!(back.relation_table(), p.relation_table());
        }
    }

    #[test]
    fn supertropical_file_is_admissible() {
        let text = StructureFile::from_pair(&fixtures::supertropical_three()).to_text();
        let p = load_structure(&text).unwrap().pair().unwrap();
        assert!(verify_admissible(&p).is_valid());
    }

    #[test]
    fn krasner_file_builds_powerset_pairs() {
        let text = StructureFile::from_hyperring(&crate::hyper::krasner_hyperfield(), "krasner").to_text();
        assert!(text.contains("{0,1}"));
        let f = load_structure(&text).unwrap();
        assert!(f.is_hyper());
        assert!(f.semiring().is_err());
        let h = f.hyperring().unwrap();
        for choice in [A0Choice::ContainsZero, A0Choice::SizeGeTwo] {
            let p = powerset_pair(&h, choice).unwrap();
            assert_eq!(p.semiring(), fixtures::krasner_powerset(choice).semiring());
        }
    }

    #[test]
    fn module_section_round_trips() {
        let p = fixtures::boolean_pair();
        let mp = free_module_pair(&p, 2).unwrap();
        let text = StructureFile::from_pair(&p).with_module(&mp).to_text();
        let f = load_structure(&text).unwrap();
        assert_eq!(f.to_text(), text);
        let back = f.module_pair().unwrap();
        assert_eq!(back.module(), mp.module());
        assert_eq!(back.sub_indices(), mp.sub_indices());
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = format!("# Boolean semiring\n\n{}", BOOLEAN.replace("[mul]", "# products\n[mul]"));
        let f = parse_structure(&text).unwrap();
        assert_eq!(f.to_text(), BOOLEAN);
    }
}
