//! Plain-text formats.
//!
//! | tag  | header                         | body                        |
//! |------|--------------------------------|-----------------------------|
//! | SHF1 | `semiheap n=<n> [pt=<p>]`      | `n³` entries, `(i,j,k)` row-major |
//! | GRP1 | `group n=<n> e=<e>`            | `n²` entries, row-major     |
//! | HOM1 | `hom n=<n> m=<m>`              | `n` images                  |
//! | ACT1 | `action m=<m> n=<n>`           | `m·n²` entries, `(p,x,y)` row-major |
//! | BND1 | `bundle total=<t> base=<b> charts=<c>` | sections, see below |
//!
//! A BND1 document continues with `projection` and `t` base points, then
//! `structure` and an embedded SHF1 document, then `action` and an embedded
//! ACT1 document, then one block per chart:
//! `chart domain=<d> pairs=<k>`, the `d` base points of the domain and `k`
//! pairs `p s` giving the fiber coordinate of each total point over it.
//!
//! Entries are separated by arbitrary whitespace; `#` starts a comment that
//! runs to the end of the line. Anything after the last expected token is an
//! error.

use std::fmt::Write as _;

use semiheap_core::actions::ActionTable;
use semiheap_core::bundles::{Chart, DiscreteSemiheapBundle};
use semiheap_core::semiheap::verify_para_associative;
use semiheap_core::{FiniteGroup, TernaryTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

type Result<T> = std::result::Result<T, FormatError>;

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

struct Tokens<'a> {
    tokens: Vec<Token<'a>>,
    pos: usize,
    end: (usize, usize),
}

impl<'a> Tokens<'a> {
    fn new(input: &'a str) -> Self {
        let mut tokens = Vec::new();
        let mut end = (1, 1);
        for (i, raw) in input.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            let mut offset = 0;
            for word in line.split_whitespace() {
                let at = line[offset..].find(word).expect("word comes from this line") + offset;
                tokens.push(Token { text: word, line: i + 1, column: line[..at].chars().count() + 1 });
                offset = at + word.len();
            }
            end = (i + 1, raw.chars().count() + 1);
        }
        Tokens { tokens, pos: 0, end }
    }

    fn error_here(&self, message: impl Into<String>) -> FormatError {
        let (line, column) = match self.tokens.get(self.pos) {
            Some(t) => (t.line, t.column),
            None => self.end,
        };
        FormatError { line, column, message: message.into() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn next(&mut self, what: &str) -> Result<Token<'a>> {
        let t = self.tokens.get(self.pos).copied().ok_or_else(|| self.error_here(format!("expected {what}, found end of input")))?;
        self.pos += 1;
        Ok(t)
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        let t = self.next(&format!("`{word}`"))?;
        if t.text == word {
            Ok(())
        } else {
            Err(at(t, format!("expected `{word}`, found `{}`", t.text)))
        }
    }

    fn peek_is_field(&self, key: &str) -> bool {
        self.tokens.get(self.pos).is_some_and(|t| t.text.starts_with(&format!("{key}=")))
    }

    fn field(&mut self, key: &str) -> Result<usize> {
        let t = self.next(&format!("`{key}=<value>`"))?;
        let value = t
            .text
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| at(t, format!("expected `{key}=<value>`, found `{}`", t.text)))?;
        value.parse().map_err(|_| at(t, format!("`{key}` must be a non-negative integer, found `{value}`")))
    }

    fn entry(&mut self, bound: usize) -> Result<usize> {
        let t = self.next("an entry")?;
        let v: usize = t.text.parse().map_err(|_| at(t, format!("expected a non-negative integer, found `{}`", t.text)))?;
        if v >= bound {
            return Err(at(t, format!("entry {v} out of range (must be < {bound})")));
        }
        Ok(v)
    }

    fn entries(&mut self, count: usize, bound: usize) -> Result<Vec<usize>> {
        (0..count).map(|_| self.entry(bound)).collect()
    }

    fn finish(&self) -> Result<()> {
        match self.tokens.get(self.pos) {
            None => Ok(()),
            Some(t) => Err(at(*t, format!("trailing input `{}`", t.text))),
        }
    }
}

fn at(t: Token<'_>, message: String) -> FormatError {
    FormatError { line: t.line, column: t.column, message }
}

fn cube(n: usize) -> Result<usize> {
    n.checked_mul(n)
        .and_then(|s| s.checked_mul(n))
        .filter(|&c| c <= 1 << 28)
        .ok_or_else(|| FormatError { line: 1, column: 1, message: format!("order {n} is too large") })
}

/// A ternary table with an optional basepoint, not yet checked for any law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiheapDoc {
    pub table: TernaryTable,
    pub basepoint: Option<usize>,
}

fn semiheap_body(t: &mut Tokens<'_>) -> Result<SemiheapDoc> {
    t.keyword("semiheap")?;
    let n = t.field("n")?;
    let basepoint = if t.peek_is_field("pt") {
        let tok = t.tokens[t.pos];
        let p = t.field("pt")?;
        if p >= n {
            return Err(at(tok, format!("basepoint {p} out of range (must be < {n})")));
        }
        Some(p)
    } else {
        None
    };
    let entries = t.entries(cube(n)?, n)?;
    Ok(SemiheapDoc { table: TernaryTable::new(n, entries).expect("shape and range checked"), basepoint })
}

pub fn parse_semiheap(input: &str) -> Result<SemiheapDoc> {
    let mut t = Tokens::new(input);
    let doc = semiheap_body(&mut t)?;
    t.finish()?;
    Ok(doc)
}

/// Consecutive SHF1 documents, as written by `enumerate`.
pub fn parse_semiheap_stream(input: &str) -> Result<Vec<SemiheapDoc>> {
    let mut t = Tokens::new(input);
    let mut out = Vec::new();
    while !t.at_end() {
        if t.tokens[t.pos].text != "semiheap" {
            t.finish()?;
        }
        out.push(semiheap_body(&mut t)?);
    }
    Ok(out)
}

fn write_rows(out: &mut String, entries: &[usize], width: usize) {
    for row in entries.chunks(width.max(1)) {
        let line: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
}

pub fn write_semiheap(table: &TernaryTable, basepoint: Option<usize>) -> String {
    let n = table.order();
    let mut out = format!("semiheap n={n}");
    if let Some(p) = basepoint {
        let _ = write!(out, " pt={p}");
    }
    out.push('\n');
    write_rows(&mut out, table.entries(), n);
    out
}

/// Raw GRP1 data; the group axioms are checked by [`GroupDoc::into_group`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDoc {
    pub order: usize,
    pub identity: usize,
    pub table: Vec<usize>,
}

impl GroupDoc {
    pub fn into_group(self) -> semiheap_core::Result<FiniteGroup> {
        FiniteGroup::new(self.order, self.table, self.identity)
    }
}

pub fn parse_group(input: &str) -> Result<GroupDoc> {
    let mut t = Tokens::new(input);
    t.keyword("group")?;
    let n = t.field("n")?;
    let e_tok = t.tokens.get(t.pos).copied();
    let e = t.field("e")?;
    if e >= n {
        let tok = e_tok.expect("field was read");
        return Err(at(tok, format!("identity {e} out of range (must be < {n})")));
    }
    let table = t.entries(n * n, n)?;
    t.finish()?;
    Ok(GroupDoc { order: n, identity: e, table })
}

pub fn write_group(g: &FiniteGroup) -> String {
    let mut out = format!("group n={} e={}\n", g.order(), g.identity());
    write_rows(&mut out, g.table(), g.order());
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomDoc {
    pub source: usize,
    pub target: usize,
    pub map: Vec<usize>,
}

pub fn parse_hom(input: &str) -> Result<HomDoc> {
    let mut t = Tokens::new(input);
    t.keyword("hom")?;
    let n = t.field("n")?;
    let m = t.field("m")?;
    let map = t.entries(n, m)?;
    t.finish()?;
    Ok(HomDoc { source: n, target: m, map })
}

pub fn write_hom(map: &[usize], target: usize) -> String {
    let mut out = format!("hom n={} m={target}\n", map.len());
    write_rows(&mut out, map, map.len());
    out
}

fn action_body(t: &mut Tokens<'_>) -> Result<ActionTable> {
    t.keyword("action")?;
    let m = t.field("m")?;
    let n = t.field("n")?;
    let count = n.checked_mul(n).and_then(|s| s.checked_mul(m)).filter(|&c| c <= 1 << 28).ok_or_else(|| t.error_here("action table is too large"))?;
    let entries = t.entries(count, m)?;
    Ok(ActionTable::new(m, n, entries).expect("shape and range checked"))
}

pub fn parse_action(input: &str) -> Result<ActionTable> {
    let mut t = Tokens::new(input);
    let a = action_body(&mut t)?;
    t.finish()?;
    Ok(a)
}

pub fn write_action(a: &ActionTable) -> String {
    let mut out = format!("action m={} n={}\n", a.points(), a.order());
    write_rows(&mut out, a.entries(), a.order());
    out
}

/// Bundle data; the structure table is checked for para-associativity here
/// (a bundle's structure must be a semiheap), the bundle axioms are not.
pub fn parse_bundle(input: &str) -> std::result::Result<DiscreteSemiheapBundle, BundleParseError> {
    let mut t = Tokens::new(input);
    t.keyword("bundle")?;
    let total = t.field("total")?;
    let base = t.field("base")?;
    let charts = t.field("charts")?;
    t.keyword("projection")?;
    let projection = t.entries(total, base)?;
    t.keyword("structure")?;
    let structure_at = t.error_here("");
    let doc = semiheap_body(&mut t)?;
    let fiber = doc.table.order();
    t.keyword("action")?;
    let action_at = t.error_here("");
    let action = action_body(&mut t)?;
    if action.points() != total || action.order() != fiber {
        return Err(FormatError {
            message: format!("action must be on {total} points by an order-{fiber} semiheap"),
            ..action_at
        }
        .into());
    }
    let mut chart_list = Vec::with_capacity(charts.min(1 << 16));
    for _ in 0..charts {
        t.keyword("chart")?;
        let d = t.field("domain")?;
        let k = t.field("pairs")?;
        let domain = t.entries(d, base)?;
        let mut map = Vec::with_capacity(k.min(1 << 16));
        for _ in 0..k {
            let p = t.entry(total)?;
            let s = t.entry(fiber)?;
            map.push((p, projection[p], s));
        }
        chart_list.push(Chart::new(domain, map));
    }
    t.finish()?;
    let structure = verify_para_associative(doc.table).map_err(|e| BundleParseError::Structure {
        line: structure_at.line,
        source: e,
    })?;
    DiscreteSemiheapBundle::new(base, projection, structure, action, chart_list).map_err(BundleParseError::Shape)
}

#[derive(Debug, thiserror::Error)]
pub enum BundleParseError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("line {line}: structure is not a semiheap: {source}")]
    Structure { line: usize, source: semiheap_core::Error },
    #[error("{0}")]
    Shape(semiheap_core::Error),
}

pub fn write_bundle(b: &DiscreteSemiheapBundle) -> String {
    let mut out = format!("bundle total={} base={} charts={}\nprojection\n", b.total(), b.base(), b.charts().len());
    write_rows(&mut out, b.projection(), b.total());
    out.push_str("structure\n");
    out.push_str(&write_semiheap(b.structure().table(), None));
    out.push_str("action\n");
    out.push_str(&write_action(b.action()));
    for chart in b.charts() {
        let _ = writeln!(out, "chart domain={} pairs={}", chart.domain.len(), chart.map.len());
        write_rows(&mut out, &chart.domain, chart.domain.len());
        for &(p, _, s) in &chart.map {
            let _ = writeln!(out, "{p} {s}");
        }
    }
    out
}
