//! Session files and the `dbr` command surface.
//!
//! A session declares an algebra, optionally a bimodule structure, optionally a
//! double bracket, and then lists commands, one per line:
//!
//! ```text
//! algebra { gens: x, y }
//! bimodule { kind: outer ; alpha: x -> y, y -> x }
//! bracket {
//!   <x,x> = y (x) 1 - 1 (x) y
//!   <y,y> = x (x) 1 - 1 (x) x
//! }
//! check poisson --degree 3
//! ```
//!
//! Blocks may span lines; inside a block, entries are separated by `;` or newlines.
//! Everything after `#` on a line is a comment.

mod command;
mod exec;
mod expr;
mod lexer;

use std::fmt;

use thiserror::Error;

use crate::bimodule::{BimodKind, Bimodule};
use crate::dbracket::{BracketError, DoubleBracket};
use crate::freealg::{AlgMap, Gen, NCPoly, Names, Tensor2};

pub use command::{parse_command, Command, GradientAction, YbeAction, YbeSource};
pub use exec::{run, run_text, Format, Outcome, EXIT_COUNTEREXAMPLE, EXIT_ERROR, EXIT_OK};
pub use expr::{parse_poly, parse_tensor};

use expr::ExprParser;
use lexer::{lex_line, Spanned, Tok};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, msg: impl Into<String>) -> Self {
        ParseError { line, col, msg: msg.into() }
    }
}

/// A source position. Equality ignores it, so a reprinted spec equals the original.
#[derive(Clone, Copy, Debug, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Pos) -> bool {
        true
    }
}

impl Eq for Pos {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleDecl {
    pub kind: BimodKind,
    /// Full image lists; generators not mentioned map to themselves.
    pub alpha: Option<Vec<NCPoly>>,
    pub beta: Option<Vec<NCPoly>>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryDecl {
    pub left: Gen,
    pub right: Gen,
    pub value: Tensor2,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandLine {
    pub command: Command,
    pub pos: Pos,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SessionSpec {
    pub gens: Option<Names>,
    pub bimodule: Option<BimoduleDecl>,
    pub bracket: Option<Vec<EntryDecl>>,
    pub commands: Vec<CommandLine>,
}

const BLOCKS: [&str; 3] = ["algebra", "bimodule", "bracket"];

impl SessionSpec {
    pub fn names(&self) -> Names {
        self.gens.clone().unwrap_or_else(|| Names::new(Vec::new()))
    }

    pub fn ngens(&self) -> usize {
        self.gens.as_ref().map_or(0, Names::len)
    }

    /// The declared bimodule, or the untwisted outer one.
    pub fn bimodule(&self) -> Bimodule {
        let n = self.ngens();
        match &self.bimodule {
            None => Bimodule::untwisted(BimodKind::Outer, n),
            Some(b) if b.alpha.is_none() && b.beta.is_none() => Bimodule::untwisted(b.kind, n),
            Some(b) => {
                let map = |m: &Option<Vec<NCPoly>>| m.clone().map_or_else(|| AlgMap::identity(n), AlgMap::new);
                Bimodule::twisted(b.kind, map(&b.alpha), map(&b.beta)).expect("image lists have one entry per generator")
            }
        }
    }

    /// The declared bracket, with semantic errors pointing at the offending entry.
    pub fn double_bracket(&self) -> Result<Option<DoubleBracket>, ParseError> {
        let Some(entries) = &self.bracket else {
            return Ok(None);
        };
        let pairs = entries.iter().map(|e| ((e.left, e.right), e.value.clone()));
        DoubleBracket::new(self.bimodule(), pairs).map(Some).map_err(|e| self.locate(e))
    }

    fn locate(&self, e: BracketError) -> ParseError {
        let names = self.names();
        let entries = self.bracket.as_deref().unwrap_or_default();
        let find = |i: usize, j: usize| {
            let (a, b) = (Gen(i as u16 - 1), Gen(j as u16 - 1));
            entries
                .iter()
                .rev()
                .find(|d| (d.left, d.right) == (a, b) || (d.left, d.right) == (b, a))
                .map_or_else(Pos::default, |d| d.pos)
        };
        let pair = |i: usize, j: usize| format!("<{},{}>", names.get(i - 1), names.get(j - 1));
        match e {
            BracketError::Antisymmetry { i, j, .. } => {
                let p = find(i, j);
                let d = entries.iter().rev().find(|d| d.left.index() + 1 == i && d.right.index() + 1 == j);
                let shown = d.map_or_else(String::new, |d| format!(" = {}", names.tensor(&d.value)));
                ParseError::new(
                    p.line,
                    p.col,
                    format!("{}{shown} violates antisymmetry: a diagonal entry d must satisfy d = -swap(d)", pair(i, j)),
                )
            }
            BracketError::Conflict { i, j } => {
                let p = find(i, j);
                ParseError::new(
                    p.line,
                    p.col,
                    format!("conflicting declarations for {}: the two orders must be related by d -> -swap(d)", pair(i, j)),
                )
            }
            other => {
                let p = entries.first().map_or_else(Pos::default, |d| d.pos);
                ParseError::new(p.line, p.col, other.to_string())
            }
        }
    }
}

fn render_map(images: &[NCPoly], names: &Names) -> String {
    images
        .iter()
        .enumerate()
        .map(|(i, p)| format!("{} -> {}", names.get(i), names.poly(p)))
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for SessionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.names();
        if let Some(g) = &self.gens {
            writeln!(f, "algebra {{ gens: {} }}", g.as_slice().join(", "))?;
        }
        if let Some(b) = &self.bimodule {
            write!(f, "bimodule {{ kind: {}", b.kind)?;
            if let Some(a) = &b.alpha {
                write!(f, " ; alpha: {}", render_map(a, &names))?;
            }
            if let Some(a) = &b.beta {
                write!(f, " ; beta: {}", render_map(a, &names))?;
            }
            writeln!(f, " }}")?;
        }
        if let Some(entries) = &self.bracket {
            writeln!(f, "bracket {{")?;
            for e in entries {
                writeln!(
                    f,
                    "  <{},{}> = {}",
                    names.get(e.left.index()),
                    names.get(e.right.index()),
                    names.tensor(&e.value)
                )?;
            }
            writeln!(f, "}}")?;
        }
        for c in &self.commands {
            writeln!(f, "{}", c.command.render(&names))?;
        }
        Ok(())
    }
}

/// Parses a session and validates its bracket declaration.
pub fn parse_session(text: &str) -> Result<SessionSpec, ParseError> {
    let lines: Vec<&str> = text.lines().collect();
    let mut spec = SessionSpec::default();
    let mut i = 0;
    while i < lines.len() {
        let body = lines[i].split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        if trimmed.is_empty() {
            i += 1;
            continue;
        }
        let head: String = trimmed.chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect();
        let after = trimmed[head.len()..].trim_start();
        if BLOCKS.contains(&head.as_str()) && after.starts_with('{') {
            let (toks, last) = gather_block(&lines, i)?;
            parse_block(&head, &toks, &mut spec)?;
            i = last + 1;
        } else {
            let col = body.len() - trimmed.len() + 1;
            let command = parse_command(trimmed.trim_end(), i + 1, col, &spec)?;
            spec.commands.push(CommandLine { command, pos: Pos { line: i + 1, col } });
            i += 1;
        }
    }
    if spec.bracket.is_some() {
        spec.double_bracket()?;
    }
    Ok(spec)
}

/// Tokens from the block keyword on line `start` through its closing brace.
fn gather_block(lines: &[&str], start: usize) -> Result<(Vec<Spanned>, usize), ParseError> {
    let mut toks = Vec::new();
    for (j, text) in lines.iter().enumerate().skip(start) {
        let mut lt = lex_line(text, j + 1, 1)?;
        if let Some(k) = lt.iter().position(|t| t.tok == Tok::RBrace) {
            if let Some(extra) = lt.get(k + 1) {
                return Err(ParseError::new(extra.line, extra.col, "unexpected text after `}`"));
            }
            lt.truncate(k + 1);
            toks.extend(lt);
            return Ok((toks, j));
        }
        toks.extend(lt);
        toks.push(Spanned { tok: Tok::Newline, line: j + 1, col: text.chars().count() + 1 });
    }
    Err(ParseError::new(start + 1, 1, "block is never closed with `}`"))
}

fn skip_separators(p: &mut ExprParser) {
    while p.eat(&Tok::Semi) || p.eat(&Tok::Newline) {}
}

/// After an item: a separator or the closing brace.
fn end_item(p: &mut ExprParser) -> Result<(), ParseError> {
    match p.peek() {
        Some(Tok::Semi | Tok::Newline) | Some(Tok::RBrace) => Ok(()),
        Some(t) => Err(p.error(format!("expected `;`, a new line or `}}`, found {}", t.describe()))),
        None => Err(p.error("expected `}`")),
    }
}

fn parse_block(head: &str, toks: &[Spanned], spec: &mut SessionSpec) -> Result<(), ParseError> {
    let names = spec.names();
    let start = (toks[0].line, toks[0].col);
    let end = toks.last().map_or(start, |t| (t.line, t.col));
    let mut p = ExprParser::new(toks, &names, end);
    p.bump();
    p.expect(&Tok::LBrace)?;
    match head {
        "algebra" => {
            if spec.gens.is_some() {
                return Err(ParseError::new(start.0, start.1, "the algebra is already declared"));
            }
            spec.gens = Some(parse_algebra(&mut p)?);
        }
        "bimodule" => {
            if spec.gens.is_none() {
                return Err(ParseError::new(start.0, start.1, "declare the algebra before the bimodule"));
            }
            if spec.bimodule.is_some() {
                return Err(ParseError::new(start.0, start.1, "the bimodule is already declared"));
            }
            if spec.bracket.is_some() {
                return Err(ParseError::new(start.0, start.1, "declare the bimodule before the bracket"));
            }
            spec.bimodule = Some(parse_bimodule(&mut p, Pos { line: start.0, col: start.1 })?);
        }
        _ => {
            if spec.gens.is_none() {
                return Err(ParseError::new(start.0, start.1, "declare the algebra before the bracket"));
            }
            if spec.bracket.is_some() {
                return Err(ParseError::new(start.0, start.1, "the bracket is already declared"));
            }
            spec.bracket = Some(parse_entries(&mut p)?);
        }
    }
    Ok(())
}

fn parse_algebra(p: &mut ExprParser) -> Result<Names, ParseError> {
    let mut gens: Option<Vec<String>> = None;
    loop {
        skip_separators(p);
        if p.eat(&Tok::RBrace) {
            break;
        }
        let here = p.here();
        let key = p.ident()?;
        if key != "gens" {
            return Err(ParseError::new(here.0, here.1, format!("unknown algebra field `{key}`")));
        }
        if gens.is_some() {
            return Err(ParseError::new(here.0, here.1, "generators are already listed"));
        }
        p.expect(&Tok::Colon)?;
        let mut list = Vec::new();
        loop {
            let here = p.here();
            let g = p.ident()?;
            if list.contains(&g) {
                return Err(ParseError::new(here.0, here.1, format!("generator `{g}` listed twice")));
            }
            list.push(g);
            if !p.eat(&Tok::Comma) {
                break;
            }
        }
        end_item(p)?;
        gens = Some(list);
    }
    let (line, col) = p.here();
    let gens = gens.ok_or_else(|| ParseError::new(line, col, "the algebra needs `gens: ...`"))?;
    if gens.len() > u16::MAX as usize {
        return Err(ParseError::new(line, col, "too many generators"));
    }
    Ok(Names::new(gens))
}

fn parse_bimodule(p: &mut ExprParser, pos: Pos) -> Result<BimoduleDecl, ParseError> {
    let mut kind = None;
    let mut alpha = None;
    let mut beta = None;
    loop {
        skip_separators(p);
        if p.eat(&Tok::RBrace) {
            break;
        }
        let here = p.here();
        let key = p.ident()?;
        p.expect(&Tok::Colon)?;
        let dup = || ParseError::new(here.0, here.1, format!("`{key}` given twice"));
        match key.as_str() {
            "kind" => {
                let at = p.here();
                let k = p.ident()?;
                let k = k.parse::<BimodKind>().map_err(|e| ParseError::new(at.0, at.1, e.to_string()))?;
                if kind.replace(k).is_some() {
                    return Err(dup());
                }
            }
            "alpha" | "beta" => {
                let images = parse_map(p)?;
                let slot = if key == "alpha" { &mut alpha } else { &mut beta };
                if slot.replace(images).is_some() {
                    return Err(dup());
                }
            }
            _ => return Err(ParseError::new(here.0, here.1, format!("unknown bimodule field `{key}`"))),
        }
        end_item(p)?;
    }
    let kind = kind.ok_or_else(|| ParseError::new(pos.line, pos.col, "the bimodule needs `kind: ...`"))?;
    Ok(BimoduleDecl { kind, alpha, beta, pos })
}

/// `g -> poly, ...`; unlisted generators are fixed.
fn parse_map(p: &mut ExprParser) -> Result<Vec<NCPoly>, ParseError> {
    let n = p.names_len();
    let mut images: Vec<Option<NCPoly>> = vec![None; n];
    loop {
        let here = p.here();
        let g = p.generator()?;
        p.expect(&Tok::Arrow)?;
        let image = p.poly()?;
        if images[g.index()].replace(image).is_some() {
            return Err(ParseError::new(here.0, here.1, "image given twice"));
        }
        if !p.eat(&Tok::Comma) {
            break;
        }
    }
    Ok(images
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.unwrap_or_else(|| NCPoly::from_key(crate::freealg::Word::letter(Gen(i as u16)))))
        .collect())
}

fn parse_entries(p: &mut ExprParser) -> Result<Vec<EntryDecl>, ParseError> {
    let mut out = Vec::new();
    loop {
        skip_separators(p);
        if p.eat(&Tok::RBrace) {
            break;
        }
        let (line, col) = p.here();
        p.expect(&Tok::Lt)?;
        let left = p.generator()?;
        p.expect(&Tok::Comma)?;
        let right = p.generator()?;
        p.expect(&Tok::Gt)?;
        p.expect(&Tok::Eq)?;
        let value = p.tensor()?;
        end_item(p)?;
        out.push(EntryDecl { left, right, value, pos: Pos { line, col } });
    }
    Ok(out)
}
