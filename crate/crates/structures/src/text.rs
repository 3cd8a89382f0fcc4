//! Plain-text exchange format for structures and maps.
//!
//! A structure file:
//!
//! ```text
//! structure twisted ginfty
//! bound 4
//! base
//! x   -1
//! xd  0
//! end
//! constants
//! 1,1 | x^xd | x | -1
//! end
//! ```
//!
//! A map file wraps two full structure blocks and a components section;
//! `degree 0` for morphisms, `degree -1` for homotopies between them.
//! Blank lines and `#` comments are skipped everywhere.

use std::collections::BTreeMap;

use shak_core::{Element, GradedBasis, Scalar};
use shak_coalgebra::{Symbol, WedgeWord};

use crate::error::StructuresError;
use crate::kind::{signature_string, StructureKind};
use crate::morphism::MorphismData;
use crate::structure::{validate_symbol, HomotopyStructure};

#[derive(Clone, Debug, PartialEq)]
pub struct StructureFile {
    pub name: String,
    pub structure: HomotopyStructure,
}

/// A degree-`degree` map between two structures, with both endpoints
/// embedded so the file is self-contained.
#[derive(Clone, Debug, PartialEq)]
pub struct MapFile {
    pub name: String,
    pub kind: StructureKind,
    pub degree: i64,
    pub source_name: String,
    pub source: HomotopyStructure,
    pub target_name: String,
    pub target: HomotopyStructure,
    pub components: Symbol,
    pub max_weight: usize,
}

impl MapFile {
    pub fn into_morphism(self) -> Result<MorphismData, StructuresError> {
        if self.degree != 0 {
            return Err(StructuresError::Malformed(format!(
                "map {} has degree {}, not a morphism",
                self.name, self.degree
            )));
        }
        MorphismData::new(
            self.kind,
            self.source,
            self.target,
            self.components,
            self.max_weight,
        )
    }

    pub fn from_morphism(
        name: &str,
        source_name: &str,
        target_name: &str,
        phi: &MorphismData,
    ) -> MapFile {
        MapFile {
            name: name.to_string(),
            kind: phi.kind(),
            degree: 0,
            source_name: source_name.to_string(),
            source: phi.source().clone(),
            target_name: target_name.to_string(),
            target: phi.target().clone(),
            components: phi.components().clone(),
            max_weight: phi.max_weight(),
        }
    }
}

fn perr(line: usize, column: usize, detail: impl Into<String>) -> StructuresError {
    StructuresError::Parse {
        line,
        column,
        detail: detail.into(),
    }
}

/// Whitespace-split tokens with their 1-based column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut col = 0;
    let mut start = None;
    let mut start_col = 0;
    for (i, ch) in line.char_indices() {
        col += 1;
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((start_col, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
            start_col = col;
        }
    }
    if let Some(s) = start {
        out.push((start_col, &line[s..]));
    }
    out
}

/// `|`-separated fields, trimmed, with the 1-based column of each field's
/// first non-space character.
fn fields(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut col = 1;
    for piece in line.split('|') {
        let lead = piece.chars().take_while(|c| c.is_whitespace()).count();
        out.push((col + lead, piece.trim()));
        col += piece.chars().count() + 1;
    }
    out
}

struct Cursor<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            lines: text.lines().collect(),
            pos: 0,
        }
    }

    /// Next non-blank, non-comment line as (1-based line number, text).
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        while self.pos < self.lines.len() {
            let line = self.lines[self.pos];
            self.pos += 1;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            return Some((self.pos, line));
        }
        None
    }

    fn expect_line(&mut self, what: &str) -> Result<(usize, &'a str), StructuresError> {
        self.next_content()
            .ok_or_else(|| perr(self.lines.len().max(1), 1, format!("expected {what}")))
    }

    fn expect_eof(&mut self) -> Result<(), StructuresError> {
        if let Some((no, _)) = self.next_content() {
            return Err(perr(no, 1, "expected end of file"));
        }
        Ok(())
    }
}

fn expect_keyword(
    cur: &mut Cursor,
    keyword: &str,
) -> Result<(usize, Vec<(usize, String)>), StructuresError> {
    let (no, line) = cur.expect_line(&format!("`{keyword}`"))?;
    let toks = tokens(line);
    match toks.first() {
        Some(&(_, word)) if word == keyword => Ok((
            no,
            toks[1..]
                .iter()
                .map(|&(c, t)| (c, t.to_string()))
                .collect(),
        )),
        Some(&(c, word)) => Err(perr(no, c, format!("expected `{keyword}`, found `{word}`"))),
        None => unreachable!("content lines are nonempty"),
    }
}

fn parse_usize(no: usize, col: usize, s: &str, what: &str) -> Result<usize, StructuresError> {
    s.parse::<usize>()
        .map_err(|_| perr(no, col, format!("{what}: expected a nonnegative integer")))
}

fn parse_kind(no: usize, col: usize, s: &str) -> Result<StructureKind, StructuresError> {
    StructureKind::parse(s)
        .ok_or_else(|| perr(no, col, format!("unknown kind `{s}`, expected linfty|cinfty|ginfty")))
}

/// Parses `structure <name> <kind>` through its final `end`.
fn parse_structure_block(cur: &mut Cursor) -> Result<StructureFile, StructuresError> {
    let (no, rest) = expect_keyword(cur, "structure")?;
    if rest.len() != 2 {
        return Err(perr(no, 1, "expected `structure <name> <kind>`"));
    }
    let name = rest[0].1.clone();
    let kind = parse_kind(no, rest[1].0, &rest[1].1)?;

    let (no, rest) = expect_keyword(cur, "bound")?;
    if rest.len() != 1 {
        return Err(perr(no, 1, "expected `bound <weight>`"));
    }
    let max_weight = parse_usize(no, rest[0].0, &rest[0].1, "bound")?;

    let base = parse_base_section(cur)?;
    let symbol = parse_constants_section(cur, "constants", &base, &base)?;

    let structure = HomotopyStructure::new(base, kind, symbol, max_weight)?;
    Ok(StructureFile { name, structure })
}

fn parse_base_section(cur: &mut Cursor) -> Result<GradedBasis, StructuresError> {
    let (no, rest) = expect_keyword(cur, "base")?;
    if !rest.is_empty() {
        return Err(perr(no, rest[0].0, "unexpected token after `base`"));
    }
    let mut pairs: Vec<(String, i64)> = Vec::new();
    loop {
        let (no, line) = cur.expect_line("a base line or `end`")?;
        let toks = tokens(line);
        if toks.len() == 1 && toks[0].1 == "end" {
            break;
        }
        if toks.len() != 2 {
            return Err(perr(no, toks[0].0, "expected `<identifier> <degree>`"));
        }
        let (c0, id) = toks[0];
        if !id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(perr(no, c0, format!("invalid identifier `{id}`")));
        }
        if pairs.iter().any(|(n, _)| n == id) {
            return Err(perr(no, c0, format!("duplicate identifier `{id}`")));
        }
        let (c1, deg) = toks[1];
        let deg: i64 = deg
            .parse()
            .map_err(|_| perr(no, c1, "expected an integer degree"))?;
        pairs.push((id.to_string(), deg));
    }
    let refs: Vec<(&str, i64)> = pairs.iter().map(|(n, d)| (n.as_str(), *d)).collect();
    Ok(GradedBasis::from_pairs(&refs)?)
}

/// Parses a `<keyword> ... end` section of constant lines
/// `signature | word | letter | coefficient`, accumulating an Element per
/// word. Words parse over `word_base`, letters over `value_base`.
fn parse_constants_section(
    cur: &mut Cursor,
    keyword: &str,
    word_base: &GradedBasis,
    value_base: &GradedBasis,
) -> Result<Symbol, StructuresError> {
    let (no, rest) = expect_keyword(cur, keyword)?;
    if !rest.is_empty() {
        return Err(perr(no, rest[0].0, format!("unexpected token after `{keyword}`")));
    }
    let mut acc: BTreeMap<WedgeWord, Element> = BTreeMap::new();
    loop {
        let (no, line) = cur.expect_line("a constant line or `end`")?;
        let toks = tokens(line);
        if toks.len() == 1 && toks[0].1 == "end" {
            break;
        }
        let fs = fields(line);
        if fs.len() != 4 {
            return Err(perr(
                no,
                1,
                "expected `signature | word | letter | coefficient`",
            ));
        }
        let (sig_col, sig) = fs[0];
        let (word_col, word) = fs[1];
        let (letter_col, letter) = fs[2];
        let (coeff_col, coeff) = fs[3];

        let w = WedgeWord::parse(word_base, word)
            .map_err(|e| perr(no, word_col, e.to_string()))?;
        if signature_string(&w) != sig {
            return Err(perr(
                no,
                sig_col,
                format!("signature {sig} does not match the word's shape {}", signature_string(&w)),
            ));
        }
        let id = value_base
            .id_of(letter)
            .ok_or_else(|| perr(no, letter_col, format!("unknown identifier `{letter}`")))?;
        let c: Scalar = coeff
            .parse()
            .map_err(|e: shak_core::CoreError| perr(no, coeff_col, e.to_string()))?;
        acc.entry(w).or_default().add_term(id, c);
    }
    let mut sym = Symbol::new();
    for (w, e) in acc {
        sym.set(w, e);
    }
    Ok(sym)
}

pub fn parse_structure(text: &str) -> Result<StructureFile, StructuresError> {
    let mut cur = Cursor::new(text);
    let file = parse_structure_block(&mut cur)?;
    cur.expect_eof()?;
    Ok(file)
}

pub fn parse_map(text: &str) -> Result<MapFile, StructuresError> {
    let mut cur = Cursor::new(text);
    let (no, rest) = expect_keyword(&mut cur, "morphism")?;
    if rest.len() != 2 {
        return Err(perr(no, 1, "expected `morphism <name> <kind>`"));
    }
    let name = rest[0].1.clone();
    let kind = parse_kind(no, rest[1].0, &rest[1].1)?;

    let (no, rest) = expect_keyword(&mut cur, "degree")?;
    if rest.len() != 1 {
        return Err(perr(no, 1, "expected `degree <integer>`"));
    }
    let degree: i64 = rest[0]
        .1
        .parse()
        .map_err(|_| perr(no, rest[0].0, "expected an integer degree"))?;

    let (no, rest) = expect_keyword(&mut cur, "bound")?;
    if rest.len() != 1 {
        return Err(perr(no, 1, "expected `bound <weight>`"));
    }
    let max_weight = parse_usize(no, rest[0].0, &rest[0].1, "bound")?;

    let (no, rest) = expect_keyword(&mut cur, "source")?;
    if !rest.is_empty() {
        return Err(perr(no, rest[0].0, "unexpected token after `source`"));
    }
    let source = parse_structure_block(&mut cur)?;

    let (no, rest) = expect_keyword(&mut cur, "target")?;
    if !rest.is_empty() {
        return Err(perr(no, rest[0].0, "unexpected token after `target`"));
    }
    let target = parse_structure_block(&mut cur)?;

    let components = parse_constants_section(
        &mut cur,
        "components",
        source.structure.base(),
        target.structure.base(),
    )?;
    cur.expect_eof()?;

    validate_symbol(
        source.structure.base(),
        target.structure.base(),
        kind,
        &components,
        max_weight,
        degree,
        "component",
    )?;

    Ok(MapFile {
        name,
        kind,
        degree,
        source_name: source.name,
        source: source.structure,
        target_name: target.name,
        target: target.structure,
        components,
        max_weight,
    })
}

fn render_base(out: &mut String, base: &GradedBasis) {
    out.push_str("base\n");
    for (_, name, degree) in base.iter() {
        out.push_str(&format!("{name}\t{degree}\n"));
    }
    out.push_str("end\n");
}

fn render_constants(
    out: &mut String,
    keyword: &str,
    word_base: &GradedBasis,
    value_base: &GradedBasis,
    sym: &Symbol,
) {
    out.push_str(keyword);
    out.push('\n');
    for (w, val) in sym.iter() {
        for (id, c) in val.iter() {
            out.push_str(&format!(
                "{} | {} | {} | {}\n",
                signature_string(w),
                w.pretty(word_base),
                value_base.name(id),
                c
            ));
        }
    }
    out.push_str("end\n");
}

fn render_structure_block(out: &mut String, name: &str, s: &HomotopyStructure) {
    out.push_str(&format!("structure {name} {}\n", s.kind()));
    out.push_str(&format!("bound {}\n", s.max_weight()));
    render_base(out, s.base());
    render_constants(out, "constants", s.base(), s.base(), s.symbol());
}

pub fn render_structure(file: &StructureFile) -> String {
    let mut out = String::new();
    render_structure_block(&mut out, &file.name, &file.structure);
    out
}

pub fn render_map(file: &MapFile) -> String {
    let mut out = String::new();
    out.push_str(&format!("morphism {} {}\n", file.name, file.kind));
    out.push_str(&format!("degree {}\n", file.degree));
    out.push_str(&format!("bound {}\n", file.max_weight));
    out.push_str("source\n");
    render_structure_block(&mut out, &file.source_name, &file.source);
    out.push_str("target\n");
    render_structure_block(&mut out, &file.target_name, &file.target);
    render_constants(
        &mut out,
        "components",
        file.source.base(),
        file.target.base(),
        &file.components,
    );
    out
}
