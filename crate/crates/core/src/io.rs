//! Text formats for algebras and morphisms.
//!
//! A monoid file is a header line `monoid <size> <identity>` followed by
//! `size` rows of `size` space separated indices; a row lists the products
//! with its element on the left. A semiring file is `semiring <size>
//! <zero>` followed by the addition table, a blank line, and the
//! multiplication table. A morphism file is `hom <source> <target>`
//! followed by one line of image indices; the two names refer to algebra
//! files that travel alongside the morphism file. Indices are decimal and
//! zero based. Parse errors cite the one based line and column of the
//! offending token.

use thiserror::Error;

use crate::algebra::{Algebra, FiniteMonoid, FiniteSemiring, Morphism};

/// Where and why a text failed to parse.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

/// An unresolved morphism file: names plus the image row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomFile {
    pub source_name: String,
    pub target_name: String,
    pub images: Vec<usize>,
}

/// Any entity a file in these formats can hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entity {
    Monoid(FiniteMonoid),
    Semiring(FiniteSemiring),
    Hom(HomFile),
}

/// One token with its one based starting column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_index(line_no: usize, column: usize, token: &str, bound: usize) -> Result<usize, ParseError> {
    let value: usize = token.parse().map_err(|_| {
        ParseError::new(line_no, column, format!("expected a number, found {token:?}"))
    })?;
    if value >= bound {
        return Err(ParseError::new(
            line_no,
            column,
            format!("index {value} is out of range for size {bound}"),
        ));
    }
    Ok(value)
}

/// Reads one table row: exactly `size` indices below `size`.
fn parse_row(line_no: usize, line: &str, size: usize) -> Result<Vec<usize>, ParseError> {
    let cells = tokens(line);
    if cells.len() != size {
        let column = cells
            .get(size)
            .map(|(c, _)| *c)
            .unwrap_or_else(|| line.len() + 1);
        return Err(ParseError::new(
            line_no,
            column,
            format!("expected {size} entries in this row, found {}", cells.len()),
        ));
    }
    cells
        .into_iter()
        .map(|(column, token)| parse_index(line_no, column, token, size))
        .collect()
}

struct Cursor<'a> {
    lines: Vec<&'a str>,
    /// Zero based index of the next unread line.
    next: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Cursor<'a> {
        Cursor {
            lines: text.lines().collect(),
            next: 0,
        }
    }

    fn line_no(&self) -> usize {
        self.next + 1
    }

    fn take(&mut self) -> Option<&'a str> {
        let line = self.lines.get(self.next).copied();
        if line.is_some() {
            self.next += 1;
        }
        line
    }

    /// The next line, which must exist and not be blank.
    fn expect_row(&mut self, what: &str) -> Result<&'a str, ParseError> {
        let line_no = self.line_no();
        match self.take() {
            Some(line) if !line.trim().is_empty() => Ok(line),
            Some(_) => Err(ParseError::new(line_no, 1, format!("blank line inside {what}"))),
            None => Err(ParseError::new(line_no, 1, format!("missing {what}"))),
        }
    }

    /// Consumes one or more blank lines separating two tables.
    fn expect_blank(&mut self) -> Result<(), ParseError> {
        let line_no = self.line_no();
        match self.take() {
            Some(line) if line.trim().is_empty() => {
                while self
                    .lines
                    .get(self.next)
                    .is_some_and(|l| l.trim().is_empty())
                {
                    self.next += 1;
                }
                Ok(())
            }
            Some(line) => Err(ParseError::new(
                line_no,
                tokens(line).first().map(|(c, _)| *c).unwrap_or(1),
                "expected a blank line between the tables",
            )),
            None => Err(ParseError::new(line_no, 1, "missing the second table")),
        }
    }

    /// Only trailing blank lines may remain.
    fn expect_end(&mut self) -> Result<(), ParseError> {
        while let Some(line) = self.lines.get(self.next) {
            if !line.trim().is_empty() {
                let column = tokens(line).first().map(|(c, _)| *c).unwrap_or(1);
                return Err(ParseError::new(
                    self.line_no(),
                    column,
                    "expected the end of the file",
                ));
            }
            self.next += 1;
        }
        Ok(())
    }
}

/// Header shared by the algebra formats: `<kind> <size> <index>`.
fn parse_header<'a>(
    cursor: &mut Cursor<'a>,
    kind: &str,
) -> Result<(usize, usize), ParseError> {
    let line_no = cursor.line_no();
    let line = cursor.expect_row("the header line")?;
    let cells = tokens(line);
    match cells.as_slice() {
        [(c0, word), (c1, size), (c2, index)] => {
            if *word != kind {
                return Err(ParseError::new(
                    line_no,
                    *c0,
                    format!("expected the header to start with {kind:?}, found {word:?}"),
                ));
            }
            let size: usize = size.parse().map_err(|_| {
                ParseError::new(line_no, *c1, format!("expected a size, found {size:?}"))
            })?;
            if size == 0 {
                return Err(ParseError::new(line_no, *c1, "size must be at least one"));
            }
            let index = parse_index(line_no, *c2, index, size)?;
            Ok((size, index))
        }
        _ => Err(ParseError::new(
            line_no,
            1,
            format!("expected `{kind} <size> <index>`"),
        )),
    }
}

fn parse_table(cursor: &mut Cursor<'_>, size: usize, what: &str) -> Result<Vec<usize>, ParseError> {
    let mut table = Vec::with_capacity(size * size);
    for _ in 0..size {
        let line_no = cursor.line_no();
        let line = cursor.expect_row(what)?;
        table.extend(parse_row(line_no, line, size)?);
    }
    Ok(table)
}

/// Law failures surface at the header, since the table cells themselves
/// parsed fine.
fn law_error(message: impl std::fmt::Display) -> ParseError {
    ParseError::new(1, 1, message.to_string())
}

pub fn parse_monoid(text: &str) -> Result<FiniteMonoid, ParseError> {
    let mut cursor = Cursor::new(text);
    let (size, identity) = parse_header(&mut cursor, "monoid")?;
    let table = parse_table(&mut cursor, size, "the operation table")?;
    cursor.expect_end()?;
    FiniteMonoid::from_tables(size, identity, vec![table]).map_err(law_error)
}

pub fn parse_semiring(text: &str) -> Result<FiniteSemiring, ParseError> {
    let mut cursor = Cursor::new(text);
    let (size, zero) = parse_header(&mut cursor, "semiring")?;
    let add = parse_table(&mut cursor, size, "the addition table")?;
    cursor.expect_blank()?;
    let mul = parse_table(&mut cursor, size, "the multiplication table")?;
    cursor.expect_end()?;
    FiniteSemiring::from_tables(size, zero, vec![add, mul]).map_err(law_error)
}

pub fn parse_hom(text: &str) -> Result<HomFile, ParseError> {
    let mut cursor = Cursor::new(text);
    let line_no = cursor.line_no();
    let header = cursor.expect_row("the header line")?;
    let cells = tokens(header);
    let (source_name, target_name) = match cells.as_slice() {
        [(c0, word), (_, source), (_, target)] => {
            if *word != "hom" {
                return Err(ParseError::new(
                    line_no,
                    *c0,
                    format!("expected the header to start with \"hom\", found {word:?}"),
                ));
            }
            (source.to_string(), target.to_string())
        }
        _ => {
            return Err(ParseError::new(
                line_no,
                1,
                "expected `hom <source-name> <target-name>`",
            ))
        }
    };
    let image_line_no = cursor.line_no();
    let image_line = cursor.expect_row("the image line")?;
    let images = tokens(image_line)
        .into_iter()
        .map(|(column, token)| {
            token.parse().map_err(|_| {
                ParseError::new(
                    image_line_no,
                    column,
                    format!("expected a number, found {token:?}"),
                )
            })
        })
        .collect::<Result<Vec<usize>, ParseError>>()?;
    cursor.expect_end()?;
    Ok(HomFile {
        source_name,
        target_name,
        images,
    })
}

/// Parses whichever of the three formats the first word announces.
pub fn parse_entity(text: &str) -> Result<Entity, ParseError> {
    let first = text
        .lines()
        .next()
        .and_then(|l| tokens(l).first().map(|(_, t)| *t))
        .unwrap_or("");
    match first {
        "monoid" => parse_monoid(text).map(Entity::Monoid),
        "semiring" => parse_semiring(text).map(Entity::Semiring),
        "hom" => parse_hom(text).map(Entity::Hom),
        other => Err(ParseError::new(
            1,
            1,
            format!("expected monoid, semiring, or hom, found {other:?}"),
        )),
    }
}

fn push_table(out: &mut String, table: &[usize], size: usize) {
    for row in 0..size {
        let cells: Vec<String> = (0..size)
            .map(|col| table[row * size + col].to_string())
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
}

pub fn print_monoid(m: &FiniteMonoid) -> String {
    let mut out = format!("monoid {} {}\n", m.size(), m.neutral());
    push_table(&mut out, m.table(0), m.size());
    out
}

pub fn print_semiring(s: &FiniteSemiring) -> String {
    let mut out = format!("semiring {} {}\n", s.size(), s.neutral());
    push_table(&mut out, s.table(0), s.size());
    out.push('\n');
    push_table(&mut out, s.table(1), s.size());
    out
}

pub fn print_hom<A: Algebra>(source_name: &str, target_name: &str, f: &Morphism<A>) -> String {
    let images: Vec<String> = f.map().iter().map(|v| v.to_string()).collect();
    format!("hom {source_name} {target_name}\n{}\n", images.join(" "))
}
