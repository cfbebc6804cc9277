//! Line-oriented text formats for games, witnesses and linear systems.
//!
//! Everything after `#` on a line is a comment; blank lines are ignored and
//! CRLF input is accepted. Values are exact rationals written `p` or `p/q`.
//! Output is canonical (reduced rationals, single spaces, LF endings), so
//! serializing a parsed document reproduces canonical input byte for byte.
//!
//! ```text
//! degen-game 1            degen-witness 1         degen-lp 1
//! rows 2 cols 2           side row                rows 2 cols 2
//! rowlabels u d           dim 2                   A
//! collabels l r           0 1                     1 2
//! A                                               0 1
//! 1 2                                             b
//! 0 1                                             2 1
//! B
//! 1 0
//! 0 1
//! ```
//!
//! The label lines are optional. A witness with `side row` is a column-player
//! mixture (dimension = columns) against which the row player responds;
//! `side col` is a row-player mixture.

use std::fmt::Write as _;

use crate::degeneracy::Side;
use crate::error::{Error, Result};
use crate::game::{BimatrixGame, MixedStrategy};
use crate::lpcheck::LinearSystem;
use crate::matrix::RationalMatrix;
use crate::rational::Rational;

pub const GAME_MAGIC: &str = "degen-game 1";
pub const WITNESS_MAGIC: &str = "degen-witness 1";
pub const LP_MAGIC: &str = "degen-lp 1";

struct Lines<'a> {
    lines: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines: Vec<(usize, Vec<&str>)> = text
            .lines()
            .enumerate()
            .filter_map(|(i, raw)| {
                let content = raw.split('#').next().unwrap_or("");
                let tokens: Vec<&str> = content.split_whitespace().collect();
                (!tokens.is_empty()).then_some((i + 1, tokens))
            })
            .collect();
        let last_line = text.lines().count().max(1);
        Lines {
            lines,
            pos: 0,
            last_line,
        }
    }

    fn peek(&self) -> Option<&(usize, Vec<&'a str>)> {
        self.lines.get(self.pos)
    }

    fn next(&mut self, expected: &str) -> Result<(usize, Vec<&'a str>)> {
        let item = self
            .lines
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::parse(self.last_line, format!("unexpected end of input, expected {expected}")))?;
        self.pos += 1;
        Ok(item)
    }

    fn expect_exact(&mut self, literal: &str) -> Result<()> {
        let (line, tokens) = self.next(&format!("`{literal}`"))?;
        if tokens.join(" ") != literal {
            return Err(Error::parse(line, format!("expected `{literal}`, found `{}`", tokens.join(" "))));
        }
        Ok(())
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some((line, tokens)) => Err(Error::parse(*line, format!("trailing content `{}`", tokens.join(" ")))),
        }
    }

    /// `rows M cols N`
    fn dims(&mut self) -> Result<(usize, usize)> {
        let (line, tokens) = self.next("`rows M cols N`")?;
        let ["rows", m, "cols", n] = tokens.as_slice() else {
            return Err(Error::parse(line, "expected `rows M cols N`"));
        };
        let m = parse_count(line, m)?;
        let n = parse_count(line, n)?;
        Ok((m, n))
    }

    fn values(&mut self, count: usize, what: &str) -> Result<Vec<Rational>> {
        let (line, tokens) = self.next(what)?;
        if tokens.len() != count {
            return Err(Error::parse(line, format!("{what}: expected {count} values, found {}", tokens.len())));
        }
        tokens.iter().map(|t| parse_value(line, t)).collect()
    }

    fn matrix(&mut self, name: &str, rows: usize, cols: usize) -> Result<RationalMatrix> {
        self.expect_exact(name)?;
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            entries.extend(self.values(cols, &format!("row {i} of {name}"))?);
        }
        RationalMatrix::new(rows, cols, entries)
    }
}

fn parse_count(line: usize, tok: &str) -> Result<usize> {
    match tok.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(Error::parse(line, format!("expected a positive count, found {tok:?}"))),
    }
}

fn parse_value(line: usize, tok: &str) -> Result<Rational> {
    tok.parse::<Rational>()
        .map_err(|e| Error::parse(line, e.to_string()))
}

fn write_row(out: &mut String, values: &[Rational]) {
    for (j, v) in values.iter().enumerate() {
        if j > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
    }
    out.push('\n');
}

pub fn parse_game(text: &str) -> Result<BimatrixGame> {
    let mut lines = Lines::new(text);
    lines.expect_exact(GAME_MAGIC)?;
    let (m, n) = lines.dims()?;
    let (mut row_labels, mut col_labels) = (None, None);
    while let Some((line, tokens)) = lines.peek().cloned() {
        let slot = match tokens[0] {
            "rowlabels" => &mut row_labels,
            "collabels" => &mut col_labels,
            _ => break,
        };
        if slot.is_some() {
            return Err(Error::parse(line, format!("duplicate `{}` line", tokens[0])));
        }
        *slot = Some(tokens[1..].iter().map(|s| s.to_string()).collect::<Vec<_>>());
        lines.pos += 1;
    }
    let a = lines.matrix("A", m, n)?;
    let b = lines.matrix("B", m, n)?;
    lines.finish()?;
    BimatrixGame::new(a, b)?.with_labels(row_labels, col_labels)
}

pub fn serialize_game(g: &BimatrixGame) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{GAME_MAGIC}");
    let _ = writeln!(out, "rows {} cols {}", g.rows(), g.cols());
    if let Some(labels) = g.row_labels() {
        let _ = writeln!(out, "rowlabels {}", labels.join(" "));
    }
    if let Some(labels) = g.col_labels() {
        let _ = writeln!(out, "collabels {}", labels.join(" "));
    }
    for (name, m) in [("A", g.a()), ("B", g.b())] {
        out.push_str(name);
        out.push('\n');
        for row in m.iter_rows() {
            write_row(&mut out, row);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessDocument {
    pub side: Side,
    pub strategy: MixedStrategy,
}

pub fn parse_witness(text: &str) -> Result<WitnessDocument> {
    let mut lines = Lines::new(text);
    lines.expect_exact(WITNESS_MAGIC)?;
    let (line, tokens) = lines.next("`side row|col`")?;
    let side = match tokens.as_slice() {
        ["side", "row"] => Side::Row,
        ["side", "col"] => Side::Column,
        _ => return Err(Error::parse(line, "expected `side row` or `side col`")),
    };
    let (line, tokens) = lines.next("`dim N`")?;
    let ["dim", n] = tokens.as_slice() else {
        return Err(Error::parse(line, "expected `dim N`"));
    };
    let n = parse_count(line, n)?;
    let values_line = lines.peek().map_or(0, |(l, _)| *l);
    let probs = lines.values(n, "probabilities")?;
    lines.finish()?;
    let strategy = MixedStrategy::new(probs).map_err(|e| Error::parse(values_line, e.to_string()))?;
    Ok(WitnessDocument { side, strategy })
}

pub fn serialize_witness(w: &WitnessDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{WITNESS_MAGIC}");
    let _ = writeln!(out, "side {}", w.side.as_str());
    let _ = writeln!(out, "dim {}", w.strategy.dim());
    write_row(&mut out, w.strategy.probs());
    out
}

pub fn parse_lpsystem(text: &str) -> Result<LinearSystem> {
    let mut lines = Lines::new(text);
    lines.expect_exact(LP_MAGIC)?;
    let (m, n) = lines.dims()?;
    let a = lines.matrix("A", m, n)?;
    lines.expect_exact("b")?;
    let b = lines.values(m, "b")?;
    lines.finish()?;
    LinearSystem::new(a, b)
}

pub fn serialize_lpsystem(s: &LinearSystem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{LP_MAGIC}");
    let _ = writeln!(out, "rows {} cols {}", s.a().rows(), s.a().cols());
    out.push_str("A\n");
    for row in s.a().iter_rows() {
        write_row(&mut out, row);
    }
    out.push_str("b\n");
    write_row(&mut out, s.b());
    out
}
