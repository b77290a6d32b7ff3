//! Text formats: biquandle matrices, module and switch descriptions, and
//! Gauss code fixture files.
//!
//! All formats share the same lexical rules: blank lines and lines whose
//! first non-blank character is `#` are ignored, tokens are separated by
//! whitespace, and errors carry 1-based line and column numbers.

use std::fmt::{self, Write as _};

use biquandle_core::{
    BiquandleTable, FiniteModule, GaussCode, KnotError, Mat, ModuleElement, ModuleError, Op,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected end of input, expected {0}")]
    UnexpectedEnd(&'static str),
    #[error("{token:?} is not a non-negative integer")]
    NotInteger { token: String },
    #[error("entry {value} is outside 1..={n}")]
    EntryOutOfRange { value: u64, n: usize },
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("expected {expected} entries on this line, found {found}")]
    RowLength { expected: usize, found: usize },
    #[error("unexpected content after the last row")]
    TrailingData,
    #[error("{0}")]
    Module(ModuleError),
    #[error("{0}")]
    Gauss(KnotError),
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

/// Significant lines of `text`, split into tokens with their columns.
fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| {
            let mut tokens = Vec::new();
            let mut start = None;
            for (pos, ch) in l.char_indices().chain(std::iter::once((l.len(), ' '))) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(pos),
                    (true, Some(s)) => {
                        tokens.push(Token { text: &l[s..pos], column: l[..s].chars().count() + 1 });
                        start = None;
                    }
                    _ => {}
                }
            }
            Line { number: i + 1, tokens }
        })
        .collect()
}

struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    next: usize,
    /// Line number just past the input, for end-of-input errors.
    end_line: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { lines: lines(text), next: 0, end_line: text.lines().count() + 1 }
    }

    fn error_at_end(&self, what: &'static str) -> ParseError {
        ParseError { line: self.end_line, column: 1, kind: ParseErrorKind::UnexpectedEnd(what) }
    }

    /// The next significant line, which must hold exactly `len` integers.
    fn row(&mut self, len: usize, what: &'static str) -> Result<(usize, Vec<(u64, usize)>), ParseError> {
        let Some(line) = self.lines.get(self.next) else {
            return Err(self.error_at_end(what));
        };
        self.next += 1;
        let mut out = Vec::with_capacity(len);
        for tok in &line.tokens {
            let value = tok.text.parse::<u64>().map_err(|_| ParseError {
                line: line.number,
                column: tok.column,
                kind: ParseErrorKind::NotInteger { token: tok.text.to_string() },
            })?;
            out.push((value, tok.column));
        }
        if out.len() != len {
            let column = line.tokens.get(len).map_or(1, |t| t.column);
            return Err(ParseError {
                line: line.number,
                column,
                kind: ParseErrorKind::RowLength { expected: len, found: out.len() },
            });
        }
        Ok((line.number, out))
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.lines.get(self.next) {
            Some(line) => Err(ParseError {
                line: line.number,
                column: line.tokens[0].column,
                kind: ParseErrorKind::TrailingData,
            }),
            None => Ok(()),
        }
    }
}

/// Parses the matrix format: the order `n` on the first line, then `2n`
/// rows of `2n` entries in `1..=n` laid out as `[a^b a_b; a^b̄ a_b̄]`.
pub fn parse_matrix(text: &str) -> Result<BiquandleTable, ParseError> {
    let mut cur = Cursor::new(text);
    let (line, header) = cur.row(1, "the order n")?;
    let n = header[0].0 as usize;
    if n == 0 {
        return Err(ParseError { line, column: header[0].1, kind: ParseErrorKind::ZeroOrder });
    }
    let mut grid = vec![0usize; 4 * n * n];
    for r in 0..2 * n {
        let (line, row) = cur.row(2 * n, "a matrix row")?;
        for (c, &(value, column)) in row.iter().enumerate() {
            if value == 0 || value > n as u64 {
                return Err(ParseError { line, column, kind: ParseErrorKind::EntryOutOfRange { value, n } });
            }
            grid[r * 2 * n + c] = value as usize - 1;
        }
    }
    cur.finish()?;
    let table = BiquandleTable::from_fn(n, |op, a, b| {
        let (r, c) = match op {
            Op::Up => (a, b),
            Op::Down => (a, n + b),
            Op::UpBar => (n + a, b),
            Op::DownBar => (n + a, n + b),
        };
        grid[r * 2 * n + c]
    })
    .expect("entries were range-checked");
    Ok(table)
}

/// The matrix rows of `table`, 1-based.
pub fn matrix_rows(table: &BiquandleTable) -> Vec<Vec<usize>> {
    let n = table.order();
    let mut rows = Vec::with_capacity(2 * n);
    for (left, right) in [(Op::Up, Op::Down), (Op::UpBar, Op::DownBar)] {
        for a in 0..n {
            rows.push(table.row(left, a).iter().chain(table.row(right, a)).map(|&v| v as usize + 1).collect());
        }
    }
    rows
}

pub fn serialize_matrix(table: &BiquandleTable) -> String {
    let mut out = format!("{}\n", table.order());
    for row in matrix_rows(table) {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}

fn module_error(line: usize, e: ModuleError) -> ParseError {
    ParseError { line, column: 1, kind: ParseErrorKind::Module(e) }
}

fn matrix_rows_of(cur: &mut Cursor<'_>, k: usize, what: &'static str) -> Result<Vec<Vec<i64>>, ParseError> {
    (0..k).map(|_| cur.row(k, what).map(|(_, r)| r.iter().map(|&(v, _)| v as i64).collect())).collect()
}

fn module_header(cur: &mut Cursor<'_>) -> Result<(usize, u32, usize), ParseError> {
    let (line, h) = cur.row(2, "the header `m k`")?;
    let m = u32::try_from(h[0].0).map_err(|_| module_error(line, ModuleError::TooLarge))?;
    let k = h[1].0 as usize;
    if m < 2 {
        return Err(module_error(line, ModuleError::BadModulus(m)));
    }
    if k == 0 {
        return Err(module_error(line, ModuleError::BadRank));
    }
    Ok((line, m, k))
}

/// Parses a module description: `m k`, then `k` rows of `S`, then `k` rows
/// of `T`, all over `Z_m`.
pub fn parse_module(text: &str) -> Result<FiniteModule, ParseError> {
    let mut cur = Cursor::new(text);
    let (line, m, k) = module_header(&mut cur)?;
    let s = matrix_rows_of(&mut cur, k, "a row of S")?;
    let t = matrix_rows_of(&mut cur, k, "a row of T")?;
    cur.finish()?;
    let to_mat = |rows: &[Vec<i64>]| Mat::from_rows(m, rows).ok_or(ModuleError::ShapeMismatch);
    let built = to_mat(&s).and_then(|s| Ok((s, to_mat(&t)?))).and_then(|(s, t)| FiniteModule::new(m, k, s, t));
    built.map_err(|e| module_error(line, e))
}

/// Parameters of a switch biquandle `x^y = Cx + Dy + c`, `x_y = Ay + Bx + c`.
#[derive(Debug, Clone)]
pub struct SwitchSpec {
    pub modulus: u32,
    pub rank: usize,
    pub a: Mat,
    pub b: Mat,
    pub shift: ModuleElement,
}

/// Parses `m k`, `k` rows of `A`, `k` rows of `B`, and the shift vector.
pub fn parse_switch(text: &str) -> Result<SwitchSpec, ParseError> {
    let mut cur = Cursor::new(text);
    let (line, m, k) = module_header(&mut cur)?;
    let a = matrix_rows_of(&mut cur, k, "a row of A")?;
    let b = matrix_rows_of(&mut cur, k, "a row of B")?;
    let (_, c) = cur.row(k, "the shift vector")?;
    cur.finish()?;
    let mat = |rows: &[Vec<i64>]| Mat::from_rows(m, rows).ok_or(module_error(line, ModuleError::ShapeMismatch));
    Ok(SwitchSpec {
        modulus: m,
        rank: k,
        a: mat(&a)?,
        b: mat(&b)?,
        shift: ModuleElement { coords: c.iter().map(|&(v, _)| (v % m as u64) as u32).collect() },
    })
}

/// One code of a fixture file with the line it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussEntry {
    pub line: usize,
    pub code: GaussCode,
}

/// Parses a fixture file holding one Gauss code per significant line.
pub fn parse_gauss_file(text: &str) -> Result<Vec<GaussEntry>, ParseError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| {
            let code = l.parse::<GaussCode>().map_err(|e| ParseError {
                line: i + 1,
                column: 1,
                kind: ParseErrorKind::Gauss(e),
            })?;
            Ok(GaussEntry { line: i + 1, code })
        })
        .collect()
}

/// `{a, b, c}` with elements printed by `show`.
pub fn set_string<T>(items: &[T], show: impl Fn(&T) -> String) -> String {
    let parts: Vec<String> = items.iter().map(show).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Renders a module briefly, e.g. `Z_8 (s = 3, t = 5)`.
pub struct ModuleName<'a>(pub &'a FiniteModule);

impl fmt::Display for ModuleName<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.0;
        if m.rank() == 1 {
            return write!(f, "Z_{} (s = {}, t = {})", m.modulus(), m.s_matrix().get(0, 0), m.t_matrix().get(0, 0));
        }
        write!(f, "Z_{}^{} (S = {:?}, T = {:?})", m.modulus(), m.rank(), m.s_matrix().rows(), m.t_matrix().rows())
    }
}
