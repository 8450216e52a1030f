//! Text formats: alist (1-indexed, unpadded), dense 0/1 text and CSV edge lists.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matrix::ParityCheckMatrix;

fn join<I: IntoIterator<Item = usize>>(it: I) -> String {
    let mut s = String::new();
    for (k, v) in it.into_iter().enumerate() {
        if k > 0 {
            s.push(' ');
        }
        write!(s, "{v}").unwrap();
    }
    s
}

/// Serializes `h` in alist format.
pub fn write_alist(h: &ParityCheckMatrix) -> String {
    let cd = h.col_degrees();
    let rd = h.row_degrees();
    let mut out = String::new();
    writeln!(out, "{} {}", h.n(), h.m()).unwrap();
    writeln!(
        out,
        "{} {}",
        cd.iter().max().copied().unwrap_or(0),
        rd.iter().max().copied().unwrap_or(0)
    )
    .unwrap();
    writeln!(out, "{}", join(cd)).unwrap();
    writeln!(out, "{}", join(rd)).unwrap();
    for col in h.columns() {
        writeln!(out, "{}", join(col.iter().map(|r| r + 1))).unwrap();
    }
    for row in h.rows() {
        writeln!(out, "{}", join(row.iter().map(|c| c + 1))).unwrap();
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next_numbers(&mut self, what: &str) -> Result<(usize, Vec<usize>)> {
        let Some((idx, line)) = self.inner.next() else {
            return Err(Error::Parse {
                line: usize::MAX,
                msg: format!("unexpected end of file, expected {what}"),
            });
        };
        let line_no = idx + 1;
        let nums = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    msg: format!("invalid integer {tok:?} in {what}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((line_no, nums))
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses alist text. Row lists are checked against the column lists.
pub fn read_alist(text: &str) -> Result<ParityCheckMatrix> {
    let total_lines = text.lines().count();
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let fix_eof = |e: Error| match e {
        Error::Parse { line, msg } if line == usize::MAX => parse_err(total_lines + 1, msg),
        other => other,
    };
    let mut next = |what: &str| lines.next_numbers(what).map_err(fix_eof);

    let (ln, dims) = next("dimensions")?;
    let [n, m] = dims[..] else {
        return Err(parse_err(ln, "expected \"n m\""));
    };
    if n == 0 || m == 0 {
        return Err(parse_err(ln, "dimensions must be positive"));
    }
    let (ln, maxes) = next("maximum degrees")?;
    if maxes.len() != 2 {
        return Err(parse_err(ln, "expected \"max_col_deg max_row_deg\""));
    }
    let (ln, col_deg) = next("column degrees")?;
    if col_deg.len() != n {
        return Err(parse_err(ln, format!("expected {n} column degrees")));
    }
    if col_deg.iter().max().copied().unwrap_or(0) != maxes[0] {
        return Err(parse_err(ln, "column degrees disagree with maximum"));
    }
    let (ln, row_deg) = next("row degrees")?;
    if row_deg.len() != m {
        return Err(parse_err(ln, format!("expected {m} row degrees")));
    }
    if row_deg.iter().max().copied().unwrap_or(0) != maxes[1] {
        return Err(parse_err(ln, "row degrees disagree with maximum"));
    }

    let mut cols = Vec::with_capacity(n);
    for (j, &deg) in col_deg.iter().enumerate() {
        let (ln, list) = next("column list")?;
        if list.len() != deg {
            return Err(parse_err(
                ln,
                format!(
                    "column {} has {} entries, expected {deg}",
                    j + 1,
                    list.len()
                ),
            ));
        }
        let mut col = Vec::with_capacity(deg);
        for v in list {
            if v == 0 || v > m {
                return Err(parse_err(ln, format!("row index {v} out of range 1..={m}")));
            }
            col.push(v - 1);
        }
        if col.windows(2).any(|w| w[0] >= w[1]) {
            let mut sorted = col.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != col.len() {
                return Err(parse_err(ln, "duplicate edge"));
            }
        }
        cols.push(col);
    }
    let h = ParityCheckMatrix::from_columns(m, cols)?;

    for (i, &deg) in row_deg.iter().enumerate() {
        let (ln, list) = next("row list")?;
        if list.len() != deg {
            return Err(parse_err(
                ln,
                format!("row {} has {} entries, expected {deg}", i + 1, list.len()),
            ));
        }
        let mut row: Vec<usize> = list
            .into_iter()
            .map(|v| {
                if v == 0 || v > n {
                    Err(parse_err(
                        ln,
                        format!("column index {v} out of range 1..={n}"),
                    ))
                } else {
                    Ok(v - 1)
                }
            })
            .collect::<Result<_>>()?;
        row.sort_unstable();
        if row != h.row(i) {
            return Err(parse_err(
                ln,
                format!("row {} inconsistent with column lists", i + 1),
            ));
        }
    }
    Ok(h)
}

/// `m` lines of `n` characters from `{0, 1}`.
pub fn write_dense(h: &ParityCheckMatrix) -> String {
    let mut out = String::with_capacity(h.m() * (h.n() + 1));
    for r in 0..h.m() {
        let mut line = vec![b'0'; h.n()];
        for &c in h.row(r) {
            line[c] = b'1';
        }
        out.push_str(std::str::from_utf8(&line).unwrap());
        out.push('\n');
    }
    out
}

pub fn read_dense(text: &str) -> Result<ParityCheckMatrix> {
    let mut edges = Vec::new();
    let mut n = None;
    let mut m = 0;
    for (idx, line) in text.lines().enumerate() {
        if line.is_empty() {
            continue;
        }
        match n {
            None => n = Some(line.len()),
            Some(w) if w != line.len() => {
                return Err(parse_err(idx + 1, format!("expected {w} characters")))
            }
            _ => {}
        }
        for (c, ch) in line.chars().enumerate() {
            match ch {
                '1' => edges.push((m, c)),
                '0' => {}
                _ => return Err(parse_err(idx + 1, format!("unexpected character {ch:?}"))),
            }
        }
        m += 1;
    }
    ParityCheckMatrix::from_edges(m, n.unwrap_or(0), &edges)
}

/// CSV with header `row,col` and one 0-based edge per line, row-major.
pub fn write_csv_edges(h: &ParityCheckMatrix) -> String {
    let mut out = String::from("row,col\n");
    for (r, row) in h.rows().iter().enumerate() {
        for &c in row {
            writeln!(out, "{r},{c}").unwrap();
        }
    }
    out
}
