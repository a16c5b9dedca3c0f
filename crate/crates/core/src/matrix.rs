//! Dense square matrices of exact rationals.
//!
//! Entry access is 0-based `(i, j)`. Connected minors use the 1-based
//! `A_r(k, l)` addressing, where `(k, l)` is the upper-left corner.
//!
//! Two text encodings are supported:
//!
//! * plain: one row per line, entries separated by single spaces, each a
//!   decimal integer or `p/q`. Blank lines and `#` comments are ignored.
//! * structured: a JSON object `{"order": r, "rows": [[...], ...]}` whose
//!   entries are strings in the plain entry syntax (JSON integers are also
//!   accepted on input).

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::arith::{format_rat, parse_rat, rat_bit_length, ApInt, ApRat};
use crate::error::MatrixError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    order: usize,
    entries: Vec<ApRat>,
}

impl ExactMatrix {
    pub fn from_rows(rows: Vec<Vec<ApRat>>) -> Result<Self, MatrixError> {
        let order = rows.len();
        if order == 0 {
            return Err(MatrixError::Empty);
        }
        let mut entries = Vec::with_capacity(order * order);
        for (row, values) in rows.into_iter().enumerate() {
            if values.len() != order {
                return Err(MatrixError::NotSquare { row: row + 1, len: values.len(), expected: order });
            }
            entries.extend(values);
        }
        Ok(Self { order, entries })
    }

    pub fn from_integers<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, MatrixError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&v| ApRat::from_integer(ApInt::from(v))).collect())
                .collect(),
        )
    }

    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> ApRat) -> Self {
        assert!(order >= 1, "matrix order must be positive");
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i, j));
            }
        }
        Self { order, entries }
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |i, j| if i == j { ApRat::one() } else { ApRat::zero() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &ApRat {
        &self.entries[i * self.order + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ApRat]> {
        self.entries.chunks(self.order)
    }

    /// The `r × r` contiguous block whose upper-left entry is the 1-based
    /// position `(k, l)`.
    pub fn connected_minor(&self, r: usize, k: usize, l: usize) -> Result<Self, MatrixError> {
        if r == 0 || k == 0 || l == 0 || k + r - 1 > self.order || l + r - 1 > self.order {
            return Err(MatrixError::MinorOutOfRange { order: r, row: k, col: l, size: self.order });
        }
        Ok(Self::from_fn(r, |i, j| self.get(k - 1 + i, l - 1 + j).clone()))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, |i, j| self.get(j, i).clone())
    }

    /// Copy with row `row` (0-based) multiplied by `c`.
    pub fn scale_row(&self, row: usize, c: &ApRat) -> Self {
        Self::from_fn(self.order, |i, j| if i == row { self.get(i, j) * c } else { self.get(i, j).clone() })
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.is_integer())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn max_entry_bits(&self) -> u64 {
        self.entries.iter().map(rat_bit_length).max().unwrap_or(0)
    }

    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(format_rat).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_plain(text: &str) -> Result<Self, MatrixError> {
        let mut rows = Vec::new();
        // (source line, row) so errors can point back to the file.
        let mut lines = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let mut row = Vec::new();
            let mut offset = 0;
            for token in content.split(' ') {
                let column = offset + 1;
                offset += token.len() + 1;
                if token.is_empty() {
                    continue;
                }
                let token = token.trim_end_matches('\r');
                let value = parse_rat(token).ok_or_else(|| MatrixError::Parse {
                    line: line_no,
                    column,
                    message: format!("invalid entry {token:?}"),
                })?;
                row.push(value);
            }
            lines.push(line_no);
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(MatrixError::Parse { line: 1, column: 1, message: "no matrix rows".into() });
        }
        let order = rows.len();
        for (row, line) in rows.iter().zip(&lines) {
            if row.len() != order {
                return Err(MatrixError::Parse {
                    line: *line,
                    column: 1,
                    message: format!("row has {} entries, expected {order}", row.len()),
                });
            }
        }
        Self::from_rows(rows)
    }

    pub fn to_structured(&self) -> String {
        let doc = StructuredMatrix {
            order: self.order,
            rows: self.rows().map(|r| r.iter().map(format_rat).collect()).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }

    pub fn parse_structured(text: &str) -> Result<Self, MatrixError> {
        let json_err = |e: serde_json::Error| MatrixError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        };
        let err = |m: String| MatrixError::Parse { line: 1, column: 1, message: m };
        let value: Value = serde_json::from_str(text).map_err(json_err)?;
        let order =
            value.get("order").and_then(Value::as_u64).ok_or_else(|| err("missing integer field \"order\"".into()))?
                as usize;
        let rows = value.get("rows").and_then(Value::as_array).ok_or_else(|| err("missing array field \"rows\"".into()))?;
        if rows.len() != order {
            return Err(err(format!("\"order\" is {order} but {} rows given", rows.len())));
        }
        let mut parsed = Vec::with_capacity(order);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| err(format!("row {} is not an array", i + 1)))?;
            if row.len() != order {
                return Err(err(format!("row {} has {} entries, expected {order}", i + 1, row.len())));
            }
            let mut values = Vec::with_capacity(order);
            for (j, cell) in row.iter().enumerate() {
                let value = match cell {
                    Value::String(s) => parse_rat(s),
                    Value::Number(n) if n.is_i64() || n.is_u64() => parse_rat(&n.to_string()),
                    _ => None,
                }
                .ok_or_else(|| err(format!("entry ({},{}) is not an exact number: {cell}", i + 1, j + 1)))?;
                values.push(value);
            }
            parsed.push(values);
        }
        Self::from_rows(parsed)
    }

    /// Structured if the first non-blank character is `{`, plain otherwise.
    pub fn parse_auto(text: &str) -> Result<Self, MatrixError> {
        if text.trim_start().starts_with('{') {
            Self::parse_structured(text)
        } else {
            Self::parse_plain(text)
        }
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_plain())
    }
}

#[derive(Serialize, Deserialize)]
struct StructuredMatrix {
    order: usize,
    rows: Vec<Vec<String>>,
}
