//! `.stn` grid files and the labeled JSON document format.
//!
//! Grid format:
//!
//! ```text
//! stencil 2 3
//! *0*
//! 0**
//! ```
//!
//! JSON format (indices 1-based, labels optional):
//!
//! ```json
//! {"rows":2,"cols":3,"row_labels":[[1],[2]],"col_labels":[[1],[2],[3]],"stars":[[1,1],[1,3],[2,2],[2,3]]}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::ParseError;
use crate::stencil::{default_labels, Label, Stencil};

#[derive(Debug, Serialize, Deserialize)]
struct StencilDoc {
    rows: usize,
    cols: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    row_labels: Option<Vec<Label>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    col_labels: Option<Vec<Label>>,
    stars: Vec<[usize; 2]>,
}

/// Parses either format; a document whose first non-blank character is `{` is read as JSON.
pub fn parse_stencil(text: &str) -> Result<Stencil, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_grid(text)
    }
}

pub fn parse_grid(text: &str) -> Result<Stencil, ParseError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .ok_or_else(|| ParseError::MalformedHeader(String::new()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (m, n) = match fields.as_slice() {
        ["stencil", m, n] => match (m.parse::<usize>(), n.parse::<usize>()) {
            (Ok(m), Ok(n)) => (m, n),
            _ => return Err(ParseError::MalformedHeader(header.to_string())),
        },
        _ => return Err(ParseError::MalformedHeader(header.to_string())),
    };

    let mut rows = Vec::with_capacity(m);
    for r in 0..m {
        let Some((lineno, line)) = lines.next() else {
            return Err(ParseError::MissingRows {
                expected: m,
                found: r,
            });
        };
        let line = line.strip_suffix('\r').unwrap_or(line);
        let mut row = Vec::with_capacity(n);
        for (column, ch) in line.chars().enumerate() {
            match ch {
                '*' => row.push(true),
                '0' => row.push(false),
                _ => {
                    return Err(ParseError::IllegalCharacter {
                        line: lineno + 1,
                        column: column + 1,
                        ch,
                    })
                }
            }
        }
        if row.len() != n {
            return Err(ParseError::RaggedRow {
                line: lineno + 1,
                expected: n,
                found: row.len(),
            });
        }
        rows.push(row);
    }
    if let Some((lineno, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(ParseError::TrailingData(lineno + 1));
    }
    Ok(Stencil::from_fn(m, n, |i, j| rows[i][j]))
}

pub fn parse_json(text: &str) -> Result<Stencil, ParseError> {
    let doc: StencilDoc = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    let mut s = Stencil::zeros(doc.rows, doc.cols);
    for [i, j] in doc.stars {
        if i == 0 || j == 0 || i > doc.rows || j > doc.cols {
            return Err(ParseError::StarOutOfRange(i, j));
        }
        s = s.with_entry(i - 1, j - 1, true);
    }
    let rl = doc.row_labels.unwrap_or_else(|| default_labels(doc.rows));
    let cl = doc.col_labels.unwrap_or_else(|| default_labels(doc.cols));
    Ok(s.with_labels(rl, cl)?)
}

/// Canonical grid text. Labels are not representable and are dropped.
pub fn to_grid(s: &Stencil) -> String {
    let mut out = format!("stencil {} {}\n", s.nrows(), s.ncols());
    for i in 0..s.nrows() {
        out.extend((0..s.ncols()).map(|j| if s.get(i, j) { '*' } else { '0' }));
        out.push('\n');
    }
    out
}

/// Canonical JSON text with explicit labels and row-major star list.
pub fn to_json(s: &Stencil) -> String {
    let stars = (0..s.nrows())
        .flat_map(|i| s.row(i).iter().map(move |j| [i + 1, j + 1]))
        .collect();
    let doc = StencilDoc {
        rows: s.nrows(),
        cols: s.ncols(),
        row_labels: Some(s.row_labels().to_vec()),
        col_labels: Some(s.col_labels().to_vec()),
        stars,
    };
    serde_json::to_string(&doc).expect("stencil document serializes")
}
