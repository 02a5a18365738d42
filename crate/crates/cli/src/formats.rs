//! Line-oriented text formats. Fields are whitespace separated and `#`
//! starts a comment.
//!
//! - complex: `<id> <dim> <k> <b1> … <bk>`
//! - filtration: `<id> <dim> <value> <k> <b1> … <bk>`, sorted by value, ties
//!   by line order
//! - basis: `<q> <cell ids…>`, one generator per line
//! - cubical grid: `<width> <height>`, then `height` rows of `width` 0/1 digits

use std::fmt::Write as _;

use hdvf_core::persistence::{Filtration, PersistenceError};
use hdvf_core::{CellSpec, Chain, ChainComplex, ComplexError};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Filtration(#[from] PersistenceError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, as (1-based line number, fields).
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let fields: Vec<&str> = line.split_whitespace().collect();
        (!fields.is_empty()).then_some((i + 1, fields))
    })
}

fn number<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T, FormatError> {
    field
        .parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{field}`")))
}

fn faces(line: usize, fields: &[&str]) -> Result<Vec<String>, FormatError> {
    let (count, rest) = fields
        .split_first()
        .ok_or_else(|| syntax(line, "missing face count"))?;
    let count: usize = number(line, count, "face count")?;
    if rest.len() != count {
        return Err(syntax(
            line,
            format!("face count says {count}, found {} faces", rest.len()),
        ));
    }
    Ok(rest.iter().map(|s| s.to_string()).collect())
}

pub fn parse_complex(text: &str) -> Result<ChainComplex, FormatError> {
    let mut specs = Vec::new();
    for (line, fields) in records(text) {
        if fields.len() < 3 {
            return Err(syntax(line, "expected `<id> <dim> <k> <faces…>`"));
        }
        let dim = number(line, fields[1], "dimension")?;
        specs.push(CellSpec {
            id: fields[0].to_string(),
            dim,
            faces: faces(line, &fields[2..])?,
        });
    }
    Ok(ChainComplex::from_boundary_lists(specs)?)
}

pub fn write_complex(k: &ChainComplex) -> String {
    let mut out = String::new();
    for spec in k.to_specs() {
        write!(out, "{} {} {}", spec.id, spec.dim, spec.faces.len()).unwrap();
        for f in &spec.faces {
            write!(out, " {f}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse_filtration(text: &str) -> Result<Filtration, FormatError> {
    let mut rows = Vec::new();
    for (line, fields) in records(text) {
        if fields.len() < 4 {
            return Err(syntax(line, "expected `<id> <dim> <value> <k> <faces…>`"));
        }
        let dim = number(line, fields[1], "dimension")?;
        let value: f64 = number(line, fields[2], "filtration value")?;
        if value.is_nan() {
            return Err(syntax(line, "filtration value is NaN"));
        }
        let spec = CellSpec {
            id: fields[0].to_string(),
            dim,
            faces: faces(line, &fields[3..])?,
        };
        rows.push((value, spec));
    }
    // stable sort keeps line order among equal values
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    let values = rows.iter().map(|r| r.0).collect();
    let complex = ChainComplex::from_boundary_lists(rows.into_iter().map(|r| r.1))?;
    Ok(Filtration::new(complex, Some(values))?)
}

/// Generators as `(q, chain)` in file order. Cells must exist and have
/// dimension `q`; a line with no cells is the zero chain.
pub fn parse_basis(text: &str, k: &ChainComplex) -> Result<Vec<(usize, Chain)>, FormatError> {
    let mut out = Vec::new();
    for (line, fields) in records(text) {
        let q: usize = number(line, fields[0], "dimension")?;
        let mut ids = Vec::new();
        for name in &fields[1..] {
            let id = k
                .id(name)
                .ok_or_else(|| syntax(line, format!("unknown cell `{name}`")))?;
            if k.cell_dim(id) != q {
                return Err(syntax(
                    line,
                    format!("cell `{name}` has dimension {}, not {q}", k.cell_dim(id)),
                ));
            }
            ids.push(id);
        }
        out.push((q, Chain::from_cells(q, ids)));
    }
    Ok(out)
}

pub fn parse_cubical(text: &str) -> Result<Vec<Vec<bool>>, FormatError> {
    let mut lines = records(text);
    let (line, header) = lines
        .next()
        .ok_or_else(|| syntax(1, "missing `<width> <height>` header"))?;
    if header.len() != 2 {
        return Err(syntax(line, "expected `<width> <height>`"));
    }
    let width: usize = number(line, header[0], "width")?;
    let height: usize = number(line, header[1], "height")?;
    let mut grid = Vec::with_capacity(height);
    for (line, fields) in lines {
        let row: String = fields.concat();
        if row.len() != width {
            return Err(syntax(line, format!("row has {} pixels, expected {width}", row.len())));
        }
        let pixels = row
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(syntax(line, format!("pixel `{c}` is not 0 or 1"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        grid.push(pixels);
    }
    if grid.len() != height {
        return Err(syntax(
            text.lines().count().max(1),
            format!("{} rows, expected {height}", grid.len()),
        ));
    }
    Ok(grid)
}
