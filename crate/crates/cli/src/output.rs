use std::fmt::Write as _;

use serde::Serialize;

/// One CSV cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Text(String),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

/// Rectangular result with `# key: value` metadata lines.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub comments: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            comments: Vec::new(),
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn comment(&mut self, key: &str, value: impl ToString) {
        self.comments.push((key.to_owned(), value.to_string()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// 17 significant digits; parses back to the same double.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

pub fn render_csv(table: &Table) -> Result<String, String> {
    if table.rows.is_empty() {
        return Err("empty result, nothing to write".into());
    }
    let mut out = String::new();
    for (k, v) in &table.comments {
        writeln!(out, "# {k}: {}", v.replace('\n', " ")).unwrap();
    }
    writeln!(out, "{}", table.header.iter().map(|h| quote(h)).collect::<Vec<_>>().join(",")).unwrap();
    for row in &table.rows {
        let cells: Vec<String> = row
            .iter()
            .map(|c| match c {
                Cell::Num(x) => format_float(*x),
                Cell::Int(i) => i.to_string(),
                Cell::Text(s) => quote(s),
            })
            .collect();
        writeln!(out, "{}", cells.join(",")).unwrap();
    }
    Ok(out)
}

pub fn render_json<T: Serialize>(value: &T) -> Result<String, String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    s.push('\n');
    Ok(s)
}
