use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Column names in first-seen order across all rows.
fn columns(rows: &[Value]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for row in rows {
        if let Value::Object(map) = row {
            for k in map.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
    }
    cols
}

fn row_cells(row: &Value, cols: &[String]) -> Vec<String> {
    cols.iter()
        .map(|c| row.get(c).map(cell).unwrap_or_default())
        .collect()
}

pub fn render(rows: &[Value], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            for row in rows {
                out.push_str(&row.to_string());
                out.push('\n');
            }
        }
        Format::Csv => {
            let cols = columns(rows);
            out.push_str(&cols.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
            out.push('\n');
            for row in rows {
                let cells = row_cells(row, &cols);
                out.push_str(&cells.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
                out.push('\n');
            }
        }
        Format::Table => {
            let cols = columns(rows);
            let body: Vec<Vec<String>> = rows.iter().map(|r| row_cells(r, &cols)).collect();
            let widths: Vec<usize> = cols
                .iter()
                .enumerate()
                .map(|(i, c)| body.iter().map(|r| r[i].chars().count()).fold(c.len(), usize::max))
                .collect();
            let line = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
                    .trim_end()
                    .to_string()
            };
            out.push_str(&line(&cols));
            out.push('\n');
            for r in &body {
                out.push_str(&line(r));
                out.push('\n');
            }
        }
    }
    out
}
