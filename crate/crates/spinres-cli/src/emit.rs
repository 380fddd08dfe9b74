//! Output tables and the CSV/JSON/SVG writers.
//!
//! CSV and JSON are the contractual formats: metadata lines prefixed with
//! `#` before the header, then one row per grid point, byte-identical across
//! runs. SVG is a convenience line/scatter rendering.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde_json::{json, Map, Value as Json};

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    F(f64),
    I(i64),
    S(String),
    /// Missing/not-applicable cell.
    Empty,
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::F(x) => write!(f, "{x}"),
            Value::I(k) => write!(f, "{k}"),
            Value::S(s) => write!(f, "{s}"),
            Value::Empty => Ok(()),
        }
    }
}

impl Value {
    fn to_json(&self) -> Json {
        match self {
            Value::F(x) if x.is_finite() => json!(x),
            Value::F(_) | Value::Empty => Json::Null,
            Value::I(k) => json!(k),
            Value::S(s) => json!(s),
        }
    }

    pub fn opt_f(v: Option<f64>) -> Value {
        match v {
            Some(x) => Value::F(x),
            None => Value::Empty,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    /// `# key = value` metadata lines (parameters, version).
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            meta: Vec::new(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl fmt::Display) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv(&self, w: &mut dyn Write) -> io::Result<()> {
        writeln!(w, "# spinres-table 1")?;
        for (k, v) in &self.meta {
            writeln!(w, "# {k} = {v}")?;
        }
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(csv_cell).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn write_json(&self, w: &mut dyn Write) -> io::Result<()> {
        let mut meta = Map::new();
        for (k, v) in &self.meta {
            meta.insert(k.clone(), json!(v));
        }
        let rows: Vec<Json> = self
            .rows
            .iter()
            .map(|r| Json::Array(r.iter().map(Value::to_json).collect()))
            .collect();
        let doc = json!({
            "schema": "spinres/1",
            "meta": Json::Object(meta),
            "columns": self.columns,
            "rows": rows,
        });
        writeln!(w, "{}", serde_json::to_string_pretty(&doc)?)
    }

    /// Line plot of `y_cols` against `x_col`.
    pub fn write_svg(&self, w: &mut dyn Write, x_col: &str, y_cols: &[&str]) -> io::Result<()> {
        let xi = self.col_index(x_col);
        let series: Vec<(String, Vec<(f64, f64)>)> = y_cols
            .iter()
            .map(|name| {
                let yi = self.col_index(name);
                let pts = self
                    .rows
                    .iter()
                    .filter_map(|r| match (xi.map(|i| &r[i]), yi.map(|i| &r[i])) {
                        (Some(Value::F(x)), Some(Value::F(y)))
                            if x.is_finite() && y.is_finite() =>
                        {
                            Some((*x, *y))
                        }
                        _ => None,
                    })
                    .collect();
                (name.to_string(), pts)
            })
            .collect();
        render_svg(w, x_col, &series)
    }

    fn col_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

fn csv_cell(v: &Value) -> String {
    let s = v.to_string();
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

const SVG_COLORS: [&str; 6] = ["#1f77b4", "#2ca02c", "#d62728", "#9467bd", "#ff7f0e", "#8c564b"];

fn render_svg(
    w: &mut dyn Write,
    x_label: &str,
    series: &[(String, Vec<(f64, f64)>)],
) -> io::Result<()> {
    let (width, height) = (640.0, 440.0);
    let (ml, mr, mt, mb) = (70.0, 20.0, 20.0, 50.0);
    let all: Vec<(f64, f64)> = series.iter().flat_map(|(_, p)| p.iter().cloned()).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for (x, y) in &all {
        x0 = x0.min(*x);
        x1 = x1.max(*x);
        y0 = y0.min(*y);
        y1 = y1.max(*y);
    }
    if all.is_empty() {
        x0 = 0.0;
        x1 = 1.0;
        y0 = 0.0;
        y1 = 1.0;
    }
    if (x1 - x0).abs() < 1e-300 {
        x1 = x0 + 1.0;
    }
    if (y1 - y0).abs() < 1e-300 {
        y1 = y0 + 1.0;
    }
    let sx = |x: f64| ml + (x - x0) / (x1 - x0) * (width - ml - mr);
    let sy = |y: f64| height - mb - (y - y0) / (y1 - y0) * (height - mt - mb);

    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )?;
    writeln!(
        w,
        r#"<rect width="{width}" height="{height}" fill="white"/>"#
    )?;
    // axes
    writeln!(
        w,
        r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black"/>"#,
        ml,
        height - mb,
        width - mr,
        height - mb
    )?;
    writeln!(
        w,
        r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black"/>"#,
        ml,
        mt,
        ml,
        height - mb
    )?;
    for (t, v) in [(x0, "start"), (x1, "end")] {
        let _ = v;
        writeln!(
            w,
            r#"<text x="{:.3}" y="{:.3}" font-size="11" text-anchor="middle">{t:.4}</text>"#,
            sx(t),
            height - mb + 16.0
        )?;
    }
    for t in [y0, y1] {
        writeln!(
            w,
            r#"<text x="{:.3}" y="{:.3}" font-size="11" text-anchor="end">{t:.4}</text>"#,
            ml - 6.0,
            sy(t) + 4.0
        )?;
    }
    writeln!(
        w,
        r#"<text x="{:.3}" y="{:.3}" font-size="12" text-anchor="middle">{x_label}</text>"#,
        0.5 * (ml + width - mr),
        height - 12.0
    )?;

    for (k, (name, pts)) in series.iter().enumerate() {
        let color = SVG_COLORS[k % SVG_COLORS.len()];
        if pts.len() > 1 {
            let path: Vec<String> = pts
                .iter()
                .map(|(x, y)| format!("{:.3},{:.3}", sx(*x), sy(*y)))
                .collect();
            writeln!(
                w,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                path.join(" ")
            )?;
        }
        for (x, y) in pts {
            writeln!(
                w,
                r#"<circle cx="{:.3}" cy="{:.3}" r="2" fill="{color}"/>"#,
                sx(*x),
                sy(*y)
            )?;
        }
        writeln!(
            w,
            r#"<text x="{:.3}" y="{:.3}" font-size="12" fill="{color}">{name}</text>"#,
            width - mr - 150.0,
            mt + 16.0 * (k as f64 + 1.0)
        )?;
    }
    writeln!(w, "</svg>")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            other => Err(format!("unknown format {other:?} (csv|json|svg)")),
        }
    }
}

/// Write the table in the requested format to a file or stdout.
pub fn emit(
    table: &Table,
    format: Format,
    out: Option<&Path>,
    svg_axes: (&str, &[&str]),
) -> Result<(), CliError> {
    let write_to = |w: &mut dyn Write| -> io::Result<()> {
        match format {
            Format::Csv => table.write_csv(w),
            Format::Json => table.write_json(w),
            Format::Svg => table.write_svg(w, svg_axes.0, svg_axes.1),
        }
    };
    match out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            write_to(&mut w).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            w.flush()
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write_to(&mut w).map_err(|e| CliError::Io(e.to_string()))
        }
    }
}
