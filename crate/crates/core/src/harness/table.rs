use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use super::plot::{render_svg, PlotSpec};
use super::HarnessError;

/// Significant digits for CSV floats.
const CSV_SIG_DIGITS: usize = 10;

/// A single CSV cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Text(&'static str),
    Count(u64),
    Real(f64),
    Flag(bool),
}

impl From<&'static str> for Cell {
    fn from(s: &'static str) -> Self {
        Cell::Text(s)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Count(n)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Count(n as u64)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Flag(b)
    }
}

impl Cell {
    pub fn render(&self) -> String {
        match *self {
            Cell::Text(s) => s.to_owned(),
            Cell::Count(n) => n.to_string(),
            Cell::Real(x) => format_sig(x, CSV_SIG_DIGITS),
            Cell::Flag(b) => b.to_string(),
        }
    }
}

/// Plain decimal rendering of `x` rounded to `digits` significant digits,
/// without trailing zeros.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let sci = format!("{:.*e}", digits.saturating_sub(1), x);
    let rounded: f64 = sci.parse().expect("formatted float parses");
    let magnitude = rounded.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let mut s = format!("{rounded:.decimals$}");
    if s.contains('.') {
        s.truncate(s.trim_end_matches('0').trim_end_matches('.').len());
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

pub trait TableRow: Serialize {
    const COLUMNS: &'static [&'static str];
    fn cells(&self) -> Vec<Cell>;
}

pub trait PlotRows: TableRow + Sized {
    fn plot_spec(rows: &[Self], title: &str) -> PlotSpec;
}

macro_rules! table_row {
    (
        $(#[$meta:meta])*
        pub struct $name:ident {
            $($(#[$fmeta:meta])* pub $field:ident : $ty:ty,)*
        }
    ) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, serde::Serialize)]
        pub struct $name {
            $($(#[$fmeta])* pub $field: $ty,)*
        }

        impl $crate::harness::TableRow for $name {
            const COLUMNS: &'static [&'static str] = &[$(stringify!($field)),*];

            fn cells(&self) -> Vec<$crate::harness::Cell> {
                vec![$($crate::harness::Cell::from(self.$field)),*]
            }
        }
    };
}
pub(crate) use table_row;

/// Named rows of one experiment; the name is the output file stem.
#[derive(Debug, Clone, PartialEq)]
pub struct Table<R> {
    pub name: String,
    pub rows: Vec<R>,
}

impl<R: TableRow> Table<R> {
    pub fn new(name: impl Into<String>, rows: Vec<R>) -> Self {
        Self { name: name.into(), rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn check_finite(&self) -> Result<(), HarnessError> {
        for row in &self.rows {
            for (cell, column) in row.cells().iter().zip(R::COLUMNS) {
                if let Cell::Real(x) = *cell {
                    if !x.is_finite() {
                        return Err(HarnessError::NonFinite { table: self.name.clone(), column, value: x });
                    }
                }
            }
        }
        Ok(())
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, HarnessError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| HarnessError::Io { path: path.to_owned(), source })
}

/// Writes the header and one line per row. Fails on any non-finite value.
pub fn emit_csv<R: TableRow>(table: &Table<R>, path: &Path) -> Result<(), HarnessError> {
    table.check_finite()?;
    let csv_err = |source| HarnessError::Csv { path: path.to_owned(), source };
    let mut w = csv::Writer::from_writer(create(path)?);
    w.write_record(R::COLUMNS).map_err(csv_err)?;
    for row in &table.rows {
        w.write_record(row.cells().iter().map(Cell::render)).map_err(csv_err)?;
    }
    w.flush().map_err(|source| HarnessError::Io { path: path.to_owned(), source })
}

/// Writes the rows as a JSON array of objects keyed by column name.
pub fn emit_json<R: TableRow>(table: &Table<R>, path: &Path) -> Result<(), HarnessError> {
    table.check_finite()?;
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, &table.rows)
        .map_err(|source| HarnessError::Json { path: path.to_owned(), source })?;
    writeln!(w)
        .and_then(|_| w.flush())
        .map_err(|source| HarnessError::Io { path: path.to_owned(), source })
}

pub fn emit_plot<R: PlotRows>(table: &Table<R>, path: &Path) -> Result<(), HarnessError> {
    if table.is_empty() {
        return Err(HarnessError::EmptyTable(table.name.clone()));
    }
    render_svg(&R::plot_spec(&table.rows, &table.name), path)
}
