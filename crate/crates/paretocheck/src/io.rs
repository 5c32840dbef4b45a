//! CSV ingestion and series output.

use std::fs::File;
use std::io::{self, Read, Write};
use std::path::Path;

use paretocheck_core::{Ingest, PlotSeries, Sample};

use crate::error::{Error, Result};

/// Which CSV column holds the observations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnSelector {
    Index(usize),
    Name(String),
}

impl ColumnSelector {
    /// A bare non-negative integer is an index, anything else a header name.
    pub fn parse(s: &str) -> ColumnSelector {
        match s.parse::<usize>() {
            Ok(i) => ColumnSelector::Index(i),
            Err(_) => ColumnSelector::Name(s.to_string()),
        }
    }
}

impl Default for ColumnSelector {
    fn default() -> Self {
        ColumnSelector::Index(0)
    }
}

impl std::fmt::Display for ColumnSelector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ColumnSelector::Index(i) => write!(f, "#{i}"),
            ColumnSelector::Name(n) => write!(f, "{n:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub header: Option<String>,
    pub values: Vec<f64>,
    /// Rows whose cell was empty or missing.
    pub blank: usize,
}

/// Reads one numeric column. The first row is a header when its selected
/// cell does not parse as a number (or when selecting by name).
pub fn read_column<R: Read>(reader: R, selector: &ColumnSelector) -> Result<Column> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut records = rdr.records();
    let mut column = Column {
        header: None,
        values: Vec::new(),
        blank: 0,
    };

    let first = match records.next() {
        None => return Ok(column),
        Some(r) => r?,
    };
    let index = match selector {
        ColumnSelector::Index(i) if *i < first.len() => *i,
        ColumnSelector::Index(_) => return Err(Error::MissingColumn(selector.to_string())),
        ColumnSelector::Name(name) => first
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn(selector.to_string()))?,
    };
    let label = selector.to_string();
    let first_cell = first.get(index).unwrap_or("");
    let is_header = matches!(selector, ColumnSelector::Name(_))
        || (!first_cell.is_empty() && parse_cell(first_cell).is_none());
    if is_header {
        column.header = Some(first_cell.to_string());
    } else {
        push_cell(&mut column, first_cell, 1, &label)?;
    }

    for record in records {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        push_cell(&mut column, record.get(index).unwrap_or(""), line, &label)?;
    }
    Ok(column)
}

fn parse_cell(cell: &str) -> Option<f64> {
    cell.parse::<f64>().ok()
}

fn push_cell(column: &mut Column, cell: &str, line: u64, label: &str) -> Result<()> {
    if cell.is_empty() {
        column.blank += 1;
        return Ok(());
    }
    match parse_cell(cell) {
        Some(v) => {
            column.values.push(v);
            Ok(())
        }
        None => Err(Error::NonNumeric {
            column: label.to_string(),
            line,
            value: cell.to_string(),
        }),
    }
}

/// Opens `path`, or standard input for `-`.
pub fn open_input(path: &Path) -> Result<Box<dyn Read>> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(io::stdin()));
    }
    File::open(path)
        .map(|f| Box::new(io::BufReader::new(f)) as Box<dyn Read>)
        .map_err(|source| Error::Read {
            path: path.to_path_buf(),
            source,
        })
}

/// Reads a column and turns it into a [`Sample`], dropping non-positive and
/// non-finite entries.
pub fn load_sample(path: &Path, selector: &ColumnSelector) -> Result<Ingest> {
    let column = read_column(open_input(path)?, selector)?;
    Ok(Sample::from_raw(&column.values)?)
}

/// Long-format CSV: one row per point with its series label.
pub fn write_series_csv<W: Write>(writer: W, series: &[&PlotSeries]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["series", "x", "y"])?;
    for s in series {
        for p in &s.points {
            w.write_record([s.label.as_str(), &p.x.to_string(), &p.y.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Single `value` column, shortest round-trip formatting.
pub fn write_sample_csv<W: Write>(writer: W, values: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["value"])?;
    for v in values {
        w.write_record([v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn create_output(path: &Path) -> Result<io::BufWriter<File>> {
    File::create(path)
        .map(io::BufWriter::new)
        .map_err(|source| Error::Write {
            path: path.to_path_buf(),
            source,
        })
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| Error::Write {
        path: path.to_path_buf(),
        source,
    })
}
