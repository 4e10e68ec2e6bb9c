use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Standard output or a file.
pub struct Sink {
    inner: Box<dyn Write>,
}

impl Sink {
    pub fn open(path: Option<&Path>) -> Result<Self> {
        let inner: Box<dyn Write> = match path {
            Some(p) => {
                Box::new(io::BufWriter::new(File::create(p).with_context(|| format!("cannot create {}", p.display()))?))
            }
            None => Box::new(io::BufWriter::new(io::stdout().lock())),
        };
        Ok(Self { inner })
    }

    pub fn json<T: Serialize + ?Sized>(&mut self, value: &T) -> Result<()> {
        serde_json::to_writer_pretty(&mut self.inner, value)?;
        writeln!(self.inner)?;
        self.inner.flush()?;
        Ok(())
    }

    pub fn csv(&mut self) -> csv::Writer<&mut dyn Write> {
        csv::WriterBuilder::new().flexible(true).from_writer(&mut *self.inner)
    }
}

pub fn finish_csv(w: csv::Writer<&mut dyn Write>) -> Result<()> {
    w.into_inner().map_err(|e| e.into_error())?.flush()?;
    Ok(())
}

/// Fixed-point text without a negative zero, or the shortest round-trip
/// form with `full`.
pub fn fixed(x: f64, decimals: usize, full: bool) -> String {
    if full {
        return format!("{x:?}");
    }
    let s = format!("{x:.decimals$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.chars().all(|c| c == '0' || c == '.') => rest.to_string(),
        _ => s,
    }
}
