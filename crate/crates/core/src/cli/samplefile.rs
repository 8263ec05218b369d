//! Preshape sample files: a `m,k` header line, a line with the two
//! dimensions, then one row-major flattened preshape per line.

use super::output::fmt_float;
use super::CliError;
use crate::uniformity::PreShape;
use std::io::{Read, Write};

pub struct SampleFileWriter<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> SampleFileWriter<W> {
    pub fn new(out: W, m: usize, k: usize) -> std::io::Result<Self> {
        let mut inner = csv::WriterBuilder::new().flexible(true).from_writer(out);
        inner.write_record(["m", "k"])?;
        inner.write_record([m.to_string(), k.to_string()])?;
        Ok(SampleFileWriter { inner })
    }

    pub fn write(&mut self, z: &PreShape) -> std::io::Result<()> {
        self.inner
            .write_record(z.data().iter().map(|&x| fmt_float(x)))?;
        Ok(())
    }

    pub fn finish(mut self) -> std::io::Result<()> {
        self.inner.flush()
    }
}

fn usage(msg: String) -> CliError {
    CliError::Usage(msg)
}

/// Reads a sample file; the literal `m,k` header line is optional.
pub fn read_preshapes<R: Read>(input: R) -> Result<Vec<PreShape>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(input);
    let mut records = reader.records();
    let mut next = || -> Result<Option<csv::StringRecord>, CliError> {
        records
            .next()
            .transpose()
            .map_err(|e| usage(format!("malformed sample file: {e}")))
    };
    let mut dims = next()?.ok_or_else(|| usage("sample file is empty".into()))?;
    if dims.iter().collect::<Vec<_>>() == ["m", "k"] {
        dims = next()?.ok_or_else(|| usage("sample file has no dimension line".into()))?;
    }
    let parse_dim = |s: Option<&str>| -> Result<usize, CliError> {
        s.and_then(|t| t.parse().ok()).ok_or_else(|| {
            usage(format!(
                "bad dimension line {:?}",
                dims.iter().collect::<Vec<_>>()
            ))
        })
    };
    if dims.len() != 2 {
        return Err(usage(format!(
            "dimension line needs two fields, got {}",
            dims.len()
        )));
    }
    let m = parse_dim(dims.get(0))?;
    let k = parse_dim(dims.get(1))?;
    if m < 1 || k < 2 {
        return Err(usage(format!("need m >= 1 and k >= 2, got m={m}, k={k}")));
    }
    let mut out = Vec::new();
    while let Some(rec) = next()? {
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        let data = rec
            .iter()
            .map(|f| f.parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| usage(format!("line {line}: {e}")))?;
        let z = PreShape::new(m, k, data).map_err(|e| usage(format!("line {line}: {e}")))?;
        out.push(z);
    }
    if out.is_empty() {
        return Err(usage("sample file has no samples".into()));
    }
    Ok(out)
}
