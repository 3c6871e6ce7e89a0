//! CSV dumps of sample runs: a metadata header row, then one row per draw.
//!
//! ```text
//! n,p,k,field,path,seed
//! 20,5,2,real,dense,42
//! stream,l1,l2
//! 0,51.3...,38.0...
//! ```

use std::io::{BufRead, Write};

use super::{EigenSample, Field, SamplePath};
use crate::error::{Error, Result};

const META_HEADER: &str = "n,p,k,field,path,seed";

pub fn write_samples<W: Write>(mut out: W, samples: &[EigenSample]) -> Result<()> {
    let first = samples
        .first()
        .ok_or_else(|| Error::domain("nothing to dump"))?;
    writeln!(out, "{META_HEADER}")?;
    writeln!(
        out,
        "{},{},{},{},{},{}",
        first.n, first.p, first.k, first.field, first.path, first.seed
    )?;
    let columns: Vec<String> = (1..=first.k).map(|i| format!("l{i}")).collect();
    writeln!(out, "stream,{}", columns.join(","))?;
    for s in samples {
        if (s.n, s.p, s.k, s.field, s.path, s.seed)
            != (
                first.n,
                first.p,
                first.k,
                first.field,
                first.path,
                first.seed,
            )
        {
            return Err(Error::domain(
                "samples in one dump must share their metadata",
            ));
        }
        let row: Vec<String> = s.top.iter().map(|v| v.to_string()).collect();
        writeln!(out, "{},{}", s.stream, row.join(","))?;
    }
    Ok(())
}

fn parse<T: std::str::FromStr>(field: &str, what: &str, line: usize) -> Result<T> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("line {line}: bad {what} '{field}'")))
}

pub fn read_samples<R: BufRead>(input: R) -> Result<Vec<EigenSample>> {
    let mut lines = input.lines();
    let mut next = |expect: &str| -> Result<String> {
        lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing {expect}")))?
            .map_err(Error::from)
    };
    if next("metadata header")?.trim() != META_HEADER {
        return Err(Error::Parse("unexpected metadata header".into()));
    }
    let meta_line = next("metadata row")?;
    let meta: Vec<&str> = meta_line.split(',').collect();
    if meta.len() != 6 {
        return Err(Error::Parse("metadata row needs 6 fields".into()));
    }
    let n: u64 = parse(meta[0], "n", 2)?;
    let p: u64 = parse(meta[1], "p", 2)?;
    let k: usize = parse(meta[2], "k", 2)?;
    let field: Field = meta[3].trim().parse()?;
    let path: SamplePath = meta[4].trim().parse()?;
    let seed: u64 = parse(meta[5], "seed", 2)?;
    next("column header")?;

    let mut samples = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != k + 1 {
            return Err(Error::Parse(format!(
                "line {}: expected {} fields, got {}",
                i + 4,
                k + 1,
                cells.len()
            )));
        }
        let stream = parse(cells[0], "stream", i + 4)?;
        let top = cells[1..]
            .iter()
            .map(|c| parse(c, "eigenvalue", i + 4))
            .collect::<Result<Vec<f64>>>()?;
        samples.push(EigenSample {
            top,
            n,
            p,
            k,
            field,
            seed,
            stream,
            path,
        });
    }
    Ok(samples)
}
