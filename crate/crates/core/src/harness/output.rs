//! Flat-file renditions of a run.
//!
//! JSON lines: every `TrialOutcome` of an `n`, then that `n`'s `Summary`,
//! and finally the rate fit if there is one.
//!
//! CSV: one row per outcome with the columns in [`CSV_HEADER`]; the
//! summaries and fit go to a JSON-lines sidecar named `<path>.summary.jsonl`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use super::config::OutputFormat;
use super::runner::RunOutput;
use crate::adversary::TrialOutcome;
use crate::error::Result;
use crate::rational::to_f64;

pub const CSV_HEADER: &str =
    "seed,n,d,tag,consistent,er_D_num,er_D_den,er_S_num,er_S_den,dev_float,band_i,success";

pub fn csv_row(o: &TrialOutcome) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        o.seed,
        o.n,
        o.d.map(|d| d.to_string()).unwrap_or_default(),
        o.tag,
        o.consistent,
        o.er_d.numer(),
        o.er_d.denom(),
        o.er_s.numer(),
        o.er_s.denom(),
        to_f64(&o.deviation),
        o.band.map(|b| b.to_string()).unwrap_or_default(),
        o.success
    )
}

pub fn write_jsonl<W: Write>(run: &RunOutput, mut w: W) -> Result<()> {
    for block in &run.blocks {
        for o in &block.outcomes {
            serde_json::to_writer(&mut w, o)?;
            w.write_all(b"\n")?;
        }
        serde_json::to_writer(&mut w, &block.summary)?;
        w.write_all(b"\n")?;
    }
    if let Some(fit) = &run.fit {
        serde_json::to_writer(&mut w, fit)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn write_csv<W: Write>(run: &RunOutput, mut w: W) -> Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for block in &run.blocks {
        for o in &block.outcomes {
            writeln!(w, "{}", csv_row(o))?;
        }
    }
    Ok(())
}

fn summaries_only(run: &RunOutput) -> RunOutput {
    RunOutput {
        blocks: run
            .blocks
            .iter()
            .map(|b| super::runner::RunBlock {
                n: b.n,
                outcomes: Vec::new(),
                summary: b.summary.clone(),
            })
            .collect(),
        fit: run.fit.clone(),
    }
}

pub fn summary_sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".summary.jsonl");
    PathBuf::from(s)
}

/// Write `run` to `path` in `format`; returns every file written.
pub fn write_run(run: &RunOutput, path: &Path, format: OutputFormat) -> Result<Vec<PathBuf>> {
    match format {
        OutputFormat::Json => {
            let mut w = BufWriter::new(File::create(path)?);
            write_jsonl(run, &mut w)?;
            w.flush()?;
            Ok(vec![path.to_path_buf()])
        }
        OutputFormat::Csv => {
            let mut w = BufWriter::new(File::create(path)?);
            write_csv(run, &mut w)?;
            w.flush()?;
            let side = summary_sidecar(path);
            let mut s = BufWriter::new(File::create(&side)?);
            write_jsonl(&summaries_only(run), &mut s)?;
            s.flush()?;
            Ok(vec![path.to_path_buf(), side])
        }
    }
}
