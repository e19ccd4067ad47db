use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

pub const STATUS_OK: &str = "ok";
pub const STATUS_MISMATCH: &str = "mismatch";
pub const SKIPPED_PREFIX: &str = "skipped";

/// Exact CSV header.
pub const HEADER: &str = "experiment,representation,kernel,prime,dim,reps,seconds,mops,reductions,corrections,status";

/// One benchmark cell. For atomic rows `kernel` names the operation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub experiment: String,
    pub representation: String,
    pub kernel: String,
    pub prime: u64,
    pub dim: usize,
    pub reps: u64,
    pub seconds: f64,
    pub mops: f64,
    pub reductions: u64,
    pub corrections: u64,
    pub status: String,
}

impl Record {
    pub fn is_skipped(&self) -> bool {
        self.status.starts_with(SKIPPED_PREFIX)
    }

    pub fn skipped(experiment: &str, representation: &str, kernel: &str, prime: u64, dim: usize, why: &str) -> Self {
        Self {
            experiment: experiment.into(),
            representation: representation.into(),
            kernel: kernel.into(),
            prime,
            dim,
            reps: 0,
            seconds: 0.0,
            mops: 0.0,
            reductions: 0,
            corrections: 0,
            status: format!("{SKIPPED_PREFIX}: {why}"),
        }
    }
}

pub fn write_csv<W: Write>(w: W, records: &[Record]) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    if records.is_empty() {
        out.write_record(HEADER.split(','))?;
    }
    for r in records {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(r: R) -> csv::Result<Vec<Record>> {
    csv::Reader::from_reader(r).deserialize().collect()
}

/// Writes one space-separated series per (experiment, representation,
/// kernel): `prime mops reductions corrections`, sorted by prime.
pub fn write_plots(dir: &Path, records: &[Record]) -> std::io::Result<Vec<std::path::PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut series: BTreeMap<String, Vec<&Record>> = BTreeMap::new();
    for r in records.iter().filter(|r| !r.is_skipped()) {
        let key = format!("{}_{}_{}", r.experiment, r.representation, r.kernel);
        series.entry(key).or_default().push(r);
    }
    let mut paths = Vec::new();
    for (key, mut rows) in series {
        rows.sort_by_key(|r| r.prime);
        let path = dir.join(format!("{key}.dat"));
        let mut f = fs::File::create(&path)?;
        writeln!(f, "# prime mops reductions corrections")?;
        for r in rows {
            writeln!(f, "{} {} {} {}", r.prime, r.mops, r.reductions, r.corrections)?;
        }
        paths.push(path);
    }
    Ok(paths)
}
