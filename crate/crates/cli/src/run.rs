//! The `classify` pipeline: enumerate, classify in parallel, write files.

use std::collections::HashMap;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use clutter_core::classify::{classify, Caches, ClassificationRecord, ClassifyOptions, Summary, Universe};
use clutter_core::enumerate::enumerate_keys;
use clutter_core::CanonicalKey;

use crate::cache::{self, CacheWriter, Verdict};
use crate::Failure;

/// Classes classified between cache flushes.
const CHUNK: usize = 512;

pub const CACHE_DIR_VAR: &str = "CLUTTER_CACHE_DIR";

pub struct ClassifyRun {
    pub n: usize,
    pub out: PathBuf,
    pub resume: bool,
    pub universe: Universe,
    pub options: ClassifyOptions,
    pub cache_dir: Option<PathBuf>,
}

pub struct Outcome {
    pub summaries: [(Universe, Summary); 2],
    pub undecided: usize,
}

fn cache_path(run: &ClassifyRun) -> PathBuf {
    match &run.cache_dir {
        Some(dir) => dir.join(format!("cache-n{}.bin", run.n)),
        None => run.out.join("cache.bin"),
    }
}

pub fn classify_command(run: &ClassifyRun) -> Result<Outcome, Failure> {
    fs::create_dir_all(&run.out)?;
    let cache_file = cache_path(run);
    if let Some(dir) = cache_file.parent() {
        fs::create_dir_all(dir)?;
    }
    let coefficients = run.options.coefficients;

    let started = Instant::now();
    let keys = enumerate_keys(run.n)?;
    eprintln!("enumerated {} classes on {} vertices in {:.2?}", keys.len(), run.n, started.elapsed());

    let loaded = if run.resume { cache::load(&cache_file, coefficients)? } else { None };
    let (known, mut writer) = match loaded {
        Some((map, valid)) => {
            eprintln!("resuming with {} cached verdicts from {}", map.len(), cache_file.display());
            (map, CacheWriter::append(&cache_file, valid)?)
        }
        None => {
            if run.resume {
                eprintln!("no usable cache at {}, starting fresh", cache_file.display());
            }
            (HashMap::new(), CacheWriter::create(&cache_file, coefficients)?)
        }
    };

    let started = Instant::now();
    let caches = Caches::new();
    let todo: Vec<&CanonicalKey> = keys.iter().filter(|k| !known.contains_key(*k)).collect();
    let mut fresh: HashMap<&CanonicalKey, ClassificationRecord> = HashMap::with_capacity(todo.len());
    for chunk in todo.chunks(CHUNK) {
        let records: Vec<ClassificationRecord> = chunk
            .par_iter()
            .map(|k| classify(&k.clutter(), &caches, run.options))
            .collect::<clutter_core::Result<_>>()?;
        for (&k, r) in chunk.iter().zip(records) {
            if let Some(v) = Verdict::of(&r) {
                writer.write(k, v)?;
            }
            fresh.insert(k, r);
        }
        writer.flush()?;
    }
    eprintln!(
        "classified {} classes ({} from cache) in {:.2?}",
        keys.len(),
        known.len().min(keys.len()),
        started.elapsed()
    );

    let records: Vec<ClassificationRecord> = keys
        .iter()
        .map(|k| match fresh.remove(k) {
            Some(r) => r,
            None => known[k].to_record(k),
        })
        .collect();
    write_outputs(&run.out, &records, run.universe)?;
    let summaries = [Universe::All, Universe::Covering].map(|u| (u, Summary::of(&records, u)));
    let undecided = records.iter().filter(|r| run.universe.admits(r) && r.shellable.is_none()).count();
    Ok(Outcome { summaries, undecided })
}

pub fn write_outputs(out: &Path, records: &[ClassificationRecord], universe: Universe) -> io::Result<()> {
    let mut jsonl = BufWriter::new(File::create(out.join("records.jsonl"))?);
    for r in records.iter().filter(|r| universe.admits(r)) {
        serde_json::to_writer(&mut jsonl, r)?;
        jsonl.write_all(b"\n")?;
    }
    jsonl.flush()?;

    let mut summary = csv::Writer::from_path(out.join("summary.csv"))?;
    let mut header = vec!["universe"];
    header.extend(Summary::FIELDS);
    summary.write_record(&header)?;
    for u in [Universe::All, Universe::Covering] {
        let mut row = vec![u.name().to_string()];
        row.extend(Summary::of(records, u).values().iter().map(|v| v.to_string()));
        summary.write_record(&row)?;
    }
    summary.flush()?;

    let mut table = csv::Writer::from_path(out.join("table.csv"))?;
    table.write_record(["line", "circuits", "facets", "top_skeleton"])?;
    let rows = records.iter().filter(|r| universe.admits(r) && r.obstruction_class.dc);
    for (i, r) in rows.enumerate() {
        table.write_record([
            (i + 1).to_string(),
            r.circuits.clone(),
            r.facets.clone(),
            r.top_skeleton_profile.to_string(),
        ])?;
    }
    table.flush()?;
    Ok(())
}
