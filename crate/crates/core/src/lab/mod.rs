//! Box-sampling campaigns with persistent, resumable JSONL output.
//!
//! A run file starts with one header line `{"config": …}` followed by one
//! [`SampleRecord`] per line. Sample `i` is drawn from its own ChaCha8 stream
//! `(seed, i)`, and the writer emits records in index order, so the file
//! (timings aside) and the summary do not depend on the number of workers
//! or on where a run was interrupted. Undecided records are also copied to
//! a side file `<stem>.undecided.jsonl`.

mod record;
mod report;

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::Instant;

use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::factor::FactorBudget;
use crate::error::{Error, Result};
use crate::local::{LocalOptions, PadicOptions};
use crate::models::{sample_box, GenusOneModel, Interval, ModelKind};
use crate::rational_points::{ClassifyOptions, SearchOptions};

pub use record::{ClassTag, SampleRecord, Tally};
pub use report::{references, wilson_interval, ExperimentReport, Proportion, Reference, ReportFormat, Runtime, Summary, UndecidedEntry};

pub const DEFAULT_SEARCH_HEIGHT: u64 = 200;
const FLUSH_EVERY: u64 = 256;

/// Work caps for the local computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorkCaps {
    pub trial_bound: u64,
    pub rho_iterations: u64,
    pub padic_node_budget: usize,
}

impl Default for WorkCaps {
    fn default() -> Self {
        let f = FactorBudget::default();
        WorkCaps {
            trial_bound: f.trial_bound,
            rho_iterations: f.rho_iterations,
            padic_node_budget: PadicOptions::default().node_budget,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kind: ModelKind,
    pub t: u64,
    #[serde(rename = "box")]
    pub bx: Vec<Interval>,
    pub samples: u64,
    pub search_height: u64,
    pub seed: u64,
    pub caps: WorkCaps,
    /// Replaces sampling: sample `i` is `fixtures[i mod len]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixtures: Option<Vec<GenusOneModel>>,
    /// Not part of the run's identity.
    #[serde(skip, default = "one")]
    pub workers: usize,
}

fn one() -> usize {
    1
}

impl ExperimentConfig {
    pub fn new(kind: ModelKind, t: u64, samples: u64, seed: u64) -> ExperimentConfig {
        ExperimentConfig {
            kind,
            t,
            bx: vec![Interval::unit(); kind.m()],
            samples,
            search_height: DEFAULT_SEARCH_HEIGHT,
            seed,
            caps: WorkCaps::default(),
            fixtures: None,
            workers: 1,
        }
    }

    pub fn with_height(mut self, h: u64) -> Self {
        self.search_height = h;
        self
    }

    pub fn with_workers(mut self, w: usize) -> Self {
        self.workers = w;
        self
    }

    pub fn with_fixtures(mut self, fixtures: Vec<GenusOneModel>) -> Self {
        self.fixtures = Some(fixtures);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Invalid(m));
        if self.samples < 1 {
            return bad("samples must be at least 1".into());
        }
        if self.search_height < 1 {
            return bad("search height must be at least 1".into());
        }
        if self.workers < 1 {
            return bad("workers must be at least 1".into());
        }
        if self.bx.len() != self.kind.m() {
            return bad(format!("box has {} intervals, kind {} needs {}", self.bx.len(), self.kind, self.kind.m()));
        }
        for (i, iv) in self.bx.iter().enumerate() {
            let Some((lo, hi)) = iv.integer_range(self.t) else { return Err(Error::EmptyRange(i)) };
            if lo.to_i64().is_none() || hi.to_i64().is_none() {
                return bad(format!("coefficient range {i} exceeds 64 bits"));
            }
        }
        match &self.fixtures {
            Some(f) if f.is_empty() => bad("fixture list is empty".into()),
            Some(f) if f.iter().any(|m| m.kind() != self.kind) => bad("fixture of the wrong kind".into()),
            _ => Ok(()),
        }
    }

    pub fn model_at(&self, index: u64) -> Result<GenusOneModel> {
        if let Some(f) = &self.fixtures {
            return Ok(f[(index % f.len() as u64) as usize].clone());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        sample_box(self.kind, &self.bx, self.t, &mut rng)
    }

    pub fn classify_options(&self) -> ClassifyOptions {
        ClassifyOptions {
            local: LocalOptions {
                budget: FactorBudget { trial_bound: self.caps.trial_bound, rho_iterations: self.caps.rho_iterations },
                padic: PadicOptions { node_budget: self.caps.padic_node_budget, ..PadicOptions::default() },
                stop_at_obstruction: true,
            },
            search: SearchOptions { threads: 1 },
        }
    }

    pub fn classify_sample(&self, index: u64) -> Result<SampleRecord> {
        let model = self.model_at(index)?;
        Ok(SampleRecord::classify(index, &model, self.search_height, &self.classify_options()))
    }
}

#[derive(Serialize, Deserialize)]
struct Header {
    config: ExperimentConfig,
}

/// Side file for undecided records next to `path`.
pub fn undecided_path(path: &Path) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.undecided.jsonl"))
}

/// Classifies `indices` on `workers` threads and hands records to `sink` in
/// the order of `indices`.
pub fn classify_ordered(
    config: &ExperimentConfig,
    indices: &[u64],
    workers: usize,
    mut sink: impl FnMut(SampleRecord) -> Result<()>,
) -> Result<()> {
    let next = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    std::thread::scope(|s| {
        let (tx, rx) = mpsc::sync_channel::<(usize, Result<SampleRecord>)>(4 * workers.max(1));
        for _ in 0..workers.max(1) {
            let tx = tx.clone();
            let (next, stop) = (&next, &stop);
            s.spawn(move || loop {
                if stop.load(Ordering::Relaxed) {
                    break;
                }
                let pos = next.fetch_add(1, Ordering::Relaxed);
                if pos >= indices.len() {
                    break;
                }
                if tx.send((pos, config.classify_sample(indices[pos]))).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        let mut pending = BTreeMap::new();
        let mut emit = 0usize;
        let mut outcome = Ok(());
        for (pos, rec) in rx {
            pending.insert(pos, rec);
            while let Some(rec) = pending.remove(&emit) {
                emit += 1;
                if let Err(e) = rec.and_then(&mut sink) {
                    stop.store(true, Ordering::Relaxed);
                    outcome = Err(e);
                    break;
                }
            }
            if outcome.is_err() {
                break;
            }
        }
        outcome
    })
}

struct Sink {
    out: Option<BufWriter<File>>,
    tally: Tally,
    written: u64,
}

impl Sink {
    fn push(&mut self, r: SampleRecord) -> Result<()> {
        self.tally.add(&r);
        if let Some(w) = &mut self.out {
            serde_json::to_writer(&mut *w, &r)?;
            w.write_all(b"\n")?;
            self.written += 1;
            if self.written % FLUSH_EVERY == 0 {
                w.flush()?;
            }
        }
        Ok(())
    }
}

fn write_side_file(path: &Path, tally: &Tally) -> Result<()> {
    let side = undecided_path(path);
    let records = tally.sorted_undecided();
    if records.is_empty() {
        if side.exists() {
            std::fs::remove_file(side)?;
        }
        return Ok(());
    }
    let mut w = BufWriter::new(File::create(side)?);
    for r in records {
        serde_json::to_writer(&mut w, &r)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

/// Runs a campaign. With `out`, the file is created (or truncated) and every
/// record is appended to it.
pub fn run(config: &ExperimentConfig, out: Option<&Path>) -> Result<ExperimentReport> {
    config.validate()?;
    let start = Instant::now();
    let mut sink = Sink { out: None, tally: Tally::default(), written: 0 };
    if let Some(path) = out {
        let mut w = BufWriter::new(File::create(path)?);
        serde_json::to_writer(&mut w, &Header { config: config.clone() })?;
        w.write_all(b"\n")?;
        sink.out = Some(w);
    }
    let indices: Vec<u64> = (0..config.samples).collect();
    classify_ordered(config, &indices, config.workers, |r| sink.push(r))?;
    finish(config, out, sink, config.samples, start)
}

fn finish(config: &ExperimentConfig, out: Option<&Path>, mut sink: Sink, new: u64, start: Instant) -> Result<ExperimentReport> {
    if let Some(w) = &mut sink.out {
        w.flush()?;
    }
    if let Some(path) = out {
        write_side_file(path, &sink.tally)?;
    }
    Ok(ExperimentReport {
        summary: Summary::new(Some(config), &sink.tally),
        runtime: Runtime { wall_ms: start.elapsed().as_millis(), workers: config.workers, new_samples: new },
    })
}

/// Flags given on a resume; each present field must match the header.
#[derive(Clone, Debug, Default)]
pub struct ResumeCheck {
    pub kind: Option<ModelKind>,
    pub t: Option<u64>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub search_height: Option<u64>,
    pub bx: Option<Vec<Interval>>,
}

impl ResumeCheck {
    fn check(&self, c: &ExperimentConfig) -> Result<()> {
        fn same<T: PartialEq + std::fmt::Debug>(name: &str, flag: &Option<T>, header: &T) -> Result<()> {
            match flag {
                Some(v) if v != header => {
                    Err(Error::ConfigMismatch(format!("{name}: flag says {v:?}, file header says {header:?}")))
                }
                _ => Ok(()),
            }
        }
        same("kind", &self.kind, &c.kind)?;
        same("t", &self.t, &c.t)?;
        same("samples", &self.samples, &c.samples)?;
        same("seed", &self.seed, &c.seed)?;
        same("search_height", &self.search_height, &c.search_height)?;
        same("box", &self.bx, &c.bx)
    }
}

struct Loaded {
    config: Option<ExperimentConfig>,
    tally: Tally,
    seen: BTreeSet<u64>,
    /// Byte length of the file up to the last complete line.
    complete_len: u64,
    torn: bool,
}

/// Reads a run file. A final line without a newline that does not parse is
/// a torn write and is ignored; any other bad line is an error.
fn load(path: &Path) -> Result<Loaded> {
    let mut text = String::new();
    File::open(path)?.read_to_string(&mut text)?;
    let mut out = Loaded { config: None, tally: Tally::default(), seen: BTreeSet::new(), complete_len: 0, torn: false };
    let mut offset = 0u64;
    let segments: Vec<&str> = text.split_inclusive('\n').collect();
    for (i, seg) in segments.iter().enumerate() {
        let line_no = i + 1;
        let terminated = seg.ends_with('\n');
        let line = seg.trim_end_matches(['\n', '\r']);
        let corrupt = |reason: String| Error::CorruptRecord { line: line_no, reason };
        if line.trim().is_empty() {
            offset += seg.len() as u64;
            out.complete_len = offset;
            continue;
        }
        if out.config.is_none() && out.seen.is_empty() && i == 0 {
            match serde_json::from_str::<Header>(line) {
                Ok(h) => {
                    h.config.validate().map_err(|e| corrupt(format!("invalid header: {e}")))?;
                    out.config = Some(h.config);
                    offset += seg.len() as u64;
                    out.complete_len = if terminated { offset } else { 0 };
                    out.torn = !terminated;
                    continue;
                }
                Err(e) if terminated => return Err(corrupt(format!("bad header: {e}"))),
                Err(_) => {
                    out.torn = true;
                    break;
                }
            }
        }
        let rec: SampleRecord = match serde_json::from_str(line) {
            Ok(r) => r,
            Err(_) if !terminated && i + 1 == segments.len() => {
                out.torn = true;
                break;
            }
            Err(e) => return Err(corrupt(e.to_string())),
        };
        let Some(cfg) = &out.config else { return Err(corrupt("record before the config header".into())) };
        if rec.index >= cfg.samples {
            return Err(corrupt(format!("index {} outside 0..{}", rec.index, cfg.samples)));
        }
        if rec.kind != cfg.kind {
            return Err(corrupt(format!("record kind {} in a kind {} run", rec.kind, cfg.kind)));
        }
        if !out.seen.insert(rec.index) {
            return Err(corrupt(format!("duplicate index {}", rec.index)));
        }
        out.tally.add(&rec);
        offset += seg.len() as u64;
        out.complete_len = offset;
        out.torn = !terminated;
    }
    Ok(out)
}

/// Continues an interrupted run at its missing sample indices.
pub fn resume(path: &Path, workers: usize, check: &ResumeCheck) -> Result<ExperimentReport> {
    let start = Instant::now();
    let loaded = load(path)?;
    let Some(mut config) = loaded.config else {
        return Err(Error::CorruptRecord { line: 1, reason: "missing config header".into() });
    };
    check.check(&config)?;
    config.workers = workers;
    config.validate()?;
    let missing: Vec<u64> = (0..config.samples).filter(|i| !loaded.seen.contains(i)).collect();
    let mut file = OpenOptions::new().read(true).write(true).open(path)?;
    if loaded.torn {
        // a complete final record without its newline is kept
        let len = file.metadata()?.len();
        if loaded.complete_len == len {
            file.seek(SeekFrom::End(0))?;
            file.write_all(b"\n")?;
        } else {
            file.set_len(loaded.complete_len)?;
        }
    }
    let mut sink = Sink { out: None, tally: loaded.tally, written: 0 };
    if !missing.is_empty() {
        let file = OpenOptions::new().append(true).open(path)?;
        sink.out = Some(BufWriter::new(file));
        classify_ordered(&config, &missing, workers, |r| sink.push(r))?;
    }
    finish(&config, Some(path), sink, missing.len() as u64, start)
}

/// Aggregates a run file without classifying anything.
pub fn summarize(path: &Path) -> Result<Summary> {
    let loaded = load(path)?;
    Ok(Summary::new(loaded.config.as_ref(), &loaded.tally))
}

pub fn report(path: &Path, format: ReportFormat) -> Result<String> {
    Ok(summarize(path)?.render(format))
}

/// All records of a run file in index order, for inspection and tests.
pub fn read_records(path: &Path) -> Result<Vec<SampleRecord>> {
    let mut out = Vec::new();
    for (i, line) in BufReader::new(File::open(path)?).lines().enumerate() {
        let line = line?;
        if i == 0 || line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| Error::CorruptRecord { line: i + 1, reason: e.to_string() })?);
    }
    out.sort_by_key(|r: &SampleRecord| r.index);
    Ok(out)
}
