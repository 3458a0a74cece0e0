use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::OnceLock;

use num_rational::BigRational;
use serde::Serialize;

use crate::arith::int::decimal;
use crate::density::{euler_product, Enclosure, DEFAULT_CUTOFF};
use crate::error::{Error, Result};
use crate::ledger::{conjectured_failure_given_local, conjectured_soluble_proportion};
use crate::models::ModelKind;

use super::record::{ClassTag, Tally};
use super::ExperimentConfig;

const REFERENCE_DIGITS: usize = 12;
const Z95: f64 = 1.959963984540054;

/// Wilson score interval at 95%; `None` when the denominator is zero.
pub fn wilson_interval(successes: u64, trials: u64) -> Option<(f64, f64)> {
    if trials == 0 {
        return None;
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = Z95 / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    Some(((centre - half).max(0.0), (centre + half).min(1.0)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Proportion {
    pub name: String,
    pub numerator: u64,
    pub denominator: u64,
    pub fraction: Option<f64>,
    pub wilson_lo: Option<f64>,
    pub wilson_hi: Option<f64>,
}

impl Proportion {
    pub fn new(name: &str, numerator: u64, denominator: u64) -> Proportion {
        let w = wilson_interval(numerator, denominator);
        Proportion {
            name: name.to_string(),
            numerator,
            denominator,
            fraction: (denominator > 0).then(|| numerator as f64 / denominator as f64),
            wilson_lo: w.map(|w| w.0),
            wilson_hi: w.map(|w| w.1),
        }
    }
}

/// A reference value for comparison; exact values have `lo == hi`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Reference {
    pub label: String,
    pub compare_with: String,
    #[serde(with = "crate::serde_util::rational")]
    pub lo: BigRational,
    #[serde(with = "crate::serde_util::rational")]
    pub hi: BigRational,
    pub decimal: String,
}

impl Reference {
    fn exact(label: &str, compare_with: &str, v: BigRational) -> Reference {
        Reference::enclosure(label, compare_with, &Enclosure { lo: v.clone(), hi: v })
    }

    fn enclosure(label: &str, compare_with: &str, e: &Enclosure) -> Reference {
        let decimal = if e.lo == e.hi { decimal(&e.lo, 8) } else { e.display(8) };
        Reference { label: label.into(), compare_with: compare_with.into(), lo: e.lo.clone(), hi: e.hi.clone(), decimal }
    }
}

fn euler_cached() -> &'static (Enclosure, Enclosure) {
    static CELL: OnceLock<(Enclosure, Enclosure)> = OnceLock::new();
    CELL.get_or_init(|| {
        let rho = euler_product(DEFAULT_CUTOFF).expect("default cutoff is valid").round_outward(REFERENCE_DIGITS);
        let fail = rho.scale(&BigRational::new(2.into(), 3.into())).round_outward(REFERENCE_DIGITS);
        (rho, fail)
    })
}

pub fn references(kind: ModelKind) -> Vec<Reference> {
    let n = kind.n();
    let mut out = Vec::new();
    if kind == ModelKind::TernaryCubic {
        let (rho, fail) = euler_cached();
        out.push(Reference::enclosure("locally soluble density (Euler product)", "locally_soluble/total", rho));
        out.push(Reference::enclosure("conjectured Hasse failure density", "failure_candidate/total", fail));
    }
    out.push(Reference::exact(
        "conjectured soluble proportion among locally soluble",
        "soluble/locally_soluble",
        conjectured_soluble_proportion(n, false).expect("n is 2, 3 or 4"),
    ));
    out.push(Reference::exact(
        "conjectured soluble proportion among generic locally soluble",
        "soluble/locally_soluble",
        conjectured_soluble_proportion(n, true).expect("n is 2, 3 or 4"),
    ));
    out.push(Reference::exact(
        "conjectured failure proportion among generic locally soluble",
        "failure_candidate/locally_soluble",
        conjectured_failure_given_local(n).expect("n is 2, 3 or 4"),
    ));
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UndecidedEntry {
    pub index: u64,
    pub reason: String,
}

/// The deterministic part of a report: a function of the config and the
/// classified samples only.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub config: Option<ExperimentConfig>,
    pub n: u64,
    /// Set when no samples were aggregated.
    pub empty: bool,
    pub complete: bool,
    pub counts: BTreeMap<ClassTag, u64>,
    pub proportions: Vec<Proportion>,
    pub obstructions: BTreeMap<String, u64>,
    pub generic: u64,
    pub references: Vec<Reference>,
    pub undecided: Vec<UndecidedEntry>,
}

impl Summary {
    pub fn new(config: Option<&ExperimentConfig>, tally: &Tally) -> Summary {
        let n = tally.total();
        let counts = ClassTag::ALL.iter().map(|&t| (t, tally.count(t))).collect();
        let loc = tally.locally_soluble();
        let fc = tally.count(ClassTag::FailureCandidate);
        let proportions = vec![
            Proportion::new("locally_soluble/total", loc, n),
            Proportion::new("soluble/total", tally.count(ClassTag::Soluble), n),
            Proportion::new("failure_candidate/locally_soluble", fc, loc),
            Proportion::new("failure_candidate/total", fc, n),
        ];
        let undecided = tally
            .sorted_undecided()
            .into_iter()
            .map(|r| UndecidedEntry { index: r.index, reason: r.reason.unwrap_or_default() })
            .collect();
        Summary {
            config: config.cloned(),
            n,
            empty: n == 0,
            complete: config.is_some_and(|c| c.samples == n),
            counts,
            proportions,
            obstructions: tally.obstructions.clone(),
            generic: tally.generic,
            references: config.map(|c| references(c.kind)).unwrap_or_default(),
            undecided,
        }
    }

    pub fn count(&self, tag: ClassTag) -> u64 {
        self.counts.get(&tag).copied().unwrap_or(0)
    }

    pub fn proportion(&self, name: &str) -> Option<&Proportion> {
        self.proportions.iter().find(|p| p.name == name)
    }

    pub fn is_contaminated(&self) -> bool {
        self.count(ClassTag::Undecided) > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }

    /// Columns `class, count, fraction, wilson_lo, wilson_hi`, fractions over all samples.
    pub fn to_csv(&self) -> String {
        let opt = |x: Option<f64>| x.map(|v| format!("{v:.6}")).unwrap_or_default();
        let mut s = String::from("class,count,fraction,wilson_lo,wilson_hi\n");
        let mut row = |name: &str, k: u64| {
            let p = Proportion::new(name, k, self.n);
            let _ = writeln!(s, "{name},{k},{},{},{}", opt(p.fraction), opt(p.wilson_lo), opt(p.wilson_hi));
        };
        for t in ClassTag::ALL {
            row(t.label(), self.count(t));
        }
        row("locally_soluble", self.count(ClassTag::Soluble) + self.count(ClassTag::FailureCandidate));
        s
    }

    pub fn render(&self, format: ReportFormat) -> String {
        match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Csv => self.to_csv(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Runtime {
    pub wall_ms: u128,
    pub workers: usize,
    pub new_samples: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub summary: Summary,
    pub runtime: Runtime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<ReportFormat> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::Parse(format!("unknown report format {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_reference_values() {
        // 8 of 10 and 0 of 10 against the closed form evaluated by hand
        let (lo, hi) = wilson_interval(8, 10).unwrap();
        let n = 10.0;
        let z2 = Z95 * Z95;
        let c = (0.8 + z2 / 20.0) / (1.0 + z2 / n);
        assert!((lo + hi - 2.0 * c).abs() < 1e-12);
        assert!((lo - 0.4901625).abs() < 1e-6 && (hi - 0.9433178).abs() < 1e-6, "{lo} {hi}");
        let (lo, hi) = wilson_interval(0, 10).unwrap();
        assert_eq!(lo, 0.0);
        assert!((hi - 0.2775328).abs() < 1e-6);
        assert!(wilson_interval(0, 0).is_none());
    }

    #[test]
    fn rounded_references_still_enclose() {
        let r = references(ModelKind::TernaryCubic);
        let exact = euler_product(DEFAULT_CUTOFF).unwrap();
        assert!(r[0].lo <= exact.lo && exact.hi <= r[0].hi);
        assert!(&r[0].hi - &r[0].lo < BigRational::new(1.into(), 100_000.into()));
        assert_eq!(r[1].compare_with, "failure_candidate/total");
        assert_eq!(references(ModelKind::BinaryQuartic).len(), 3);
    }

    #[test]
    fn empty_summary_is_flagged() {
        let s = Summary::new(None, &Tally::default());
        assert!(s.empty && !s.complete);
        assert_eq!(s.n, 0);
        assert!(s.proportions.iter().all(|p| p.fraction.is_none()));
        let csv = s.to_csv();
        assert!(csv.starts_with("class,count,fraction,wilson_lo,wilson_hi\n"));
        assert!(csv.contains("\ndegenerate,0,,,\n"));
    }
}
