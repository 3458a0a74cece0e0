use std::collections::BTreeMap;
use std::fmt;
use std::ops::AddAssign;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::invariants::{invariants, jacobian};
use crate::models::{is_generic, GenusOneModel, ModelKind};
use crate::rational_points::{classify_with, ClassifyOptions, HasseClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassTag {
    Degenerate,
    LocallyInsoluble,
    Soluble,
    FailureCandidate,
    Undecided,
}

impl ClassTag {
    pub const ALL: [ClassTag; 5] = [
        ClassTag::Degenerate,
        ClassTag::LocallyInsoluble,
        ClassTag::Soluble,
        ClassTag::FailureCandidate,
        ClassTag::Undecided,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ClassTag::Degenerate => "degenerate",
            ClassTag::LocallyInsoluble => "locally_insoluble",
            ClassTag::Soluble => "soluble",
            ClassTag::FailureCandidate => "failure_candidate",
            ClassTag::Undecided => "undecided",
        }
    }
}

impl From<&HasseClass> for ClassTag {
    fn from(c: &HasseClass) -> ClassTag {
        match c {
            HasseClass::Degenerate => ClassTag::Degenerate,
            HasseClass::LocallyInsoluble(_) => ClassTag::LocallyInsoluble,
            HasseClass::Soluble(_) => ClassTag::Soluble,
            HasseClass::FailureCandidate(_) => ClassTag::FailureCandidate,
            HasseClass::Undecided(_) => ClassTag::Undecided,
        }
    }
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One line of an experiment file. Integers are decimal strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub index: u64,
    pub kind: ModelKind,
    #[serde(with = "crate::serde_util::bigint_vec")]
    pub coeffs: Vec<BigInt>,
    #[serde(with = "crate::serde_util::bigint")]
    pub delta: BigInt,
    #[serde(rename = "A", with = "crate::serde_util::rational")]
    pub a: BigRational,
    #[serde(rename = "B", with = "crate::serde_util::rational")]
    pub b: BigRational,
    pub lambda: Option<u32>,
    pub generic: Option<bool>,
    pub class: ClassTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub place: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub search_height: u64,
    pub wall_ms: f64,
}

impl SampleRecord {
    pub fn classify(index: u64, model: &GenusOneModel, height: u64, opts: &ClassifyOptions) -> SampleRecord {
        let start = Instant::now();
        let inv = invariants(model);
        let delta = crate::invariants::discriminant(model);
        let (lambda, generic) = if delta.is_zero() {
            (None, None)
        } else {
            (jacobian(model).ok().map(|j| j.lambda), is_generic(model).ok())
        };
        let class = classify_with(model, height, opts);
        let (place, point, reason) = match &class {
            HasseClass::LocallyInsoluble(p) => (Some(p.to_string()), None, None),
            HasseClass::Soluble(pt) => (None, Some(pt.coords().iter().map(|c| c.to_string()).collect()), None),
            HasseClass::Undecided(r) => (None, None, Some(r.clone())),
            _ => (None, None, None),
        };
        let wall_ms = (start.elapsed().as_secs_f64() * 1e6).round() / 1e3;
        SampleRecord {
            index,
            kind: model.kind(),
            coeffs: model.coeffs().to_vec(),
            delta,
            a: inv.a,
            b: inv.b,
            lambda,
            generic,
            class: ClassTag::from(&class),
            place,
            point,
            reason,
            search_height: height,
            wall_ms,
        }
    }

    pub fn model(&self) -> crate::Result<GenusOneModel> {
        GenusOneModel::new(self.kind, self.coeffs.clone())
    }

    /// The record with its timing removed, for determinism comparisons.
    pub fn untimed(&self) -> SampleRecord {
        SampleRecord { wall_ms: 0.0, ..self.clone() }
    }
}

/// Class counts and side statistics; merging is commutative.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Tally {
    pub counts: BTreeMap<ClassTag, u64>,
    /// Locally insoluble samples by the first obstructed place.
    pub obstructions: BTreeMap<String, u64>,
    pub generic: u64,
    #[serde(skip)]
    pub undecided: Vec<SampleRecord>,
}

impl Tally {
    pub fn add(&mut self, r: &SampleRecord) {
        *self.counts.entry(r.class).or_default() += 1;
        if let Some(p) = &r.place {
            *self.obstructions.entry(p.clone()).or_default() += 1;
        }
        if r.generic == Some(true) {
            self.generic += 1;
        }
        if r.class == ClassTag::Undecided {
            self.undecided.push(r.clone());
        }
    }

    pub fn count(&self, tag: ClassTag) -> u64 {
        self.counts.get(&tag).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn locally_soluble(&self) -> u64 {
        self.count(ClassTag::Soluble) + self.count(ClassTag::FailureCandidate)
    }

    pub fn sorted_undecided(&self) -> Vec<SampleRecord> {
        let mut u = self.undecided.clone();
        u.sort_by_key(|r| r.index);
        u
    }
}

impl AddAssign<&Tally> for Tally {
    fn add_assign(&mut self, other: &Tally) {
        for (k, v) in &other.counts {
            *self.counts.entry(*k).or_default() += v;
        }
        for (k, v) in &other.obstructions {
            *self.obstructions.entry(k.clone()).or_default() += v;
        }
        self.generic += other.generic;
        self.undecided.extend(other.undecided.iter().cloned());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_round_trip() {
        let opts = ClassifyOptions::default();
        for (model, tag) in [
            (GenusOneModel::diagonal_cubic(1, 1, 1), ClassTag::Soluble),
            (GenusOneModel::diagonal_cubic(1, 2, 4), ClassTag::LocallyInsoluble),
            (GenusOneModel::diagonal_cubic(3, 4, 5), ClassTag::FailureCandidate),
            (GenusOneModel::diagonal_cubic(1, 1, 0), ClassTag::Degenerate),
        ] {
            let r = SampleRecord::classify(7, &model, 50, &opts);
            assert_eq!(r.class, tag, "{model}");
            let line = serde_json::to_string(&r).unwrap();
            assert!(line.contains("\"A\":") && line.contains("\"delta\":\""));
            let back: SampleRecord = serde_json::from_str(&line).unwrap();
            assert_eq!(back, r);
            assert_eq!(back.model().unwrap(), model);
        }
        let r = SampleRecord::classify(0, &GenusOneModel::diagonal_cubic(1, 2, 4), 5, &opts);
        assert_eq!(r.place.as_deref(), Some("2"));
    }

    #[test]
    fn tally_merge_is_commutative() {
        let opts = ClassifyOptions::default();
        let recs: Vec<_> = [(1, 1, 1), (1, 2, 4), (3, 4, 5), (1, 1, 0), (1, 2, 3)]
            .iter()
            .enumerate()
            .map(|(i, &(a, b, c))| SampleRecord::classify(i as u64, &GenusOneModel::diagonal_cubic(a, b, c), 20, &opts))
            .collect();
        let (mut x, mut y, mut all) = (Tally::default(), Tally::default(), Tally::default());
        for (i, r) in recs.iter().enumerate() {
            all.add(r);
            if i % 2 == 0 { x.add(r) } else { y.add(r) }
        }
        let mut xy = x.clone();
        xy += &y;
        let mut yx = y;
        yx += &x;
        assert_eq!(xy.counts, yx.counts);
        assert_eq!(xy.counts, all.counts);
        assert_eq!(xy.total(), 5);
    }
}
