//! Knowledge-base records for analyzed attributes.
//!
//! Each record accumulates, per analysis batch, how many rows were inspected
//! (`Taille`) and which share of them matched each personal-data reference
//! (`Taux`). `Taux_Final` is the batch-size-weighted mean of a reference's
//! rates, rounded half-up. The store is JSON Lines with the exact field
//! names of the upstream catalog, accents included.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dictionary::Dictionary;
use crate::metrics::MetricKind;
use crate::signif::{score_name, Thresholds};

#[derive(Debug, thiserror::Error)]
pub enum KbError {
    #[error("batch size must be positive")]
    InvalidBatchSize,
    #[error("rate {taux} for reference {reference:?} is outside 0..=100")]
    RateOutOfRange { reference: String, taux: u32 },
    #[error("empty reference name")]
    EmptyReference,
    #[error("record key mismatch: expected {expected:?}, got {got:?}")]
    KeyMismatch { expected: String, got: String },
    #[error("line {line}: invalid record: {source}")]
    Parse {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("line {line}: field {field}: {detail}")]
    Invariant {
        line: usize,
        field: &'static str,
        detail: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

/// Detection rates of one personal-data reference across analysis batches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceScore {
    #[serde(rename = "Référence")]
    pub reference: String,
    #[serde(rename = "Taux")]
    pub taux: Vec<u32>,
    #[serde(rename = "Taux_Final")]
    pub taux_final: u32,
}

/// One analyzed attribute with its per-batch sizes and reference scores.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KbRecord {
    #[serde(rename = "Domaine")]
    pub domaine: String,
    #[serde(rename = "Table")]
    pub table: String,
    #[serde(rename = "Attribut")]
    pub attribut: String,
    #[serde(rename = "Taille")]
    pub taille: Vec<u64>,
    #[serde(rename = "Taille_Totale")]
    pub taille_totale: u64,
    #[serde(rename = "Scoring")]
    pub scoring: Vec<ReferenceScore>,
}

impl KbRecord {
    pub fn key(&self) -> (&str, &str, &str) {
        (&self.domaine, &self.table, &self.attribut)
    }
}

/// One new analysis run to fold into the knowledge base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisBatch {
    pub domaine: String,
    pub table: String,
    pub attribut: String,
    /// Rows analyzed in this batch.
    pub rows: u64,
    /// (reference, rate in percent) pairs observed in this batch.
    pub rates: Vec<(String, u32)>,
}

/// True iff the attribute name scores at or above the admission threshold.
pub fn admit(
    attribut: &str,
    dictionary: &Dictionary,
    metric: MetricKind,
    thresholds: &Thresholds,
) -> bool {
    score_name(attribut, dictionary, metric, thresholds).admitted(thresholds)
}

/// Batch-size-weighted mean of the rates, rounded half-up.
fn weighted_final(taille: &[u64], taux: &[u32]) -> u32 {
    let num: u64 = taille
        .iter()
        .zip(taux.iter())
        .map(|(t, x)| t * u64::from(*x))
        .sum();
    let den: u64 = taille.iter().sum();
    if den == 0 {
        return 0;
    }
    ((2 * num + den) / (2 * den)) as u32
}

/// Folds a batch into an existing record, or starts a new one.
///
/// The batch size is appended to `Taille`; every reference receives one new
/// rate entry (0 when the batch did not report it, and references first seen
/// now are back-filled with 0 for earlier batches), keeping each `Taux` list
/// aligned with `Taille`. All `Taux_Final` values are recomputed.
pub fn merge_analysis(
    existing: Option<KbRecord>,
    batch: AnalysisBatch,
) -> Result<KbRecord, KbError> {
    if batch.rows == 0 {
        return Err(KbError::InvalidBatchSize);
    }
    for (reference, taux) in &batch.rates {
        if reference.is_empty() {
            return Err(KbError::EmptyReference);
        }
        if *taux > 100 {
            return Err(KbError::RateOutOfRange {
                reference: reference.clone(),
                taux: *taux,
            });
        }
    }

    let mut record = match existing {
        Some(record) => {
            let expected = format!("{}/{}/{}", record.domaine, record.table, record.attribut);
            let got = format!("{}/{}/{}", batch.domaine, batch.table, batch.attribut);
            if expected != got {
                return Err(KbError::KeyMismatch { expected, got });
            }
            record
        }
        None => KbRecord {
            domaine: batch.domaine,
            table: batch.table,
            attribut: batch.attribut,
            taille: Vec::new(),
            taille_totale: 0,
            scoring: Vec::new(),
        },
    };

    let prior_batches = record.taille.len();
    record.taille.push(batch.rows);
    record.taille_totale = record.taille.iter().sum();

    // Existing references default to 0 for this batch.
    for score in &mut record.scoring {
        score.taux.push(0);
    }
    for (reference, taux) in batch.rates {
        match record.scoring.iter_mut().find(|s| s.reference == reference) {
            Some(score) => *score.taux.last_mut().expect("pushed above") = taux,
            None => {
                let mut rates = vec![0; prior_batches];
                rates.push(taux);
                record.scoring.push(ReferenceScore {
                    reference,
                    taux: rates,
                    taux_final: 0,
                });
            }
        }
    }
    for score in &mut record.scoring {
        score.taux_final = weighted_final(&record.taille, &score.taux);
    }
    Ok(record)
}

fn validate(record: &KbRecord, line: usize) -> Result<(), KbError> {
    let invariant = |field: &'static str, detail: String| KbError::Invariant {
        line,
        field,
        detail,
    };
    if record.taille.is_empty() || record.taille.contains(&0) {
        return Err(invariant(
            "Taille",
            "batch sizes must be present and positive".into(),
        ));
    }
    let sum: u64 = record.taille.iter().sum();
    if record.taille_totale != sum {
        return Err(invariant(
            "Taille_Totale",
            format!("is {}, expected sum of Taille = {sum}", record.taille_totale),
        ));
    }
    let mut seen = std::collections::BTreeSet::new();
    for score in &record.scoring {
        if !seen.insert(&score.reference) {
            return Err(invariant(
                "Référence",
                format!("duplicate reference {:?}", score.reference),
            ));
        }
        if score.taux.len() != record.taille.len() {
            return Err(invariant(
                "Taux",
                format!(
                    "reference {:?} has {} rates for {} batches",
                    score.reference,
                    score.taux.len(),
                    record.taille.len()
                ),
            ));
        }
        if let Some(bad) = score.taux.iter().find(|x| **x > 100) {
            return Err(invariant(
                "Taux",
                format!("reference {:?} has rate {bad} outside 0..=100", score.reference),
            ));
        }
        let expected = weighted_final(&record.taille, &score.taux);
        if score.taux_final != expected {
            return Err(invariant(
                "Taux_Final",
                format!(
                    "reference {:?} has {}, expected weighted mean {expected}",
                    score.reference, score.taux_final
                ),
            ));
        }
    }
    Ok(())
}

/// Reads a JSON Lines knowledge base, validating every record.
pub fn load_kb(path: &Path) -> Result<Vec<KbRecord>, KbError> {
    let file = File::open(path).map_err(|source| KbError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    load_kb_reader(BufReader::new(file), path)
}

fn load_kb_reader(reader: impl BufRead, path: &Path) -> Result<Vec<KbRecord>, KbError> {
    let mut records = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| KbError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let number = idx + 1;
        let record: KbRecord =
            serde_json::from_str(&line).map_err(|source| KbError::Parse {
                line: number,
                source,
            })?;
        validate(&record, number)?;
        records.push(record);
    }
    Ok(records)
}

/// Writes records as JSON Lines, one record per line.
pub fn save_kb(records: &[KbRecord], path: &Path) -> Result<(), KbError> {
    let io_err = |source| KbError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    let mut writer = BufWriter::new(file);
    for record in records {
        let json = serde_json::to_string(record).expect("record serialization cannot fail");
        writeln!(writer, "{json}").map_err(io_err)?;
    }
    writer.flush().map_err(io_err)?;
    Ok(())
}
