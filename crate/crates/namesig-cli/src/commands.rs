use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use serde::Deserialize;
use serde_json::json;

use namesig::{
    load_kb, merge_analysis, run_bench, save_kb, AnalysisBatch, BenchConfig, Dictionary, KbRecord,
    MetricKind, NgramMode, SignifResult, Thresholds,
};

use crate::{DictOpts, ScoringOpts};

struct Scoring {
    dictionary: Dictionary,
    metric: MetricKind,
    thresholds: Thresholds,
}

fn load_dictionary(opts: &DictOpts) -> Result<Dictionary> {
    Dictionary::load(&opts.dict, opts.stopwords.as_deref())
        .with_context(|| format!("loading dictionary {}", opts.dict.display()))
}

fn build_scoring(opts: &ScoringOpts) -> Result<Scoring> {
    let mut metric: MetricKind = opts.metric.parse().map_err(anyhow::Error::msg)?;
    if let MetricKind::Ngram { n, .. } = metric {
        let mode = match opts.ngram_mode.as_str() {
            "dp" => NgramMode::Dp,
            "setratio" => NgramMode::SetRatio,
            other => bail!("unknown ngram mode '{other}' (expected dp or setratio)"),
        };
        metric = MetricKind::Ngram { n, mode };
    }
    let thresholds = Thresholds::new(opts.accept, opts.probable)?;
    Ok(Scoring {
        dictionary: load_dictionary(&opts.dict)?,
        metric,
        thresholds,
    })
}

fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

fn result_json(r: &SignifResult) -> serde_json::Value {
    json!({
        "attribut": r.attribut,
        "app": r.app,
        "mppd": r.mppd,
        "sd": round4(r.sd),
        "s": r.s,
        "s_bar": r.s_bar,
        "score": round4(r.score),
        "category": r.category.as_str(),
    })
}

pub fn check(name: &str, opts: &ScoringOpts) -> Result<ExitCode> {
    let scoring = build_scoring(opts)?;
    let result = namesig::score_name(name, &scoring.dictionary, scoring.metric, &scoring.thresholds);
    println!("{}", result_json(&result));
    Ok(if result.admitted(&scoring.thresholds) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Pulls attribute names out of the batch input. Plain text yields one name
/// per line; a `.csv` input must carry a header naming an `attribut` column.
/// Returns (line number, name) pairs; unusable lines are reported and skipped.
fn read_names(path: &Path) -> Result<Vec<(usize, String)>> {
    let content =
        fs::read_to_string(path).with_context(|| format!("reading input {}", path.display()))?;
    let is_csv = path
        .extension()
        .is_some_and(|ext| ext.eq_ignore_ascii_case("csv"));
    let mut names = Vec::new();
    if is_csv {
        let mut lines = content.lines().enumerate();
        let Some((_, header)) = lines.next() else {
            return Ok(names);
        };
        let columns: Vec<String> = header
            .split(',')
            .map(|c| c.trim().to_ascii_lowercase())
            .collect();
        let attribut_idx = columns
            .iter()
            .position(|c| c == "attribut")
            .context("CSV input needs a header with an 'attribut' column")?;
        for (idx, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            match fields.get(attribut_idx) {
                Some(name) => names.push((idx + 1, name.trim().to_string())),
                None => eprintln!("line {}: missing attribut column, skipped", idx + 1),
            }
        }
    } else {
        for (idx, line) in content.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            names.push((idx + 1, line.trim().to_string()));
        }
    }
    Ok(names)
}

pub fn batch(input: &Path, output: Option<&Path>, opts: &ScoringOpts) -> Result<ExitCode> {
    let scoring = build_scoring(opts)?;
    let names = read_names(input)?;
    let mut out: Box<dyn Write> = match output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(std::io::stdout().lock()),
    };
    for (_, name) in &names {
        let result =
            namesig::score_name(name, &scoring.dictionary, scoring.metric, &scoring.thresholds);
        writeln!(out, "{}", result_json(&result))?;
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

pub fn dict_build(raw: &Path, stopwords: Option<&Path>, out: &Path) -> Result<ExitCode> {
    let dictionary = Dictionary::load(raw, stopwords)
        .with_context(|| format!("building dictionary from {}", raw.display()))?;
    let mut writer = BufWriter::new(
        File::create(out).with_context(|| format!("creating {}", out.display()))?,
    );
    for word in dictionary.words() {
        writeln!(writer, "{word}")?;
    }
    writer.flush()?;
    let stats = dictionary.stats();
    eprintln!(
        "wrote {} words (lengths {}..={}) to {}",
        stats.word_count,
        stats.min_len,
        stats.max_len,
        out.display()
    );
    Ok(ExitCode::SUCCESS)
}

/// One analysis batch as it arrives from the upstream detector.
#[derive(Debug, Deserialize)]
struct BatchLine {
    #[serde(rename = "Domaine")]
    domaine: String,
    #[serde(rename = "Table")]
    table: String,
    #[serde(rename = "Attribut")]
    attribut: String,
    #[serde(rename = "Taille")]
    taille: u64,
    #[serde(rename = "Taux")]
    taux: BTreeMap<String, u32>,
}

pub fn kb_ingest(kb_path: &Path, records: &Path, opts: &ScoringOpts) -> Result<ExitCode> {
    let scoring = build_scoring(opts)?;
    let mut kb: Vec<KbRecord> = if kb_path.exists() {
        load_kb(kb_path)?
    } else {
        Vec::new()
    };
    let file =
        File::open(records).with_context(|| format!("reading batches {}", records.display()))?;
    let mut ingested = 0usize;
    let mut rejected = 0usize;
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed: BatchLine = match serde_json::from_str(&line) {
            Ok(parsed) => parsed,
            Err(err) => {
                eprintln!("line {}: invalid batch record, skipped: {err}", idx + 1);
                continue;
            }
        };
        if !namesig::admit(
            &parsed.attribut,
            &scoring.dictionary,
            scoring.metric,
            &scoring.thresholds,
        ) {
            eprintln!(
                "line {}: attribute {:?} has no recognizable meaning, not stored",
                idx + 1,
                parsed.attribut
            );
            rejected += 1;
            continue;
        }
        let batch = AnalysisBatch {
            domaine: parsed.domaine,
            table: parsed.table,
            attribut: parsed.attribut,
            rows: parsed.taille,
            rates: parsed.taux.into_iter().collect(),
        };
        let position = kb.iter().position(|r| {
            r.key() == (batch.domaine.as_str(), batch.table.as_str(), batch.attribut.as_str())
        });
        match position {
            Some(i) => {
                let existing = kb.remove(i);
                let merged = merge_analysis(Some(existing), batch)?;
                kb.insert(i, merged);
            }
            None => kb.push(merge_analysis(None, batch)?),
        }
        ingested += 1;
    }
    save_kb(&kb, kb_path)?;
    eprintln!(
        "ingested {ingested} batch(es), rejected {rejected}, knowledge base now holds {} record(s)",
        kb.len()
    );
    Ok(ExitCode::SUCCESS)
}

pub fn kb_query(
    kb_path: &Path,
    domaine: Option<&str>,
    table: Option<&str>,
    attribut: Option<&str>,
) -> Result<ExitCode> {
    let kb = load_kb(kb_path)?;
    let mut out = std::io::stdout().lock();
    for record in kb.iter().filter(|r| {
        domaine.is_none_or(|d| r.domaine == d)
            && table.is_none_or(|t| r.table == t)
            && attribut.is_none_or(|a| r.attribut == a)
    }) {
        writeln!(out, "{}", serde_json::to_string(record)?)?;
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
pub fn bench_run(
    metrics: &[String],
    sizes: &[usize],
    seed: u64,
    reps: usize,
    parallel: bool,
    output: Option<&Path>,
    dict: &DictOpts,
) -> Result<ExitCode> {
    let dictionary = load_dictionary(dict)?;
    let metrics: Vec<MetricKind> = metrics
        .iter()
        .map(|m| m.parse().map_err(anyhow::Error::msg))
        .collect::<Result<_>>()?;
    if sizes.is_empty() {
        bail!("at least one group size is required");
    }
    if reps == 0 {
        bail!("at least one repetition is required");
    }
    let config = BenchConfig {
        metrics,
        sizes: sizes.to_vec(),
        repetitions: reps,
        seed,
        parallel,
    };
    eprintln!(
        "timing {} name group(s) against {} dictionary words (synthetic corpus, seed {seed})",
        sizes.len(),
        dictionary.len()
    );
    let report = run_bench(&dictionary, &config);
    match output {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            report.write_csv(BufWriter::new(file))?;
        }
        None => report.write_csv(std::io::stdout().lock())?,
    }
    Ok(ExitCode::SUCCESS)
}
