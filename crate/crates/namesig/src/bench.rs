//! Scoring throughput measurements: metric against metric, and dictionary
//! size against run time.
//!
//! Name groups are synthetic (the real attribute-name corpora are not
//! available): a seeded mix of dictionary-word concatenations, abbreviations
//! and random strings, one third each. Reports carry wall-clock medians; runs
//! are single-threaded unless parallel scoring is requested, in which case
//! rows are labeled separately.

use std::io::{self, Write};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dictionary::Dictionary;
use crate::metrics::MetricKind;
use crate::signif::{has_signification, Thresholds};

/// What to measure.
#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub metrics: Vec<MetricKind>,
    pub sizes: Vec<usize>,
    pub repetitions: usize,
    pub seed: u64,
    /// Fan names out across threads. Timings are then only comparable with
    /// other parallel rows, so the metric label is marked.
    pub parallel: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            metrics: vec![MetricKind::Levenshtein, MetricKind::ngram(2)],
            sizes: vec![100, 1000, 2000, 5000, 10000],
            repetitions: 5,
            seed: 42,
            parallel: false,
        }
    }
}

/// One measured (metric, group size) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub metric: String,
    pub dict_words: usize,
    pub group_size: usize,
    pub elapsed_ms: f64,
    pub names_per_sec: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    /// CSV with header `metric,dict_words,group_size,elapsed_ms,names_per_sec`.
    pub fn write_csv(&self, mut out: impl Write) -> io::Result<()> {
        writeln!(out, "metric,dict_words,group_size,elapsed_ms,names_per_sec")?;
        for row in &self.rows {
            writeln!(
                out,
                "{},{},{},{:.3},{:.1}",
                row.metric, row.dict_words, row.group_size, row.elapsed_ms, row.names_per_sec
            )?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }
}

/// Deterministic synthetic attribute names drawn from the dictionary.
///
/// Names cycle through three shapes: concatenations of one or two dictionary
/// words, abbreviations of a dictionary word (vowels dropped or the word
/// truncated), and random letter strings of length 5 to 10. Each name is
/// derived from its own RNG stream, so a corpus of size n is a prefix of any
/// larger corpus with the same seed.
pub fn generate_corpus(dictionary: &Dictionary, size: usize, seed: u64) -> Vec<String> {
    let words: Vec<&str> = dictionary.words().collect();
    (0..size)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            match i % 3 {
                0 => {
                    let count = rng.gen_range(1..=2);
                    (0..count)
                        .map(|_| words[rng.gen_range(0..words.len())])
                        .collect::<Vec<_>>()
                        .concat()
                }
                1 => abbreviate(words[rng.gen_range(0..words.len())], &mut rng),
                _ => {
                    let len = rng.gen_range(5..=10);
                    (0..len)
                        .map(|_| (b'a' + rng.gen_range(0..26)) as char)
                        .collect()
                }
            }
        })
        .collect()
}

fn abbreviate(word: &str, rng: &mut ChaCha8Rng) -> String {
    let chars: Vec<char> = word.chars().collect();
    if rng.gen_bool(0.5) {
        // Drop vowels after the first character.
        let abbreviated: String = chars
            .iter()
            .enumerate()
            .filter(|(i, c)| *i == 0 || !matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y'))
            .map(|(_, c)| *c)
            .collect();
        if abbreviated.chars().count() >= 2 {
            return abbreviated;
        }
    }
    let keep = (chars.len() / 2).max(2).min(chars.len());
    chars[..keep].iter().collect()
}

/// Times `has_signification` for every (metric, group size) pair and reports
/// the median over the configured repetitions.
pub fn run_bench(dictionary: &Dictionary, config: &BenchConfig) -> BenchReport {
    assert!(!config.sizes.is_empty(), "at least one group size required");
    assert!(config.repetitions >= 1, "at least one repetition required");
    let thresholds = Thresholds::default();
    let mut rows = Vec::new();
    for &metric in &config.metrics {
        for &size in &config.sizes {
            let names = generate_corpus(dictionary, size, config.seed);
            let mut runs: Vec<Duration> = (0..config.repetitions)
                .map(|_| {
                    let start = Instant::now();
                    let results = if config.parallel {
                        score_parallel(&names, dictionary, metric, &thresholds)
                    } else {
                        has_signification(&names, dictionary, metric, &thresholds)
                    };
                    let elapsed = start.elapsed();
                    std::hint::black_box(&results);
                    elapsed
                })
                .collect();
            runs.sort();
            let median = median_duration(&runs);
            let elapsed_ms = median.as_secs_f64() * 1e3;
            let label = if config.parallel {
                format!("{metric}+parallel")
            } else {
                metric.to_string()
            };
            rows.push(BenchRow {
                metric: label,
                dict_words: dictionary.len(),
                group_size: size,
                elapsed_ms,
                names_per_sec: if median.as_secs_f64() > 0.0 {
                    size as f64 / median.as_secs_f64()
                } else {
                    f64::INFINITY
                },
            });
        }
    }
    BenchReport { rows }
}

fn median_duration(sorted: &[Duration]) -> Duration {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2
    }
}

fn score_parallel(
    names: &[String],
    dictionary: &Dictionary,
    metric: MetricKind,
    thresholds: &Thresholds,
) -> Vec<crate::signif::SignifResult> {
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(names.len().max(1));
    if workers <= 1 {
        return has_signification(names, dictionary, metric, thresholds);
    }
    let chunk_size = names.len().div_ceil(workers);
    let mut results = Vec::with_capacity(names.len());
    std::thread::scope(|scope| {
        let handles: Vec<_> = names
            .chunks(chunk_size)
            .map(|chunk| {
                scope.spawn(move || has_signification(chunk, dictionary, metric, thresholds))
            })
            .collect();
        for handle in handles {
            results.extend(handle.join().expect("scoring worker panicked"));
        }
    });
    results
}
