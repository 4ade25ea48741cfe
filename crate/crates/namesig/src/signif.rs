//! Two-pass meaningfulness scoring for attribute names.
//!
//! Pass one strips every contained dictionary word longer than three
//! characters, so compound names like "médecintraitant" decompose fully.
//! Pass two finds the dictionary word closest to the residual and reinforces
//! that base similarity exponentially: the score is `sd^(s_bar/s)`, where `s`
//! counts explained characters (removed words plus the longest common
//! substring with the best match) and `s_bar` counts the characters of the
//! residual and the match that stay unexplained. The exponent stretches the
//! gap between names that almost decompose and names that match nothing.

use serde::Serialize;

use crate::dictionary::Dictionary;
use crate::metrics::{char_len, longest_common_substring, MetricKind};
use crate::normalize::{has_letters, normalize, NormalizedName};

/// Scores at or above this count as fully meaningful (floating-point guard
/// for exact decompositions).
pub const MEANINGFUL_EPSILON: f64 = 0.005;

#[derive(Debug, thiserror::Error)]
#[error("invalid thresholds: require 0 <= probable ({probable}) <= accept ({accept}) <= 1")]
pub struct ThresholdError {
    pub accept: f64,
    pub probable: f64,
}

/// Decision thresholds: `accept` gates knowledge-base admission, `probable`
/// separates probably-meaningful from meaningless.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub accept: f64,
    pub probable: f64,
}

impl Thresholds {
    pub fn new(accept: f64, probable: f64) -> Result<Self, ThresholdError> {
        let valid = (0.0..=1.0).contains(&probable)
            && (0.0..=1.0).contains(&accept)
            && probable <= accept;
        if valid {
            Ok(Thresholds { accept, probable })
        } else {
            Err(ThresholdError { accept, probable })
        }
    }
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            accept: 0.7,
            probable: 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Meaningful,
    Probable,
    Meaningless,
}

impl Category {
    pub fn as_str(&self) -> &'static str {
        match self {
            Category::Meaningful => "meaningful",
            Category::Probable => "probable",
            Category::Meaningless => "meaningless",
        }
    }
}

/// Outcome of first-pass compound decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FirstPassResult {
    /// Residual name after removals.
    pub app: String,
    /// Total characters removed.
    pub explained: usize,
    /// Removed words with their occurrence counts, in removal order.
    pub removed: Vec<(String, usize)>,
}

/// Full scoring outcome for one attribute name.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignifResult {
    pub attribut: String,
    pub app: String,
    pub mppd: Option<String>,
    pub sd: f64,
    pub s: usize,
    pub s_bar: usize,
    pub score: f64,
    pub category: Category,
}

impl SignifResult {
    pub fn admitted(&self, thresholds: &Thresholds) -> bool {
        self.score >= thresholds.accept
    }
}

/// Removes every dictionary word longer than three characters that the name
/// contains, longest word first. All occurrences of a word are removed at
/// once and each occurrence adds the word's length to `explained`. Each
/// dictionary word is tried exactly once; removal can splice characters
/// together but the resulting residual is never rescanned.
pub fn first_pass(name: &NormalizedName, dictionary: &Dictionary) -> FirstPassResult {
    let mut app = name.normalized.clone();
    let mut app_len = char_len(&app);
    let mut explained = 0usize;
    let mut removed = Vec::new();

    // Words longer than the residual cannot be contained in it; with the
    // dictionary sorted longest first they form a prefix that can be skipped
    // wholesale, and re-skipped whenever a removal shrinks the residual.
    let entries = dictionary.entries();
    let long_end = entries.partition_point(|w| w.char_len >= crate::dictionary::LONG_WORD_MIN);
    let mut i = entries[..long_end].partition_point(|w| w.char_len > app_len);
    while i < long_end && !app.is_empty() {
        let entry = &entries[i];
        if entry.char_len > app_len {
            i += entries[i..long_end].partition_point(|w| w.char_len > app_len);
            continue;
        }
        let occurrences = app.matches(entry.text.as_str()).count();
        if occurrences > 0 {
            app = app.replace(entry.text.as_str(), "");
            explained += entry.char_len * occurrences;
            app_len -= entry.char_len * occurrences;
            removed.push((entry.text.clone(), occurrences));
        }
        i += 1;
    }
    FirstPassResult {
        app,
        explained,
        removed,
    }
}

/// Scans the whole dictionary (no length filter: three-letter words like
/// "âge" are legitimate second-pass matches) and returns the word with the
/// highest similarity to `app`. Exact similarity ties go to the longer word,
/// then to the lexicographically larger one.
pub fn best_match(app: &str, dictionary: &Dictionary, metric: MetricKind) -> (String, f64) {
    let app_len = char_len(app);
    let use_bound = metric.supports_length_bound();
    let mut scorer = crate::metrics::Scorer::new(metric);
    let mut best: Option<(&crate::dictionary::DictWord, f64)> = None;
    for entry in dictionary.entries() {
        if let Some((best_entry, best_sim)) = best {
            if use_bound {
                // 1 - |len difference| / max(len) bounds the similarity from
                // above; strictly worse words can be skipped without scoring.
                let max = app_len.max(entry.char_len);
                if max > 0 {
                    let diff = app_len.abs_diff(entry.char_len);
                    let upper = 1.0 - diff as f64 / max as f64;
                    if upper < best_sim {
                        continue;
                    }
                }
            }
            let sim = scorer.similarity(app, &entry.text);
            let wins = sim > best_sim
                || (sim == best_sim
                    && (entry.char_len > best_entry.char_len
                        || (entry.char_len == best_entry.char_len
                            && entry.text > best_entry.text)));
            if wins {
                best = Some((entry, sim));
            }
        } else {
            best = Some((entry, scorer.similarity(app, &entry.text)));
        }
    }
    let (entry, sim) = best.expect("dictionary is non-empty by construction");
    (entry.text.clone(), sim)
}

/// Raises the base similarity to the power `s_bar / s`. With `s = 0` nothing
/// at all was explained: any similarity below 1 collapses to 0 (the exponent
/// diverges), and exactly 1 stays 1.
pub fn reinforce(sd: f64, s: usize, s_bar: usize) -> f64 {
    if s == 0 {
        return if sd < 1.0 { 0.0 } else { 1.0 };
    }
    sd.powf(s_bar as f64 / s as f64)
}

/// Scores a single attribute name.
pub fn score_name(
    name: &str,
    dictionary: &Dictionary,
    metric: MetricKind,
    thresholds: &Thresholds,
) -> SignifResult {
    let normalized = normalize(name);
    let pass = first_pass(&normalized, dictionary);

    if pass.app.is_empty() || !has_letters(&pass.app) {
        // Nothing left to match. A name that decomposed into dictionary
        // words is meaningful; an input that had no letters to begin with
        // explained nothing and scores zero.
        let sd = if pass.explained > 0 { 1.0 } else { 0.0 };
        let score = reinforce(sd, pass.explained, 0);
        return SignifResult {
            attribut: name.to_string(),
            app: pass.app,
            mppd: None,
            sd,
            s: pass.explained,
            s_bar: 0,
            score,
            category: categorize(score, thresholds),
        };
    }

    let (mppd, sd) = best_match(&pass.app, dictionary, metric);
    let lcs = longest_common_substring(&pass.app, &mppd);
    let s = pass.explained + lcs;
    let s_bar = char_len(&pass.app) + char_len(&mppd) - 2 * lcs;
    let score = reinforce(sd, s, s_bar);
    SignifResult {
        attribut: name.to_string(),
        app: pass.app,
        mppd: Some(mppd),
        sd,
        s,
        s_bar,
        score,
        category: categorize(score, thresholds),
    }
}

/// Scores a batch of names, preserving input order.
pub fn has_signification<I, S>(
    names: I,
    dictionary: &Dictionary,
    metric: MetricKind,
    thresholds: &Thresholds,
) -> Vec<SignifResult>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    names
        .into_iter()
        .map(|name| score_name(name.as_ref(), dictionary, metric, thresholds))
        .collect()
}

/// Best whole-name similarity with no decomposition and no reinforcement:
/// the naive one-pass scoring that the reinforced algorithm improves on.
pub fn raw_best_match(name: &str, dictionary: &Dictionary, metric: MetricKind) -> (String, f64) {
    let normalized = normalize(name);
    best_match(&normalized.normalized, dictionary, metric)
}

fn categorize(score: f64, thresholds: &Thresholds) -> Category {
    if score >= 1.0 - MEANINGFUL_EPSILON {
        Category::Meaningful
    } else if score >= thresholds.probable {
        Category::Probable
    } else {
        Category::Meaningless
    }
}
