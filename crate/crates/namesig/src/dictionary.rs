//! The language dictionary both scoring passes run against.
//!
//! Words are normalized, deduplicated, stopword-filtered and sorted longest
//! first (ties lexicographic). Longest-first matters for compound
//! decomposition: a name containing "traitant" must never lose the embedded
//! "trait" first, leaving an unmatchable "ant" behind.

use std::collections::BTreeSet;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::metrics::char_len;
use crate::normalize::normalize;

/// First-pass decomposition only considers words longer than this;
/// even a random string tends to contain some short word.
pub const LONG_WORD_MIN: usize = 4;

#[derive(Debug, thiserror::Error)]
pub enum DictionaryError {
    #[error("empty dictionary")]
    Empty,
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

/// Word count and length range of the built dictionary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceStats {
    pub word_count: usize,
    pub min_len: usize,
    pub max_len: usize,
}

#[derive(Debug, Clone)]
pub(crate) struct DictWord {
    pub(crate) text: String,
    pub(crate) char_len: usize,
}

/// Immutable, ordered word list. Construction guarantees it is non-empty,
/// duplicate-free, normalized and sorted by descending length with
/// lexicographic tie-breaks, so it can be shared freely across threads.
#[derive(Debug, Clone)]
pub struct Dictionary {
    words: Vec<DictWord>,
    stats: SourceStats,
}

impl Dictionary {
    /// Normalizes, deduplicates, removes stopwords and sorts.
    ///
    /// Words that normalize to the empty string are dropped. Errors if
    /// nothing survives filtering.
    pub fn build<I, S, J, T>(raw_words: I, stopwords: J) -> Result<Self, DictionaryError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
        J: IntoIterator<Item = T>,
        T: AsRef<str>,
    {
        let stop: BTreeSet<String> = stopwords
            .into_iter()
            .map(|w| normalize(w.as_ref()).normalized)
            .collect();
        let unique: BTreeSet<String> = raw_words
            .into_iter()
            .map(|w| normalize(w.as_ref()).normalized)
            .filter(|w| !w.is_empty() && !stop.contains(w))
            .collect();
        if unique.is_empty() {
            return Err(DictionaryError::Empty);
        }
        let mut words: Vec<DictWord> = unique
            .into_iter()
            .map(|text| {
                let char_len = char_len(&text);
                DictWord { text, char_len }
            })
            .collect();
        words.sort_by(|a, b| {
            b.char_len
                .cmp(&a.char_len)
                .then_with(|| a.text.cmp(&b.text))
        });
        let stats = SourceStats {
            word_count: words.len(),
            min_len: words.iter().map(|w| w.char_len).min().unwrap_or(0),
            max_len: words.first().map(|w| w.char_len).unwrap_or(0),
        };
        Ok(Dictionary { words, stats })
    }

    /// Builds a dictionary from a word file, optionally filtered by a
    /// stopword file. Both files are UTF-8 text with one word per line;
    /// blank lines and lines starting with '#' are ignored.
    pub fn load(path: &Path, stopwords: Option<&Path>) -> Result<Self, DictionaryError> {
        let words = read_word_file(path)?;
        let stop = match stopwords {
            Some(p) => read_word_file(p)?,
            None => Vec::new(),
        };
        Self::build(words, stop)
    }

    /// All words in dictionary order (longest first).
    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(|w| w.text.as_str())
    }

    /// Words longer than three characters, preserving dictionary order.
    /// These are the candidates for first-pass removal.
    pub fn long_words(&self) -> impl Iterator<Item = &str> {
        self.words
            .iter()
            .take_while(|w| w.char_len >= LONG_WORD_MIN)
            .map(|w| w.text.as_str())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn stats(&self) -> SourceStats {
        self.stats
    }

    pub(crate) fn entries(&self) -> &[DictWord] {
        &self.words
    }
}

/// Reads one word per line, skipping blanks and '#' comment lines.
pub fn read_word_file(path: &Path) -> Result<Vec<String>, DictionaryError> {
    let content = fs::read_to_string(path).map_err(|source| DictionaryError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(content
        .lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .map(str::to_string)
        .collect())
}
