//! Decides whether database attribute names carry linguistic meaning.
//!
//! Data collected from external sources often arrives with cryptic or
//! abbreviated column names. A catalog of personal-data findings keyed on
//! such names degrades quickly: knowledge stored under a meaningless name
//! can never be reused. This crate scores each attribute name against a
//! language dictionary and admits into the knowledge base only names whose
//! score clears a configurable threshold.
//!
//! Scoring runs in two passes over the dictionary. The first pass strips
//! every contained word longer than three characters, so compound names
//! ("âgeclient", "médecintraitant") decompose into known words. The second
//! pass finds the dictionary word closest to whatever remains, using a
//! configurable string metric, and reinforces that base similarity with an
//! exponent built from the explained and unexplained character counts. The
//! reinforcement is what separates plausible abbreviations ("naiss",
//! "adr-post") from noise ("abteofkf"): raw similarity alone ranks many
//! random strings above genuine abbreviations.
//!
//! ```
//! use namesig::{Dictionary, MetricKind, Thresholds, score_name};
//!
//! let dictionary = Dictionary::build(
//!     ["âge", "client", "naissance", "naisse"],
//!     std::iter::empty::<&str>(),
//! ).unwrap();
//! let thresholds = Thresholds::default();
//!
//! let compound = score_name("ÂgeClient", &dictionary, MetricKind::Levenshtein, &thresholds);
//! assert_eq!(compound.score, 1.0);
//!
//! let noise = score_name("qzpfwk", &dictionary, MetricKind::Levenshtein, &thresholds);
//! assert!(!noise.admitted(&thresholds));
//! ```

pub mod bench;
pub mod dictionary;
pub mod kb;
pub mod metrics;
pub mod normalize;
pub mod signif;

pub use bench::{generate_corpus, run_bench, BenchConfig, BenchReport, BenchRow};
pub use dictionary::{read_word_file, Dictionary, DictionaryError, SourceStats};
pub use kb::{admit, load_kb, merge_analysis, save_kb, AnalysisBatch, KbError, KbRecord, ReferenceScore};
pub use metrics::{
    jaro, jaro_winkler, levenshtein_distance, levenshtein_sim, longest_common_substring,
    ngram_set_ratio, ngram_sim, MetricKind, NgramMode,
};
pub use normalize::{has_letters, normalize, NormalizedName};
pub use signif::{
    best_match, first_pass, has_signification, raw_best_match, reinforce, score_name, Category,
    FirstPassResult, SignifResult, ThresholdError, Thresholds,
};
