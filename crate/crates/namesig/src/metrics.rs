//! String similarity functions, each normalized to [0, 1]
//! (1 = identical, 0 = completely different).
//!
//! All functions compare character sequences as-is: callers are expected to
//! pass already-normalized strings (see [`crate::normalize`]). Inputs that are
//! pure ASCII take an allocation-free byte path.
//!
//! The n-gram similarity is a gram-based edit distance: the source string is
//! padded with n-1 leading sentinel characters, substituting one n-gram for
//! another costs (mismatching positions)/n, inserting or deleting a gram costs
//! 1, and the final distance is normalized by the longer length. A plain
//! set-ratio variant (shared grams over the union of grams) is kept as an
//! alternate mode for comparison.

use std::fmt;
use std::str::FromStr;

const WINKLER_PREFIX_WEIGHT: f64 = 0.1;
const WINKLER_BOOST_THRESHOLD: f64 = 0.7;

/// How n-gram similarity is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NgramMode {
    /// Gram-based edit distance (the default).
    Dp,
    /// Shared grams divided by the union of grams.
    SetRatio,
}

/// Selects a similarity function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    Levenshtein,
    /// n must be at least 2.
    Ngram { n: usize, mode: NgramMode },
    Jaro,
    JaroWinkler,
}

impl MetricKind {
    /// Gram-based edit-distance n-gram metric.
    pub fn ngram(n: usize) -> Self {
        MetricKind::Ngram {
            n,
            mode: NgramMode::Dp,
        }
    }

    pub fn similarity(&self, a: &str, b: &str) -> f64 {
        match *self {
            MetricKind::Levenshtein => levenshtein_sim(a, b),
            MetricKind::Ngram {
                n,
                mode: NgramMode::Dp,
            } => ngram_sim(a, b, n),
            MetricKind::Ngram {
                n,
                mode: NgramMode::SetRatio,
            } => ngram_set_ratio(a, b, n),
            MetricKind::Jaro => jaro(a, b),
            MetricKind::JaroWinkler => jaro_winkler(a, b),
        }
    }

    /// Whether `1 - |len(a)-len(b)| / max(len)` is a valid upper bound on the
    /// similarity. Holds for edit-distance style metrics where covering a
    /// length difference costs at least one unit per character.
    pub(crate) fn supports_length_bound(&self) -> bool {
        matches!(
            self,
            MetricKind::Levenshtein
                | MetricKind::Ngram {
                    mode: NgramMode::Dp,
                    ..
                }
        )
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MetricKind::Levenshtein => write!(f, "levenshtein"),
            MetricKind::Ngram {
                n,
                mode: NgramMode::Dp,
            } => write!(f, "{n}gram"),
            MetricKind::Ngram {
                n,
                mode: NgramMode::SetRatio,
            } => write!(f, "{n}gram-setratio"),
            MetricKind::Jaro => write!(f, "jaro"),
            MetricKind::JaroWinkler => write!(f, "jaro-winkler"),
        }
    }
}

impl FromStr for MetricKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "levenshtein" => return Ok(MetricKind::Levenshtein),
            "jaro" => return Ok(MetricKind::Jaro),
            "jaro-winkler" | "jaro_winkler" => return Ok(MetricKind::JaroWinkler),
            _ => {}
        }
        if let Some(prefix) = s.strip_suffix("gram") {
            if let Ok(n) = prefix.parse::<usize>() {
                if n >= 2 {
                    return Ok(MetricKind::ngram(n));
                }
            }
        }
        Err(format!(
            "unknown metric '{s}' (expected levenshtein, 2gram, 3gram, jaro or jaro-winkler)"
        ))
    }
}

#[inline]
pub(crate) fn char_len(s: &str) -> usize {
    if s.is_ascii() {
        s.len()
    } else {
        s.chars().count()
    }
}

/// Minimum number of single-character insertions, deletions and substitutions
/// transforming `a` into `b`.
pub fn levenshtein_distance(a: &str, b: &str) -> usize {
    if a == b {
        return 0;
    }
    if a.is_ascii() && b.is_ascii() {
        lev_slices(a.as_bytes(), b.as_bytes())
    } else {
        let ca: Vec<char> = a.chars().collect();
        let cb: Vec<char> = b.chars().collect();
        lev_slices(&ca, &cb)
    }
}

/// Levenshtein distance normalized by the longer length:
/// `1 - d(a,b) / max(|a|,|b|)`. Two empty strings count as identical.
pub fn levenshtein_sim(a: &str, b: &str) -> f64 {
    let max = char_len(a).max(char_len(b));
    if max == 0 {
        return 1.0;
    }
    1.0 - levenshtein_distance(a, b) as f64 / max as f64
}

fn lev_slices<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut row = Vec::new();
    lev_slices_buffered(a, b, &mut row)
}

// Single-row dynamic program; `row` is scratch space reused across calls.
fn lev_slices_buffered<T: PartialEq>(a: &[T], b: &[T], row: &mut Vec<u32>) -> usize {
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    row.clear();
    row.extend(0..=b.len() as u32);
    for (i, ai) in a.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i as u32 + 1;
        for (j, bj) in b.iter().enumerate() {
            let above = row[j + 1];
            let sub = diag + u32::from(ai != bj);
            row[j + 1] = sub.min(above + 1).min(row[j] + 1);
            diag = above;
        }
    }
    row[b.len()] as usize
}

/// Jaro similarity: matching window `max(|a|,|b|)/2 - 1`, value
/// `(m/|a| + m/|b| + (m-t)/m) / 3` with `m` matches and `t` transpositions.
pub fn jaro(a: &str, b: &str) -> f64 {
    if a == b {
        return 1.0;
    }
    if a.is_ascii() && b.is_ascii() {
        jaro_slices(a.as_bytes(), b.as_bytes())
    } else {
        let ca: Vec<char> = a.chars().collect();
        let cb: Vec<char> = b.chars().collect();
        jaro_slices(&ca, &cb)
    }
}

fn jaro_slices<T: PartialEq>(a: &[T], b: &[T]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let window = (a.len().max(b.len()) / 2).saturating_sub(1);
    let mut a_match = vec![false; a.len()];
    let mut b_match = vec![false; b.len()];
    let mut matches = 0usize;
    for (i, ai) in a.iter().enumerate() {
        let lo = i.saturating_sub(window);
        let hi = (i + window + 1).min(b.len());
        for j in lo..hi {
            if !b_match[j] && *ai == b[j] {
                a_match[i] = true;
                b_match[j] = true;
                matches += 1;
                break;
            }
        }
    }
    if matches == 0 {
        return 0.0;
    }
    let mut half_transpositions = 0usize;
    let mut j = 0usize;
    for (i, ai) in a.iter().enumerate() {
        if !a_match[i] {
            continue;
        }
        while !b_match[j] {
            j += 1;
        }
        if *ai != b[j] {
            half_transpositions += 1;
        }
        j += 1;
    }
    let transpositions = half_transpositions / 2;
    let m = matches as f64;
    (m / a.len() as f64 + m / b.len() as f64 + (m - transpositions as f64) / m) / 3.0
}

/// Jaro-Winkler: boosts the Jaro score for strings sharing a prefix.
///
/// The boost only applies above a Jaro score of 0.7, and the per-character
/// prefix weight is `min(0.1, 1/max(|a|,|b|))` over the full common prefix,
/// so long strings receive a proportionally smaller bonus.
pub fn jaro_winkler(a: &str, b: &str) -> f64 {
    let j = jaro(a, b);
    if j <= WINKLER_BOOST_THRESHOLD || j >= 1.0 {
        return j;
    }
    let prefix = a
        .chars()
        .zip(b.chars())
        .take_while(|(x, y)| x == y)
        .count();
    let max_len = char_len(a).max(char_len(b));
    let weight = WINKLER_PREFIX_WEIGHT.min(1.0 / max_len as f64);
    j + weight * prefix as f64 * (1.0 - j)
}

/// Gram-based edit-distance similarity (see module docs). `n` must be >= 1;
/// callers normally use 2 or 3. Strings shorter than `n` fall back to
/// per-position character agreement divided by the longer length.
pub fn ngram_sim(a: &str, b: &str, n: usize) -> f64 {
    assert!(n >= 1, "n-gram size must be at least 1");
    if a == b {
        return 1.0;
    }
    if a.is_ascii() && b.is_ascii() {
        ngram_dp_slices(a.as_bytes(), b.as_bytes(), n, 0u8)
    } else {
        let ca: Vec<char> = a.chars().collect();
        let cb: Vec<char> = b.chars().collect();
        ngram_dp_slices(&ca, &cb, n, '\0')
    }
}

fn ngram_dp_slices<T: PartialEq + Copy>(src: &[T], tgt: &[T], n: usize, sentinel: T) -> f64 {
    let mut scratch = NgramScratch::default();
    ngram_dp_buffered(src, tgt, n, sentinel, &mut scratch)
}

#[derive(Debug)]
pub(crate) struct NgramScratch<T> {
    padded: Vec<T>,
    gram: Vec<T>,
    prev: Vec<u32>,
    cur: Vec<u32>,
}

impl<T> Default for NgramScratch<T> {
    fn default() -> Self {
        NgramScratch {
            padded: Vec::new(),
            gram: Vec::new(),
            prev: Vec::new(),
            cur: Vec::new(),
        }
    }
}

// Every cost is a multiple of 1/n, so the program runs on costs scaled by n
// (substitution = mismatch count, insert/delete = n) and divides once at the
// end. Exact, and identical on the byte and char paths.
fn ngram_dp_buffered<T: PartialEq + Copy>(
    src: &[T],
    tgt: &[T],
    n: usize,
    sentinel: T,
    scratch: &mut NgramScratch<T>,
) -> f64 {
    let sl = src.len();
    let tl = tgt.len();
    if sl == 0 || tl == 0 {
        return if sl == tl { 1.0 } else { 0.0 };
    }
    if sl < n || tl < n {
        let agree = src
            .iter()
            .zip(tgt.iter())
            .filter(|(x, y)| x == y)
            .count();
        return agree as f64 / sl.max(tl) as f64;
    }
    let n_cost = n as u32;

    // Source padded with n-1 leading sentinels; gram i covers sa[i-1 .. i-1+n].
    let sa = &mut scratch.padded;
    sa.clear();
    sa.resize(n - 1, sentinel);
    sa.extend_from_slice(src);

    let prev = &mut scratch.prev;
    prev.clear();
    prev.extend((0..=sl as u32).map(|i| i * n_cost));
    let cur = &mut scratch.cur;
    cur.clear();
    cur.resize(sl + 1, 0);
    let gram = &mut scratch.gram;
    gram.clear();
    gram.resize(n, sentinel);

    for j in 1..=tl {
        // j-th target gram, sentinel-padded on the left while j < n.
        if j < n {
            for slot in gram.iter_mut().take(n - j) {
                *slot = sentinel;
            }
            gram[n - j..].copy_from_slice(&tgt[..j]);
        } else {
            gram.copy_from_slice(&tgt[j - n..j]);
        }
        cur[0] = j as u32 * n_cost;
        for i in 1..=sl {
            let mut mismatches = 0u32;
            for (x, y) in sa[i - 1..i - 1 + n].iter().zip(gram.iter()) {
                mismatches += u32::from(x != y);
            }
            cur[i] = (cur[i - 1] + n_cost)
                .min(prev[i] + n_cost)
                .min(prev[i - 1] + mismatches);
        }
        std::mem::swap(prev, cur);
    }
    1.0 - prev[sl] as f64 / (n_cost as usize * sl.max(tl)) as f64
}

/// Metric evaluator that reuses its dynamic-programming buffers across
/// calls. Dictionary scans hit millions of pairs; per-pair allocation is
/// what this avoids. Produces exactly the same values as the free
/// functions.
#[derive(Debug)]
pub(crate) struct Scorer {
    kind: MetricKind,
    lev_row: Vec<u32>,
    ngram_scratch: NgramScratch<u8>,
}

impl Scorer {
    pub(crate) fn new(kind: MetricKind) -> Self {
        Scorer {
            kind,
            lev_row: Vec::new(),
            ngram_scratch: NgramScratch::default(),
        }
    }

    pub(crate) fn similarity(&mut self, a: &str, b: &str) -> f64 {
        if a.is_ascii() && b.is_ascii() {
            match self.kind {
                MetricKind::Levenshtein => {
                    let max = a.len().max(b.len());
                    if max == 0 {
                        return 1.0;
                    }
                    if a == b {
                        return 1.0;
                    }
                    let d = lev_slices_buffered(a.as_bytes(), b.as_bytes(), &mut self.lev_row);
                    return 1.0 - d as f64 / max as f64;
                }
                MetricKind::Ngram {
                    n,
                    mode: NgramMode::Dp,
                } => {
                    if a == b {
                        return 1.0;
                    }
                    return ngram_dp_buffered(
                        a.as_bytes(),
                        b.as_bytes(),
                        n,
                        0u8,
                        &mut self.ngram_scratch,
                    );
                }
                _ => {}
            }
        }
        self.kind.similarity(a, b)
    }
}

/// Alternate n-gram similarity: grams shared by both strings divided by the
/// number of distinct grams overall. No padding.
pub fn ngram_set_ratio(a: &str, b: &str, n: usize) -> f64 {
    assert!(n >= 1, "n-gram size must be at least 1");
    if a == b {
        return 1.0;
    }
    let ca: Vec<char> = a.chars().collect();
    let cb: Vec<char> = b.chars().collect();
    if ca.len() < n || cb.len() < n {
        return 0.0;
    }
    let grams_a: std::collections::HashSet<&[char]> = ca.windows(n).collect();
    let grams_b: std::collections::HashSet<&[char]> = cb.windows(n).collect();
    let shared = grams_a.intersection(&grams_b).count();
    let union = grams_a.union(&grams_b).count();
    shared as f64 / union as f64
}

/// Length of the longest contiguous run of characters occurring in both
/// strings. 0 when either is empty or nothing is shared.
pub fn longest_common_substring(a: &str, b: &str) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    if a.is_ascii() && b.is_ascii() {
        lcs_slices(a.as_bytes(), b.as_bytes())
    } else {
        let ca: Vec<char> = a.chars().collect();
        let cb: Vec<char> = b.chars().collect();
        lcs_slices(&ca, &cb)
    }
}

fn lcs_slices<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    let mut best = 0usize;
    for ai in a {
        for (j, bj) in b.iter().enumerate() {
            cur[j + 1] = if ai == bj { prev[j] + 1 } else { 0 };
            best = best.max(cur[j + 1]);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    best
}
