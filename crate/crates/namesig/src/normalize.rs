//! Attribute-name and dictionary-word normalization.
//!
//! Raw names arrive with arbitrary casing and accents ("Âge", "Adresse-Postale").
//! Matching happens on a folded form: lowercase, diacritics stripped. Punctuation,
//! digits and internal whitespace are kept as ordinary characters; a residual like
//! "adr-" must survive into the distance computation with its hyphen intact.

/// A raw attribute name together with its matching form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedName {
    pub original: String,
    pub normalized: String,
}

/// Lowercases and removes diacritical marks. Idempotent.
///
/// Precomposed Latin letters (é, À, č, ...) fold to their base letter and
/// free-standing combining marks are dropped, so both "âge" and "a\u{302}ge"
/// normalize to "age". Everything else passes through unchanged.
pub fn normalize(text: &str) -> NormalizedName {
    let mut normalized = String::with_capacity(text.len());
    for c in text.chars() {
        if is_combining_mark(c) {
            continue;
        }
        let base = fold_diacritic(c).unwrap_or(c);
        normalized.extend(base.to_lowercase());
    }
    NormalizedName {
        original: text.to_string(),
        normalized,
    }
}

/// True iff at least one alphabetic character is present.
///
/// Used to decide whether a first-pass residual still needs a dictionary
/// match: "adr-" does, "-_ 42" does not.
pub fn has_letters(text: &str) -> bool {
    text.chars().any(|c| c.is_alphabetic())
}

#[inline]
fn is_combining_mark(c: char) -> bool {
    matches!(c,
        '\u{0300}'..='\u{036F}'
        | '\u{1AB0}'..='\u{1AFF}'
        | '\u{1DC0}'..='\u{1DFF}'
        | '\u{20D0}'..='\u{20FF}'
        | '\u{FE20}'..='\u{FE2F}')
}

/// Base letter for precomposed Latin letters with diacritics
/// (Latin-1 Supplement and Latin Extended-A). Returns `None` when the
/// character has no canonical base-letter decomposition; ligatures such
/// as œ are kept as-is.
fn fold_diacritic(c: char) -> Option<char> {
    let base = match c {
        'À'..='Å' | 'Ā' | 'Ă' | 'Ą' => 'A',
        'à'..='å' | 'ā' | 'ă' | 'ą' => 'a',
        'Ç' | 'Ć' | 'Ĉ' | 'Ċ' | 'Č' => 'C',
        'ç' | 'ć' | 'ĉ' | 'ċ' | 'č' => 'c',
        'Ď' => 'D',
        'ď' => 'd',
        'È'..='Ë' | 'Ē' | 'Ĕ' | 'Ė' | 'Ę' | 'Ě' => 'E',
        'è'..='ë' | 'ē' | 'ĕ' | 'ė' | 'ę' | 'ě' => 'e',
        'Ĝ' | 'Ğ' | 'Ġ' | 'Ģ' => 'G',
        'ĝ' | 'ğ' | 'ġ' | 'ģ' => 'g',
        'Ĥ' => 'H',
        'ĥ' => 'h',
        'Ì'..='Ï' | 'Ĩ' | 'Ī' | 'Ĭ' | 'Į' | 'İ' => 'I',
        'ì'..='ï' | 'ĩ' | 'ī' | 'ĭ' | 'į' => 'i',
        'Ĵ' => 'J',
        'ĵ' => 'j',
        'Ķ' => 'K',
        'ķ' => 'k',
        'Ĺ' | 'Ļ' | 'Ľ' => 'L',
        'ĺ' | 'ļ' | 'ľ' => 'l',
        'Ñ' | 'Ń' | 'Ņ' | 'Ň' => 'N',
        'ñ' | 'ń' | 'ņ' | 'ň' => 'n',
        'Ò'..='Ö' | 'Ō' | 'Ŏ' | 'Ő' => 'O',
        'ò'..='ö' | 'ō' | 'ŏ' | 'ő' => 'o',
        'Ŕ' | 'Ŗ' | 'Ř' => 'R',
        'ŕ' | 'ŗ' | 'ř' => 'r',
        'Ś' | 'Ŝ' | 'Ş' | 'Š' => 'S',
        'ś' | 'ŝ' | 'ş' | 'š' => 's',
        'Ţ' | 'Ť' => 'T',
        'ţ' | 'ť' => 't',
        'Ù'..='Ü' | 'Ũ' | 'Ū' | 'Ŭ' | 'Ů' | 'Ű' | 'Ų' => 'U',
        'ù'..='ü' | 'ũ' | 'ū' | 'ŭ' | 'ů' | 'ű' | 'ų' => 'u',
        'Ŵ' => 'W',
        'ŵ' => 'w',
        'Ý' | 'Ŷ' | 'Ÿ' => 'Y',
        'ý' | 'ÿ' | 'ŷ' => 'y',
        'Ź' | 'Ż' | 'Ž' => 'Z',
        'ź' | 'ż' | 'ž' => 'z',
        _ => return None,
    };
    Some(base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn folds_case_and_accents() {
        assert_eq!(normalize("Âge").normalized, "age");
        assert_eq!(normalize("aéroport").normalized, "aeroport");
        assert_eq!(normalize("Médecin Légiste").normalized, "medecin legiste");
        assert_eq!(normalize("délaissé").normalized, "delaisse");
    }

    #[test]
    fn keeps_punctuation_digits_and_spaces() {
        assert_eq!(normalize("adr-post").normalized, "adr-post");
        assert_eq!(normalize("add pst").normalized, "add pst");
        assert_eq!(normalize("Client_N2").normalized, "client_n2");
    }

    #[test]
    fn already_normalized_is_untouched() {
        assert_eq!(normalize("naissance").normalized, "naissance");
        assert_eq!(normalize("").normalized, "");
    }

    #[test]
    fn strips_free_standing_combining_marks() {
        // "a" + COMBINING CIRCUMFLEX ACCENT
        assert_eq!(normalize("a\u{0302}ge").normalized, "age");
    }

    #[test]
    fn keeps_original_form() {
        let n = normalize("Âge");
        assert_eq!(n.original, "Âge");
    }

    #[test]
    fn has_letters_cases() {
        assert!(has_letters("adr-"));
        assert!(!has_letters("-_ 42"));
        assert!(!has_letters(""));
        assert!(!has_letters("__"));
    }

    proptest! {
        #[test]
        fn idempotent(s in "[a-zA-ZÀ-ÿ0-9 _\\-]{0,24}") {
            let once = normalize(&s).normalized;
            let twice = normalize(&once).normalized;
            prop_assert_eq!(&once, &twice);
        }

        #[test]
        fn output_is_lowercase_without_marks(s in "\\PC{0,24}") {
            let out = normalize(&s).normalized;
            // No character may still have a distinct lowercase form.
            prop_assert!(out.chars().all(|c| c.to_lowercase().eq(std::iter::once(c))));
            prop_assert!(!out.chars().any(is_combining_mark));
            // Marks are only ever removed, so folding never grows a string.
            prop_assert!(out.chars().count() <= s.chars().count());
        }

        #[test]
        fn letter_presence_is_preserved(s in "[a-zA-ZÀ-ÿ0-9 _\\-]{0,24}") {
            let out = normalize(&s).normalized;
            prop_assert_eq!(has_letters(&s), has_letters(&out));
        }
    }
}
