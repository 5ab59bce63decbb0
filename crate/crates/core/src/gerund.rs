//! Present participle (-ing form) of English verb lemmas.
//!
//! Rules, applied in order:
//! 1. exception table (`data/gerund_exceptions.tsv`);
//! 2. final `ie` becomes `ying`;
//! 3. final silent `e` is dropped (not after `e`, `o` or `y`);
//! 4. a stressed final consonant-vowel-consonant doubles its consonant
//!    (never `w`, `x` or `y`); stress is assumed for monosyllables and for
//!    the verbs listed in `data/stress_final.txt`;
//! 5. otherwise `ing` is appended.

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GerundError {
    #[error("empty verb lemma")]
    Empty,
    #[error("verb lemma `{0}` is not lowercase alphabetic")]
    NotAlphabetic(String),
}

const EXCEPTIONS: &str = include_str!("../data/gerund_exceptions.tsv");
const STRESS_FINAL: &str = include_str!("../data/stress_final.txt");

fn data_lines(src: &str) -> impl Iterator<Item = &str> {
    src.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn exceptions() -> &'static HashMap<&'static str, &'static str> {
    static TABLE: OnceLock<HashMap<&str, &str>> = OnceLock::new();
    TABLE.get_or_init(|| {
        data_lines(EXCEPTIONS)
            .filter_map(|l| {
                let mut cols = l.split('\t');
                Some((cols.next()?.trim(), cols.next()?.trim()))
            })
            .collect()
    })
}

fn stress_final() -> &'static HashSet<&'static str> {
    static LIST: OnceLock<HashSet<&str>> = OnceLock::new();
    LIST.get_or_init(|| data_lines(STRESS_FINAL).collect())
}

/// Vowel flags per letter; `u` after `q` counts as a consonant.
fn vowel_mask(word: &[u8]) -> Vec<bool> {
    word.iter()
        .enumerate()
        .map(|(i, &c)| match c {
            b'a' | b'e' | b'i' | b'o' => true,
            b'u' => !(i > 0 && word[i - 1] == b'q'),
            b'y' => i > 0 && !matches!(word[i - 1], b'a' | b'e' | b'i' | b'o' | b'u'),
            _ => false,
        })
        .collect()
}

fn syllables(mask: &[bool]) -> usize {
    let mut groups = 0;
    let mut prev = false;
    for &v in mask {
        if v && !prev {
            groups += 1;
        }
        prev = v;
    }
    groups
}

/// Ends in consonant + single vowel + consonant other than w, x, y.
fn ends_cvc(word: &[u8], mask: &[bool]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let last = word[n - 1];
    if mask[n - 1] || matches!(last, b'w' | b'x' | b'y') {
        return false;
    }
    if !mask[n - 2] || word[n - 2] == b'y' {
        return false;
    }
    n == 2 || !mask[n - 3]
}

/// The -ing form of a lowercase alphabetic verb lemma.
pub fn gerund(lemma: &str) -> Result<String, GerundError> {
    if lemma.is_empty() {
        return Err(GerundError::Empty);
    }
    if !lemma.bytes().all(|b| b.is_ascii_lowercase()) {
        return Err(GerundError::NotAlphabetic(lemma.to_string()));
    }
    if let Some(form) = exceptions().get(lemma) {
        return Ok((*form).to_string());
    }
    if let Some(stem) = lemma.strip_suffix("ie") {
        return Ok(format!("{stem}ying"));
    }
    if let Some(stem) = lemma.strip_suffix('e') {
        if !stem.is_empty() && !stem.ends_with(['e', 'o', 'y']) {
            return Ok(format!("{stem}ing"));
        }
    }
    let bytes = lemma.as_bytes();
    let mask = vowel_mask(bytes);
    let stressed = syllables(&mask) == 1 || stress_final().contains(lemma);
    if stressed && ends_cvc(bytes, &mask) {
        let last = &lemma[lemma.len() - 1..];
        return Ok(format!("{lemma}{last}ing"));
    }
    Ok(format!("{lemma}ing"))
}

/// Gerund of a possibly multi-word verb (`give up` -> `giving up`): only the
/// first word is inflected.
pub fn gerund_phrase(verb: &str) -> Result<String, GerundError> {
    let verb = verb.trim();
    match verb.split_once(' ') {
        Some((head, rest)) => Ok(format!("{} {}", gerund(head)?, rest.trim())),
        None => gerund(verb),
    }
}
