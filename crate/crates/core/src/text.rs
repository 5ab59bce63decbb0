//! Small text utilities shared by the resolver and the evaluation harness:
//! rule-based sentence segmentation, first-sentence truncation, word
//! tokenization, and conversion between character and byte offsets.
//!
//! Offsets on the wire (coref clusters, entity mentions, sentence spans) are
//! counted in Unicode scalar values, the way Python adapters produce them.
//! Internally everything works on byte offsets.

use std::ops::Range;

/// Tokens ending in a period that never close a sentence.
pub const ABBREVIATIONS: &[&str] = &[
    "Mr.", "Mrs.", "Ms.", "Dr.", "Prof.", "Sr.", "Jr.", "St.", "Mt.", "Gen.", "Col.", "Lt.",
    "Capt.", "Sgt.", "Gov.", "Sen.", "Rep.", "Rev.", "Hon.", "Pres.", "Supt.", "U.S.", "U.K.",
    "U.N.", "E.U.", "Inc.", "Ltd.", "Co.", "Corp.", "vs.", "etc.", "e.g.", "i.e.", "No.",
    "Jan.", "Feb.", "Mar.", "Apr.", "Aug.", "Sept.", "Sep.", "Oct.", "Nov.", "Dec.",
];

/// Honorifics dropped from person names before name comparison.
pub const HONORIFICS: &[&str] = &[
    "mr", "mrs", "ms", "miss", "dr", "prof", "professor", "sir", "dame", "lord", "lady", "shri",
    "smt", "sri", "shrimati", "president", "minister", "gen", "col", "capt", "sen", "gov", "rep",
    "rev", "hon",
];

const CLOSERS: &[char] = &['"', '\'', ')', ']', '\u{201d}', '\u{2019}'];

fn is_terminator(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

/// Whitespace-delimited token that ends at byte `end` (exclusive).
fn token_ending_at(text: &str, end: usize) -> &str {
    let start = text[..end]
        .rfind(char::is_whitespace)
        .map(|i| i + text[i..].chars().next().map_or(1, char::len_utf8))
        .unwrap_or(0);
    &text[start..end]
}

fn is_abbreviation(token: &str) -> bool {
    let token = token.trim_start_matches(['(', '"', '\'', '\u{201c}']);
    if ABBREVIATIONS.contains(&token) {
        return true;
    }
    // Single-letter initials: "J." in "J. Smith".
    let mut chars = token.chars();
    matches!((chars.next(), chars.next(), chars.next()), (Some(c), Some('.'), None) if c.is_uppercase())
}

/// Byte offset just past the sentence terminator that starts at `i`, if the
/// character at `i` closes a sentence.
fn boundary_at(text: &str, i: usize) -> Option<usize> {
    let c = text[i..].chars().next()?;
    if !is_terminator(c) {
        return None;
    }
    let mut end = i + c.len_utf8();
    // collapse runs like "?!" or "..."
    while let Some(n) = text[end..].chars().next() {
        if is_terminator(n) {
            end += n.len_utf8();
        } else {
            break;
        }
    }
    while let Some(n) = text[end..].chars().next() {
        if CLOSERS.contains(&n) {
            end += n.len_utf8();
        } else {
            break;
        }
    }
    match text[end..].chars().next() {
        None => {}
        Some(n) if n.is_whitespace() => {}
        Some(_) => return None,
    }
    if c == '.' && is_abbreviation(token_ending_at(text, i + 1)) {
        return None;
    }
    Some(end)
}

/// Byte ranges of the sentences in `text`, trimmed of surrounding
/// whitespace. Sentences end at `.`, `!` or `?` followed by whitespace or the
/// end of text (abbreviations excepted), or at a blank line.
pub fn sentence_spans(text: &str) -> Vec<Range<usize>> {
    let mut spans = Vec::new();
    let mut start = 0;
    let mut iter = text.char_indices().peekable();
    while let Some((i, c)) = iter.next() {
        let cut = if is_terminator(c) {
            boundary_at(text, i)
        } else if c == '\n' && text[i + 1..].trim_start_matches([' ', '\t', '\r']).starts_with('\n') {
            Some(i)
        } else {
            None
        };
        if let Some(end) = cut {
            push_trimmed(text, start..end, &mut spans);
            start = end;
            while iter.peek().is_some_and(|&(j, _)| j < end) {
                iter.next();
            }
        }
    }
    push_trimmed(text, start..text.len(), &mut spans);
    spans
}

fn push_trimmed(text: &str, range: Range<usize>, out: &mut Vec<Range<usize>>) {
    let slice = &text[range.clone()];
    let lead = slice.len() - slice.trim_start().len();
    let trail = slice.len() - slice.trim_end().len();
    if lead + trail < slice.len() {
        out.push(range.start + lead..range.end - trail);
    }
}

/// The first sentence of `raw`: a prefix of `raw` ending right after the
/// first sentence terminator, or all of `raw` (minus trailing whitespace)
/// when there is none.
pub fn first_sentence(raw: &str) -> &str {
    for (i, c) in raw.char_indices() {
        if is_terminator(c) {
            if let Some(end) = boundary_at(raw, i) {
                return &raw[..end];
            }
        }
    }
    raw.trim_end()
}

/// Word tokens: whitespace-separated chunks with leading and trailing
/// punctuation removed. Chunks made only of punctuation are dropped.
pub fn word_tokens(text: &str) -> impl Iterator<Item = &str> {
    text.split_whitespace()
        .map(|w| w.trim_matches(|c: char| !c.is_alphanumeric()))
        .filter(|w| !w.is_empty())
}

pub fn word_count(text: &str) -> usize {
    word_tokens(text).count()
}

/// Character-offset to byte-offset map for one string.
#[derive(Debug, Clone)]
pub struct CharIndex {
    starts: Vec<usize>,
    len: usize,
}

impl CharIndex {
    pub fn new(text: &str) -> Self {
        CharIndex {
            starts: text.char_indices().map(|(i, _)| i).collect(),
            len: text.len(),
        }
    }

    pub fn char_len(&self) -> usize {
        self.starts.len()
    }

    /// Byte offset of character `pos`; `pos == char_len()` maps to the end.
    pub fn to_byte(&self, pos: usize) -> Option<usize> {
        match pos.cmp(&self.starts.len()) {
            std::cmp::Ordering::Less => Some(self.starts[pos]),
            std::cmp::Ordering::Equal => Some(self.len),
            std::cmp::Ordering::Greater => None,
        }
    }

    pub fn to_char(&self, byte: usize) -> usize {
        self.starts.partition_point(|&b| b < byte)
    }

    pub fn range_to_bytes(&self, range: [usize; 2]) -> Option<Range<usize>> {
        let [s, e] = range;
        if s > e {
            return None;
        }
        Some(self.to_byte(s)?..self.to_byte(e)?)
    }
}

/// Character-offset span of a byte range within `text`.
pub fn char_span(text: &str, range: Range<usize>) -> [usize; 2] {
    let start = text[..range.start].chars().count();
    [start, start + text[range].chars().count()]
}

/// Replace every whole-word occurrence of `needle` in `text` with `with`.
/// A match must not be flanked by alphanumeric characters.
pub fn replace_whole(text: &str, needle: &str, with: &str) -> String {
    if needle.is_empty() {
        return text.to_string();
    }
    let mut out = String::with_capacity(text.len());
    let mut last = 0;
    for (i, _) in text.match_indices(needle) {
        if i < last {
            continue;
        }
        let end = i + needle.len();
        let before = text[..i].chars().next_back();
        let after = text[end..].chars().next();
        if before.is_some_and(char::is_alphanumeric) || after.is_some_and(char::is_alphanumeric) {
            continue;
        }
        out.push_str(&text[last..i]);
        out.push_str(with);
        last = end;
    }
    out.push_str(&text[last..]);
    out
}
