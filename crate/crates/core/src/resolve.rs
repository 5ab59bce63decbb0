//! Person-entity mention disambiguation.
//!
//! Two rewrites run per article. Coreference clusters (computed by an
//! external model) replace each mention with its cluster representative.
//! Then partial person names (a lone first or last name) are rewritten to
//! the full name introduced earlier in the same article.

use std::collections::HashSet;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::store::Article;
use crate::text::{self, CharIndex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorefCluster {
    pub representative: String,
    /// `[start, end)` character offsets into the article text.
    pub mentions: Vec<[usize; 2]>,
}

/// One line of `coref.jsonl`. `person_mentions` carries the PERSON spans
/// found by the adapter's tagger, in character offsets of the original text.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorefClusterSet {
    pub doc_id: String,
    pub clusters: Vec<CorefCluster>,
    #[serde(default)]
    pub person_mentions: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntityMention {
    pub full_name: String,
    pub sentence_index: usize,
    /// `[start, end)` character offsets into the resolved text.
    pub span: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alias {
    pub partial: String,
    pub full_name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolvedDocument {
    pub doc_id: String,
    pub text: String,
    pub entity_mentions: Vec<EntityMention>,
    pub alias_map: Vec<Alias>,
    /// Sentence spans (character offsets) used for `sentence_index`.
    pub sentences: Vec<[usize; 2]>,
}

impl ResolvedDocument {
    pub fn sentence_text(&self, index: usize) -> Option<&str> {
        let idx = CharIndex::new(&self.text);
        let range = idx.range_to_bytes(*self.sentences.get(index)?)?;
        Some(&self.text[range])
    }

    /// All sentence texts, in order.
    pub fn sentence_texts(&self) -> Vec<&str> {
        let idx = CharIndex::new(&self.text);
        self.sentences
            .iter()
            .map(|&s| idx.range_to_bytes(s).map_or("", |r| &self.text[r]))
            .collect()
    }

    /// Distinct full names mentioned in sentence `index`, in order of first
    /// appearance.
    pub fn entities_in_sentence(&self, index: usize) -> Vec<&str> {
        let mut seen = Vec::new();
        for m in self.entity_mentions.iter().filter(|m| m.sentence_index == index) {
            if !seen.contains(&m.full_name.as_str()) {
                seen.push(m.full_name.as_str());
            }
        }
        seen
    }
}

/// A single-token person mention that matched no earlier full name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unresolved {
    pub surface: String,
    pub span: [usize; 2],
}

/// Result of coreference substitution: the new text and, per applied
/// replacement, its byte range before and after.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorefRewrite {
    pub text: String,
    pub edits: Vec<Edit>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edit {
    pub before: Range<usize>,
    pub after: Range<usize>,
    /// Byte length of the representative inside `after` (a possessive
    /// replacement appends "'s").
    pub name_len: usize,
}

const POSSESSIVES: &[&str] = &["his", "its", "their", "theirs", "hers"];

/// Words after which "her" is read as an object rather than a determiner.
const NOT_AFTER_POSSESSIVE_HER: &[&str] = &[
    "a", "about", "after", "against", "an", "and", "as", "at", "before", "but", "by", "for", "from", "he", "her",
    "him", "i", "in", "into", "it", "me", "more", "not", "of", "off", "on", "or", "out", "over", "she", "so",
    "than", "that", "the", "their", "them", "then", "there", "these", "they", "this", "those", "through", "to",
    "too", "up", "us", "we", "what", "when", "where", "whether", "which", "while", "who", "why", "with", "you",
];

/// "her" is possessive when a content word follows it directly.
fn is_possessive(surface: &str, rest: &str) -> bool {
    let lower = surface.to_lowercase();
    if POSSESSIVES.contains(&lower.as_str()) {
        return true;
    }
    if lower != "her" || !rest.starts_with(' ') {
        return false;
    }
    let next: String = rest[1..].chars().take_while(|c| c.is_alphanumeric() || *c == '-').collect();
    !next.is_empty() && !NOT_AFTER_POSSESSIVE_HER.contains(&next.to_lowercase().as_str())
}

fn sentence_of(sentences: &[Range<usize>], span: &Range<usize>) -> Option<usize> {
    sentences
        .iter()
        .position(|s| s.start <= span.start && span.end <= s.end)
}

/// An edit's byte range in the old text and in the new text.
type EditRanges = (Range<usize>, Range<usize>);

/// Apply non-overlapping `(range, replacement)` edits, which must be sorted
/// by start. Returns the new text and each edit's old and new range.
fn apply_edits(text: &str, edits: &[(Range<usize>, String)]) -> (String, Vec<EditRanges>) {
    let mut out = String::with_capacity(text.len());
    let mut last = 0;
    let mut ranges = Vec::with_capacity(edits.len());
    for (range, with) in edits {
        out.push_str(&text[last..range.start]);
        let start = out.len();
        out.push_str(with);
        ranges.push((range.clone(), start..out.len()));
        last = range.end;
    }
    out.push_str(&text[last..]);
    (out, ranges)
}

/// Map a byte range of the old text into the new text. Edits inside the
/// range are absorbed; a range that cuts through an edit cannot be mapped.
fn map_range(range: &Range<usize>, edits: &[EditRanges]) -> Option<Range<usize>> {
    let cuts = |x: usize| edits.iter().any(|(b, _)| b.start < x && x < b.end);
    if cuts(range.start) || cuts(range.end) {
        return None;
    }
    let shift = |x: usize| {
        let delta: isize = edits
            .iter()
            .filter(|(b, _)| b.end <= x && !(b.start == b.end && b.start == x))
            .map(|(b, a)| a.len() as isize - b.len() as isize)
            .sum();
        (x as isize + delta) as usize
    };
    Some(shift(range.start)..shift(range.end))
}

/// Replace every coreferent mention with its cluster representative.
///
/// Offsets refer to `text` and are validated first; any out-of-bounds span
/// fails the whole document. Mentions that cross a sentence boundary are
/// skipped. When spans of different clusters overlap, the earliest-starting
/// (and then longest) span is kept.
pub fn replace_coreferences(doc_id: &str, text: &str, clusters: &CorefClusterSet) -> Result<CorefRewrite> {
    let idx = CharIndex::new(text);
    let sentences = text::sentence_spans(text);
    let mut candidates: Vec<(Range<usize>, &str)> = Vec::new();
    for cluster in &clusters.clusters {
        for &span in &cluster.mentions {
            let range = idx.range_to_bytes(span).ok_or_else(|| Error::Document {
                doc_id: doc_id.to_string(),
                reason: format!(
                    "coref span {span:?} outside text of {} characters",
                    idx.char_len()
                ),
            })?;
            if range.is_empty() {
                continue;
            }
            if sentence_of(&sentences, &range).is_none() {
                log::info!("event=skip_coref_mention doc={doc_id} span={span:?} reason=crosses_sentence");
                continue;
            }
            candidates.push((range, cluster.representative.trim()));
        }
    }
    candidates.sort_by(|a, b| a.0.start.cmp(&b.0.start).then(b.0.end.cmp(&a.0.end)));

    let mut edits: Vec<(Range<usize>, String)> = Vec::new();
    let mut name_lens = Vec::new();
    let mut covered_until = 0;
    for (range, rep) in candidates {
        if range.start < covered_until {
            continue;
        }
        covered_until = range.end;
        let surface = &text[range.clone()];
        if surface == rep || rep.is_empty() {
            continue;
        }
        let replacement = if is_possessive(surface, &text[range.end..]) {
            format!("{rep}'s")
        } else {
            rep.to_string()
        };
        name_lens.push(rep.len());
        edits.push((range, replacement));
    }

    let (new_text, ranges) = apply_edits(text, &edits);
    Ok(CorefRewrite {
        text: new_text,
        edits: ranges
            .into_iter()
            .zip(name_lens)
            .map(|((before, after), name_len)| Edit { before, after, name_len })
            .collect(),
    })
}

fn strip_honorific(token: &str) -> Option<&str> {
    let bare = token.trim_end_matches('.').to_lowercase();
    if text::HONORIFICS.contains(&bare.as_str()) {
        None
    } else {
        Some(token)
    }
}

/// Name tokens of a person mention with leading honorifics dropped.
pub fn name_tokens(surface: &str) -> Vec<&str> {
    let mut tokens: Vec<&str> = surface.split_whitespace().collect();
    while let Some(first) = tokens.first() {
        if strip_honorific(first).is_none() {
            tokens.remove(0);
        } else {
            break;
        }
    }
    tokens
}

fn token_matches(token: &str, full_name: &str) -> bool {
    let parts: Vec<&str> = full_name.split(' ').collect();
    let eq = |a: &str| a.to_lowercase() == token.to_lowercase();
    parts.first().is_some_and(|f| eq(f)) || parts.last().is_some_and(|l| eq(l))
}

/// Rewrite partial person names to full names, one article at a time.
///
/// `person_mentions` are byte ranges of PERSON-tagged spans in `text`.
/// Multi-token mentions register a full name; later single-token mentions
/// equal to the first or last token of a registered name take the full name
/// of the nearest preceding matching occurrence.
pub fn resolve_partial_names(
    doc_id: &str,
    text: &str,
    person_mentions: &[Range<usize>],
) -> (ResolvedDocument, Vec<Unresolved>) {
    let sentences = text::sentence_spans(text);
    let mut mentions: Vec<Range<usize>> = person_mentions
        .iter()
        .filter(|r| r.start < r.end && r.end <= text.len() && text.is_char_boundary(r.start) && text.is_char_boundary(r.end))
        .cloned()
        .collect();
    mentions.sort_by(|a, b| a.start.cmp(&b.start).then(b.end.cmp(&a.end)));

    struct Occurrence {
        full_name: String,
        range: Range<usize>,
        sentence: usize,
    }
    let mut occurrences: Vec<Occurrence> = Vec::new();
    let mut edits: Vec<(Range<usize>, String)> = Vec::new();
    let mut aliases: Vec<Alias> = Vec::new();
    let mut unresolved_ranges = Vec::new();
    let mut covered_until = 0;

    for range in mentions {
        if range.start < covered_until {
            continue;
        }
        covered_until = range.end;
        let surface = &text[range.clone()];
        let Some(sentence) = sentence_of(&sentences, &range) else {
            log::info!("event=skip_person_mention doc={doc_id} surface=\"{surface}\" reason=crosses_sentence");
            continue;
        };
        let tokens = name_tokens(surface);
        match tokens.len() {
            0 => unresolved_ranges.push(range),
            1 => {
                let token = tokens[0];
                let target = occurrences
                    .iter()
                    .rev()
                    .find(|o| token_matches(token, &o.full_name))
                    .map(|o| o.full_name.clone());
                match target {
                    Some(full_name) => {
                        let alias = Alias {
                            partial: surface.to_string(),
                            full_name: full_name.clone(),
                        };
                        if !aliases.contains(&alias) {
                            aliases.push(alias);
                        }
                        edits.push((range.clone(), full_name.clone()));
                        occurrences.push(Occurrence { full_name, range, sentence });
                    }
                    None => {
                        log::info!("event=unresolved_name doc={doc_id} surface=\"{surface}\"");
                        unresolved_ranges.push(range);
                    }
                }
            }
            _ => {
                let full_name = tokens.join(" ");
                if surface != full_name {
                    edits.push((range.clone(), full_name.clone()));
                }
                occurrences.push(Occurrence { full_name, range, sentence });
            }
        }
    }

    let (new_text, edit_ranges) = apply_edits(text, &edits);
    let to_char = |r: Range<usize>| text::char_span(&new_text, r);
    let entity_mentions = occurrences
        .into_iter()
        .map(|o| {
            let mapped = map_range(&o.range, &edit_ranges).expect("occurrence maps into rewritten text");
            EntityMention {
                full_name: o.full_name,
                sentence_index: o.sentence,
                span: to_char(mapped),
            }
        })
        .collect();
    let new_sentences = sentences
        .iter()
        .map(|s| to_char(map_range(s, &edit_ranges).expect("edits stay inside sentences")))
        .collect();
    let unresolved = unresolved_ranges
        .into_iter()
        .filter_map(|r| {
            let surface = text[r.clone()].to_string();
            map_range(&r, &edit_ranges).map(|m| Unresolved { surface, span: to_char(m) })
        })
        .collect();

    (
        ResolvedDocument {
            doc_id: doc_id.to_string(),
            text: new_text,
            entity_mentions,
            alias_map: aliases,
            sentences: new_sentences,
        },
        unresolved,
    )
}

/// Full per-article resolution: coreference substitution followed by
/// partial-name rewriting. PERSON spans from the cluster set are mapped
/// through the substitution; a replaced mention counts as a PERSON mention
/// when its representative is itself the surface of a PERSON span.
pub fn resolve_document(article: &Article, clusters: &CorefClusterSet) -> Result<(ResolvedDocument, Vec<Unresolved>)> {
    let doc_id = &article.id;
    let original = &article.text;
    let idx = CharIndex::new(original);
    let mut persons = Vec::new();
    for &span in &clusters.person_mentions {
        let range = idx.range_to_bytes(span).ok_or_else(|| Error::Document {
            doc_id: doc_id.clone(),
            reason: format!("person span {span:?} outside text of {} characters", idx.char_len()),
        })?;
        persons.push(range);
    }
    let person_surfaces: HashSet<String> = persons
        .iter()
        .map(|r| original[r.clone()].trim().to_lowercase())
        .collect();

    let rewrite = replace_coreferences(doc_id, original, clusters)?;
    let pairs: Vec<(Range<usize>, Range<usize>)> = rewrite
        .edits
        .iter()
        .map(|e| (e.before.clone(), e.after.clone()))
        .collect();

    let mut mapped = Vec::new();
    for p in &persons {
        if let Some(edit) = rewrite.edits.iter().find(|e| e.before.start <= p.start && p.end <= e.before.end) {
            mapped.push(edit.after.start..edit.after.start + edit.name_len);
        } else if let Some(m) = map_range(p, &pairs) {
            mapped.push(m);
        } else {
            log::info!("event=drop_person_span doc={doc_id} span={p:?} reason=cut_by_coref_edit");
        }
    }
    for edit in &rewrite.edits {
        let rep = &rewrite.text[edit.after.start..edit.after.start + edit.name_len];
        let already = mapped.iter().any(|m| m.start == edit.after.start);
        if !already && person_surfaces.contains(&rep.to_lowercase()) {
            mapped.push(edit.after.start..edit.after.start + edit.name_len);
        }
    }
    Ok(resolve_partial_names(doc_id, &rewrite.text, &mapped))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clusters(list: &[(&str, &[[usize; 2]])]) -> CorefClusterSet {
        CorefClusterSet {
            doc_id: "d".into(),
            clusters: list
                .iter()
                .map(|(rep, m)| CorefCluster {
                    representative: rep.to_string(),
                    mentions: m.to_vec(),
                })
                .collect(),
            person_mentions: vec![],
        }
    }

    fn spans_of(text: &str, needles: &[&str]) -> Vec<Range<usize>> {
        // successive occurrences, left to right
        let mut from = 0;
        needles
            .iter()
            .map(|n| {
                let i = text[from..].find(n).unwrap() + from;
                from = i + n.len();
                i..i + n.len()
            })
            .collect()
    }

    #[test]
    fn single_cluster_substitution() {
        let text = "John went home. He slept.";
        let out = replace_coreferences("d", text, &clusters(&[("John", &[[16, 18]])])).unwrap();
        assert_eq!(out.text, "John went home. John slept.");
    }

    #[test]
    fn empty_cluster_set_is_identity() {
        let text = "Nothing to see here.";
        let out = replace_coreferences("d", text, &clusters(&[])).unwrap();
        assert_eq!(out.text, text);
        assert!(out.edits.is_empty());
    }

    #[test]
    fn out_of_bounds_span_fails_document() {
        let err = replace_coreferences("d", "Short.", &clusters(&[("X", &[[3, 40]])])).unwrap_err();
        assert!(matches!(err, Error::Document { .. }));
    }

    #[test]
    fn possessive_pronoun_keeps_possession() {
        let text = "Bo Chan won. His team cheered and he left.";
        let out = replace_coreferences("d", text, &clusters(&[("Bo Chan", &[[13, 16], [34, 36]])])).unwrap();
        assert_eq!(out.text, "Bo Chan won. Bo Chan's team cheered and Bo Chan left.");
    }

    #[test]
    fn her_is_possessive_only_before_a_content_word() {
        let text = "Ann Lee won. Her staff met her. They gave her the award and thanked her, then her team left.";
        let spans: Vec<[usize; 2]> = text
            .match_indices(['H', 'h'])
            .filter(|(i, _)| text[*i..].to_lowercase().starts_with("her"))
            .map(|(i, _)| [i, i + 3])
            .collect();
        let out = replace_coreferences("d", text, &clusters(&[("Ann Lee", &spans)])).unwrap();
        assert_eq!(
            out.text,
            "Ann Lee won. Ann Lee's staff met Ann Lee. They gave Ann Lee the award and thanked Ann Lee, then Ann Lee's team left."
        );
    }

    #[test]
    fn mention_across_sentences_is_skipped() {
        let text = "He ran. He fell.";
        let out = replace_coreferences("d", text, &clusters(&[("Sam Roe", &[[0, 10]])])).unwrap();
        assert_eq!(out.text, text);
    }

    #[test]
    fn partial_last_name_resolves() {
        let text = "John Smith arrived. Smith spoke.";
        let spans = spans_of(text, &["John Smith", "Smith"]);
        let (doc, unresolved) = resolve_partial_names("d", text, &spans);
        assert_eq!(doc.text, "John Smith arrived. John Smith spoke.");
        assert!(unresolved.is_empty());
        assert_eq!(doc.alias_map, vec![Alias { partial: "Smith".into(), full_name: "John Smith".into() }]);
        assert_eq!(doc.entity_mentions.len(), 2);
        assert_eq!(doc.entity_mentions[1].sentence_index, 1);
        assert_eq!(doc.entity_mentions[1].span, [20, 30]);
    }

    #[test]
    fn tie_goes_to_nearest_preceding_full_name() {
        let text = "John Smith met Jane Smith. Smith left.";
        let spans = spans_of(text, &["John Smith", "Jane Smith", "Smith"]);
        let (doc, _) = resolve_partial_names("d", text, &spans);
        assert_eq!(doc.text, "John Smith met Jane Smith. Jane Smith left.");
    }

    #[test]
    fn no_full_name_leaves_text_unchanged() {
        let text = "Smith spoke. Later Jones replied.";
        let spans = spans_of(text, &["Smith", "Jones"]);
        let (doc, unresolved) = resolve_partial_names("d", text, &spans);
        assert_eq!(doc.text, text);
        assert!(doc.alias_map.is_empty());
        assert_eq!(unresolved.len(), 2);
    }

    #[test]
    fn honorifics_are_dropped_in_rewrite() {
        let text = "Mr. John Smith arrived. Dr. Smith spoke. John waved.";
        let spans = spans_of(text, &["Mr. John Smith", "Dr. Smith", "John"]);
        let (doc, _) = resolve_partial_names("d", text, &spans);
        assert_eq!(doc.text, "John Smith arrived. John Smith spoke. John Smith waved.");
        assert!(doc.entity_mentions.iter().all(|m| m.full_name == "John Smith"));
    }

    #[test]
    fn case_insensitive_match_and_first_name() {
        let text = "Maria Lopez spoke. MARIA smiled.";
        let spans = spans_of(text, &["Maria Lopez", "MARIA"]);
        let (doc, _) = resolve_partial_names("d", text, &spans);
        assert_eq!(doc.text, "Maria Lopez spoke. Maria Lopez smiled.");
    }

    #[test]
    fn middle_name_does_not_match() {
        let text = "Anna Marie Holt spoke. Marie left.";
        let spans = spans_of(text, &["Anna Marie Holt", "Marie"]);
        let (doc, unresolved) = resolve_partial_names("d", text, &spans);
        assert_eq!(doc.text, text);
        assert_eq!(unresolved[0].surface, "Marie");
    }

    #[test]
    fn resolve_document_combines_both_passes() {
        let text = "John Smith went home. He slept. Smith woke.";
        let article = Article {
            id: "d".into(),
            media_house: "A".into(),
            url: String::new(),
            published_at: chrono::NaiveDate::from_ymd_opt(2016, 1, 1).unwrap(),
            text: text.into(),
        };
        let set = CorefClusterSet {
            doc_id: "d".into(),
            clusters: vec![CorefCluster { representative: "John Smith".into(), mentions: vec![[22, 24]] }],
            person_mentions: vec![[0, 10], [32, 37]],
        };
        let (doc, unresolved) = resolve_document(&article, &set).unwrap();
        assert!(unresolved.is_empty());
        assert_eq!(doc.text, "John Smith went home. John Smith slept. John Smith woke.");
        let sentences: Vec<_> = doc.entity_mentions.iter().map(|m| m.sentence_index).collect();
        assert_eq!(sentences, vec![0, 1, 2]);
        for m in &doc.entity_mentions {
            let idx = CharIndex::new(&doc.text);
            assert_eq!(&doc.text[idx.range_to_bytes(m.span).unwrap()], m.full_name);
        }
        assert_eq!(doc.sentence_text(1), Some("John Smith slept."));
    }
}
