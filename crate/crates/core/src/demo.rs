//! Demonstration corpus construction: "<entity> is described as <gerund> ..."
//! sentences built from entity clauses, the frequency filter, the held-out
//! test split, and the FT1/FT2 corpus files.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::clause::{Clause, ClauseType};
use crate::gerund::{gerund_phrase, GerundError};
use crate::resolve::ResolvedDocument;

pub const DESCRIBED_AS: &str = " is described as ";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub doc_id: String,
    pub sentence_index: usize,
    pub clause_type: ClauseType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Demonstration {
    pub entity: String,
    pub sentence: String,
    pub source: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkipReason {
    NotAnEntity(String),
    BadVerb(GerundError),
}

fn tidy(part: &str) -> String {
    part.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Build the demonstration sentence for a clause whose subject is a known
/// entity: subject, "is described as", the gerund, then indirect object,
/// direct object, complement and comma-separated adverbials.
pub fn synthesize(clause: &Clause, entities: &HashSet<String>) -> Result<Demonstration, SkipReason> {
    let entity = tidy(&clause.subject);
    if !entities.contains(&entity) {
        return Err(SkipReason::NotAnEntity(entity));
    }
    let verb = gerund_phrase(&clause.verb_lemma.to_lowercase()).map_err(SkipReason::BadVerb)?;

    let mut sentence = format!("{entity}{DESCRIBED_AS}{verb}");
    let mut parts: Vec<String> = [&clause.indirect_object, &clause.direct_object, &clause.complement]
        .into_iter()
        .flatten()
        .map(|p| tidy(p))
        .filter(|p| !p.is_empty())
        .collect();
    let adverbials: Vec<String> = clause.adverbials.iter().map(|a| tidy(a)).filter(|a| !a.is_empty()).collect();
    if !adverbials.is_empty() {
        parts.push(adverbials.join(", "));
    }
    for p in parts {
        sentence.push(' ');
        sentence.push_str(&p);
    }
    let mut sentence = sentence
        .trim_end_matches(|c: char| matches!(c, '.' | ',' | ';' | ':' | '!' | '?') || c.is_whitespace())
        .to_string();
    sentence.push('.');
    Ok(Demonstration {
        entity,
        sentence,
        source: Provenance {
            doc_id: clause.doc_id.clone(),
            sentence_index: clause.sentence_index,
            clause_type: clause.clause_type,
        },
    })
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthStats {
    pub clauses: usize,
    pub skipped_not_entity: usize,
    pub skipped_bad_verb: usize,
    pub demonstrations: usize,
    /// Demonstrations whose sentence already appeared for the same entity.
    pub duplicate_sentences: usize,
}

impl SynthStats {
    pub fn duplicate_rate(&self) -> f64 {
        if self.demonstrations == 0 {
            0.0
        } else {
            self.duplicate_sentences as f64 / self.demonstrations as f64
        }
    }
}

/// Synthesize every clause; skipped clauses are counted and logged.
/// Duplicate sentences are kept.
pub fn synthesize_all<'a>(
    clauses: impl IntoIterator<Item = &'a Clause>,
    entities: &HashSet<String>,
) -> (Vec<Demonstration>, SynthStats) {
    let mut stats = SynthStats::default();
    let mut demos = Vec::new();
    let mut seen: HashSet<(String, String)> = HashSet::new();
    for clause in clauses {
        stats.clauses += 1;
        match synthesize(clause, entities) {
            Ok(d) => {
                if !seen.insert((d.entity.clone(), d.sentence.clone())) {
                    stats.duplicate_sentences += 1;
                }
                demos.push(d);
            }
            Err(SkipReason::NotAnEntity(_)) => stats.skipped_not_entity += 1,
            Err(SkipReason::BadVerb(e)) => {
                log::info!(
                    "event=skip_clause doc={} sentence={} reason=\"{e}\"",
                    clause.doc_id,
                    clause.sentence_index
                );
                stats.skipped_bad_verb += 1;
            }
        }
    }
    stats.demonstrations = demos.len();
    (demos, stats)
}

/// Full names of every person entity recorded in the resolved documents.
pub fn entity_names<'a>(docs: impl IntoIterator<Item = &'a ResolvedDocument>) -> HashSet<String> {
    docs.into_iter()
        .flat_map(|d| d.entity_mentions.iter().map(|m| m.full_name.clone()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntityCount {
    pub entity: String,
    pub count: usize,
    /// 1-based position among kept entities ordered by count, descending.
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitManifest {
    pub threshold: usize,
    pub test_count: usize,
    pub test_entities: Vec<EntityCount>,
    pub train_entities: Vec<EntityCount>,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl SplitManifest {
    pub fn is_test(&self, entity: &str) -> bool {
        self.test_entities.iter().any(|e| e.entity == entity)
    }

    pub fn is_train(&self, entity: &str) -> bool {
        self.train_entities.iter().any(|e| e.entity == entity)
    }

    pub fn test_count_of(&self, entity: &str) -> Option<usize> {
        self.test_entities.iter().find(|e| e.entity == entity).map(|e| e.count)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("corpus too small: {kept} entities have more than {threshold} sentences, {required} test entities required (lower the threshold for small corpora)")]
    TooFewEntities {
        kept: usize,
        required: usize,
        threshold: usize,
    },
    #[error("test entity count must be positive")]
    ZeroTestCount,
    #[error("entity `{0}` is in both the train and test sets")]
    Overlap(String),
}

/// Per-entity sentence counts.
pub fn entity_counts<'a>(demos: impl IntoIterator<Item = &'a Demonstration>) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for d in demos {
        *counts.entry(d.entity.clone()).or_insert(0) += 1;
    }
    counts
}

/// Keep entities with more than `threshold` sentences, order them by count
/// (descending, ties by name), cut the order into `test_count` equal-width
/// rank buckets and take the top entity of each bucket for testing. The rest
/// of the kept entities are for training.
pub fn filter_and_split(
    counts: &BTreeMap<String, usize>,
    threshold: usize,
    test_count: usize,
) -> Result<SplitManifest, SplitError> {
    if test_count == 0 {
        return Err(SplitError::ZeroTestCount);
    }
    let mut kept: Vec<(&String, usize)> = counts
        .iter()
        .filter(|(_, &c)| c > threshold)
        .map(|(e, &c)| (e, c))
        .collect();
    kept.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let n = kept.len();
    if n < test_count {
        return Err(SplitError::TooFewEntities {
            kept: n,
            required: test_count,
            threshold,
        });
    }
    let test_ranks: HashSet<usize> = (0..test_count).map(|i| i * n / test_count).collect();
    let mut manifest = SplitManifest {
        threshold,
        test_count,
        test_entities: Vec::new(),
        train_entities: Vec::new(),
        warnings: Vec::new(),
    };
    for (i, (entity, count)) in kept.into_iter().enumerate() {
        let ec = EntityCount {
            entity: entity.clone(),
            count,
            rank: i + 1,
        };
        if test_ranks.contains(&i) {
            manifest.test_entities.push(ec);
        } else {
            manifest.train_entities.push(ec);
        }
    }
    if manifest.train_entities.is_empty() {
        let msg = format!("all {n} kept entities were selected for testing; the training set is empty");
        log::warn!("event=empty_train_split {msg}");
        manifest.warnings.push(msg);
    }
    Ok(manifest)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ft2TestRecord {
    pub entity: String,
    pub sentence: String,
    pub count_rank: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpora {
    /// One resolved article per line.
    pub ft1: Vec<String>,
    pub ft2_train: Vec<String>,
    pub ft2_test: Vec<Ft2TestRecord>,
}

/// FT1 is every resolved article; FT2 train holds the demonstrations of
/// train entities and FT2 test those of the held-out test entities.
/// Demonstrations of entities dropped by the frequency filter go nowhere.
pub fn emit_corpora(
    docs: &[ResolvedDocument],
    demos: &[Demonstration],
    split: &SplitManifest,
) -> Result<Corpora, SplitError> {
    let test: HashMap<&str, usize> = split
        .test_entities
        .iter()
        .map(|e| (e.entity.as_str(), e.rank))
        .collect();
    let train: HashSet<&str> = split.train_entities.iter().map(|e| e.entity.as_str()).collect();
    if let Some(e) = train.iter().find(|e| test.contains_key(*e)) {
        return Err(SplitError::Overlap(e.to_string()));
    }

    let mut sorted: Vec<&ResolvedDocument> = docs.iter().collect();
    sorted.sort_by(|a, b| a.doc_id.cmp(&b.doc_id));
    let mut out = Corpora {
        ft1: sorted.iter().map(|d| tidy(&d.text)).filter(|t| !t.is_empty()).collect(),
        ..Corpora::default()
    };
    for d in demos {
        if let Some(&rank) = test.get(d.entity.as_str()) {
            out.ft2_test.push(Ft2TestRecord {
                entity: d.entity.clone(),
                sentence: d.sentence.clone(),
                count_rank: rank,
            });
        } else if train.contains(d.entity.as_str()) {
            out.ft2_train.push(d.sentence.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clause(subject: &str, verb: &str) -> Clause {
        Clause {
            doc_id: "d".into(),
            sentence_index: 0,
            clause_type: ClauseType::SV,
            subject: subject.into(),
            verb_lemma: verb.into(),
            indirect_object: None,
            direct_object: None,
            complement: None,
            adverbials: vec![],
        }
    }

    fn names(list: &[&str]) -> HashSet<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn table_rows_reproduce() {
        let mut c = clause("Entity P", "come");
        c.clause_type = ClauseType::SVA;
        c.adverbials = vec!["in her uniform".into()];
        let d = synthesize(&c, &names(&["Entity P"])).unwrap();
        assert_eq!(d.sentence, "Entity P is described as coming in her uniform.");

        let mut c = clause("Entity W", "chart");
        c.clause_type = ClauseType::SVO;
        c.direct_object = Some("his future course of action".into());
        let d = synthesize(&c, &names(&["Entity W"])).unwrap();
        assert_eq!(d.sentence, "Entity W is described as charting his future course of action.");
    }

    #[test]
    fn svoo_orders_indirect_then_direct() {
        let mut c = clause("John Smith", "give");
        c.clause_type = ClauseType::SVOO;
        c.indirect_object = Some("Mary".into());
        c.direct_object = Some("a book".into());
        let d = synthesize(&c, &names(&["John Smith"])).unwrap();
        assert_eq!(d.sentence, "John Smith is described as giving Mary a book.");
    }

    #[test]
    fn adverbials_are_comma_joined_and_terminal_punct_normalised() {
        let mut c = clause("Ann Lee", "speak");
        c.complement = None;
        c.adverbials = vec!["on Monday".into(), "in Delhi .".into()];
        let d = synthesize(&c, &names(&["Ann Lee"])).unwrap();
        assert_eq!(d.sentence, "Ann Lee is described as speaking on Monday, in Delhi.");
        let mut c = clause("Ann Lee", "live");
        c.adverbials = vec!["in the U.S.".into()];
        let d = synthesize(&c, &names(&["Ann Lee"])).unwrap();
        assert_eq!(d.sentence, "Ann Lee is described as living in the U.S.");
    }

    #[test]
    fn non_entity_subject_is_skipped() {
        let (demos, stats) = synthesize_all(&[clause("He", "go"), clause("Ann Lee", "Go-ahead")], &names(&["Ann Lee"]));
        assert!(demos.is_empty());
        assert_eq!(stats.skipped_not_entity, 1);
        assert_eq!(stats.skipped_bad_verb, 1);
    }

    #[test]
    fn exactly_threshold_is_excluded() {
        let mut counts = BTreeMap::new();
        counts.insert("Edge Case".to_string(), 500);
        for i in 0..10 {
            counts.insert(format!("E {i}"), 501 + i);
        }
        let m = filter_and_split(&counts, 500, 10).unwrap();
        assert!(!m.is_test("Edge Case") && !m.is_train("Edge Case"));
        assert_eq!(m.test_entities.len(), 10);
        assert!(m.train_entities.is_empty());
        assert_eq!(m.warnings.len(), 1);
    }

    #[test]
    fn too_few_entities_is_an_error() {
        let counts: BTreeMap<String, usize> = (0..3).map(|i| (format!("E {i}"), 900)).collect();
        assert_eq!(
            filter_and_split(&counts, 500, 10),
            Err(SplitError::TooFewEntities { kept: 3, required: 10, threshold: 500 })
        );
    }

    #[test]
    fn overlap_is_fatal() {
        let split = SplitManifest {
            threshold: 0,
            test_count: 1,
            test_entities: vec![EntityCount { entity: "A B".into(), count: 2, rank: 1 }],
            train_entities: vec![EntityCount { entity: "A B".into(), count: 2, rank: 1 }],
            warnings: vec![],
        };
        assert_eq!(emit_corpora(&[], &[], &split), Err(SplitError::Overlap("A B".into())));
    }
}
