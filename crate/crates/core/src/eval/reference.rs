use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::demo::Ft2TestRecord;
use crate::resolve::ResolvedDocument;
use crate::text;

/// Placeholder substituted for the entity name in FT2 comparisons.
pub const MASK_TOKEN: &str = "<MASK>";

/// Default for the FT1 length filter: sentences need more word tokens than this.
pub const MIN_FT1_TOKENS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ReferenceCorpus {
    #[serde(rename = "FT1")]
    Ft1,
    #[serde(rename = "FT2")]
    Ft2,
}

impl ReferenceCorpus {
    pub const ALL: [ReferenceCorpus; 2] = [ReferenceCorpus::Ft1, ReferenceCorpus::Ft2];

    pub fn as_str(self) -> &'static str {
        match self {
            ReferenceCorpus::Ft1 => "FT1",
            ReferenceCorpus::Ft2 => "FT2",
        }
    }

    /// Text the generated sentence is embedded as when compared to this corpus.
    pub fn query_text(self, first_sentence: &str, entity: &str) -> String {
        match self {
            ReferenceCorpus::Ft1 => first_sentence.to_string(),
            ReferenceCorpus::Ft2 => mask(first_sentence, entity),
        }
    }
}

impl fmt::Display for ReferenceCorpus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReferenceCorpus {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "FT1" => Ok(ReferenceCorpus::Ft1),
            "FT2" => Ok(ReferenceCorpus::Ft2),
            _ => Err(format!("unknown reference corpus `{s}`")),
        }
    }
}

pub fn mask(sentence: &str, entity: &str) -> String {
    text::replace_whole(sentence, entity, MASK_TOKEN)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reference {
    pub id: usize,
    /// Original sentence, as shown in reports.
    pub text: String,
    /// What gets embedded: masked for FT2, identical to `text` for FT1.
    pub embed_text: String,
    /// Entities attributed to the sentence. FT2 references have exactly one.
    pub entities: Vec<String>,
    pub source: String,
}

impl Reference {
    /// Entity credited for a match against a generation for `prompt_entity`.
    pub fn credited_entity<'a>(&'a self, prompt_entity: &'a str) -> &'a str {
        if self.entities.iter().any(|e| e == prompt_entity) {
            prompt_entity
        } else {
            self.entities.first().map(String::as_str).unwrap_or("")
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSet {
    pub corpus: ReferenceCorpus,
    pub refs: Vec<Reference>,
}

impl ReferenceSet {
    pub fn ft2(test: &[Ft2TestRecord]) -> Self {
        let refs = test
            .iter()
            .enumerate()
            .map(|(id, r)| Reference {
                id,
                text: r.sentence.clone(),
                embed_text: mask(&r.sentence, &r.entity),
                entities: vec![r.entity.clone()],
                source: format!("ft2_test:{id}"),
            })
            .collect();
        ReferenceSet { corpus: ReferenceCorpus::Ft2, refs }
    }

    /// Sentences naming at least one resolved entity and with more than
    /// `min_tokens` word tokens. Documents are taken in `doc_id` order.
    pub fn ft1(docs: &[ResolvedDocument], min_tokens: usize) -> Self {
        let mut sorted: Vec<&ResolvedDocument> = docs.iter().collect();
        sorted.sort_by(|a, b| a.doc_id.cmp(&b.doc_id));
        let mut refs = Vec::new();
        for doc in sorted {
            for (i, sentence) in doc.sentence_texts().into_iter().enumerate() {
                let entities = doc.entities_in_sentence(i);
                if entities.is_empty() {
                    continue;
                }
                if text::word_count(sentence) <= min_tokens {
                    continue;
                }
                refs.push(Reference {
                    id: refs.len(),
                    text: sentence.to_string(),
                    embed_text: sentence.to_string(),
                    entities: entities.into_iter().map(str::to_string).collect(),
                    source: format!("{}#{i}", doc.doc_id),
                });
            }
        }
        ReferenceSet { corpus: ReferenceCorpus::Ft1, refs }
    }

    pub fn len(&self) -> usize {
        self.refs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.refs.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolve::EntityMention;

    #[test]
    fn ft2_references_are_masked() {
        let set = ReferenceSet::ft2(&[Ft2TestRecord {
            entity: "Ann Lee".into(),
            sentence: "Ann Lee is described as winning the race.".into(),
            count_rank: 1,
        }]);
        assert_eq!(set.refs[0].embed_text, "<MASK> is described as winning the race.");
        assert_eq!(set.refs[0].text, "Ann Lee is described as winning the race.");
    }

    #[test]
    fn ft1_keeps_long_entity_sentences() {
        let text = "Ann Lee spoke. Ann Lee told the assembled crowd of voters that she would keep every promise. The rain kept falling on the town for many hours and days on end.";
        let doc = ResolvedDocument {
            doc_id: "d1".into(),
            text: text.into(),
            entity_mentions: vec![
                EntityMention { full_name: "Ann Lee".into(), sentence_index: 0, span: [0, 7] },
                EntityMention { full_name: "Ann Lee".into(), sentence_index: 1, span: [15, 22] },
            ],
            alias_map: vec![],
            sentences: vec![[0, 14], [15, 92], [93, 158]],
        };
        let set = ReferenceSet::ft1(&[doc], MIN_FT1_TOKENS);
        assert_eq!(set.len(), 1);
        assert!(set.refs[0].text.starts_with("Ann Lee told"));
        assert_eq!(set.refs[0].source, "d1#1");
    }

    #[test]
    fn credit_prefers_prompt_entity() {
        let r = Reference {
            id: 0,
            text: String::new(),
            embed_text: String::new(),
            entities: vec!["A".into(), "B".into()],
            source: String::new(),
        };
        assert_eq!(r.credited_entity("B"), "B");
        assert_eq!(r.credited_entity("C"), "A");
    }
}
