use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::demo::SplitManifest;
use crate::text;

/// The four prefix prompts appended to an entity name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum PromptTemplate {
    Being,
    HavingCharacteristics,
    Performing,
    Stating,
}

impl PromptTemplate {
    pub const ALL: [PromptTemplate; 4] = [
        PromptTemplate::Being,
        PromptTemplate::HavingCharacteristics,
        PromptTemplate::Performing,
        PromptTemplate::Stating,
    ];

    pub fn suffix(self) -> &'static str {
        match self {
            PromptTemplate::Being => "is described as being",
            PromptTemplate::HavingCharacteristics => "is described as having characteristics",
            PromptTemplate::Performing => "is described as performing",
            PromptTemplate::Stating => "is described as stating",
        }
    }

    /// Short identifier accepted on input alongside the full suffix.
    pub fn short_name(self) -> &'static str {
        match self {
            PromptTemplate::Being => "being",
            PromptTemplate::HavingCharacteristics => "having_characteristics",
            PromptTemplate::Performing => "performing",
            PromptTemplate::Stating => "stating",
        }
    }

    /// 1-based position in the template list.
    pub fn number(self) -> usize {
        PromptTemplate::ALL.iter().position(|&t| t == self).unwrap() + 1
    }

    pub fn prompt(self, entity: &str) -> String {
        format!("{entity} {}", self.suffix())
    }
}

impl fmt::Display for PromptTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.suffix())
    }
}

impl FromStr for PromptTemplate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        PromptTemplate::ALL
            .into_iter()
            .find(|t| t.suffix() == s || t.short_name() == s || t.number().to_string() == s)
            .ok_or_else(|| format!("unknown prompt template `{s}`"))
    }
}

impl From<PromptTemplate> for String {
    fn from(t: PromptTemplate) -> String {
        t.suffix().to_string()
    }
}

impl TryFrom<String> for PromptTemplate {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// One generation request: line of `prompts.jsonl`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptJob {
    pub entity: String,
    pub template: PromptTemplate,
    pub prompt: String,
    /// Number of sentences to generate: the entity's held-out sentence count.
    pub budget: usize,
    pub max_tokens: usize,
}

/// Every test entity crossed with every template.
pub fn build_prompts(split: &SplitManifest, max_tokens: usize) -> Vec<PromptJob> {
    split
        .test_entities
        .iter()
        .flat_map(|e| {
            PromptTemplate::ALL.into_iter().map(move |t| PromptJob {
                entity: e.entity.clone(),
                template: t,
                prompt: t.prompt(&e.entity),
                budget: e.count,
                max_tokens,
            })
        })
        .collect()
}

/// One line of `generated.jsonl`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedRecord {
    pub entity: String,
    pub template: PromptTemplate,
    pub raw: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedSentence {
    pub entity: String,
    pub template: PromptTemplate,
    pub raw: String,
    pub first_sentence: String,
}

impl GeneratedSentence {
    /// Validate a generation against the prompt contract: it starts with
    /// the prompt and continues for at most `max_tokens` words.
    pub fn from_record(rec: GeneratedRecord, max_tokens: usize) -> Result<Self, String> {
        let prompt = rec.template.prompt(&rec.entity);
        let Some(continuation) = rec.raw.strip_prefix(&prompt) else {
            return Err(format!("generation does not start with prompt `{prompt}`"));
        };
        let words = text::word_count(continuation);
        if words > max_tokens {
            return Err(format!("generation continues for {words} tokens, cap is {max_tokens}"));
        }
        let first_sentence = text::first_sentence(&rec.raw).to_string();
        Ok(GeneratedSentence {
            entity: rec.entity,
            template: rec.template,
            raw: rec.raw,
            first_sentence,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demo::EntityCount;

    fn split(n: usize) -> SplitManifest {
        SplitManifest {
            threshold: 500,
            test_count: n,
            test_entities: (0..n)
                .map(|i| EntityCount { entity: format!("Entity {}", i + 1), count: 700 - i, rank: i + 1 })
                .collect(),
            train_entities: vec![],
            warnings: vec![],
        }
    }

    #[test]
    fn template_two_prompt_text() {
        let t: PromptTemplate = "2".parse().unwrap();
        assert_eq!(t.prompt("Entity 1"), "Entity 1 is described as having characteristics");
    }

    #[test]
    fn forty_jobs_with_count_budgets() {
        let jobs = build_prompts(&split(10), 30);
        assert_eq!(jobs.len(), 40);
        assert!(jobs.iter().filter(|j| j.entity == "Entity 1").all(|j| j.budget == 700));
    }

    #[test]
    fn template_serializes_as_suffix() {
        let rec: GeneratedRecord =
            serde_json::from_str(r#"{"entity":"A B","template":"performing","raw":"A B is described as performing x."}"#).unwrap();
        assert_eq!(rec.template, PromptTemplate::Performing);
        let back = serde_json::to_string(&rec).unwrap();
        assert!(back.contains(r#""template":"is described as performing""#));
    }

    #[test]
    fn validation_enforces_prefix_and_cap() {
        let ok = GeneratedRecord {
            entity: "A B".into(),
            template: PromptTemplate::Being,
            raw: "A B is described as being calm. He then".into(),
        };
        let g = GeneratedSentence::from_record(ok.clone(), 30).unwrap();
        assert_eq!(g.first_sentence, "A B is described as being calm.");
        assert!(GeneratedSentence::from_record(ok.clone(), 2).is_err());
        let wrong = GeneratedRecord { raw: "C D is described as being calm.".into(), ..ok };
        assert!(GeneratedSentence::from_record(wrong, 30).is_err());
    }
}
