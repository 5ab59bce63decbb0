//! Evaluation harness: prompt jobs, reference corpora, nearest-neighbour
//! matching, quadrant classification, sentiment deltas, metrics and reports.

pub mod embed;
pub mod metrics;
pub mod prompt;
pub mod reference;
pub mod report;
pub mod sentiment;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use embed::{cosine, EmbedError, Embedder, HashEmbedder, HttpEmbedder};
pub use metrics::{compute_metrics, CorpusMetrics, MetricsReport, MetricsRow};
pub use prompt::{build_prompts, GeneratedRecord, GeneratedSentence, PromptJob, PromptTemplate};
pub use reference::{Reference, ReferenceCorpus, ReferenceSet, MASK_TOKEN};
pub use sentiment::Lexicon;

/// Default similarity threshold for a semantic match.
pub const DEFAULT_THRESHOLD: f64 = 0.6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Quadrant {
    Tp,
    Fp,
    Fn,
    Tn,
}

/// Similar enough and credited to the prompt entity: TP. Similar but
/// credited elsewhere: FP. Dissimilar but credited to the prompt entity:
/// FN. Neither: TN.
pub fn classify(cosine: f64, threshold: f64, credited: &str, prompt_entity: &str) -> Quadrant {
    match (cosine >= threshold, credited == prompt_entity) {
        (true, true) => Quadrant::Tp,
        (true, false) => Quadrant::Fp,
        (false, true) => Quadrant::Fn,
        (false, false) => Quadrant::Tn,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestMatch {
    pub reference_id: usize,
    pub reference_text: String,
    pub reference_source: String,
    pub best_match_entity: String,
    pub cosine: f64,
    pub quadrant: Quadrant,
    /// Only for true positives.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sentiment_delta: Option<f64>,
}

/// One line of `eval_records.jsonl`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    pub media_house: String,
    pub generated: GeneratedSentence,
    pub reference_corpus: ReferenceCorpus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub best_match: Option<BestMatch>,
    /// Set when the record could not be scored; such records are counted
    /// separately and excluded from metrics.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unevaluated: Option<String>,
}

/// A reference corpus with its embeddings.
pub struct IndexedReferences {
    pub set: ReferenceSet,
    vectors: Vec<Vec<f32>>,
    sq_norms: Vec<f64>,
}

impl IndexedReferences {
    pub fn build(set: ReferenceSet, embedder: &dyn Embedder) -> Result<Self, EmbedError> {
        let texts: Vec<String> = set.refs.iter().map(|r| r.embed_text.clone()).collect();
        let vectors = embed::embed_all(embedder, &texts)?;
        let sq_norms = vectors.iter().map(|v| embed::sq_norm(v)).collect();
        Ok(IndexedReferences { set, vectors, sq_norms })
    }

    pub fn dim(&self) -> Option<usize> {
        self.vectors.first().map(Vec::len)
    }

    /// Most similar reference; the lowest id wins ties.
    pub fn best_match(&self, query: &[f32]) -> Option<(usize, f64)> {
        self.best_match_for(query, None)
    }

    /// Most similar reference. Among references tied at the best cosine, one
    /// naming `entity` is preferred, then the lowest id.
    pub fn best_match_for(&self, query: &[f32], entity: Option<&str>) -> Option<(usize, f64)> {
        let qn = embed::sq_norm(query);
        let names = |i: usize| entity.is_some_and(|e| self.set.refs[i].entities.iter().any(|x| x == e));
        let mut best: Option<(usize, f64, bool)> = None;
        for (i, (v, &n)) in self.vectors.iter().zip(&self.sq_norms).enumerate() {
            let c = embed::cosine_with_norms(query, qn, v, n);
            let better = match best {
                None => true,
                Some((_, b, named)) => c > b || (c == b && !named && names(i)),
            };
            if better {
                best = Some((i, c, names(i)));
            }
        }
        best.map(|(i, c, _)| (i, c))
    }
}

pub struct Evaluator<'a> {
    pub embedder: &'a dyn Embedder,
    pub lexicon: &'a Lexicon,
    pub threshold: f64,
}

impl Evaluator<'_> {
    /// Score every generation against one reference corpus. Embedding
    /// failures mark the affected batch unevaluated instead of aborting.
    pub fn evaluate(&self, media_house: &str, generated: &[GeneratedSentence], refs: &IndexedReferences) -> Vec<EvalRecord> {
        let corpus = refs.set.corpus;
        let queries: Vec<String> = generated
            .iter()
            .map(|g| corpus.query_text(&g.first_sentence, &g.entity))
            .collect();
        let mut vectors: Vec<Result<Vec<f32>, String>> = Vec::with_capacity(queries.len());
        for chunk in queries.chunks(self.embedder.batch_size().max(1)) {
            match self.embedder.embed(chunk) {
                Ok(vs) if vs.len() == chunk.len() => vectors.extend(vs.into_iter().map(Ok)),
                Ok(vs) => {
                    let e = EmbedError::CountMismatch { expected: chunk.len(), got: vs.len() };
                    log::warn!("event=embed_batch_failed corpus={corpus} error=\"{e}\"");
                    vectors.extend(chunk.iter().map(|_| Err(e.to_string())));
                }
                Err(e) => {
                    log::warn!("event=embed_batch_failed corpus={corpus} error=\"{e}\"");
                    vectors.extend(chunk.iter().map(|_| Err(e.to_string())));
                }
            }
        }

        generated
            .par_iter()
            .zip(vectors.into_par_iter())
            .map(|(g, v)| {
                let outcome = v.and_then(|v| self.score(g, &v, refs));
                let (best_match, unevaluated) = match outcome {
                    Ok(m) => (Some(m), None),
                    Err(reason) => (None, Some(reason)),
                };
                EvalRecord {
                    media_house: media_house.to_string(),
                    generated: g.clone(),
                    reference_corpus: corpus,
                    best_match,
                    unevaluated,
                }
            })
            .collect()
    }

    fn score(&self, g: &GeneratedSentence, query: &[f32], refs: &IndexedReferences) -> Result<BestMatch, String> {
        if let Some(dim) = refs.dim() {
            if dim != query.len() {
                return Err(EmbedError::DimensionMismatch { expected: dim, got: query.len() }.to_string());
            }
        }
        let (id, cos) = refs
            .best_match_for(query, Some(&g.entity))
            .ok_or_else(|| format!("{} reference corpus is empty", refs.set.corpus))?;
        let r = &refs.set.refs[id];
        let credited = r.credited_entity(&g.entity).to_string();
        let quadrant = classify(cos, self.threshold, &credited, &g.entity);
        let sentiment_delta = (quadrant == Quadrant::Tp).then(|| self.lexicon.delta(&g.first_sentence, &r.text));
        Ok(BestMatch {
            reference_id: r.id,
            reference_text: r.text.clone(),
            reference_source: r.source.clone(),
            best_match_entity: credited,
            cosine: cos,
            quadrant,
            sentiment_delta,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demo::Ft2TestRecord;

    fn gen(entity: &str, sentence: &str) -> GeneratedSentence {
        GeneratedSentence {
            entity: entity.into(),
            template: PromptTemplate::Performing,
            raw: sentence.into(),
            first_sentence: sentence.into(),
        }
    }

    fn ft2(rows: &[(&str, &str)]) -> ReferenceSet {
        let recs: Vec<Ft2TestRecord> = rows
            .iter()
            .map(|(e, s)| Ft2TestRecord { entity: e.to_string(), sentence: s.to_string(), count_rank: 1 })
            .collect();
        ReferenceSet::ft2(&recs)
    }

    #[test]
    fn classify_quadrants() {
        assert_eq!(classify(0.6, 0.6, "A", "A"), Quadrant::Tp);
        assert_eq!(classify(0.9, 0.6, "B", "A"), Quadrant::Fp);
        assert_eq!(classify(0.59, 0.6, "A", "A"), Quadrant::Fn);
        assert_eq!(classify(0.1, 0.6, "B", "A"), Quadrant::Tn);
    }

    #[test]
    fn verbatim_ft2_sentence_is_tp_with_zero_delta() {
        let emb = HashEmbedder::default();
        let lex = Lexicon::builtin();
        let s = "Ann Lee is described as winning the race.";
        let refs = IndexedReferences::build(ft2(&[("Bo Chan", "Bo Chan is described as losing a vote."), ("Ann Lee", s)]), &emb).unwrap();
        let ev = Evaluator { embedder: &emb, lexicon: &lex, threshold: 0.6 };
        let out = ev.evaluate("h", &[gen("Ann Lee", s)], &refs);
        let m = out[0].best_match.as_ref().unwrap();
        assert_eq!(m.quadrant, Quadrant::Tp);
        assert!((m.cosine - 1.0).abs() < 1e-9);
        assert_eq!(m.sentiment_delta, Some(0.0));
    }

    #[test]
    fn renamed_sentence_is_fp() {
        let emb = HashEmbedder::default();
        let lex = Lexicon::builtin();
        let refs = IndexedReferences::build(ft2(&[("Bo Chan", "Bo Chan is described as winning the race.")]), &emb).unwrap();
        let ev = Evaluator { embedder: &emb, lexicon: &lex, threshold: 0.6 };
        let out = ev.evaluate("h", &[gen("Ann Lee", "Ann Lee is described as winning the race.")], &refs);
        let m = out[0].best_match.as_ref().unwrap();
        assert_eq!(m.quadrant, Quadrant::Fp);
        assert_eq!(m.best_match_entity, "Bo Chan");
        assert_eq!(m.sentiment_delta, None);
    }

    #[test]
    fn ties_go_to_lowest_id() {
        let emb = HashEmbedder::default();
        let s = "X is described as winning.";
        let refs = IndexedReferences::build(ft2(&[("A", s), ("B", s)]), &emb).unwrap();
        let q = emb.vector(&reference::mask(s, "X"));
        assert_eq!(refs.best_match(&q).unwrap().0, 0);
        assert_eq!(refs.best_match_for(&q, Some("B")).unwrap().0, 1);
        assert_eq!(refs.best_match_for(&q, Some("C")).unwrap().0, 0);
    }

    struct Failing;
    impl Embedder for Failing {
        fn embed(&self, _: &[String]) -> Result<Vec<Vec<f32>>, EmbedError> {
            Err(EmbedError::Status(503))
        }
    }

    #[test]
    fn embed_failure_marks_unevaluated() {
        let emb = HashEmbedder::default();
        let lex = Lexicon::builtin();
        let refs = IndexedReferences::build(ft2(&[("A", "A is described as x.")]), &emb).unwrap();
        let ev = Evaluator { embedder: &Failing, lexicon: &lex, threshold: 0.6 };
        let out = ev.evaluate("h", &[gen("A", "A is described as x.")], &refs);
        assert!(out[0].best_match.is_none());
        assert!(out[0].unevaluated.as_deref().unwrap().contains("503"));
    }
}
