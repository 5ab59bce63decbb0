use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{EvalRecord, PromptTemplate, Quadrant, ReferenceCorpus};

/// Tallies for one (media house, template, reference corpus). Ratios with
/// a zero denominator are `None`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CorpusMetrics {
    /// Distinct (entity, first sentence) pairs that were scored.
    pub evaluated: usize,
    /// Distinct pairs that could not be scored.
    pub unevaluated: usize,
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub tn: usize,
    pub pct_distinct_semantic_matches: Option<f64>,
    pub avg_tp_sentiment_delta: Option<f64>,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f1: Option<f64>,
}

impl CorpusMetrics {
    fn finish(&mut self, tp_delta_sum: f64) {
        let ratio = |num: usize, den: usize| (den > 0).then(|| num as f64 / den as f64);
        self.pct_distinct_semantic_matches = ratio(self.tp + self.fp, self.evaluated).map(|r| r * 100.0);
        self.avg_tp_sentiment_delta = (self.tp > 0).then(|| tp_delta_sum / self.tp as f64);
        self.precision = ratio(self.tp, self.tp + self.fp);
        self.recall = ratio(self.tp, self.tp + self.fn_);
        self.f1 = match (self.precision, self.recall) {
            (Some(p), Some(r)) if p + r > 0.0 => Some(2.0 * p * r / (p + r)),
            (Some(_), Some(_)) => Some(0.0),
            _ => None,
        };
    }

    /// Names of the metrics left undefined by a zero denominator.
    pub fn undefined(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.pct_distinct_semantic_matches.is_none() {
            out.push("pct_distinct_semantic_matches");
        }
        if self.avg_tp_sentiment_delta.is_none() {
            out.push("avg_tp_sentiment_delta");
        }
        if self.precision.is_none() {
            out.push("precision");
        }
        if self.recall.is_none() {
            out.push("recall");
        }
        if self.f1.is_none() {
            out.push("f1");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub media_house: String,
    pub template: PromptTemplate,
    pub distinct_generated: usize,
    pub ft1: CorpusMetrics,
    pub ft2: CorpusMetrics,
}

impl MetricsRow {
    pub fn corpus(&self, c: ReferenceCorpus) -> &CorpusMetrics {
        match c {
            ReferenceCorpus::Ft1 => &self.ft1,
            ReferenceCorpus::Ft2 => &self.ft2,
        }
    }

    fn corpus_mut(&mut self, c: ReferenceCorpus) -> &mut CorpusMetrics {
        match c {
            ReferenceCorpus::Ft1 => &mut self.ft1,
            ReferenceCorpus::Ft2 => &mut self.ft2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub threshold: f64,
    pub rows: Vec<MetricsRow>,
}

impl MetricsReport {
    pub fn row(&self, media_house: &str, template: PromptTemplate) -> Option<&MetricsRow> {
        self.rows.iter().find(|r| r.media_house == media_house && r.template == template)
    }
}

/// Aggregate records per (media house, template), counting each distinct
/// (entity, first sentence) once per reference corpus. Unevaluated records
/// are tallied but not scored.
pub fn compute_metrics(records: &[EvalRecord], threshold: f64) -> MetricsReport {
    let mut rows: BTreeMap<(String, PromptTemplate), MetricsRow> = BTreeMap::new();
    let mut deltas: BTreeMap<(String, PromptTemplate, ReferenceCorpus), f64> = BTreeMap::new();
    let mut seen: HashSet<(&str, PromptTemplate, ReferenceCorpus, &str, &str)> = HashSet::new();
    let mut failed = seen.clone();
    let mut generated: HashSet<(&str, PromptTemplate, &str, &str)> = HashSet::new();

    for r in records {
        let g = &r.generated;
        let key = (r.media_house.clone(), g.template);
        let row = rows.entry(key).or_insert_with(|| MetricsRow {
            media_house: r.media_house.clone(),
            template: g.template,
            distinct_generated: 0,
            ft1: CorpusMetrics::default(),
            ft2: CorpusMetrics::default(),
        });
        if generated.insert((&r.media_house, g.template, &g.entity, &g.first_sentence)) {
            row.distinct_generated += 1;
        }
        let m = row.corpus_mut(r.reference_corpus);
        let key = (r.media_house.as_str(), g.template, r.reference_corpus, g.entity.as_str(), g.first_sentence.as_str());
        let Some(best) = &r.best_match else {
            if failed.insert(key) {
                m.unevaluated += 1;
            }
            continue;
        };
        if !seen.insert(key) {
            continue;
        }
        m.evaluated += 1;
        match best.quadrant {
            Quadrant::Tp => {
                m.tp += 1;
                *deltas.entry((r.media_house.clone(), g.template, r.reference_corpus)).or_default() +=
                    best.sentiment_delta.unwrap_or(0.0);
            }
            Quadrant::Fp => m.fp += 1,
            Quadrant::Fn => m.fn_ += 1,
            Quadrant::Tn => m.tn += 1,
        }
    }

    let mut rows: Vec<MetricsRow> = rows.into_values().collect();
    for row in &mut rows {
        for c in ReferenceCorpus::ALL {
            let sum = deltas.get(&(row.media_house.clone(), row.template, c)).copied().unwrap_or(0.0);
            row.corpus_mut(c).finish(sum);
        }
    }
    MetricsReport { threshold, rows }
}
