//! Brute-force reimplementations used as oracles.

use charforge::eval::{
    BestMatch, EvalRecord, GeneratedSentence, PromptTemplate, Quadrant, ReferenceCorpus,
};
use rand::seq::IndexedRandom;
use rand::Rng;

/// (entity, count, 1-based rank) lists for test and train, or `None` when
/// fewer than `k` entities pass the filter.
pub type Split = (Vec<(String, usize, usize)>, Vec<(String, usize, usize)>);

pub fn split_oracle(counts: &[(String, usize)], threshold: usize, k: usize) -> Option<Split> {
    let kept: Vec<&(String, usize)> = counts.iter().filter(|(_, c)| *c > threshold).collect();
    let n = kept.len();
    if n < k || k == 0 {
        return None;
    }
    let mut ranked: Vec<(String, usize, usize)> = Vec::new();
    for (name, count) in &kept {
        let ahead = kept
            .iter()
            .filter(|(other, c)| c > count || (c == count && other < name))
            .count();
        ranked.push((name.clone(), *count, ahead + 1));
    }
    ranked.sort_by_key(|r| r.2);
    let (mut test, mut train) = (Vec::new(), Vec::new());
    for r in ranked {
        let is_test = (0..k).any(|i| (i * n) / k == r.2 - 1);
        if is_test {
            test.push(r);
        } else {
            train.push(r);
        }
    }
    Some((test, train))
}

pub fn classify_oracle(cosine: f64, threshold: f64, credited: &str, prompt: &str) -> Quadrant {
    const TABLE: [[Quadrant; 2]; 2] = [
        // same entity:  no            yes
        [Quadrant::Tn, Quadrant::Fn], // below threshold
        [Quadrant::Fp, Quadrant::Tp], // at or above threshold
    ];
    let similar = usize::from(cosine >= threshold);
    let same = usize::from(credited.as_bytes() == prompt.as_bytes());
    TABLE[similar][same]
}

#[derive(Debug, Default, Clone, PartialEq)]
pub struct Tally {
    pub evaluated: usize,
    pub unevaluated: usize,
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
    pub tn: usize,
    pub delta_sum: f64,
}

impl Tally {
    pub fn precision(&self) -> Option<f64> {
        if self.tp + self.fp == 0 { None } else { Some(self.tp as f64 / (self.tp + self.fp) as f64) }
    }
    pub fn recall(&self) -> Option<f64> {
        if self.tp + self.fn_ == 0 { None } else { Some(self.tp as f64 / (self.tp + self.fn_) as f64) }
    }
    pub fn f1(&self) -> Option<f64> {
        let (p, r) = (self.precision()?, self.recall()?);
        Some(if p + r == 0.0 { 0.0 } else { 2.0 * p * r / (p + r) })
    }
    pub fn pct(&self) -> Option<f64> {
        if self.evaluated == 0 { None } else { Some(100.0 * (self.tp + self.fp) as f64 / self.evaluated as f64) }
    }
    pub fn avg_delta(&self) -> Option<f64> {
        if self.tp == 0 { None } else { Some(self.delta_sum / self.tp as f64) }
    }
}

/// Per (house, template): distinct generated count and the FT1/FT2 tallies.
pub fn metrics_oracle(records: &[EvalRecord]) -> Vec<(String, PromptTemplate, usize, Tally, Tally)> {
    let mut keys: Vec<(String, PromptTemplate)> = Vec::new();
    for r in records {
        let k = (r.media_house.clone(), r.generated.template);
        if !keys.contains(&k) {
            keys.push(k);
        }
    }
    keys.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.number().cmp(&b.1.number())));
    keys.into_iter()
        .map(|(house, template)| {
            let mine: Vec<&EvalRecord> = records
                .iter()
                .filter(|r| r.media_house == house && r.generated.template == template)
                .collect();
            let mut distinct: Vec<(&str, &str)> = Vec::new();
            for r in &mine {
                let k = (r.generated.entity.as_str(), r.generated.first_sentence.as_str());
                if !distinct.contains(&k) {
                    distinct.push(k);
                }
            }
            let tally = |corpus: ReferenceCorpus| {
                let mut t = Tally::default();
                let mut seen: Vec<(&str, &str)> = Vec::new();
                let mut failed: Vec<(&str, &str)> = Vec::new();
                for r in mine.iter().filter(|r| r.reference_corpus == corpus) {
                    let k = (r.generated.entity.as_str(), r.generated.first_sentence.as_str());
                    let Some(b) = &r.best_match else {
                        if !failed.contains(&k) {
                            failed.push(k);
                            t.unevaluated += 1;
                        }
                        continue;
                    };
                    if seen.contains(&k) {
                        continue;
                    }
                    seen.push(k);
                    t.evaluated += 1;
                    match b.quadrant {
                        Quadrant::Tp => {
                            t.tp += 1;
                            t.delta_sum += b.sentiment_delta.unwrap_or(0.0);
                        }
                        Quadrant::Fp => t.fp += 1,
                        Quadrant::Fn => t.fn_ += 1,
                        Quadrant::Tn => t.tn += 1,
                    }
                }
                t
            };
            let n = distinct.len();
            (house, template, n, tally(ReferenceCorpus::Ft1), tally(ReferenceCorpus::Ft2))
        })
        .collect()
}

pub fn record(
    house: &str,
    template: PromptTemplate,
    entity: &str,
    sentence: &str,
    corpus: ReferenceCorpus,
    quadrant: Option<Quadrant>,
    delta: f64,
) -> EvalRecord {
    let generated = GeneratedSentence {
        entity: entity.to_string(),
        template,
        raw: sentence.to_string(),
        first_sentence: sentence.to_string(),
    };
    let best_match = quadrant.map(|q| BestMatch {
        reference_id: 0,
        reference_text: "ref".into(),
        reference_source: "fixture".into(),
        best_match_entity: entity.to_string(),
        cosine: 0.5,
        quadrant: q,
        sentiment_delta: (q == Quadrant::Tp).then_some(delta),
    });
    EvalRecord {
        media_house: house.to_string(),
        generated,
        reference_corpus: corpus,
        unevaluated: best_match.is_none().then(|| "embed failed".to_string()),
        best_match,
    }
}

/// A random record set drawn from small pools so duplicates are common.
pub fn random_records<R: Rng>(rng: &mut R, n: usize) -> Vec<EvalRecord> {
    let houses = ["house_a", "house_b"];
    let entities = ["Asha Verma", "Bilal Khan", "Chen Wei"];
    let quads = [Quadrant::Tp, Quadrant::Fp, Quadrant::Fn, Quadrant::Tn];
    (0..n)
        .map(|_| {
            let t = PromptTemplate::ALL[rng.random_range(0..4)];
            let e = *entities.choose(rng).unwrap();
            let s = format!("{e} {} thing {}.", t.suffix(), rng.random_range(0..6));
            let corpus = if rng.random_bool(0.5) { ReferenceCorpus::Ft1 } else { ReferenceCorpus::Ft2 };
            let q = if rng.random_bool(0.1) { None } else { Some(*quads.choose(rng).unwrap()) };
            record(houses.choose(rng).unwrap(), t, e, &s, corpus, q, rng.random_range(0.0..1.0))
        })
        .collect()
}
