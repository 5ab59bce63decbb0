mod common;

use charforge::demo::Ft2TestRecord;
use charforge::eval::embed::cosine;
use charforge::eval::reference::mask;
use charforge::eval::{
    classify, compute_metrics, EvalRecord, Evaluator, GeneratedSentence, HashEmbedder, Lexicon, PromptTemplate,
    Quadrant, ReferenceCorpus, ReferenceSet,
};
use charforge::eval::IndexedReferences;
use common::oracles::{classify_oracle, metrics_oracle, random_records, record};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ENTITIES: [&str; 4] = ["Asha Verma", "Bilal Khan", "Chen Wei", "Dana Okafor"];

fn close(a: Option<f64>, b: Option<f64>) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => (x - y).abs() <= 1e-9,
        _ => false,
    }
}

#[test]
fn classify_boundaries() {
    let cases = [
        (0.59, "A", "A", Quadrant::Fn),
        (0.59, "B", "A", Quadrant::Tn),
        (0.60, "A", "A", Quadrant::Tp),
        (0.60, "B", "A", Quadrant::Fp),
        (0.61, "A", "A", Quadrant::Tp),
        (0.61, "B", "A", Quadrant::Fp),
    ];
    for (cos, credited, prompt, want) in cases {
        assert_eq!(classify(cos, 0.6, credited, prompt), want, "{cos} {credited} {prompt}");
        assert_eq!(classify_oracle(cos, 0.6, credited, prompt), want);
    }
}

#[test]
fn metrics_worked_example() {
    let mut recs = Vec::new();
    for (i, q) in [(8, Quadrant::Tp), (2, Quadrant::Fp), (1, Quadrant::Fn)]
        .into_iter()
        .flat_map(|(n, q)| std::iter::repeat_n(q, n))
        .enumerate()
    {
        recs.push(record("h", PromptTemplate::Being, "Asha Verma", &format!("s{i}"), ReferenceCorpus::Ft1, Some(q), 0.1));
    }
    let m = &compute_metrics(&recs, 0.6).rows[0].ft1;
    assert_eq!(m.precision, Some(0.8));
    assert!((m.recall.unwrap() - 8.0 / 9.0).abs() < 1e-12);
    assert!((m.f1.unwrap() - 16.0 / 19.0).abs() < 1e-12);
    assert_eq!(format!("{:.3}", m.f1.unwrap()), "0.842");
}

fn ft2_refs(sentences: &[(&str, &str)]) -> ReferenceSet {
    let recs: Vec<Ft2TestRecord> = sentences
        .iter()
        .map(|(e, s)| Ft2TestRecord { entity: e.to_string(), sentence: s.to_string(), count_rank: 1 })
        .collect();
    ReferenceSet::ft2(&recs)
}

fn generated(entity: &str, sentence: &str) -> GeneratedSentence {
    GeneratedSentence {
        entity: entity.to_string(),
        template: PromptTemplate::Being,
        raw: sentence.to_string(),
        first_sentence: sentence.to_string(),
    }
}

#[test]
fn self_match_and_renamed_match() {
    let embedder = HashEmbedder::new(512, 0);
    let lexicon = Lexicon::builtin();
    let refs = IndexedReferences::build(
        ft2_refs(&[
            ("Asha Verma", "Asha Verma is described as being calm."),
            ("Bilal Khan", "Bilal Khan is described as winning the vote."),
        ]),
        &embedder,
    )
    .unwrap();
    let ev = Evaluator { embedder: &embedder, lexicon: &lexicon, threshold: 0.6 };
    let gens = [
        generated("Asha Verma", "Asha Verma is described as being calm."),
        generated("Chen Wei", "Chen Wei is described as being calm."),
    ];
    let out = ev.evaluate("h", &gens, &refs);
    let own = out[0].best_match.as_ref().unwrap();
    assert_eq!(own.quadrant, Quadrant::Tp);
    assert_eq!(own.cosine, 1.0);
    let other = out[1].best_match.as_ref().unwrap();
    assert_eq!(other.quadrant, Quadrant::Fp);
    assert_eq!(other.best_match_entity, "Asha Verma");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn classify_matches_oracle(cos in -1.0f64..=1.0, thr in 0.01f64..=1.0, a in 0..4usize, b in 0..4usize) {
        prop_assert_eq!(classify(cos, thr, ENTITIES[a], ENTITIES[b]), classify_oracle(cos, thr, ENTITIES[a], ENTITIES[b]));
    }

    #[test]
    fn metrics_match_independent_tally(seed in any::<u64>(), n in 0usize..120) {
        let recs = random_records(&mut ChaCha8Rng::seed_from_u64(seed), n);
        let report = compute_metrics(&recs, 0.6);
        let want = metrics_oracle(&recs);
        prop_assert_eq!(report.rows.len(), want.len());
        for (row, (house, template, distinct, ft1, ft2)) in report.rows.iter().zip(&want) {
            prop_assert_eq!(&row.media_house, house);
            prop_assert_eq!(row.template, *template);
            prop_assert_eq!(row.distinct_generated, *distinct);
            for (m, t) in [(&row.ft1, ft1), (&row.ft2, ft2)] {
                prop_assert_eq!((m.evaluated, m.unevaluated, m.tp, m.fp, m.fn_, m.tn), (t.evaluated, t.unevaluated, t.tp, t.fp, t.fn_, t.tn));
                prop_assert_eq!(m.tp + m.fp + m.fn_ + m.tn, m.evaluated);
                prop_assert!(close(m.precision, t.precision()));
                prop_assert!(close(m.recall, t.recall()));
                prop_assert!(close(m.f1, t.f1()));
                prop_assert!(close(m.pct_distinct_semantic_matches, t.pct()));
                prop_assert!(close(m.avg_tp_sentiment_delta, t.avg_delta()));
                for v in [m.precision, m.recall, m.f1].into_iter().flatten() {
                    prop_assert!((0.0..=1.0).contains(&v));
                }
            }
        }
    }

    #[test]
    fn duplicated_sentences_do_not_change_metrics(seed in any::<u64>(), n in 1usize..80, pick in any::<prop::sample::Index>()) {
        let recs = random_records(&mut ChaCha8Rng::seed_from_u64(seed), n);
        let mut doubled: Vec<EvalRecord> = recs.clone();
        let i = pick.index(recs.len());
        doubled.insert(i + 1, recs[i].clone());
        doubled.push(recs[i].clone());
        prop_assert_eq!(compute_metrics(&recs, 0.6), compute_metrics(&doubled, 0.6));
    }

    #[test]
    fn mask_is_invariant_under_renaming(
        words in prop::collection::vec("[a-z]{1,8}", 1..10),
        at in any::<prop::sample::Index>(),
        a in 0..4usize,
        b in 0..4usize,
    ) {
        let with = |name: &str| {
            let mut w = words.clone();
            w.insert(at.index(words.len() + 1), name.to_string());
            w.join(" ") + "."
        };
        let (sa, sb) = (with(ENTITIES[a]), with(ENTITIES[b]));
        prop_assert_eq!(mask(&sa, ENTITIES[a]), mask(&sb, ENTITIES[b]));
        let e = HashEmbedder::new(256, 3);
        let q = e.vector("Dana Okafor is described as being brave.");
        prop_assert_eq!(cosine(&q, &e.vector(&mask(&sa, ENTITIES[a]))), cosine(&q, &e.vector(&mask(&sb, ENTITIES[b]))));
    }

    #[test]
    fn best_match_is_exhaustive_argmax(
        refs in prop::collection::vec(("[a-d]{1,3}( [a-d]{1,3}){0,5}", 0..4usize), 1..12),
        query in "[a-d]{1,3}( [a-d]{1,3}){0,5}",
    ) {
        let e = HashEmbedder::new(64, 9);
        let pairs: Vec<(&str, &str)> = refs.iter().map(|(s, i)| (ENTITIES[*i], s.as_str())).collect();
        let set = ft2_refs(&pairs);
        let texts: Vec<String> = set.refs.iter().map(|r| r.embed_text.clone()).collect();
        let idx = IndexedReferences::build(set, &e).unwrap();
        let q = e.vector(&query);
        let mut best = (0, f64::NEG_INFINITY);
        for (i, t) in texts.iter().enumerate() {
            let c = cosine(&q, &e.vector(t));
            if c > best.1 {
                best = (i, c);
            }
        }
        prop_assert_eq!(idx.best_match(&q), Some(best));
    }

    #[test]
    fn raising_threshold_never_creates_positives(
        low in 0.05f64..0.95,
        step in 0.0f64..0.5,
        sentences in prop::collection::vec(("[a-c]{1,2}( [a-c]{1,2}){0,4}", 0..4usize), 1..10),
    ) {
        let high = (low + step).min(1.0);
        let e = HashEmbedder::new(64, 1);
        let lex = Lexicon::builtin();
        let refs = IndexedReferences::build(
            ft2_refs(&[("Asha Verma", "a b c"), ("Bilal Khan", "b c a a"), ("Chen Wei", "c c b")]),
            &e,
        ).unwrap();
        let gens: Vec<GeneratedSentence> = sentences.iter().map(|(s, i)| generated(ENTITIES[*i], s)).collect();
        let at = |t: f64| Evaluator { embedder: &e, lexicon: &lex, threshold: t }.evaluate("h", &gens, &refs);
        for (lo, hi) in at(low).iter().zip(at(high)) {
            let (lo, hi) = (lo.best_match.as_ref().unwrap().quadrant, hi.best_match.unwrap().quadrant);
            prop_assert!(!(lo == Quadrant::Fn && hi == Quadrant::Tp));
            prop_assert!(!(lo == Quadrant::Tn && hi == Quadrant::Fp));
        }
    }
}
