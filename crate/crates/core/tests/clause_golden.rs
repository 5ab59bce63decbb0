use std::fs::File;
use std::io::BufReader;

use charforge::clause::{extract_clauses, Clause, ClauseType};
use charforge::conllu::parse_conllu;

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/clauses/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn extracted() -> Vec<Clause> {
    let file = File::open(fixture("golden.conllu")).unwrap();
    let outcome = parse_conllu(BufReader::new(file), "golden").unwrap();
    assert!(outcome.diagnostics.is_empty(), "{:?}", outcome.diagnostics);
    assert_eq!(outcome.sentences.len(), 40);
    outcome.sentences.iter().flat_map(extract_clauses).collect()
}

fn expected() -> Vec<Clause> {
    let src = std::fs::read_to_string(fixture("golden_clauses.json")).unwrap();
    serde_json::from_str(&src).unwrap()
}

#[test]
fn golden_clauses_match_exactly() {
    let got = extracted();
    let want = expected();
    for w in &want {
        let same: Vec<&Clause> = got.iter().filter(|g| g.sentence_index == w.sentence_index).collect();
        assert!(same.contains(&w), "sentence {}: expected {w:#?}\n got {same:#?}", w.sentence_index);
    }
    assert_eq!(got, want);
}

#[test]
fn golden_covers_every_type() {
    let want = expected();
    for t in ClauseType::ALL {
        assert!(want.iter().any(|c| c.clause_type == t), "{t} missing from fixture");
    }
}

#[test]
fn golden_clauses_satisfy_type_invariants() {
    for c in extracted() {
        c.check().unwrap();
    }
}
