use charforge::gerund::{gerund, gerund_phrase};

fn reference() -> Vec<(String, String)> {
    let path = format!("{}/tests/fixtures/gerund/reference.tsv", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let (a, b) = l.split_once('\t').unwrap();
            (a.to_string(), b.to_string())
        })
        .collect()
}

#[test]
fn reference_list_matches_exactly() {
    let list = reference();
    assert_eq!(list.len(), 150);
    let misses: Vec<String> = list
        .iter()
        .filter_map(|(lemma, want)| {
            let got = gerund(lemma).unwrap();
            (&got != want).then(|| format!("{lemma}: got {got}, want {want}"))
        })
        .collect();
    assert!(misses.is_empty(), "{misses:#?}");
}

#[test]
fn cited_forms_are_in_the_list() {
    let list = reference();
    for form in ["showing", "saying", "claiming", "winning", "coming"] {
        assert!(list.iter().any(|(_, f)| f == form), "{form}");
    }
}

#[test]
fn phrasal_head_uses_the_same_table() {
    for (lemma, want) in reference() {
        assert_eq!(gerund_phrase(&format!("{lemma} out")).unwrap(), format!("{want} out"));
    }
}
