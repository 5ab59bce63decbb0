//! Substitute coreference mentions and expand partial names.
//!
//! cargo run --example resolve
use charforge::resolve::{resolve_document, CorefCluster, CorefClusterSet};
use charforge::store::{parse_date, Article};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = "Asha Verma won the vote. She thanked her staff. Verma later met Bilal Khan, and Khan agreed.";
    let article = Article {
        id: "demo-1".into(),
        media_house: "demo".into(),
        url: "https://news.example/demo-1".into(),
        published_at: parse_date("2019-05-01")?,
        text: text.into(),
    };
    let span = |s: &str, nth: usize| {
        let start = text.match_indices(s).nth(nth).unwrap().0;
        [start, start + s.len()]
    };
    let coref = CorefClusterSet {
        doc_id: "demo-1".into(),
        clusters: vec![CorefCluster {
            representative: "Asha Verma".into(),
            mentions: vec![span("Asha Verma", 0), span("She", 0), span("her", 0)],
        }],
        person_mentions: vec![span("Asha Verma", 0), span("Verma", 1), span("Bilal Khan", 0), span("Khan", 1)],
    };
    let (doc, unresolved) = resolve_document(&article, &coref)?;
    println!("{}\n", doc.text);
    for (i, sentence) in doc.sentence_texts().into_iter().enumerate() {
        println!("[{i}] {sentence}  -> {:?}", doc.entities_in_sentence(i));
    }
    for alias in &doc.alias_map {
        println!("alias {} => {}", alias.partial, alias.full_name);
    }
    for u in unresolved {
        println!("unresolved {:?}", u.surface);
    }
    Ok(())
}
