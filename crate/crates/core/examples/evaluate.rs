//! Score generations against held-out sentences with the stub embedder and
//! print the metrics table.
//!
//! cargo run --example evaluate
use charforge::demo::Ft2TestRecord;
use charforge::eval::report::render_csv;
use charforge::eval::{
    compute_metrics, Evaluator, GeneratedSentence, HashEmbedder, IndexedReferences, Lexicon, PromptTemplate,
    ReferenceSet,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let held_out: Vec<Ft2TestRecord> = [
        ("Asha Verma", "Asha Verma is described as winning the election in Delhi."),
        ("Asha Verma", "Asha Verma is described as being calm under pressure."),
        ("Bilal Khan", "Bilal Khan is described as stating that the plan was ready."),
    ]
    .iter()
    .map(|(e, s)| Ft2TestRecord { entity: e.to_string(), sentence: s.to_string(), count_rank: 1 })
    .collect();
    let embedder = HashEmbedder::new(512, 0);
    let refs = IndexedReferences::build(ReferenceSet::ft2(&held_out), &embedder)?;
    let lexicon = Lexicon::builtin();
    let evaluator = Evaluator { embedder: &embedder, lexicon: &lexicon, threshold: 0.6 };

    let generated: Vec<GeneratedSentence> = [
        ("Asha Verma", PromptTemplate::Being, "Asha Verma is described as being calm under pressure."),
        ("Asha Verma", PromptTemplate::HavingCharacteristics, "Asha Verma has characteristics of a quiet person."),
        ("Bilal Khan", PromptTemplate::Being, "Bilal Khan is described as winning the election in Delhi."),
    ]
    .iter()
    .map(|(e, t, s)| GeneratedSentence { entity: e.to_string(), template: *t, raw: s.to_string(), first_sentence: s.to_string() })
    .collect();

    let records = evaluator.evaluate("demo", &generated, &refs);
    for r in &records {
        if let Some(m) = &r.best_match {
            println!("{:?} {:.3} {:<55} ~ {}", m.quadrant, m.cosine, r.generated.first_sentence, m.reference_text);
        }
    }
    println!();
    print!("{}", render_csv(&compute_metrics(&records, 0.6)));
    Ok(())
}
