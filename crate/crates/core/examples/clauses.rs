//! Extract clauses from a CoNLL-U parse and turn the entity-subject ones into
//! demonstration sentences.
//!
//! cargo run --example clauses [-- path/to/file.conllu]
use std::collections::HashSet;
use std::io::{BufReader, Cursor};

use charforge::clause::extract_clauses;
use charforge::conllu::parse_conllu;
use charforge::demo::synthesize;

const SAMPLE: &str = "# sent_id = 1
# text = Asha Verma won the vote in Delhi.
1\tAsha\tAsha\tPROPN\t_\t_\t2\tcompound\t_\t_
2\tVerma\tVerma\tPROPN\t_\t_\t3\tnsubj\t_\t_
3\twon\twin\tVERB\t_\t_\t0\troot\t_\t_
4\tthe\tthe\tDET\t_\t_\t5\tdet\t_\t_
5\tvote\tvote\tNOUN\t_\t_\t3\tobj\t_\t_
6\tin\tin\tADP\t_\t_\t7\tcase\t_\t_
7\tDelhi\tDelhi\tPROPN\t_\t_\t3\tobl\t_\t_
8\t.\t.\tPUNCT\t_\t_\t3\tpunct\t_\t_

# sent_id = 2
# text = Chen Wei is calm.
1\tChen\tChen\tPROPN\t_\t_\t2\tcompound\t_\t_
2\tWei\tWei\tPROPN\t_\t_\t4\tnsubj\t_\t_
3\tis\tbe\tAUX\t_\t_\t4\tcop\t_\t_
4\tcalm\tcalm\tADJ\t_\t_\t0\troot\t_\t_
5\t.\t.\tPUNCT\t_\t_\t4\tpunct\t_\t_

";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let outcome = match std::env::args().nth(1) {
        Some(path) => parse_conllu(BufReader::new(std::fs::File::open(path)?), "input")?,
        None => parse_conllu(Cursor::new(SAMPLE), "sample")?,
    };
    for d in &outcome.diagnostics {
        eprintln!("skipped: {d:?}");
    }
    let entities: HashSet<String> = ["Asha Verma", "Chen Wei"].iter().map(|s| s.to_string()).collect();
    for sentence in &outcome.sentences {
        println!("{}", sentence.text());
        for clause in extract_clauses(sentence) {
            println!("  {:<5} S={:?} V={} O={:?} C={:?} A={:?}",
                clause.clause_type.to_string(), clause.subject, clause.verb_lemma,
                clause.direct_object, clause.complement, clause.adverbials);
            match synthesize(&clause, &entities) {
                Ok(demo) => println!("        => {}", demo.sentence),
                Err(reason) => println!("        (no demonstration: {reason:?})"),
            }
        }
    }
    Ok(())
}
