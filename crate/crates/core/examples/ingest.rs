//! Load a JSONL article dump into a store, keeping one media house and the
//! default date range.
//!
//! cargo run --example ingest -- articles.jsonl house_a [store_dir]
use std::fs::File;
use std::io::BufReader;

use charforge::store::{parse_date, IngestFilter, Store};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/e2e/house_a/articles.jsonl");
    let input = args.next().unwrap_or_else(|| fixture.to_string());
    let house = args.next().unwrap_or_else(|| "house_a".to_string());
    let root = args.next().map(Into::into).unwrap_or_else(|| std::env::temp_dir().join("charforge-ingest-example"));

    let store = Store::open(root)?;
    let filter = IngestFilter::new(&house, parse_date("2015-01-01")?, parse_date("2021-12-31")?)?;
    let report = store.ingest(BufReader::new(File::open(&input)?), &filter)?;
    println!("retained {} of {} in {}", report.retained, report.manifest.article_count, store.root().display());
    for r in &report.rejects {
        println!("line {:>3} {:<8} {:?}", r.line, r.id.as_deref().unwrap_or("-"), r.reason);
    }
    Ok(())
}
