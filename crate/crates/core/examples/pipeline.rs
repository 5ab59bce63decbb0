//! Run every stage on the bundled two-house fixture and print the report.
//!
//! cargo run --example pipeline [-- store_dir]
use charforge::{Pipeline, PipelineConfig, Step};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config_path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/e2e/config.toml");
    let mut config = PipelineConfig::load(config_path.as_ref())?;
    config.store = std::env::args()
        .nth(1)
        .map(Into::into)
        .unwrap_or_else(|| std::env::temp_dir().join("charforge-pipeline-example"));
    let pipeline = Pipeline::new(config)?;
    let report = pipeline.run(Step::Ingest)?;
    for row in &report.rows {
        let f = |v: Option<f64>| v.map_or("NA".to_string(), |x| format!("{x:.3}"));
        println!(
            "{:<8} {:<13} n={:<3} F1 ft1={} ft2={}",
            row.media_house,
            row.template.short_name(),
            row.distinct_generated,
            f(row.ft1.f1),
            f(row.ft2.f1)
        );
    }
    println!("\n{}", pipeline.store.root().join("report.md").display());
    Ok(())
}
