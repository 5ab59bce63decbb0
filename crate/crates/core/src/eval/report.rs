use std::fmt::Write;

use super::{CorpusMetrics, MetricsReport, ReferenceCorpus};

pub const CSV_HEADER: &[&str] = &[
    "media_house",
    "manual_prompt",
    "distinct_generated_count",
    "pct_distinct_semantic_matches_ft1",
    "pct_distinct_semantic_matches_ft2",
    "avg_tp_sentiment_delta_ft1",
    "avg_tp_sentiment_delta_ft2",
    "f1_ft1",
    "f1_ft2",
    "precision_ft1",
    "precision_ft2",
    "recall_ft1",
    "recall_ft2",
];

/// Written for any ratio whose denominator is zero.
pub const UNDEFINED: &str = "NA";

pub const PCT_MATCHES_NOTE: &str = "% of distinct semantic matches = distinct generated sentences whose best \
reference match has cosine >= threshold, divided by the distinct generated count for that corpus.";

fn pct(v: Option<f64>) -> String {
    v.map_or_else(|| UNDEFINED.to_string(), |v| format!("{v:.2}"))
}

fn num(v: Option<f64>) -> String {
    v.map_or_else(|| UNDEFINED.to_string(), |v| format!("{v:.4}"))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn metric_cells(ft1: &CorpusMetrics, ft2: &CorpusMetrics) -> [String; 10] {
    [
        pct(ft1.pct_distinct_semantic_matches),
        pct(ft2.pct_distinct_semantic_matches),
        num(ft1.avg_tp_sentiment_delta),
        num(ft2.avg_tp_sentiment_delta),
        num(ft1.f1),
        num(ft2.f1),
        num(ft1.precision),
        num(ft2.precision),
        num(ft1.recall),
        num(ft2.recall),
    ]
}

pub fn render_csv(report: &MetricsReport) -> String {
    let mut out = CSV_HEADER.join(",");
    out.push('\n');
    for row in &report.rows {
        let mut cells = vec![
            csv_field(&row.media_house),
            csv_field(row.template.suffix()),
            row.distinct_generated.to_string(),
        ];
        cells.extend(metric_cells(&row.ft1, &row.ft2));
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Human-readable report: the metric table per media house, the raw
/// confusion counts, undefined-metric flags and the run configuration.
pub fn render_markdown(report: &MetricsReport, config_echo: &str) -> String {
    let mut out = String::from("# Characterization report\n\n");
    let _ = writeln!(out, "Similarity threshold: {}\n", report.threshold);
    let _ = writeln!(out, "{PCT_MATCHES_NOTE}\n");

    let mut houses: Vec<&str> = report.rows.iter().map(|r| r.media_house.as_str()).collect();
    houses.dedup();
    for house in houses {
        let _ = writeln!(out, "## {house}\n");
        out.push_str(
            "| Manual Prompt | Distinct Generated Sentences Count | % Matches FT1 | % Matches FT2 \
             | Avg TP Sentiment Diff FT1 | Avg TP Sentiment Diff FT2 | F1 FT1 | F1 FT2 \
             | Precision FT1 | Precision FT2 | Recall FT1 | Recall FT2 |\n",
        );
        out.push_str("|---|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|\n");
        let rows: Vec<_> = report.rows.iter().filter(|r| r.media_house == house).collect();
        for row in &rows {
            let _ = writeln!(
                out,
                "| {} | {} | {} |",
                row.template.suffix(),
                row.distinct_generated,
                metric_cells(&row.ft1, &row.ft2).join(" | ")
            );
        }
        out.push_str("\n| Manual Prompt | Corpus | Evaluated | Unevaluated | TP | FP | FN | TN |\n");
        out.push_str("|---|---|---:|---:|---:|---:|---:|---:|\n");
        for row in &rows {
            for c in ReferenceCorpus::ALL {
                let m = row.corpus(c);
                let _ = writeln!(
                    out,
                    "| {} | {c} | {} | {} | {} | {} | {} | {} |",
                    row.template.suffix(),
                    m.evaluated,
                    m.unevaluated,
                    m.tp,
                    m.fp,
                    m.fn_,
                    m.tn
                );
            }
        }
        out.push('\n');
    }

    let mut flags = Vec::new();
    for row in &report.rows {
        for c in ReferenceCorpus::ALL {
            let m = row.corpus(c);
            let undefined = m.undefined();
            if !undefined.is_empty() {
                flags.push(format!(
                    "- {} / {} / {c}: {} undefined (zero denominator)",
                    row.media_house,
                    row.template.suffix(),
                    undefined.join(", ")
                ));
            }
            if m.unevaluated > 0 {
                flags.push(format!(
                    "- {} / {} / {c}: {} generation(s) could not be evaluated",
                    row.media_house,
                    row.template.suffix(),
                    m.unevaluated
                ));
            }
        }
    }
    out.push_str("## Flags\n\n");
    if flags.is_empty() {
        out.push_str("None.\n");
    } else {
        out.push_str(&flags.join("\n"));
        out.push('\n');
    }

    out.push_str("\n## Configuration\n\n```toml\n");
    out.push_str(config_echo.trim_end());
    out.push_str("\n```\n");
    out
}
