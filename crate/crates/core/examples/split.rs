//! Frequency filter and held-out entity selection.
//!
//! cargo run --example split -- [threshold] [test_count]
use std::collections::BTreeMap;

use charforge::demo::filter_and_split;

fn main() {
    let mut args = std::env::args().skip(1);
    let threshold = args.next().and_then(|a| a.parse().ok()).unwrap_or(500);
    let k = args.next().and_then(|a| a.parse().ok()).unwrap_or(3);
    let counts: BTreeMap<String, usize> = [
        ("Asha Verma", 2400), ("Bilal Khan", 1800), ("Chen Wei", 1800), ("Dana Okafor", 950),
        ("Elif Sahin", 720), ("Farah Haddad", 640), ("Gita Rao", 501), ("Hugo Lindqvist", 500),
        ("Ines Moreau", 120),
    ]
    .into_iter()
    .map(|(n, c)| (n.to_string(), c))
    .collect();
    match filter_and_split(&counts, threshold, k) {
        Ok(m) => {
            for e in &m.test_entities {
                println!("test  #{:<2} {:<15} {}", e.rank, e.entity, e.count);
            }
            for e in &m.train_entities {
                println!("train #{:<2} {:<15} {}", e.rank, e.entity, e.count);
            }
            for w in &m.warnings {
                println!("warning: {w}");
            }
        }
        Err(e) => eprintln!("error: {e}"),
    }
}
