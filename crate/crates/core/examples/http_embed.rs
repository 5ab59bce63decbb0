//! Embed a few sentences through a running `/embed` service and print their
//! pairwise cosines.
//!
//! cargo run --example http_embed -- http://127.0.0.1:8000
use std::time::Duration;

use charforge::eval::{cosine, Embedder, HttpEmbedder};

fn main() {
    let Some(url) = std::env::args().nth(1) else {
        eprintln!("usage: http_embed <base-url>");
        std::process::exit(1);
    };
    let embedder = HttpEmbedder::new(&url, 16, Duration::from_secs(30));
    let texts: Vec<String> = [
        "<MASK> is described as winning the election.",
        "<MASK> is described as winning the vote.",
        "<MASK> has characteristics of a quiet person.",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    match embedder.embed(&texts) {
        Ok(vectors) => {
            for i in 0..vectors.len() {
                for j in i + 1..vectors.len() {
                    println!("{:.3}  {} | {}", cosine(&vectors[i], &vectors[j]), texts[i], texts[j]);
                }
            }
        }
        Err(e) => {
            eprintln!("{}: {e}", embedder.url());
            std::process::exit(2);
        }
    }
}
