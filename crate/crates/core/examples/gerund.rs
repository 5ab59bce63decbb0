//! Inflect verb lemmas into their "-ing" forms.
//!
//! cargo run --example gerund -- lie panic benefit
use charforge::gerund::{gerund, gerund_phrase};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let verbs: Vec<&str> = if args.is_empty() {
        vec!["show", "say", "claim", "win", "come", "lie", "panic", "visit", "be"]
    } else {
        args.iter().map(String::as_str).collect()
    };
    for v in verbs {
        match gerund(v) {
            Ok(g) => println!("{v:>10} -> {g}"),
            Err(e) => println!("{v:>10} !! {e}"),
        }
    }
    println!("phrasal: {}", gerund_phrase("give up").unwrap());
}
