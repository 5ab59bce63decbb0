use std::collections::HashMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::text;

const BUILTIN: &str = include_str!("../../data/sentiment_lexicon.tsv");

/// Word valences in [-1, 1]. A sentence scores the sum of its word
/// valences divided by its word count, clamped to [-1, 1].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Lexicon {
    valence: HashMap<String, f64>,
}

impl Lexicon {
    /// Parse `word<TAB>valence` lines; `#` starts a comment line.
    pub fn parse(src: &str) -> std::result::Result<Self, String> {
        let mut valence = HashMap::new();
        for (n, line) in src.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (word, value) = line
                .split_once('\t')
                .ok_or_else(|| format!("line {}: expected word<TAB>valence", n + 1))?;
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| format!("line {}: bad valence `{}`", n + 1, value.trim()))?;
            if !value.is_finite() {
                return Err(format!("line {}: valence must be finite", n + 1));
            }
            valence.insert(word.trim().to_lowercase(), value);
        }
        Ok(Lexicon { valence })
    }

    pub fn builtin() -> Self {
        Lexicon::parse(BUILTIN).expect("bundled lexicon parses")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let src = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Lexicon::parse(&src).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn len(&self) -> usize {
        self.valence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.valence.is_empty()
    }

    pub fn score(&self, sentence: &str) -> f64 {
        let mut total = 0.0;
        let mut n = 0usize;
        for w in text::word_tokens(sentence) {
            n += 1;
            total += self.valence.get(&w.to_lowercase()).copied().unwrap_or(0.0);
        }
        if n == 0 {
            return 0.0;
        }
        (total / n as f64).clamp(-1.0, 1.0)
    }

    pub fn delta(&self, a: &str, b: &str) -> f64 {
        (self.score(a) - self.score(b)).abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scores_average_over_tokens() {
        let lex = Lexicon::parse("good\t0.5\nbad\t-1\n").unwrap();
        assert_eq!(lex.score("good day"), 0.25);
        assert_eq!(lex.score("Bad, bad!"), -1.0);
        assert_eq!(lex.score(""), 0.0);
        assert_eq!(lex.delta("good day", "bad day"), 0.75);
    }

    #[test]
    fn clamps_out_of_range_valences() {
        let lex = Lexicon::parse("great\t4\n").unwrap();
        assert_eq!(lex.score("great"), 1.0);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(Lexicon::parse("good 0.5").is_err());
        assert!(Lexicon::parse("good\tlots").is_err());
    }

    #[test]
    fn builtin_loads() {
        let lex = Lexicon::builtin();
        assert!(lex.len() > 100);
        assert!(lex.score("a brilliant win") > 0.0);
        assert!(lex.score("a corrupt fraud") < 0.0);
    }
}
