//! CoNLL-U reader with structural validation.
//!
//! Only the columns the clause extractor needs are kept. Multiword-token
//! ranges (`3-4`) and empty nodes (`5.1`) are skipped. A block that fails
//! validation is dropped with a positional diagnostic and reading continues.

use std::fmt;
use std::io::BufRead;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub form: String,
    pub lemma: String,
    pub upos: String,
    pub feats: String,
    /// 1-based index of the head token; 0 for the root.
    pub head: usize,
    pub deprel: String,
    pub space_after: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParsedSentence {
    pub doc_id: String,
    pub sentence_index: usize,
    pub tokens: Vec<Token>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    /// 1-based line number where the offending block starts.
    pub line: usize,
    pub sentence_index: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {} (sentence {}): {}", self.line, self.sentence_index, self.message)
    }
}

#[derive(Debug, Default)]
pub struct ParseOutcome {
    pub sentences: Vec<ParsedSentence>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ParsedSentence {
    /// Token by 1-based id.
    pub fn token(&self, id: usize) -> &Token {
        &self.tokens[id - 1]
    }

    pub fn root(&self) -> Option<usize> {
        self.tokens.iter().position(|t| t.head == 0).map(|i| i + 1)
    }

    /// Dependents of token `id` (1-based), in surface order.
    pub fn children(&self, id: usize) -> Vec<usize> {
        (1..=self.tokens.len())
            .filter(|&i| self.tokens[i - 1].head == id)
            .collect()
    }

    /// Token ids of the subtree rooted at `id`, sorted.
    pub fn subtree(&self, id: usize) -> Vec<usize> {
        let mut out = vec![id];
        let mut stack = vec![id];
        while let Some(n) = stack.pop() {
            for c in self.children(n) {
                out.push(c);
                stack.push(c);
            }
        }
        out.sort_unstable();
        out
    }

    /// Surface text of a sorted token-id list, honouring `SpaceAfter=No`.
    pub fn render(&self, ids: &[usize]) -> String {
        let mut out = String::new();
        for (k, &id) in ids.iter().enumerate() {
            let tok = self.token(id);
            out.push_str(&tok.form);
            if k + 1 < ids.len() && tok.space_after {
                out.push(' ');
            }
        }
        out
    }

    pub fn text(&self) -> String {
        let all: Vec<usize> = (1..=self.tokens.len()).collect();
        self.render(&all)
    }

    /// Exactly one root, heads in range, no cycles.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.tokens.len();
        if n == 0 {
            return Err("empty sentence".into());
        }
        let roots = self.tokens.iter().filter(|t| t.head == 0).count();
        if roots != 1 {
            return Err(format!("expected exactly one root, found {roots}"));
        }
        for (i, t) in self.tokens.iter().enumerate() {
            if t.head > n {
                return Err(format!("token {} has head {} out of range 0..={n}", i + 1, t.head));
            }
            if t.head == i + 1 {
                return Err(format!("token {} is its own head", i + 1));
            }
        }
        for start in 1..=n {
            let mut cur = start;
            let mut steps = 0;
            while cur != 0 {
                cur = self.tokens[cur - 1].head;
                steps += 1;
                if steps > n {
                    return Err(format!("cycle through token {start}"));
                }
            }
        }
        Ok(())
    }
}

fn parse_token_line(line: &str, expected_id: usize) -> Result<Option<Token>, String> {
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 10 {
        return Err(format!("expected 10 tab-separated columns, found {}", cols.len()));
    }
    let id = cols[0];
    if id.contains('-') || id.contains('.') {
        return Ok(None);
    }
    let id: usize = id.parse().map_err(|_| format!("bad token id `{id}`"))?;
    if id != expected_id {
        return Err(format!("token id {id} out of sequence, expected {expected_id}"));
    }
    let head: usize = cols[6]
        .parse()
        .map_err(|_| format!("bad head `{}` on token {id}", cols[6]))?;
    let space_after = !cols[9].split('|').any(|kv| kv == "SpaceAfter=No");
    let lemma = if cols[2] == "_" && cols[1] != "_" { cols[1] } else { cols[2] };
    Ok(Some(Token {
        form: cols[1].to_string(),
        lemma: lemma.to_string(),
        upos: cols[3].to_string(),
        feats: cols[5].to_string(),
        head,
        deprel: cols[7].to_string(),
        space_after,
    }))
}

struct Block {
    start_line: usize,
    lines: Vec<(usize, String)>,
}

/// Parse CoNLL-U from a reader. `default_doc_id` is used unless the file
/// carries a `# newdoc id = ...` comment. Sentence indices count blocks from
/// 0 in file order, including skipped blocks, so they stay aligned with the
/// sentence segmentation the file was produced from.
pub fn parse_conllu(reader: impl BufRead, default_doc_id: &str) -> std::io::Result<ParseOutcome> {
    let mut outcome = ParseOutcome::default();
    let mut doc_id = default_doc_id.to_string();
    let mut block: Option<Block> = None;
    let mut index = 0;

    let finish = |block: Block, doc_id: &str, index: &mut usize, outcome: &mut ParseOutcome| {
        let sentence_index = *index;
        *index += 1;
        let mut tokens = Vec::new();
        for (line_no, line) in &block.lines {
            match parse_token_line(line, tokens.len() + 1) {
                Ok(Some(tok)) => tokens.push(tok),
                Ok(None) => {}
                Err(message) => {
                    outcome.diagnostics.push(Diagnostic {
                        line: *line_no,
                        sentence_index,
                        message,
                    });
                    return;
                }
            }
        }
        let sentence = ParsedSentence {
            doc_id: doc_id.to_string(),
            sentence_index,
            tokens,
        };
        match sentence.validate() {
            Ok(()) => outcome.sentences.push(sentence),
            Err(message) => outcome.diagnostics.push(Diagnostic {
                line: block.start_line,
                sentence_index,
                message,
            }),
        }
    };

    for (n, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = n + 1;
        let trimmed = line.trim_end_matches('\r');
        if trimmed.trim().is_empty() {
            if let Some(b) = block.take() {
                finish(b, &doc_id, &mut index, &mut outcome);
            }
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if let Some(id) = comment.trim().strip_prefix("newdoc id =") {
                doc_id = id.trim().to_string();
            }
            block.get_or_insert(Block {
                start_line: line_no,
                lines: Vec::new(),
            });
            continue;
        }
        block
            .get_or_insert(Block {
                start_line: line_no,
                lines: Vec::new(),
            })
            .lines
            .push((line_no, trimmed.to_string()));
    }
    if let Some(b) = block.take() {
        finish(b, &doc_id, &mut index, &mut outcome);
    }
    for d in &outcome.diagnostics {
        log::warn!("event=skip_conllu_block doc={doc_id} {d}");
    }
    Ok(outcome)
}

/// Write sentences back out as CoNLL-U (columns not kept are `_`).
pub fn to_conllu(sentences: &[ParsedSentence]) -> String {
    let mut out = String::new();
    for s in sentences {
        out.push_str(&format!("# text = {}\n", s.text()));
        for (i, t) in s.tokens.iter().enumerate() {
            let misc = if t.space_after { "_" } else { "SpaceAfter=No" };
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t_\t{}\t{}\t{}\t_\t{}\n",
                i + 1,
                t.form,
                t.lemma,
                t.upos,
                t.feats,
                t.head,
                t.deprel,
                misc
            ));
        }
        out.push('\n');
    }
    out
}
