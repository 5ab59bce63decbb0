//! Random projective dependency parses for fuzzing the clause extractor.
//!
//! Trees are grown top-down and linearised so that every subtree covers a
//! contiguous token range. Labels mix Universal Dependencies and the older
//! ClearNLP-style scheme.

use charforge::conllu::{ParsedSentence, Token};
use rand::seq::IndexedRandom;
use rand::Rng;

pub const PEOPLE: [&str; 8] = [
    "Asha Verma", "Bilal Khan", "Chen Wei", "Dana Okafor", "Emil Novak", "Farah Haddad", "Gita Rao", "Hugo Berg",
];

const VERBS: [&str; 40] = [
    "win", "say", "show", "claim", "chart", "come", "run", "see", "die", "lie", "picnic", "begin", "visit", "fix",
    "quit", "hoe", "panic", "travel", "refer", "occur", "tie", "agree", "make", "give", "put", "go", "live", "meet",
    "admit", "control", "open", "offer", "argue", "dye", "flee", "canoe", "stop", "plan", "prefer", "set",
];
const PARTICLES: [&str; 4] = ["up", "off", "out", "down"];
const NOUNS: [&str; 10] = ["election", "budget", "crowd", "plan", "city", "court", "deal", "voters", "party", "law"];
const ADJS: [&str; 8] = ["happy", "calm", "angry", "popular", "large", "new", "corrupt", "ready"];
const DETS: [&str; 3] = ["the", "a", "this"];
const PREPS: [&str; 5] = ["in", "on", "at", "with", "for"];
const ADVS: [&str; 4] = ["today", "quickly", "again", "never"];
const COPULAS: [(&str, &str); 4] = [("is", "be"), ("seems", "seem"), ("became", "become"), ("remained", "remain")];

#[derive(Debug, Clone)]
struct Node {
    form: String,
    lemma: String,
    upos: &'static str,
    deprel: String,
    feats: &'static str,
    left: Vec<Node>,
    right: Vec<Node>,
}

fn node(form: &str, lemma: &str, upos: &'static str, deprel: &str) -> Node {
    Node {
        form: form.to_string(),
        lemma: lemma.to_string(),
        upos,
        deprel: deprel.to_string(),
        feats: "_",
        left: Vec::new(),
        right: Vec::new(),
    }
}

pub struct ParseGen<R: Rng> {
    rng: R,
    clearnlp: bool,
}

impl<R: Rng> ParseGen<R> {
    pub fn new(rng: R) -> Self {
        ParseGen { rng, clearnlp: false }
    }

    fn pick<'a>(&mut self, xs: &'a [&'a str]) -> &'a str {
        xs.choose(&mut self.rng).unwrap()
    }

    fn chance(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    fn rel(&self, ud: &str, clear: &str) -> String {
        if self.clearnlp { clear.to_string() } else { ud.to_string() }
    }

    fn person(&mut self, deprel: &str) -> Node {
        let name = *PEOPLE.choose(&mut self.rng).unwrap();
        let (first, last) = name.split_once(' ').unwrap();
        if self.clearnlp {
            // ClearNLP heads names on the last token.
            let mut head = node(last, last, "PROPN", deprel);
            head.left.push(node(first, first, "PROPN", "compound"));
            head
        } else {
            let mut head = node(first, first, "PROPN", deprel);
            head.right.push(node(last, last, "PROPN", "flat"));
            head
        }
    }

    fn noun_phrase(&mut self, deprel: &str, depth: usize) -> Node {
        let w = self.pick(&NOUNS);
        let mut n = node(w, w, "NOUN", deprel);
        if self.chance(0.7) {
            let d = self.pick(&DETS);
            n.left.push(node(d, d, "DET", "det"));
        }
        if self.chance(0.3) {
            let a = self.pick(&ADJS);
            n.left.push(node(a, a, "ADJ", "amod"));
        }
        if depth < 2 && self.chance(0.25) {
            let p = self.pick(&PREPS);
            let mut inner = self.noun_phrase("nmod", depth + 1);
            inner.left.insert(0, node(p, p, "ADP", "case"));
            n.right.push(inner);
        }
        if depth < 2 && self.chance(0.15) {
            let mut rel = self.verb_clause(self.rel("acl:relcl", "relcl").as_str(), depth + 1, Subject::Relative);
            rel.right.clear();
            n.right.push(rel);
        }
        n
    }

    fn subject(&mut self, depth: usize) -> Node {
        let rel = if self.chance(0.1) { "nsubj:pass" } else { "nsubj" };
        let rel = if self.clearnlp && rel == "nsubj:pass" { "nsubjpass" } else { rel };
        match self.rng.random_range(0..10) {
            0..=5 => self.person(rel),
            6 => node("She", "she", "PRON", rel),
            _ => self.noun_phrase(rel, depth + 1),
        }
    }

    fn prep_phrase(&mut self, depth: usize) -> Node {
        let p = self.pick(&PREPS);
        if self.clearnlp {
            let mut head = node(p, p, "ADP", "prep");
            head.right.push(self.noun_phrase("pobj", depth + 1));
            head
        } else {
            let mut np = self.noun_phrase("obl", depth + 1);
            np.left.insert(0, node(p, p, "ADP", "case"));
            np
        }
    }

    fn verb_clause(&mut self, deprel: &str, depth: usize, subject: Subject) -> Node {
        let lemma = self.pick(&VERBS);
        let mut v = node(lemma, lemma, "VERB", deprel);
        match subject {
            Subject::Own => {
                let s = self.subject(depth);
                v.left.push(s);
            }
            Subject::Relative => {
                let mut who = node("who", "who", "PRON", "nsubj");
                who.feats = "PronType=Rel";
                v.left.push(who);
            }
            Subject::None => {}
        }
        if self.chance(0.2) {
            v.left.push(node("will", "will", "AUX", "aux"));
        }
        if self.chance(0.08) {
            v.left.push(node("not", "not", "PART", &self.rel("advmod", "neg")));
        }
        if self.chance(0.15) {
            let p = self.pick(&PARTICLES);
            v.right.push(node(p, p, "ADP", &self.rel("compound:prt", "prt")));
        }
        if self.chance(0.2) {
            let rel = self.rel("iobj", "dative");
            let io = if self.chance(0.5) { self.person(&rel) } else { self.noun_phrase(&rel, depth + 1) };
            v.right.push(io);
        }
        if self.chance(0.55) {
            let rel = self.rel("obj", "dobj");
            let o = if self.chance(0.3) { self.person(&rel) } else { self.noun_phrase(&rel, depth + 1) };
            v.right.push(o);
        }
        if self.chance(0.12) {
            let a = self.pick(&ADJS);
            v.right.push(node(a, a, "ADJ", &self.rel("xcomp", "oprd")));
        }
        if depth < 2 && self.chance(0.1) {
            let mut c = self.verb_clause("ccomp", depth + 1, Subject::Own);
            c.left.insert(0, node("that", "that", "SCONJ", "mark"));
            v.right.push(c);
        }
        for _ in 0..self.rng.random_range(0..3) {
            if self.chance(0.6) {
                let pp = self.prep_phrase(depth);
                v.right.push(pp);
            } else {
                let a = self.pick(&ADVS);
                v.right.push(node(a, a, "ADV", "advmod"));
            }
        }
        if depth < 2 && self.chance(0.15) {
            let own = if self.chance(0.5) { Subject::Own } else { Subject::None };
            let mut c = self.verb_clause("conj", depth + 1, own);
            c.left.insert(0, node("and", "and", "CCONJ", "cc"));
            v.right.push(c);
        }
        v
    }

    fn copular_clause(&mut self, deprel: &str, depth: usize) -> Node {
        let (form, lemma) = *COPULAS.choose(&mut self.rng).unwrap();
        let mut head = if self.chance(0.6) {
            let a = self.pick(&ADJS);
            node(a, a, "ADJ", deprel)
        } else {
            self.noun_phrase(deprel, depth + 1)
        };
        let s = self.subject(depth);
        head.left.insert(0, node(form, lemma, "AUX", "cop"));
        head.left.insert(0, s);
        if self.chance(0.3) {
            let pp = self.prep_phrase(depth);
            head.right.push(pp);
        }
        head
    }

    /// One random sentence, already validated.
    pub fn sentence(&mut self, doc_id: &str, index: usize) -> ParsedSentence {
        self.clearnlp = self.chance(0.3);
        let mut root = if self.chance(0.8) {
            let subj = if self.chance(0.92) { Subject::Own } else { Subject::None };
            self.verb_clause("root", 0, subj)
        } else {
            self.copular_clause("root", 0)
        };
        root.right.push(node(".", ".", "PUNCT", "punct"));
        let mut tokens = Vec::new();
        linearise(&root, 0, &mut tokens);
        let n = tokens.len();
        if let Some(last) = tokens.get_mut(n.wrapping_sub(2)) {
            last.space_after = false;
        }
        let s = ParsedSentence {
            doc_id: doc_id.to_string(),
            sentence_index: index,
            tokens,
        };
        s.validate().expect("generated parse is valid");
        s
    }
}

#[derive(Clone, Copy)]
enum Subject {
    Own,
    Relative,
    None,
}

/// Append `n`'s subtree; returns the 1-based id given to `n`.
fn linearise(n: &Node, head: usize, out: &mut Vec<Token>) -> usize {
    // Left subtrees, then the node, then right subtrees.
    let mut left_ids = Vec::new();
    for c in &n.left {
        left_ids.push(linearise(c, usize::MAX, out));
    }
    out.push(Token {
        form: n.form.clone(),
        lemma: n.lemma.clone(),
        upos: n.upos.to_string(),
        feats: n.feats.to_string(),
        head,
        deprel: n.deprel.clone(),
        space_after: true,
    });
    let me = out.len();
    for id in left_ids {
        out[id - 1].head = me;
    }
    for c in &n.right {
        linearise(c, me, out);
    }
    me
}
