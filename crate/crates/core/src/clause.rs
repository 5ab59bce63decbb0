//! Clause detection over dependency parses.
//!
//! Every verbal head with a subject (its own, or one inherited from the left
//! conjunct) yields one clause. Parts are gathered from the head's
//! dependents and rendered as full subtree text. Both Universal Dependencies
//! labels and the older ClearNLP-style labels (`dobj`, `dative`, `attr`,
//! `prep`, ...) are understood.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::conllu::ParsedSentence;

/// Verbs that link the subject to a subject complement.
pub const COPULAR_VERBS: &[&str] = &[
    "be", "seem", "appear", "become", "remain", "feel", "look", "sound", "taste", "smell", "stay",
    "turn", "prove", "grow",
];

/// Verbs whose adverbial is obligatory (SVA / SVOA).
pub const ADVERBIAL_VERBS: &[&str] = &[
    "be", "live", "stay", "put", "place", "reside", "lie", "sit", "stand", "go", "come",
];

const RELATIVE_PRONOUNS: &[&str] = &["who", "whom", "which", "that"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClauseType {
    SV,
    SVA,
    SVC,
    SVO,
    SVOA,
    SVOC,
    SVOO,
}

impl ClauseType {
    pub const ALL: [ClauseType; 7] = [
        ClauseType::SV,
        ClauseType::SVA,
        ClauseType::SVC,
        ClauseType::SVO,
        ClauseType::SVOA,
        ClauseType::SVOC,
        ClauseType::SVOO,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClauseType::SV => "SV",
            ClauseType::SVA => "SVA",
            ClauseType::SVC => "SVC",
            ClauseType::SVO => "SVO",
            ClauseType::SVOA => "SVOA",
            ClauseType::SVOC => "SVOC",
            ClauseType::SVOO => "SVOO",
        }
    }
}

impl fmt::Display for ClauseType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClauseType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClauseType::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| format!("unknown clause type `{s}`"))
    }
}

/// One line of `clauses.jsonl`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub doc_id: String,
    pub sentence_index: usize,
    pub clause_type: ClauseType,
    pub subject: String,
    pub verb_lemma: String,
    pub indirect_object: Option<String>,
    pub direct_object: Option<String>,
    pub complement: Option<String>,
    pub adverbials: Vec<String>,
}

impl Clause {
    /// Check that the populated parts agree with the clause type.
    pub fn check(&self) -> Result<(), String> {
        if self.subject.trim().is_empty() {
            return Err("empty subject".into());
        }
        if self.verb_lemma.trim().is_empty() {
            return Err("empty verb".into());
        }
        let io = self.indirect_object.is_some();
        let dobj = self.direct_object.is_some();
        let c = self.complement.is_some();
        let a = !self.adverbials.is_empty();
        let ok = match self.clause_type {
            ClauseType::SVOO => io && dobj,
            ClauseType::SVOC => dobj && c,
            ClauseType::SVC => c && !io && !dobj,
            ClauseType::SVA => a && !io && !dobj && !c,
            ClauseType::SVOA => dobj && a,
            ClauseType::SVO => dobj,
            ClauseType::SV => !io && !dobj && !c,
        };
        if ok {
            Ok(())
        } else {
            Err(format!("parts inconsistent with type {}", self.clause_type))
        }
    }
}

/// A clause together with the token ids each part was rendered from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauseSpans {
    pub clause: Clause,
    pub verb: usize,
    pub subject: Vec<usize>,
    pub indirect_object: Option<Vec<usize>>,
    pub direct_object: Option<Vec<usize>>,
    pub complement: Option<Vec<usize>>,
    pub adverbials: Vec<Vec<usize>>,
}

impl ClauseSpans {
    pub fn all_part_tokens(&self) -> Vec<usize> {
        let mut out = self.subject.clone();
        out.push(self.verb);
        for part in [&self.indirect_object, &self.direct_object, &self.complement].into_iter().flatten() {
            out.extend(part);
        }
        for a in &self.adverbials {
            out.extend(a);
        }
        out
    }
}

#[derive(Debug, Default)]
pub struct Extraction {
    pub clauses: Vec<ClauseSpans>,
    /// Verbal heads that had no subject, by token id.
    pub subjectless: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Subject,
    Object,
    IndirectObject,
    Complement,
    Adverbial,
    Particle,
    Other,
}

fn base(deprel: &str) -> &str {
    deprel.split(':').next().unwrap_or(deprel)
}

fn role(deprel: &str) -> Role {
    let rel = deprel.to_ascii_lowercase();
    match rel.as_str() {
        "nmod:tmod" | "nmod:npmod" => return Role::Adverbial,
        "compound:prt" | "prt" => return Role::Particle,
        "nsubjpass" | "csubjpass" => return Role::Subject,
        _ => {}
    }
    match base(&rel) {
        "nsubj" | "csubj" => Role::Subject,
        "obj" | "dobj" => Role::Object,
        "iobj" | "dative" => Role::IndirectObject,
        "attr" | "acomp" | "oprd" | "xcomp" | "ccomp" => Role::Complement,
        "advmod" | "obl" | "npadvmod" | "prep" | "advcl" | "neg" | "agent" => Role::Adverbial,
        _ => Role::Other,
    }
}

fn is_clausal_complement(deprel: &str) -> bool {
    matches!(base(&deprel.to_ascii_lowercase()), "ccomp" | "xcomp")
}

fn lemma_of(sentence: &ParsedSentence, id: usize) -> String {
    let tok = sentence.token(id);
    let lemma = if tok.lemma.is_empty() || tok.lemma == "_" { &tok.form } else { &tok.lemma };
    lemma.to_lowercase()
}

fn has_child(sentence: &ParsedSentence, id: usize, rel: &str) -> Option<usize> {
    sentence
        .children(id)
        .into_iter()
        .find(|&c| base(&sentence.token(c).deprel.to_ascii_lowercase()) == rel)
}

#[derive(Debug, Clone, Copy)]
enum HeadKind {
    /// Lexical verb (or a main-verb auxiliary) heading its own clause.
    Verb,
    /// Non-verbal predicate with a copula child.
    Copular { cop: usize },
}

fn head_kind(sentence: &ParsedSentence, id: usize) -> Option<HeadKind> {
    let tok = sentence.token(id);
    let rel = tok.deprel.to_ascii_lowercase();
    if matches!(base(&rel), "aux" | "auxpass" | "cop") {
        return None;
    }
    if let Some(cop) = has_child(sentence, id, "cop") {
        return Some(HeadKind::Copular { cop });
    }
    match tok.upos.as_str() {
        "VERB" | "AUX" => Some(HeadKind::Verb),
        _ => None,
    }
}

fn is_relative_clause(deprel: &str) -> bool {
    let rel = deprel.to_ascii_lowercase();
    rel == "acl:relcl" || rel == "relcl"
}

fn is_relative_pronoun(sentence: &ParsedSentence, id: usize) -> bool {
    let tok = sentence.token(id);
    tok.feats.split('|').any(|f| f == "PronType=Rel")
        || (matches!(tok.upos.as_str(), "PRON" | "DET" | "SCONJ")
            && RELATIVE_PRONOUNS.contains(&tok.lemma.to_lowercase().as_str()))
}

fn subtract(mut ids: Vec<usize>, remove: &[usize]) -> Vec<usize> {
    ids.retain(|i| !remove.contains(i));
    ids
}

/// Drop leading and trailing punctuation tokens.
fn trim_punct(sentence: &ParsedSentence, mut ids: Vec<usize>) -> Vec<usize> {
    while ids.first().is_some_and(|&i| sentence.token(i).upos == "PUNCT") {
        ids.remove(0);
    }
    while ids.last().is_some_and(|&i| sentence.token(i).upos == "PUNCT") {
        ids.pop();
    }
    ids
}

/// Tokens of the dependent `child` of clause head `head`. A relative pronoun
/// inside a relative clause stands for the noun the clause modifies.
fn part_tokens(sentence: &ParsedSentence, head: usize, child: usize) -> Vec<usize> {
    let head_tok = sentence.token(head);
    if is_relative_clause(&head_tok.deprel) && head_tok.head != 0 && is_relative_pronoun(sentence, child) {
        return trim_punct(sentence, noun_phrase(sentence, head_tok.head, head));
    }
    trim_punct(sentence, sentence.subtree(child))
}

/// The noun modified by a relative clause, with its nominal dependents
/// only: clause-level dependents (when the noun is itself a predicate) and
/// the relative clause are left out.
fn noun_phrase(sentence: &ParsedSentence, noun: usize, relative: usize) -> Vec<usize> {
    let mut ids = vec![noun];
    for c in sentence.children(noun) {
        let rel = sentence.token(c).deprel.to_ascii_lowercase();
        let clausal = role(&rel) != Role::Other
            || matches!(base(&rel), "cop" | "aux" | "auxpass" | "mark" | "punct" | "cc" | "conj" | "parataxis" | "expl");
        if c != relative && !clausal {
            ids.extend(sentence.subtree(c));
        }
    }
    ids.sort_unstable();
    ids
}

fn subject_tokens(sentence: &ParsedSentence, id: usize, depth: usize) -> Option<Vec<usize>> {
    if depth > sentence.tokens.len() {
        return None;
    }
    let own = sentence
        .children(id)
        .into_iter()
        .find(|&c| role(&sentence.token(c).deprel) == Role::Subject);
    if let Some(s) = own {
        let ids = part_tokens(sentence, id, s);
        return (!ids.is_empty()).then_some(ids);
    }
    let tok = sentence.token(id);
    if base(&tok.deprel.to_ascii_lowercase()) == "conj" && tok.head != 0 && head_kind(sentence, tok.head).is_some() {
        return subject_tokens(sentence, tok.head, depth + 1);
    }
    None
}

/// Extract clauses with their token provenance, ordered by verb position.
pub fn extract(sentence: &ParsedSentence) -> Extraction {
    let mut out = Extraction::default();
    for id in 1..=sentence.tokens.len() {
        let Some(kind) = head_kind(sentence, id) else { continue };
        let Some(subject) = subject_tokens(sentence, id, 0) else {
            if matches!(kind, HeadKind::Copular { .. }) || sentence.token(id).upos == "VERB" {
                out.subjectless.push(id);
            }
            continue;
        };
        out.clauses.push(build_clause(sentence, id, kind, subject));
    }
    out.clauses.sort_by_key(|c| c.verb);
    for &v in &out.subjectless {
        log::debug!(
            "event=no_subject doc={} sentence={} verb=\"{}\"",
            sentence.doc_id,
            sentence.sentence_index,
            sentence.token(v).form
        );
    }
    out
}

/// Clauses of one sentence, ordered by verb position.
pub fn extract_clauses(sentence: &ParsedSentence) -> Vec<Clause> {
    extract(sentence).clauses.into_iter().map(|c| c.clause).collect()
}

fn build_clause(sentence: &ParsedSentence, head: usize, kind: HeadKind, subject: Vec<usize>) -> ClauseSpans {
    let verb = match kind {
        HeadKind::Verb => head,
        HeadKind::Copular { cop } => cop,
    };
    let mut lemma = lemma_of(sentence, verb);

    let mut objects = Vec::new();
    let mut indirect = Vec::new();
    let mut complements: Vec<(Vec<usize>, bool)> = Vec::new();
    let mut adverbials: Vec<Vec<usize>> = Vec::new();
    let mut excluded: Vec<usize> = Vec::new();
    let subject_child = sentence
        .children(head)
        .into_iter()
        .find(|&c| role(&sentence.token(c).deprel) == Role::Subject);

    for child in sentence.children(head) {
        let tok = sentence.token(child);
        let rel = tok.deprel.to_ascii_lowercase();
        let mut r = role(&rel);
        if Some(child) == subject_child {
            excluded.extend(sentence.subtree(child));
            continue;
        }
        if let HeadKind::Copular { cop } = kind {
            // Objects and complements of a non-verbal predicate belong to the
            // predicate, as do modifiers between the copula and the predicate
            // ("is not happy", "is very happy").
            let inside = cop < child && child < head;
            if matches!(r, Role::Object | Role::IndirectObject | Role::Complement) || (r == Role::Adverbial && inside) {
                r = Role::Other;
            }
            let drop = match r {
                Role::Other => {
                    matches!(
                        base(&rel),
                        "cop" | "aux" | "auxpass" | "punct" | "mark" | "parataxis" | "discourse" | "vocative" | "expl"
                    ) || (base(&rel) == "conj" && head_kind(sentence, child).is_some())
                }
                _ => true,
            };
            if drop {
                excluded.extend(sentence.subtree(child));
            }
        }
        match r {
            Role::Subject => excluded.extend(sentence.subtree(child)),
            Role::Object => objects.push(part_tokens(sentence, head, child)),
            Role::IndirectObject => indirect.push(part_tokens(sentence, head, child)),
            Role::Complement => complements.push((part_tokens(sentence, head, child), is_clausal_complement(&rel))),
            Role::Adverbial => adverbials.push(part_tokens(sentence, head, child)),
            Role::Particle => lemma = format!("{lemma} {}", lemma_of(sentence, child)),
            Role::Other => {}
        }
    }

    if let HeadKind::Copular { .. } = kind {
        let predicate = trim_punct(sentence, subtract(sentence.subtree(head), &excluded));
        let prepositional = has_child(sentence, head, "case").is_some_and(|c| c < head);
        if !predicate.is_empty() {
            if prepositional || sentence.token(head).upos == "ADV" {
                adverbials.push(predicate);
            } else {
                complements.insert(0, (predicate, false));
            }
        }
    }

    adverbials.retain(|a| !a.is_empty());
    adverbials.sort_by_key(|a| a[0]);
    let mut direct_object = objects.into_iter().find(|o| !o.is_empty());
    let mut indirect_object = indirect.into_iter().find(|o| !o.is_empty());
    let mut complement = complements.into_iter().find(|c| !c.0.is_empty());

    // A lone indirect object is the clause's only object.
    if direct_object.is_none() {
        direct_object = indirect_object.take();
    }
    // Non-copular verbs take clausal complements as objects.
    let head_word = lemma.split(' ').next().unwrap_or("");
    if direct_object.is_none()
        && !COPULAR_VERBS.contains(&head_word)
        && complement.as_ref().is_some_and(|c| c.1)
    {
        direct_object = complement.take().map(|c| c.0);
    }
    let complement = complement.map(|c| c.0);

    let adverbial_verb = ADVERBIAL_VERBS.contains(&head_word);
    let has_a = !adverbials.is_empty();
    let clause_type = match (&direct_object, &indirect_object, &complement) {
        (Some(_), Some(_), _) => ClauseType::SVOO,
        (Some(_), None, Some(_)) => ClauseType::SVOC,
        (Some(_), None, None) if adverbial_verb && has_a => ClauseType::SVOA,
        (Some(_), None, None) => ClauseType::SVO,
        (None, _, Some(_)) => ClauseType::SVC,
        (None, _, None) if adverbial_verb && has_a => ClauseType::SVA,
        (None, _, None) => ClauseType::SV,
    };

    let render = |ids: &Vec<usize>| sentence.render(ids);
    let clause = Clause {
        doc_id: sentence.doc_id.clone(),
        sentence_index: sentence.sentence_index,
        clause_type,
        subject: render(&subject),
        verb_lemma: lemma,
        indirect_object: indirect_object.as_ref().map(render),
        direct_object: direct_object.as_ref().map(render),
        complement: complement.as_ref().map(render),
        adverbials: adverbials.iter().map(render).collect(),
    };
    ClauseSpans {
        clause,
        verb,
        subject,
        indirect_object,
        direct_object,
        complement,
        adverbials,
    }
}

/// Count of clauses per type.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseHistogram {
    pub counts: BTreeMap<ClauseType, usize>,
}

impl ClauseHistogram {
    pub fn from_clauses<'a>(clauses: impl IntoIterator<Item = &'a Clause>) -> Self {
        let mut h = ClauseHistogram::default();
        for c in clauses {
            h.add(c.clause_type);
        }
        h
    }

    pub fn add(&mut self, t: ClauseType) {
        *self.counts.entry(t).or_default() += 1;
    }

    pub fn get(&self, t: ClauseType) -> usize {
        self.counts.get(&t).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Markdown table, one row per clause type in fixed order, then a total.
    pub fn render_markdown(&self, column: &str) -> String {
        let mut out = format!("| Clause Type | {column} |\n|---|---:|\n");
        for t in ClauseType::ALL {
            out.push_str(&format!("| {t} | {} |\n", thousands(self.get(t))));
        }
        out.push_str(&format!("| Total | {} |\n", thousands(self.total())));
        out
    }
}

pub(crate) fn thousands(n: usize) -> String {
    let digits = n.to_string();
    let mut out = String::new();
    for (i, ch) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(ch);
    }
    out
}
