use std::ops::Range;

use charforge::resolve::resolve_partial_names;
use proptest::prelude::*;

const NAMES: [&str; 6] = ["John Smith", "Jane Smith", "Ravi Kumar", "Anil Kumar", "Mary Jones", "Lena Park"];
const FILLER: [&str; 8] = ["met", "the", "press", "today", "and", "left", "quietly", "again"];

#[derive(Debug, Clone)]
enum Item {
    Full(usize),
    Partial { name: usize, last: bool, lower: bool },
    Word(usize),
}

fn item() -> impl Strategy<Value = Item> {
    prop_oneof![
        2 => (0..NAMES.len()).prop_map(Item::Full),
        3 => (0..NAMES.len(), any::<bool>(), prop::bool::weighted(0.2))
            .prop_map(|(name, last, lower)| Item::Partial { name, last, lower }),
        4 => (0..FILLER.len()).prop_map(Item::Word),
    ]
}

fn document() -> impl Strategy<Value = Vec<Vec<Item>>> {
    prop::collection::vec(prop::collection::vec(item(), 1..8), 1..8)
}

struct Built {
    text: String,
    persons: Vec<Range<usize>>,
    expected: String,
    /// (full name, byte offset in `expected`) of each rewritten partial.
    rewrites: Vec<(String, usize)>,
}

fn surface(item: &Item) -> (String, bool) {
    match *item {
        Item::Full(i) => (NAMES[i].to_string(), true),
        Item::Partial { name, last, lower } => {
            let parts: Vec<&str> = NAMES[name].split(' ').collect();
            let t = if last { parts[1] } else { parts[0] };
            (if lower { t.to_lowercase() } else { t.to_string() }, true)
        }
        Item::Word(i) => (FILLER[i].to_string(), false),
    }
}

/// Straightforward left-to-right rewrite: a lone name token takes the
/// nearest preceding full name sharing its first or last token.
fn build(doc: &[Vec<Item>]) -> Built {
    let mut text = String::new();
    let mut expected = String::new();
    let mut persons = Vec::new();
    let mut seen: Vec<String> = Vec::new();
    let mut rewrites = Vec::new();
    for (si, sentence) in doc.iter().enumerate() {
        if si > 0 {
            text.push(' ');
            expected.push(' ');
        }
        for (wi, it) in sentence.iter().enumerate() {
            if wi > 0 {
                text.push(' ');
                expected.push(' ');
            }
            let (s, is_person) = surface(it);
            if is_person {
                persons.push(text.len()..text.len() + s.len());
            }
            text.push_str(&s);
            match it {
                Item::Full(i) => {
                    seen.push(NAMES[*i].to_string());
                    expected.push_str(&s);
                }
                Item::Partial { .. } => {
                    let target = seen.iter().rev().find(|full| {
                        let parts: Vec<&str> = full.split(' ').collect();
                        parts[0].eq_ignore_ascii_case(&s) || parts[1].eq_ignore_ascii_case(&s)
                    });
                    match target.cloned() {
                        Some(full) => {
                            rewrites.push((full.clone(), expected.len()));
                            expected.push_str(&full);
                            seen.push(full);
                        }
                        None => expected.push_str(&s),
                    }
                }
                Item::Word(_) => expected.push_str(&s),
            }
        }
        text.push('.');
        expected.push('.');
    }
    Built { text, persons, expected, rewrites }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn matches_left_to_right_oracle(doc in document()) {
        let b = build(&doc);
        let (out, _) = resolve_partial_names("d", &b.text, &b.persons);
        prop_assert_eq!(&out.text, &b.expected);
        for m in &out.entity_mentions {
            prop_assert!(m.full_name.split(' ').count() >= 2);
            let span = &out.text[m.span[0]..m.span[1]];
            prop_assert_eq!(span, m.full_name.as_str());
        }
    }

    #[test]
    fn idempotent(doc in document()) {
        let b = build(&doc);
        let (once, unresolved) = resolve_partial_names("d", &b.text, &b.persons);
        let mut spans: Vec<Range<usize>> = once.entity_mentions.iter().map(|m| m.span[0]..m.span[1]).collect();
        spans.extend(unresolved.iter().map(|u| u.span[0]..u.span[1]));
        let (twice, _) = resolve_partial_names("d", &once.text, &spans);
        prop_assert_eq!(&twice.text, &once.text);
        prop_assert_eq!(&twice.entity_mentions, &once.entity_mentions);
        prop_assert!(twice.alias_map.is_empty());
    }

    #[test]
    fn aliases_are_sound(doc in document()) {
        let b = build(&doc);
        let (out, _) = resolve_partial_names("d", &b.text, &b.persons);
        for alias in &out.alias_map {
            let parts: Vec<&str> = alias.full_name.split(' ').collect();
            prop_assert!(
                parts[0].eq_ignore_ascii_case(&alias.partial) || parts[parts.len() - 1].eq_ignore_ascii_case(&alias.partial),
                "{:?}", alias
            );
            let first_rewrite = b.rewrites.iter().filter(|(f, _)| *f == alias.full_name).map(|(_, at)| *at).min();
            let first_rewrite = first_rewrite.expect("alias has a rewrite");
            let first_verbatim = out.text.find(alias.full_name.as_str()).unwrap();
            prop_assert!(first_verbatim < first_rewrite);
        }
    }
}
