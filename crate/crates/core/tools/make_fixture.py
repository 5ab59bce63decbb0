"""Builds the end-to-end fixture corpus and its expected outputs.

Articles are assembled from sentence templates whose dependency trees are
known, so the script can write the adapter outputs a parser and a
coreference model would produce (coref.jsonl, one .conllu file per
document) together with a generations replay file.

Everything under expected/ is computed here, independently of the Rust
code: resolved texts, demonstrations, the entity split, the fine-tuning
corpora and the final report.csv (including a re-implementation of the
hashed bag-of-words stub embedder).

Usage: python3 tools/make_fixture.py tests/fixtures/e2e
"""
import json
import math
import random
import re
import shutil
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
OUT = Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "tests" / "fixtures" / "e2e"

THRESHOLD = 5
TEST_ENTITIES = 3
COSINE = 0.6
FT1_MIN_TOKENS = 10
MAX_TOKENS = 30
SEED = 7
DIM = 512
MASK = "<MASK>"
TEMPLATES = [
    "is described as being",
    "is described as having characteristics",
    "is described as performing",
    "is described as stating",
]

PEOPLE = [
    ("Asha", "Verma", "She"), ("Bilal", "Khan", "He"), ("Chen", "Wei", "He"),
    ("Dana", "Okafor", "She"), ("Emil", "Novak", "He"), ("Farah", "Haddad", "She"),
    ("Gita", "Rao", "She"), ("Hugo", "Lindqvist", "He"), ("Ines", "Moreau", "She"),
    ("Jonas", "Berg", "He"), ("Kavya", "Menon", "She"), ("Luis", "Ortega", "He"),
]

# --- sentence templates -------------------------------------------------
# A template is a list of tokens (form, lemma, upos, head, deprel) where head
# is a 0-based index into the template list (0 for the root itself or the
# token at index 0). The subject is prepended by build().

def t_win(o):
    return ("win", [("won", "win", "VERB", 0, "root"), ("the", "the", "DET", 2, "det"), (o, o, "NOUN", 0, "obj")],
            f"winning the {o}")

def t_happy(a):
    return ("happy", [("is", "be", "AUX", 1, "cop"), (a, a, "ADJ", 0, "root")], f"being {a}")

def t_char(x):
    return ("char", [("has", "have", "VERB", 0, "root"), ("characteristics", "characteristic", "NOUN", 0, "obj"),
                     ("of", "of", "ADP", 4, "case"), ("a", "a", "DET", 4, "det"), (x, x, "NOUN", 1, "nmod")],
            f"having characteristics of a {x}")

def t_perform(o):
    return ("perform", [("performed", "perform", "VERB", 0, "root"), ("a", "a", "DET", 2, "det"), (o, o, "NOUN", 0, "obj")],
            f"performing a {o}")

def t_state(n, a):
    return ("state", [("stated", "state", "VERB", 0, "root"), ("that", "that", "SCONJ", 5, "mark"),
                      ("the", "the", "DET", 3, "det"), (n, n, "NOUN", 5, "nsubj"), ("was", "be", "AUX", 5, "cop"),
                      (a, a, "ADJ", 0, "ccomp")],
            f"stating that the {n} was {a}")

def t_come(x):
    return ("come", [("came", "come", "VERB", 0, "root"), ("in", "in", "ADP", 3, "case"), ("a", "a", "DET", 3, "det"),
                     (x, x, "NOUN", 0, "obl")],
            f"coming in a {x}")

def t_give(io, do):
    return ("give", [("gave", "give", "VERB", 0, "root"), ("the", "the", "DET", 2, "det"), (io, io, "NOUN", 0, "iobj"),
                     ("a", "a", "DET", 4, "det"), (do, do, "NOUN", 0, "obj")],
            f"giving the {io} a {do}")

def t_address(adj, noun, ofn, place, city, day):
    toks = [("addressed", "address", "VERB", 0, "root"), ("a", "a", "DET", 3, "det"), (adj, adj, "ADJ", 3, "amod"),
            (noun, noun, "NOUN", 0, "obj"), ("of", "of", "ADP", 5, "case"), (ofn, ofn, "NOUN", 3, "nmod"),
            ("at", "at", "ADP", 8, "case"), ("the", "the", "DET", 8, "det"), (place, place, "NOUN", 0, "obl"),
            ("in", "in", "ADP", 11, "case"), ("the", "the", "DET", 11, "det"), (city, city, "NOUN", 0, "obl"),
            ("on", "on", "ADP", 13, "case"), (day, day, "PROPN", 0, "obl")]
    return ("address", toks, f"addressing a {adj} {noun} of {ofn} at the {place}, in the {city}, on {day}")

WIN = ["election", "vote", "debate", "case", "award", "seat"]
HAPPY = ["happy", "calm", "angry", "popular", "confident", "tired", "honest", "corrupt"]
CHAR = ["leader", "fighter", "reformer", "diplomat"]
PERFORM = ["song", "dance", "speech", "ritual", "miracle"]
STATE = [("budget", "balanced"), ("plan", "ready"), ("economy", "strong"), ("deal", "fair")]
COME = ["uniform", "hurry", "car", "group"]
GIVE = [("farmers", "subsidy"), ("students", "lecture"), ("party", "warning")]
ADDRESS = [("large", "crowd", "supporters"), ("small", "group", "students"), ("huge", "gathering", "farmers")]
PLACES = [("stadium", "capital"), ("hall", "city"), ("square", "town")]
DAYS = ["Sunday", "Monday", "Friday"]
FILLERS = [
    [("The", "the", "DET", 2, "det"), ("rain", "rain", "NOUN", 3, "nsubj"), ("fell", "fall", "VERB", 0, "root")],
    [("The", "the", "DET", 2, "det"), ("markets", "market", "NOUN", 3, "nsubj"), ("opened", "open", "VERB", 0, "root"),
     ("late", "late", "ADV", 3, "advmod")],
    [("Traffic", "traffic", "NOUN", 2, "nsubj"), ("slowed", "slow", "VERB", 0, "root")],
]


def random_template(rng, kind):
    if kind == "win":
        return t_win(rng.choice(WIN))
    if kind == "happy":
        return t_happy(rng.choice(HAPPY))
    if kind == "char":
        return t_char(rng.choice(CHAR))
    if kind == "perform":
        return t_perform(rng.choice(PERFORM))
    if kind == "state":
        return t_state(*rng.choice(STATE))
    if kind == "come":
        return t_come(rng.choice(COME))
    if kind == "give":
        return t_give(*rng.choice(GIVE))
    a = rng.choice(ADDRESS)
    p = rng.choice(PLACES)
    return t_address(*a, *p, rng.choice(DAYS))

KINDS = ["win", "happy", "char", "perform", "state", "come", "give", "address"]

# --- text helpers mirroring the documented contracts --------------------

def word_tokens(s):
    out = []
    for w in s.split():
        w = re.sub(r"^[^0-9A-Za-z]+|[^0-9A-Za-z]+$", "", w)
        if w:
            out.append(w)
    return out

def replace_whole(text, needle, repl):
    return re.sub(r"(?<![0-9A-Za-z])" + re.escape(needle) + r"(?![0-9A-Za-z])", repl, text)

def first_sentence(raw):
    m = re.search(r"[.!?](\s|$)", raw)
    return raw[: m.start() + 1] if m else raw.rstrip()

# --- article generation ---------------------------------------------------

class Sentence:
    """One sentence: raw text pieces plus its resolved token rows."""

    def __init__(self):
        self.raw = ""          # raw sentence text
        self.resolved_rows = []  # conllu rows for the resolved text
        self.mentions = []     # (entity, raw_start, raw_end, kind) kind in full/partial/pronoun/unknown
        self.entities = []     # entities resolved in this sentence, in order
        self.subject = None    # resolved subject string
        self.demo = None       # demonstration tail (gerund phrase) when subject is an entity


def build(subjects, template_rows, with_period=True):
    """subjects: list of (raw_surface, resolved_words). Returns raw text,
    subject char spans in raw text, and conllu rows of the resolved text."""
    rows = []
    raw_parts = []
    spans = []
    pos = 0
    subj_first_ids = []
    for si, (surface, words) in enumerate(subjects):
        if si > 0:
            raw_parts.append("and")
            pos += 4
            rows.append(("and", "and", "CCONJ", None, "cc"))
        start = pos
        raw_parts.append(surface)
        pos += len(surface) + 1
        spans.append((start, start + len(surface)))
        first = len(rows) + 1
        subj_first_ids.append(first)
        for wi, w in enumerate(words):
            upos = "PRON" if w in ("He", "She") else "PROPN"
            if wi == 0:
                rows.append((w, w, upos, "VERB" if si == 0 else ("S0",), "nsubj" if si == 0 else "conj"))
            else:
                rows.append((w, w, upos, first, "flat"))
    # fix the cc token to attach to the second subject
    for i, r in enumerate(rows):
        if r[4] == "cc":
            rows[i] = (r[0], r[1], r[2], i + 2, "cc")
    offset = len(rows)
    verb_id = None
    for i, (form, lemma, upos, head, rel) in enumerate(template_rows, 1):
        if rel == "root":
            verb_id = offset + i
    if verb_id is None:
        raise ValueError("template without root")
    fixed = []
    for form, lemma, upos, head, rel in rows:
        if head == "VERB":
            head = verb_id
        elif head == ("S0",):
            head = subj_first_ids[0]
        fixed.append((form, lemma, upos, head, rel))
    for form, lemma, upos, head, rel in template_rows:
        if rel == "root":
            h = 0
        elif head == 0:
            h = verb_id
        else:
            h = offset + head + 1
        fixed.append((form, lemma, upos, h, rel))
    words = [r for r in template_rows]
    raw = " ".join(raw_parts + [w[0] for w in words])
    if with_period:
        raw += "."
        fixed.append((".", ".", "PUNCT", verb_id, "punct"))
    return raw, spans, fixed


def make_house(name, counts, rng, n_articles, date_base, drop_doc=None, no_coref_doc=None):
    people = PEOPLE[:]
    rng.shuffle(people)
    ents = [(f"{f} {l}", f, l, pr) for (f, l, pr) in people]
    slots = []
    for (full, f, l, pr), c in zip(ents, counts):
        for _ in range(c):
            slots.append(full)
    rng.shuffle(slots)
    chunks = [[] for _ in range(n_articles)]
    for i, s in enumerate(slots):
        chunks[i % n_articles].append(s)
    info = {full: (f, l, pr) for (full, f, l, pr) in ents}

    docs = []
    for ai, chunk in enumerate(chunks):
        doc_id = f"{name[-1]}-{ai + 1:03d}"
        sentences = []
        seen = set()
        order = chunk[:]
        # a two-subject sentence in every third article
        pair = None
        if ai % 3 == 0 and len(set(order)) >= 2:
            pair = sorted(set(order))[:2]
        entries = [("single", e) for e in order]
        if pair:
            entries.insert(min(2, len(entries)), ("pair", pair))
        if ai % 4 == 1:
            entries.insert(1, ("unknown", None))
        entries.insert(rng.randrange(len(entries) + 1), ("filler", None))

        for kind, payload in entries:
            s = Sentence()
            if kind == "filler":
                rows = rng.choice(FILLERS)
                s.raw = " ".join(r[0] for r in rows) + "."
                s.resolved_rows = list(rows) + [(".", ".", "PUNCT", [r[4] for r in rows].index("root") + 1, "punct")]
                s.subject = None
            elif kind == "unknown":
                rows = [("Smith", "Smith", "PROPN", 2, "nsubj"), ("arrived", "arrive", "VERB", 0, "root"),
                        (".", ".", "PUNCT", 2, "punct")]
                s.raw = "Smith arrived."
                s.resolved_rows = rows
                s.mentions.append((None, 0, 5, "unknown"))
                s.subject = "Smith"
            elif kind == "pair":
                subs = []
                for e in payload:
                    f, l, pr = info[e]
                    if e in seen and rng.random() < 0.5:
                        surface = rng.choice([f, l])
                        subs.append((surface, e, "partial"))
                    else:
                        subs.append((e, e, "full"))
                    seen.add(e)
                rng.random()
                toks = [("discussed", "discuss", "VERB", 0, "root"), ("the", "the", "DET", 2, "det"),
                        ("proposal", "proposal", "NOUN", 0, "obj"), ("with", "with", "ADP", 5, "case"),
                        ("senior", "senior", "ADJ", 5, "amod"), ("officials", "official", "NOUN", 0, "obl"),
                        ("for", "for", "ADP", 8, "case"), ("several", "several", "ADJ", 8, "amod"),
                        ("hours", "hour", "NOUN", 0, "obl")]
                raw, spans, rows = build([(sur, ent.split()) for sur, ent, _ in subs], toks)
                s.raw = raw
                s.resolved_rows = rows
                for (sur, ent, k), (a, b) in zip(subs, spans):
                    s.mentions.append((ent, a, b, k))
                s.subject = " and ".join(ent for _, ent, _ in subs)
            else:
                e = payload
                f, l, pr = info[e]
                if e not in seen:
                    form = "full"
                else:
                    form = rng.choices(["full", "partial", "pronoun"], [0.4, 0.3, 0.3])[0]
                seen.add(e)
                surface = {"full": e, "partial": rng.choice([f, l]), "pronoun": pr}[form]
                tkind = rng.choice(KINDS)
                _, toks, tail = random_template(rng, tkind)
                raw, spans, rows = build([(surface, e.split())], toks)
                s.raw = raw
                s.resolved_rows = rows
                s.mentions.append((e, spans[0][0], spans[0][1], form))
                s.subject = e
                s.demo = tail
            sentences.append(s)
        docs.append({"doc_id": doc_id, "sentences": sentences, "info": info})

    # assemble articles, coref, expectations
    articles, corefs, resolved = [], [], []
    for di, d in enumerate(docs):
        text = ""
        person = []
        clusters = {}
        first_full = {}
        offsets = []
        for s in d["sentences"]:
            if text:
                text += " "
            base = len(text)
            offsets.append(base)
            text += s.raw
            for ent, a, b, k in s.mentions:
                a, b = a + base, b + base
                if k in ("full", "partial", "unknown"):
                    person.append([a, b])
                if k == "full" and ent not in first_full:
                    first_full[ent] = [a, b]
                if k == "pronoun":
                    clusters.setdefault(ent, []).append([a, b])
        day = date_base + di
        articles.append({
            "id": d["doc_id"], "media_house": name, "url": f"https://news.example/{name}/{d['doc_id']}",
            "published_at": f"20{16 + day % 5}-{1 + day % 12:02d}-{1 + day % 28:02d}", "text": text,
        })
        cl = [{"representative": ent, "mentions": [first_full[ent]] + spans} for ent, spans in sorted(clusters.items())]
        rec = {"doc_id": d["doc_id"], "clusters": cl, "person_mentions": person}
        if d["doc_id"] == drop_doc:
            rec["clusters"].append({"representative": "Nobody", "mentions": [[len(text) + 5, len(text) + 9]]})
        if d["doc_id"] != no_coref_doc:
            corefs.append(rec)
        d["has_coref"] = d["doc_id"] != no_coref_doc
        d["dropped"] = d["doc_id"] == drop_doc

    # the resolved view of each document
    for d in docs:
        if d["dropped"]:
            continue
        rtext_parts = []
        sent_entities = []
        rows_per_sentence = []
        subjects = []
        for s in d["sentences"]:
            if d["has_coref"]:
                rows = s.resolved_rows
                ents = []
                for ent, _, _, k in s.mentions:
                    if ent and ent not in ents:
                        ents.append(ent)
                subject = s.subject
            else:
                # nothing replaced: surfaces stay, no entity mentions
                rows = []
                raw_tokens = s.raw[:-1].split(" ") if s.raw.endswith(".") else s.raw.split(" ")
                rows = rebuild_rows(s, raw_tokens)
                ents = []
                subject = raw_subject(s)
            rows_per_sentence.append(rows)
            rtext_parts.append(render_rows(rows))
            sent_entities.append(ents)
            subjects.append((subject, s.demo))
        d["resolved_text"] = " ".join(rtext_parts)
        d["resolved_sentences"] = rtext_parts
        d["sentence_entities"] = sent_entities
        d["rows"] = rows_per_sentence
        d["subjects"] = subjects
    return articles, corefs, docs


def raw_subject(s):
    if s.subject is None:
        return None
    surfaces = []
    text = s.raw
    for ent, a, b, k in s.mentions:
        surfaces.append(text[a:b])
    return " and ".join(surfaces) if len(surfaces) > 1 else surfaces[0]


def rebuild_rows(s, raw_tokens):
    """Rows for the unresolved sentence: the subject surfaces replace the
    resolved subject tokens."""
    rows = s.resolved_rows
    if s.subject is None or not s.mentions or s.mentions[0][3] == "unknown":
        return rows
    # split resolved rows into subject region and the rest
    out = []
    i = 0
    n_subj_tokens = sum(len(ent.split()) for ent, _, _, _ in s.mentions) + (len(s.mentions) - 1)
    subject_rows = rows[:n_subj_tokens]
    rest = rows[n_subj_tokens:]
    new_subject = []
    for mi, (ent, a, b, k) in enumerate(s.mentions):
        if mi > 0:
            new_subject.append(["and", "and", "CCONJ", None, "cc"])
        words = s.raw[a:b].split()
        for wi, w in enumerate(words):
            upos = "PRON" if w in ("He", "She") else "PROPN"
            new_subject.append([w, w, upos, None, ("nsubj" if mi == 0 else "conj") if wi == 0 else "flat"])
    shift = len(new_subject) - n_subj_tokens
    verb = [r[3] for r in subject_rows if r[4] == "nsubj"][0] + shift
    first_ids = []
    for idx, r in enumerate(new_subject, 1):
        if r[4] in ("nsubj", "conj"):
            first_ids.append(idx)
    cur_first = None
    for idx, r in enumerate(new_subject, 1):
        if r[4] == "nsubj":
            r[3] = verb
            cur_first = idx
        elif r[4] == "conj":
            r[3] = first_ids[0]
            cur_first = idx
        elif r[4] == "flat":
            r[3] = cur_first
        elif r[4] == "cc":
            r[3] = idx + 1
    for r in rest:
        h = r[3]
        out_h = 0 if h == 0 else (h + shift if h > n_subj_tokens else h)
        out.append((r[0], r[1], r[2], out_h, r[4]))
    return [tuple(r) for r in new_subject] + out


def render_rows(rows):
    s = ""
    for i, r in enumerate(rows):
        if r[0] == "." and i == len(rows) - 1:
            s += "."
        else:
            s += (" " if s else "") + r[0]
    return s


def conllu(doc_id, rows_per_sentence):
    lines = [f"# newdoc id = {doc_id}"]
    for si, rows in enumerate(rows_per_sentence):
        lines.append(f"# sent_id = {si + 1}")
        lines.append(f"# text = {render_rows(rows)}")
        for i, (form, lemma, upos, head, rel) in enumerate(rows, 1):
            misc = "SpaceAfter=No" if i < len(rows) and rows[i][0] == "." and i == len(rows) - 1 else "_"
            lines.append("\t".join([str(i), form, lemma, upos, "_", "_", str(head), rel, "_", misc]))
        lines.append("")
    return "\n".join(lines) + "\n"

# --- independent oracle for synth / split / evaluation ------------------

def demos_of(docs):
    entity_set = set()
    for d in docs:
        if d["dropped"]:
            continue
        for ents in d["sentence_entities"]:
            entity_set.update(ents)
    demos = []
    for d in sorted((d for d in docs if not d["dropped"]), key=lambda d: d["doc_id"]):
        for subject, tail in d["subjects"]:
            if tail is None or subject not in entity_set:
                continue
            demos.append((subject, f"{subject} is described as {tail}."))
    return demos


def split(demos):
    counts = {}
    for e, _ in demos:
        counts[e] = counts.get(e, 0) + 1
    kept = sorted(((e, c) for e, c in counts.items() if c > THRESHOLD), key=lambda x: (-x[1], x[0]))
    n = len(kept)
    assert n >= TEST_ENTITIES, f"only {n} entities kept"
    picks = {i * n // TEST_ENTITIES for i in range(TEST_ENTITIES)}
    test = [{"entity": e, "count": c, "rank": i + 1} for i, (e, c) in enumerate(kept) if i in picks]
    train = [{"entity": e, "count": c, "rank": i + 1} for i, (e, c) in enumerate(kept) if i not in picks]
    return test, train


def fnv(seed, parts):
    h = (0xCBF29CE484222325 ^ seed) & 0xFFFFFFFFFFFFFFFF
    for i, p in enumerate(parts):
        if i > 0:
            h ^= 0x1F
            h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
        for b in p.encode():
            h ^= b
            h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def embed(s):
    v = [0.0] * DIM
    words = [w.lower() for w in word_tokens(s)]
    for w in words:
        h = fnv(SEED, [w])
        v[h % DIM] += 1.0 if h >> 63 == 0 else -1.0
    for a, b in zip(words, words[1:]):
        h = fnv(SEED, [a, b])
        v[h % DIM] += 0.5 if h >> 63 == 0 else -0.5
    return v


def norm(v):
    """Squared norm; cosine takes one square root of the product."""
    return sum(x * x for x in v)


def cosine(a, na, b, nb):
    if na == 0 or nb == 0:
        return 0.0
    dot = 0.0
    for x, y in zip(a, b):
        dot += x * y
    return max(-1.0, min(1.0, dot / math.sqrt(na * nb)))


def load_lexicon():
    lex = {}
    for line in (ROOT / "data" / "sentiment_lexicon.tsv").read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        w, v = line.split("\t")
        lex[w.strip().lower()] = float(v)
    return lex


def score(lex, s):
    toks = word_tokens(s)
    if not toks:
        return 0.0
    total = 0.0
    for t in toks:
        total += lex.get(t.lower(), 0.0)
    return max(-1.0, min(1.0, total / len(toks)))


def evaluate(house, generated, ft1_refs, ft2_refs, lex):
    """Returns records (house, template, entity, first_sentence, corpus, quadrant, delta)."""
    out = []
    for corpus, refs in (("FT1", ft1_refs), ("FT2", ft2_refs)):
        vecs = [embed(r["embed"]) for r in refs]
        norms = [norm(v) for v in vecs]
        for g in generated:
            fs = g["first_sentence"]
            q = fs if corpus == "FT1" else replace_whole(fs, g["entity"], MASK)
            qv = embed(q)
            qn = norm(qv)
            scores = [cosine(qv, qn, v, n) for v, n in zip(vecs, norms)]
            bc = max(scores)
            tied = [i for i, c in enumerate(scores) if c == bc]
            named = [i for i in tied if g["entity"] in refs[i]["entities"]]
            best = (named or tied)[0]
            r = refs[best]
            credited = g["entity"] if g["entity"] in r["entities"] else r["entities"][0]
            sim = bc >= COSINE
            same = credited == g["entity"]
            quad = {(True, True): "TP", (True, False): "FP", (False, True): "FN", (False, False): "TN"}[(sim, same)]
            delta = abs(score(lex, fs) - score(lex, r["text"])) if quad == "TP" else None
            out.append((house, g["template"], g["entity"], fs, corpus, quad, delta))
    return out


def metrics_csv(records):
    rows = {}
    for house, tmpl, ent, fs, corpus, quad, delta in records:
        key = (house, TEMPLATES.index(tmpl))
        row = rows.setdefault(key, {"gen": set(), "FT1": {}, "FT2": {}})
        row["gen"].add((ent, fs))
        row[corpus].setdefault((ent, fs), (quad, delta))
    lines = [",".join([
        "media_house", "manual_prompt", "distinct_generated_count",
        "pct_distinct_semantic_matches_ft1", "pct_distinct_semantic_matches_ft2",
        "avg_tp_sentiment_delta_ft1", "avg_tp_sentiment_delta_ft2",
        "f1_ft1", "f1_ft2", "precision_ft1", "precision_ft2", "recall_ft1", "recall_ft2"])]
    for (house, ti) in sorted(rows):
        row = rows[(house, ti)]
        m = {}
        for c in ("FT1", "FT2"):
            recs = list(row[c].values())
            tp = sum(1 for q, _ in recs if q == "TP")
            fp = sum(1 for q, _ in recs if q == "FP")
            fn = sum(1 for q, _ in recs if q == "FN")
            n = len(recs)
            pct = (tp + fp) / n * 100 if n else None
            avg = sum(d for q, d in recs if q == "TP") / tp if tp else None
            p = tp / (tp + fp) if tp + fp else None
            r = tp / (tp + fn) if tp + fn else None
            f1 = None if p is None or r is None else (2 * p * r / (p + r) if p + r > 0 else 0.0)
            m[c] = (pct, avg, f1, p, r)
        fmt = lambda v, d: "NA" if v is None else f"{v:.{d}f}"
        cells = [house, TEMPLATES[ti], str(len(row["gen"]))]
        for k, d in ((0, 2), (1, 4), (2, 4), (3, 4), (4, 4)):
            cells += [fmt(m["FT1"][k], d), fmt(m["FT2"][k], d)]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def generations(rng, test, demos, docs):
    """Replay lines (raw JSON strings) and the list of those expected to be accepted."""
    by_ent = {}
    for e, s in demos:
        by_ent.setdefault(e, []).append(s)
    test_names = [t["entity"] for t in test]
    budget = {t["entity"]: t["count"] for t in test}
    j_sentences = {}
    for d in docs:
        if d["dropped"] or not d["has_coref"]:
            continue
        for sent, (subject, tail) in zip(d["resolved_sentences"], d["subjects"]):
            if tail and tail.startswith("addressing"):
                j_sentences.setdefault(subject, []).append(sent)

    lines = []
    def emit(entity, template, raw):
        lines.append(json.dumps({"entity": entity, "template": template, "raw": raw}))

    for e in test_names:
        others = [o for o in test_names if o != e]
        own = by_ent.get(e, [])
        for tmpl in TEMPLATES:
            prompt = f"{e} {tmpl}"
            word = tmpl.split()[-1]
            if word == "characteristics":
                word = "having characteristics"
            mine = [s for s in own if s.startswith(prompt + " ")]
            theirs = [s.replace(o, e) for o in others for s in by_ent.get(o, []) if s.startswith(f"{o} {tmpl} ")]
            for s in mine[:2]:
                emit(e, tmpl, s)
            if mine:
                emit(e, tmpl, mine[0])  # duplicate, counted once
                emit(e, tmpl, mine[0][:-1] + " again. Later that day the group left.")
            for s in theirs[:2]:
                emit(e, tmpl, s)
            emit(e, tmpl, f"{prompt} a quiet person who reads old books at night.")
            if tmpl.endswith("stating") and e in j_sentences:
                emit(e, tmpl, f"{prompt} that {j_sentences[e][0]}")
            if tmpl.endswith("being"):
                emit(e, tmpl, f"{prompt} very happy and honest.")
    # rejected lines
    e0 = test_names[0]
    emit(e0, TEMPLATES[0], f"{e0} was described as being happy.")
    emit(e0, TEMPLATES[1], f"{e0} {TEMPLATES[1]} " + " ".join(["word"] * 31) + ".")
    emit("Nobody Here", TEMPLATES[0], f"Nobody Here {TEMPLATES[0]} calm.")
    lines.append("{not json")
    # push one pair over its budget
    e_last = test_names[-1]
    for i in range(budget[e_last] + 2):
        emit(e_last, TEMPLATES[2], f"{e_last} {TEMPLATES[2]} a song number {i}.")

    accepted = []
    used = {}
    for line in lines:
        try:
            rec = json.loads(line)
        except json.JSONDecodeError:
            continue
        if rec["entity"] not in budget or rec["template"] not in TEMPLATES:
            continue
        prompt = f"{rec['entity']} {rec['template']}"
        if not rec["raw"].startswith(prompt):
            continue
        if len(word_tokens(rec["raw"][len(prompt):])) > MAX_TOKENS:
            continue
        k = (rec["entity"], rec["template"])
        if used.get(k, 0) >= budget[rec["entity"]]:
            continue
        used[k] = used.get(k, 0) + 1
        accepted.append({"entity": rec["entity"], "template": rec["template"], "raw": rec["raw"],
                         "first_sentence": first_sentence(rec["raw"])})
    return lines, accepted


def main():
    rng = random.Random(20240501)
    if OUT.exists():
        shutil.rmtree(OUT)
    (OUT / "expected").mkdir(parents=True)
    lex = load_lexicon()
    houses = {
        "house_a": ([14, 12, 11, 10, 9, 9, 8, 7, 6, 5, 3, 2], 14, 0, None, "a-005"),
        "house_b": ([13, 13, 10, 9, 8, 8, 7, 6, 6, 4, 4, 1], 13, 40, "b-007", None),
    }
    all_records = []
    config_inputs = []
    for name, (counts, n_articles, date_base, drop, no_coref) in houses.items():
        articles, corefs, docs = make_house(name, counts, rng, n_articles, date_base, drop, no_coref)
        hd = OUT / name
        (hd / "conllu").mkdir(parents=True)
        extra = [
            {"id": f"{name[-1]}-old", "media_house": name, "url": "", "published_at": "2014-12-31",
             "text": "Asha Verma won the vote."},
            {"id": f"{name[-1]}-new", "media_house": name, "url": "", "published_at": "2022-01-01",
             "text": "Bilal Khan won the vote."},
            {"id": f"{name[-1]}-other", "media_house": "elsewhere", "url": "", "published_at": "2018-05-05",
             "text": "Chen Wei won the vote."},
        ]
        lines = [json.dumps(a) for a in articles[:3]] + [json.dumps(x) for x in extra]
        lines += ["{\"id\": \"broken\"", json.dumps(dict(articles[0], text="duplicate id, dropped"))]
        lines += [json.dumps(a) for a in articles[3:]]
        (hd / "articles.jsonl").write_text("\n".join(lines) + "\n")
        (hd / "coref.jsonl").write_text("".join(json.dumps(c) + "\n" for c in corefs))
        for d in docs:
            if d["dropped"]:
                continue
            (hd / "conllu" / f"{d['doc_id']}.conllu").write_text(conllu(d["doc_id"], d["rows"]))

        live = sorted((d for d in docs if not d["dropped"]), key=lambda d: d["doc_id"])
        demos = demos_of(docs)
        test, train = split(demos)
        test_names = {t["entity"]: t["rank"] for t in test}
        train_names = {t["entity"] for t in train}
        ft1 = [" ".join(d["resolved_text"].split()) for d in live]
        ft2_train = [s for e, s in demos if e in train_names]
        ft2_test = [{"entity": e, "sentence": s, "count_rank": test_names[e]} for e, s in demos if e in test_names]
        gen_lines, accepted = generations(rng, test, demos, docs)
        (hd / "generated.jsonl").write_text("\n".join(gen_lines) + "\n")

        ex = OUT / "expected" / name
        ex.mkdir(parents=True)
        (ex / "resolved.jsonl").write_text("".join(
            json.dumps({"doc_id": d["doc_id"], "text": d["resolved_text"], "sentence_entities": d["sentence_entities"]}) + "\n"
            for d in live))
        (ex / "ft1.txt").write_text("".join(l + "\n" for l in ft1))
        (ex / "ft2_train.txt").write_text("".join(l + "\n" for l in ft2_train))
        (ex / "ft2_test.jsonl").write_text("".join(json.dumps(r) + "\n" for r in ft2_test))
        (ex / "split.json").write_text(json.dumps({"test": test, "train": train}, indent=1) + "\n")
        (ex / "generated_accepted.jsonl").write_text("".join(json.dumps(g) + "\n" for g in accepted))

        ft1_refs = []
        for d in live:
            for sent, ents in zip(d["resolved_sentences"], d["sentence_entities"]):
                if ents and len(word_tokens(sent)) > FT1_MIN_TOKENS:
                    ft1_refs.append({"text": sent, "embed": sent, "entities": ents})
        ft2_refs = [{"text": r["sentence"], "embed": replace_whole(r["sentence"], r["entity"], MASK),
                     "entities": [r["entity"]]} for r in ft2_test]
        all_records += evaluate(name, accepted, ft1_refs, ft2_refs, lex)
        config_inputs.append(name)

    (OUT / "expected" / "report.csv").write_text(metrics_csv(all_records))
    quads = {}
    for r in all_records:
        quads[(r[4], r[5])] = quads.get((r[4], r[5]), 0) + 1
    cfg = [
        'store = "store"',
        'houses = ["house_a", "house_b"]',
        f"entity_threshold = {THRESHOLD}",
        f"test_entities = {TEST_ENTITIES}",
        f'embedder = "stub"',
        f"seed = {SEED}",
        "",
    ]
    for h in config_inputs:
        cfg += [f"[inputs.{h}]", f'articles = "{h}/articles.jsonl"', f'coref = "{h}/coref.jsonl"',
                f'conllu = "{h}/conllu"', f'generated = "{h}/generated.jsonl"', ""]
    (OUT / "config.toml").write_text("\n".join(cfg))
    print("records", len(all_records), "quadrants", sorted(quads.items()))


if __name__ == "__main__":
    main()
