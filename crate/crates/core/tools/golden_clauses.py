"""Writes the hand-annotated clause fixture.

Each sentence is a list of (form, lemma, upos, head, deprel[, misc]) rows and
the clauses a ClausIE-style reading of that tree should give. Both are typed
in by hand; nothing here runs the extractor.
"""
import json
import sys
from pathlib import Path

def C(t, s, v, io=None, do=None, c=None, a=()):
    return {"clause_type": t, "subject": s, "verb_lemma": v, "indirect_object": io,
            "direct_object": do, "complement": c, "adverbials": list(a)}

S = []
def sent(rows, clauses):
    S.append((rows, clauses))

sent([("John","John","PROPN",2,"nsubj"),("won","win","VERB",0,"root"),("the","the","DET",4,"det"),("election","election","NOUN",2,"obj")],
     [C("SVO","John","win",do="the election")])
sent([("Mary","Mary","PROPN",3,"nsubj"),("is","be","AUX",3,"cop"),("happy","happy","ADJ",0,"root"),(".",".","PUNCT",3,"punct")],
     [C("SVC","Mary","be",c="happy")])
sent([("The","the","DET",2,"det"),("minister","minister","NOUN",3,"nsubj"),("resigned","resign","VERB",0,"root"),(".",".","PUNCT",3,"punct")],
     [C("SV","The minister","resign")])
sent([("Entity","Entity","PROPN",2,"compound"),("P","P","PROPN",3,"nsubj"),("came","come","VERB",0,"root"),("in","in","ADP",6,"case"),("her","she","PRON",6,"nmod:poss"),("uniform","uniform","NOUN",3,"obl"),(".",".","PUNCT",3,"punct")],
     [C("SVA","Entity P","come",a=["in her uniform"])])
sent([("Entity","Entity","PROPN",2,"compound"),("W","W","PROPN",3,"nsubj"),("charted","chart","VERB",0,"root"),("his","he","PRON",6,"nmod:poss"),("future","future","ADJ",6,"amod"),("course","course","NOUN",3,"obj"),("of","of","ADP",8,"case"),("action","action","NOUN",6,"nmod"),(".",".","PUNCT",3,"punct")],
     [C("SVO","Entity W","chart",do="his future course of action")])
sent([("The","the","DET",2,"det"),("president","president","NOUN",3,"nsubj"),("gave","give","VERB",0,"root"),("the","the","DET",5,"det"),("farmers","farmer","NOUN",3,"iobj"),("a","a","DET",8,"det"),("new","new","ADJ",8,"amod"),("subsidy","subsidy","NOUN",3,"obj"),(".",".","PUNCT",3,"punct")],
     [C("SVOO","The president","give",io="the farmers",do="a new subsidy")])
sent([("The","the","DET",2,"det"),("party","party","NOUN",3,"nsubj"),("elected","elect","VERB",0,"root"),("her","she","PRON",3,"obj"),("leader","leader","NOUN",3,"xcomp"),(".",".","PUNCT",3,"punct")],
     [C("SVOC","The party","elect",do="her",c="leader")])
sent([("She","she","PRON",2,"nsubj"),("put","put","VERB",0,"root"),("the","the","DET",4,"det"),("files","file","NOUN",2,"obj"),("on","on","ADP",7,"case"),("the","the","DET",7,"det"),("desk","desk","NOUN",2,"obl"),(".",".","PUNCT",2,"punct")],
     [C("SVOA","She","put",do="the files",a=["on the desk"])])
sent([("The","the","DET",2,"det"),("senator","senator","NOUN",3,"nsubj"),("lives","live","VERB",0,"root"),("in","in","ADP",5,"case"),("Chicago","Chicago","PROPN",3,"obl"),(".",".","PUNCT",3,"punct")],
     [C("SVA","The senator","live",a=["in Chicago"])])
sent([("The","the","DET",2,"det"),("governor","governor","NOUN",5,"nsubj"),("is","be","AUX",5,"cop"),("in","in","ADP",5,"case"),("London","London","PROPN",0,"root"),(".",".","PUNCT",5,"punct")],
     [C("SVA","The governor","be",a=["in London"])])
sent([("Rahul","Rahul","PROPN",3,"nsubj"),("Gandhi","Gandhi","PROPN",1,"flat"),("seemed","seem","VERB",0,"root"),("tired","tired","ADJ",3,"xcomp"),(".",".","PUNCT",3,"punct")],
     [C("SVC","Rahul Gandhi","seem",c="tired")])
sent([("The","the","DET",2,"det"),("coach","coach","NOUN",3,"nsubj"),("made","make","VERB",0,"root"),("the","the","DET",5,"det"),("team","team","NOUN",3,"obj"),("stronger","strong","ADJ",3,"xcomp"),(".",".","PUNCT",3,"punct")],
     [C("SVOC","The coach","make",do="the team",c="stronger")])
sent([("She","she","PRON",2,"nsubj"),("sent","send","VERB",0,"root"),("him","he","PRON",2,"iobj"),("a","a","DET",5,"det"),("letter","letter","NOUN",2,"obj"),("yesterday","yesterday","ADV",2,"advmod"),(".",".","PUNCT",2,"punct")],
     [C("SVOO","She","send",io="him",do="a letter",a=["yesterday"])])
sent([("Modi","Modi","PROPN",2,"nsubj"),("addressed","address","VERB",0,"root"),("the","the","DET",4,"det"),("rally","rally","NOUN",2,"obj"),("and","and","CCONJ",6,"cc"),("thanked","thank","VERB",2,"conj"),("the","the","DET",8,"det"),("voters","voter","NOUN",6,"obj"),(".",".","PUNCT",2,"punct")],
     [C("SVO","Modi","address",do="the rally"),C("SVO","Modi","thank",do="the voters")])
sent([("The","the","DET",2,"det"),("mayor","mayor","NOUN",3,"nsubj"),("said","say","VERB",0,"root"),("that","that","SCONJ",8,"mark"),("the","the","DET",6,"det"),("budget","budget","NOUN",8,"nsubj"),("was","be","AUX",8,"cop"),("balanced","balanced","ADJ",3,"ccomp"),(".",".","PUNCT",3,"punct")],
     [C("SVO","The mayor","say",do="that the budget was balanced"),C("SVC","the budget","be",c="balanced")])
sent([("The","the","DET",2,"det"),("actor","actor","NOUN",7,"nsubj"),("who","who","PRON",4,"nsubj","PronType=Rel"),("won","win","VERB",2,"acl:relcl"),("the","the","DET",6,"det"),("award","award","NOUN",4,"obj"),("thanked","thank","VERB",0,"root"),("his","he","PRON",9,"nmod:poss"),("mother","mother","NOUN",7,"obj"),(".",".","PUNCT",7,"punct")],
     [C("SVO","The actor","win",do="the award"),C("SVO","The actor who won the award","thank",do="his mother")])
sent([("Prices","price","NOUN",2,"nsubj"),("rose","rise","VERB",0,"root"),("sharply","sharply","ADV",2,"advmod"),("last","last","ADJ",5,"amod"),("year","year","NOUN",2,"obl:tmod"),(".",".","PUNCT",2,"punct")],
     [C("SV","Prices","rise",a=["sharply","last year"])])
sent([("He","he","PRON",2,"nsubj"),("gave","give","VERB",0,"root"),("up","up","ADP",2,"compound:prt"),("the","the","DET",5,"det"),("fight","fight","NOUN",2,"obj"),(".",".","PUNCT",2,"punct")],
     [C("SVO","He","give up",do="the fight")])
sent([("The","the","DET",2,"det"),("bill","bill","NOUN",4,"nsubj:pass"),("was","be","AUX",4,"aux:pass"),("passed","pass","VERB",0,"root"),("by","by","ADP",6,"case"),("parliament","parliament","NOUN",4,"obl:agent"),(".",".","PUNCT",4,"punct")],
     [C("SV","The bill","pass",a=["by parliament"])])
sent([("Go","go","VERB",0,"root"),("home","home","ADV",1,"advmod"),(".",".","PUNCT",1,"punct")],
     [])
sent([("The","the","DET",2,"det"),("leaders","leader","NOUN",3,"nsubj"),("met","meet","VERB",0,"root"),("in","in","ADP",5,"case"),("Delhi","Delhi","PROPN",3,"obl"),("on","on","ADP",7,"case"),("Monday","Monday","PROPN",3,"obl"),(".",".","PUNCT",3,"punct")],
     [C("SV","The leaders","meet",a=["in Delhi","on Monday"])])
sent([("She","she","PRON",2,"nsubj"),("became","become","VERB",0,"root"),("the","the","DET",5,"det"),("first","first","ADJ",5,"amod"),("woman","woman","NOUN",2,"xcomp"),("to","to","PART",7,"mark"),("lead","lead","VERB",5,"acl"),("the","the","DET",9,"det"),("party","party","NOUN",7,"obj"),(".",".","PUNCT",2,"punct")],
     [C("SVC","She","become",c="the first woman to lead the party")])
sent([("He","he","PRON",2,"nsubj"),("put","put","VERB",0,"root"),("his","he","PRON",4,"nmod:poss"),("trust","trust","NOUN",2,"obj"),("in","in","ADP",7,"case"),("the","the","DET",7,"det"),("people","people","NOUN",2,"obl"),(".",".","PUNCT",2,"punct")],
     [C("SVOA","He","put",do="his trust",a=["in the people"])])
sent([("They","they","PRON",2,"nsubj"),("placed","place","VERB",0,"root"),("the","the","DET",4,"det"),("statue","statue","NOUN",2,"obj"),("near","near","ADP",7,"case"),("the","the","DET",7,"det"),("gate","gate","NOUN",2,"obl"),(".",".","PUNCT",2,"punct")],
     [C("SVOA","They","place",do="the statue",a=["near the gate"])])
sent([("The","the","DET",2,"det"),("children","child","NOUN",3,"nsubj"),("stood","stand","VERB",0,"root"),("quietly","quietly","ADV",3,"advmod"),(".",".","PUNCT",3,"punct")],
     [C("SVA","The children","stand",a=["quietly"])])
sent([("Obama","Obama","PROPN",2,"nsubj"),("remained","remain","VERB",0,"root"),("popular","popular","ADJ",2,"xcomp"),("among","among","ADP",5,"case"),("voters","voter","NOUN",3,"obl"),(".",".","PUNCT",2,"punct")],
     [C("SVC","Obama","remain",c="popular among voters")])
sent([("The","the","DET",2,"det"),("team","team","NOUN",5,"nsubj"),("was","be","AUX",5,"cop"),("not","not","PART",5,"advmod"),("ready","ready","ADJ",0,"root"),(".",".","PUNCT",5,"punct")],
     [C("SVC","The team","be",c="not ready")])
sent([("The","the","DET",3,"det"),("old","old","ADJ",3,"amod"),("man","man","NOUN",4,"nsubj"),("sat","sit","VERB",0,"root"),("on","on","ADP",7,"case"),("the","the","DET",7,"det"),("bench","bench","NOUN",4,"obl"),("and","and","CCONJ",9,"cc"),("read","read","VERB",4,"conj"),("a","a","DET",11,"det"),("book","book","NOUN",9,"obj"),(".",".","PUNCT",4,"punct")],
     [C("SVA","The old man","sit",a=["on the bench"]),C("SVO","The old man","read",do="a book")])
sent([("The","the","DET",2,"det"),("company","company","NOUN",3,"nsubj"),("offered","offer","VERB",0,"root"),("its","its","PRON",5,"nmod:poss"),("workers","worker","NOUN",3,"iobj"),("higher","high","ADJ",7,"amod"),("wages","wage","NOUN",3,"obj"),(".",".","PUNCT",3,"punct")],
     [C("SVOO","The company","offer",io="its workers",do="higher wages")])
sent([("She","she","PRON",4,"nsubj"),("is","be","AUX",4,"cop"),("a","a","DET",4,"det"),("lawyer","lawyer","NOUN",0,"root"),(".",".","PUNCT",4,"punct")],
     [C("SVC","She","be",c="a lawyer")])
sent([("The","the","DET",2,"det"),("voters","voter","NOUN",3,"nsubj"),("considered","consider","VERB",0,"root"),("the","the","DET",5,"det"),("plan","plan","NOUN",3,"obj"),("a","a","DET",7,"det"),("failure","failure","NOUN",3,"xcomp"),(".",".","PUNCT",3,"punct")],
     [C("SVOC","The voters","consider",do="the plan",c="a failure")])
sent([("I","I","PRON",2,"nsubj"),("told","tell","VERB",0,"root"),("you","you","PRON",2,"iobj"),("the","the","DET",5,"det"),("truth","truth","NOUN",2,"obj"),(".",".","PUNCT",2,"punct")],
     [C("SVOO","I","tell",io="you",do="the truth")])
sent([("Entity","Entity","PROPN",2,"compound"),("K","K","PROPN",3,"nsubj"),("said","say","VERB",0,"root"),("he","he","PRON",6,"nsubj"),("would","would","AUX",6,"aux"),("resign","resign","VERB",3,"ccomp"),(".",".","PUNCT",3,"punct")],
     [C("SVO","Entity K","say",do="he would resign"),C("SV","he","resign")])
# ClearNLP-style labels from here on.
sent([("Entity","Entity","PROPN",2,"compound"),("A","A","PROPN",3,"nsubj"),("is","be","VERB",0,"ROOT"),("honest","honest","ADJ",3,"acomp"),(".",".","PUNCT",3,"punct")],
     [C("SVC","Entity A","be",c="honest")])
sent([("The","the","DET",2,"det"),("minister","minister","NOUN",3,"nsubj"),("gave","give","VERB",0,"ROOT"),("the","the","DET",5,"det"),("reporters","reporter","NOUN",3,"dative"),("an","an","DET",7,"det"),("interview","interview","NOUN",3,"dobj"),(".",".","PUNCT",3,"punct")],
     [C("SVOO","The minister","give",io="the reporters",do="an interview")])
sent([("He","he","PRON",2,"nsubj"),("lives","live","VERB",0,"ROOT"),("in","in","ADP",2,"prep"),("Mumbai","Mumbai","PROPN",3,"pobj"),(".",".","PUNCT",2,"punct")],
     [C("SVA","He","live",a=["in Mumbai"])])
sent([("She","she","PRON",2,"nsubj"),("called","call","VERB",0,"ROOT"),("him","he","PRON",2,"dobj"),("a","a","DET",5,"det"),("hero","hero","NOUN",2,"oprd"),(".",".","PUNCT",2,"punct")],
     [C("SVOC","She","call",do="him",c="a hero")])
sent([("She","she","PRON",2,"nsubj"),("placed","place","VERB",0,"ROOT"),("the","the","DET",4,"det"),("vase","vase","NOUN",2,"dobj"),("on","on","ADP",2,"prep"),("the","the","DET",7,"det"),("table","table","NOUN",5,"pobj"),(".",".","PUNCT",2,"punct")],
     [C("SVOA","She","place",do="the vase",a=["on the table"])])
sent([("After","after","ADP",3,"case"),("the","the","DET",3,"det"),("speech","speech","NOUN",7,"obl","SpaceAfter=No"),(",",",","PUNCT",7,"punct"),("the","the","DET",6,"det"),("crowd","crowd","NOUN",7,"nsubj"),("cheered","cheer","VERB",0,"root"),("loudly","loudly","ADV",7,"advmod"),(".",".","PUNCT",7,"punct")],
     [C("SV","the crowd","cheer",a=["After the speech","loudly"])])
sent([("The","the","DET",2,"det"),("police","police","NOUN",3,"nsubj"),("arrested","arrest","VERB",0,"root"),("the","the","DET",5,"det"),("suspect","suspect","NOUN",3,"obj"),("because","because","SCONJ",8,"mark"),("he","he","PRON",8,"nsubj"),("fled","flee","VERB",3,"advcl"),(".",".","PUNCT",3,"punct")],
     [C("SVO","The police","arrest",do="the suspect",a=["because he fled"]),C("SV","he","flee")])

assert len(S) == 40, len(S)

out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")
lines = ["# newdoc id = golden"]
expected = []
for i, (rows, clauses) in enumerate(S):
    text = ""
    for r in rows:
        text += r[0]
        misc = r[5] if len(r) > 5 and r[5].startswith("SpaceAfter") else "_"
        if misc != "SpaceAfter=No":
            text += " "
    lines.append(f"# sent_id = {i + 1}")
    lines.append(f"# text = {text.strip().replace(' .', '.')}")
    for n, r in enumerate(rows, 1):
        form, lemma, upos, head, rel = r[:5]
        extra = r[5] if len(r) > 5 else "_"
        feats = extra if "=" in extra and not extra.startswith("SpaceAfter") else "_"
        misc = extra if extra.startswith("SpaceAfter") else "_"
        lines.append("\t".join([str(n), form, lemma, upos, "_", feats, str(head), rel, "_", misc]))
    lines.append("")
    for c in clauses:
        expected.append({"doc_id": "golden", "sentence_index": i, **c})

(out / "golden.conllu").write_text("\n".join(lines) + "\n")
(out / "golden_clauses.json").write_text(json.dumps(expected, indent=1) + "\n")
types = sorted({c["clause_type"] for c in expected})
print(len(S), "sentences,", len(expected), "clauses, types:", types)
