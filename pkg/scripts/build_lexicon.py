"""Build the bundled POS lexicon from the Brill tagger lexicon.

Usage: python scripts/build_lexicon.py <dir-with-en-lexicon.txt-and-en-spelling.txt>

Both files ship inside the TextBlob wheel (textblob/en/). Penn tags are mapped
to the Universal POS set and the most frequent lowercase words are kept.
"""
import re
import sys
from pathlib import Path

SIZE = 15000

PENN_TO_UPOS = {
    "NN": "NOUN", "NNS": "NOUN",
    "NNP": "PROPN", "NNPS": "PROPN",
    "VB": "VERB", "VBD": "VERB", "VBG": "VERB", "VBN": "VERB", "VBP": "VERB", "VBZ": "VERB",
    "JJ": "ADJ", "JJR": "ADJ", "JJS": "ADJ",
    "RB": "ADV", "RBR": "ADV", "RBS": "ADV", "WRB": "ADV",
    "IN": "ADP",
    "DT": "DET", "PDT": "DET", "WDT": "DET",
    "CC": "CCONJ",
    "PRP": "PRON", "PRP$": "PRON", "WP": "PRON", "WP$": "PRON", "EX": "PRON",
    "CD": "NUM",
    "MD": "AUX",
    "TO": "PART", "RP": "PART", "POS": "PART",
}

# Brill's single most-likely tag is wrong for these in event-label text.
OVERRIDES = {
    "be": "AUX", "is": "AUX", "are": "AUX", "was": "AUX", "were": "AUX", "been": "AUX",
    "has": "AUX", "have": "AUX", "had": "AUX",
    "by": "ADP", "to": "ADP", "for": "ADP", "in": "ADP", "of": "ADP", "on": "ADP",
    "and": "CCONJ", "or": "CCONJ",
    "create": "VERB", "send": "VERB", "check": "VERB", "approve": "VERB", "submit": "VERB",
    "draft": "VERB", "insert": "VERB", "register": "VERB", "reject": "VERB", "update": "VERB",
    "open": "ADJ", "closed": "ADJ", "completed": "VERB", "started": "VERB",
}

# Process vocabulary that falls outside the frequency cut.
DOMAIN_WORDS = """
supervisor vendor invoice invoices approver applicant customer clerk administrator
administration prefecture declaration declarations permit reimbursement requisition
payment payments reminder reminders shipment receipt voucher ledger creditor debtor
budget owner employee employees manager managers auditor reviewer stakeholders
stakeholder recipient recipients notification dossier appeal fine penalty
suspension authority approved rejected submitted cancelled canceled finalized
resubmitted forwarded assigned escalated archived registered verified validated
scanned uploaded downloaded printed notified insured rejects approves submits
creates sends checks registers updates handles reviews reviewed resumed paused
suspended aborted unlicensed licensed lapsed overdue pending
"""


def main(src):
    src = Path(src)
    freq = {}
    for line in (src / "en-spelling.txt").read_text(encoding="utf-8").splitlines():
        if line.startswith(";;;") or not line.strip():
            continue
        word, count = line.split()
        freq[word] = int(count)

    tags = {}
    for line in (src / "en-lexicon.txt").read_text(encoding="utf-8").splitlines():
        if line.startswith(";;;") or not line.strip():
            continue
        word, penn = line.split()[:2]
        if not re.fullmatch(r"[a-z]+", word) or word in tags:
            continue
        if len(word) == 1 and word not in ("a", "i"):
            continue
        tags[word] = PENN_TO_UPOS.get(penn, "X")

    ranked = sorted(tags, key=lambda w: (-freq.get(w, 0), w))[:SIZE]
    lexicon = {w: tags[w] for w in ranked}
    for word in DOMAIN_WORDS.split():
        if word in tags:
            lexicon[word] = tags[word]
    lexicon.update(OVERRIDES)
    out = Path(__file__).resolve().parent.parent / "src" / "eventsrl" / "data" / "pos_lexicon.tsv"
    with open(out, "w", encoding="utf-8") as fh:
        for word in sorted(lexicon):
            fh.write(f"{word}\t{lexicon[word]}\n")
    print(f"wrote {len(lexicon)} entries to {out}")


if __name__ == "__main__":
    main(sys.argv[1])
