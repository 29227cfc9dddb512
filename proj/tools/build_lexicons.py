#!/usr/bin/env python3
"""Regenerate data/lexicons/*.tsv.

Inputs are the unpacked npm packages afinn-165 (valence) and en-lexicon
(POS wordforms), both MIT licensed:

    npm pack afinn-165@2.0.2 en-lexicon@1.0.11
    python3 tools/build_lexicons.py --afinn <dir>/package --en-lexicon <dir>/package

The category lists are maintained here by hand.
"""

import argparse
import pathlib
import re

VERSION = 1

PENN_TO_TAG = {
    "NN": "noun", "NNS": "noun", "NNP": "noun", "NNPS": "noun",
    "VB": "verb", "VBD": "verb", "VBG": "verb", "VBN": "verb", "VBP": "verb", "VBZ": "verb", "MD": "verb",
    "JJ": "adjective", "JJR": "adjective", "JJS": "adjective",
    "RB": "adverb", "RBR": "adverb", "RBS": "adverb", "WRB": "adverb",
    "PRP": "pronoun", "PRP$": "pronoun", "WP": "pronoun", "WP$": "pronoun",
}

CATEGORIES = {
    "self": "i me my mine myself",
    "exclusive": "but except excepting without excluding exclude excludes excluded however rather whereas "
                 "although though unless besides instead nor neither",
    "discrepancy": "should would could ought must need needs needed needing wish wished wishes hope hoped "
                   "hopes want wanted wants lack lacked lacks shouldn wouldn couldn mustn",
    "article": "a an the",
    "preposition": "about above across after against along amid among around as at before behind below "
                   "beneath beside between beyond by despite down during for from in inside into like near "
                   "of off on onto out outside over past per since through throughout to toward towards "
                   "under underneath until unto up upon via with within",
}


def fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def write(out: pathlib.Path, name: str, rows):
    body = "".join(f"{w}\t{v}\n" for w, v in rows).encode()
    header = f"#veracity-lexicon\t{name}\t{VERSION}\t{fnv1a64(body):016x}\n".encode()
    (out / f"{name}.tsv").write_bytes(header + body)
    print(f"{name}: {len(rows)} entries")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--afinn", required=True)
    ap.add_argument("--en-lexicon", required=True)
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data" / "lexicons"))
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    # AFINN scores are integers in [-5, 5]; divide by 3 and clamp so the
    # common strong words (great, excellent, wonderful) sit at +1.
    src = (pathlib.Path(args.afinn) / "index.js").read_text(encoding="utf8")
    valence = {}
    for word, score in re.findall(r"^\s*'?([^':\n]+?)'?\s*:\s*(-?\d+),?\s*$", src, re.M):
        if re.fullmatch(r"[a-z]+", word):
            valence[word] = max(-1.0, min(1.0, int(score) / 3.0))
    write(out, "valence", [(w, f"{v:.6f}") for w, v in sorted(valence.items()) if v != 0.0])

    src = (pathlib.Path(args.en_lexicon) / "dist" / "lexicon.js").read_text(encoding="utf8")
    pos = {}
    for word, tags in re.findall(r'^\s*"?([^"\n]+?)"?\s*:\s*"([^"]*)",?\s*$', src, re.M):
        if re.fullmatch(r"[a-z]+", word):
            pos[word] = PENN_TO_TAG.get(tags.split("|")[0], "other")
    write(out, "pos", sorted(pos.items()))

    rows = []
    for cat, words in CATEGORIES.items():
        rows.extend((w, cat) for w in words.split())
    write(out, "categories", sorted(rows))


if __name__ == "__main__":
    main()
