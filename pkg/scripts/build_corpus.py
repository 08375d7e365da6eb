"""Build the bundled training corpus from the synthetic templates.

Usage: python scripts/build_corpus.py [per_template] [seed]

Every template contributes ``per_template`` distinct samples; the
hand-labelled values are appended after them.
"""
import sys
from pathlib import Path

from eventsrl.corpus import write_corpus
from eventsrl.synth import TEMPLATES, hand_labelled, template_corpus


def main(per_template=30, seed=0):
    out = Path(__file__).resolve().parent.parent / "src" / "eventsrl" / "data" / "corpus.conll"
    samples = template_corpus(list(TEMPLATES), per_template, seed) + hand_labelled()
    write_corpus(samples, out)
    print(f"wrote {len(samples)} samples to {out}")


if __name__ == "__main__":
    main(*(int(a) for a in sys.argv[1:3]))
