#!/usr/bin/env python3
"""Freeze golden pipeline artifacts for the bundled toy corpus.

Runs the deterministic pipeline (built-in aligner, seed 7) and copies the
platform-stable artifacts into data/toy/golden/. Tests compare fresh runs
against these files byte for byte; regenerate only after an intentional
behavior change, and re-verify against data/toy/gold_labels.jsonl first.
"""

import os
import shutil
import subprocess
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def main():
    corpus = os.path.join(ROOT, "data", "toy", "corpus.jsonl")
    golden = os.path.join(ROOT, "data", "toy", "golden")
    os.makedirs(golden, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        def run(*args):
            subprocess.run([sys.executable, "-m", "zhnp.cli", *args],
                           check=True, cwd=ROOT)

        run("align", "--corpus", corpus, "--iterations", "15", "--seed", "7",
            "--out-e2z", f"{tmp}/alignments.e2z", "--out-z2e", f"{tmp}/alignments.z2e")
        run("match", "--corpus", corpus,
            "--alignments-e2z", f"{tmp}/alignments.e2z",
            "--alignments-z2e", f"{tmp}/alignments.z2e",
            "--out", f"{tmp}/matches.jsonl")
        run("annotate", "--corpus", corpus, "--matches", f"{tmp}/matches.jsonl",
            "--seed", "7", "--out", f"{tmp}/dataset.jsonl")
        run("split", "--dataset", f"{tmp}/dataset.jsonl", "--ratios", "8:1:1",
            "--seed", "7", "--out", f"{tmp}/split.jsonl")
        run("stats", "--dataset", f"{tmp}/split.jsonl", "--out", f"{tmp}/stats.json")
        for name in ("alignments.e2z", "alignments.z2e", "matches.jsonl",
                     "dataset.jsonl", "split.jsonl", "stats.json"):
            shutil.copyfile(os.path.join(tmp, name), os.path.join(golden, name))
    print(f"golden artifacts written to {golden}")


if __name__ == "__main__":
    main()
