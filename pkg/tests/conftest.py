import os

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
TOY_DIR = os.path.join(ROOT, "data", "toy")
GOLDEN_DIR = os.path.join(TOY_DIR, "golden")


@pytest.fixture(scope="session")
def toy_dir():
    return TOY_DIR


@pytest.fixture(scope="session")
def golden_dir():
    return GOLDEN_DIR


@pytest.fixture(scope="session")
def toy_corpus_path():
    return os.path.join(TOY_DIR, "corpus.jsonl")


@pytest.fixture(scope="session")
def toy_corpus(toy_corpus_path):
    from zhnp.corpus import read_corpus

    return list(read_corpus(toy_corpus_path))


@pytest.fixture(scope="session")
def golden_split(golden_dir):
    from zhnp.corpus import read_dataset

    return list(read_dataset(os.path.join(golden_dir, "split.jsonl")))
