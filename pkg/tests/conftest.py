import pathlib

import pytest

from clausekit.conllu import DependencyTree, Token, parse_conllu

DATA_DIR = pathlib.Path(__file__).resolve().parent.parent / "data"


def build_tree(sentence_id, text, rows):
    """Tree from compact (index, surface, lemma, upos, head, deprel) rows."""
    tokens = tuple(Token(index=i, surface=s, lemma=l, upos=u, head=h, deprel=d)
                   for i, s, l, u, h, d in rows)
    return DependencyTree(sentence_id, text, tokens)


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR


@pytest.fixture(scope="session")
def golden_trees():
    with open(DATA_DIR / "table1.conllu", encoding="utf-8") as f:
        return parse_conllu(f)


@pytest.fixture(scope="session")
def golden_gold_tsv():
    return (DATA_DIR / "table1_gold.tsv").read_text(encoding="utf-8")
