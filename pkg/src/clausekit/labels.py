"""Mapping of Universal Dependencies labels onto the classic Stanford set.

The extraction rules are written against Stanford Dependencies with
collapsed prepositions (``prep:in``), so UD input is rewritten in that
direction only.  ``obl``/``nmod`` nodes that govern a ``case`` token are
collapsed to ``prep:<preposition>``; a ``fixed`` (or ``mwe``) chain under
the case token is folded in (``such as`` -> ``prep:such_as``).
"""

import json
from dataclasses import dataclass
from importlib import resources

from .conllu import Token

# Classic Stanford label vocabulary the rules understand.  ``prep:*`` is
# canonical by pattern.
CANONICAL_LABELS = frozenset({
    "root", "nsubj", "nsubjpass", "csubj", "csubjpass", "dobj", "iobj",
    "aux", "auxpass", "cop", "neg", "det", "predet", "preconj", "amod",
    "nn", "num", "number", "poss", "possessive", "cc", "conj", "appos",
    "rcmod", "vmod", "advmod", "advcl", "mark", "prt", "agent", "expl",
    "ccomp", "xcomp", "pcomp", "pobj", "parataxis", "punct", "mwe",
    "tmod", "npadvmod", "dep", "case",
})

NEGATION_LEMMAS = frozenset({"not", "n't"})


@dataclass(frozen=True)
class LabelMap:
    """Plain relabelings; structural collapses live in map_labels itself."""

    entries: dict

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
        return cls(entries=dict(data["entries"]))

    @classmethod
    def default(cls):
        data = json.loads(
            resources.files("clausekit.data").joinpath("ud_to_stanford.json")
            .read_text(encoding="utf-8"))
        return cls(entries=dict(data["entries"]))


def is_canonical(label):
    return label in CANONICAL_LABELS or label.startswith("prep:")


def map_labels(tree, label_map):
    """Rewrite deprels through the map; total, never fails.

    Unknown labels are preserved verbatim; collect them afterwards with
    unknown_labels() if you want to warn.
    """
    entries = label_map.entries
    case_children = {}
    for t in tree.tokens:
        if t.deprel in ("case", "mark") and t.upos in ("ADP", "SCONJ"):
            case_children.setdefault(t.head, []).append(t)

    new_tokens = []
    for t in tree.tokens:
        rel = t.deprel
        base = rel.split(":", 1)[0] if not rel.startswith("prep:") else rel
        if rel.startswith("prep:"):
            new_rel = rel
        elif base in ("obl", "nmod") and rel != "nmod:poss":
            if rel == "obl:agent":
                new_rel = "agent"
            elif t.index in case_children:
                new_rel = "prep:" + _collapsed_preposition(tree, case_children[t.index][0])
            else:
                new_rel = entries.get(rel, entries.get(base, "dep"))
        elif rel == "advmod" and t.lemma in NEGATION_LEMMAS:
            new_rel = "neg"
        elif rel in entries:
            new_rel = entries[rel]
        elif base in entries:
            new_rel = entries[base]
        else:
            new_rel = rel   # canonical already, or unknown (kept verbatim)
        if new_rel == rel:
            new_tokens.append(t)
        else:
            new_tokens.append(Token(t.index, t.surface, t.lemma, t.upos,
                                    t.head, new_rel, t.feats))
    return tree.with_tokens(new_tokens)


def _collapsed_preposition(tree, case_token):
    parts = [case_token.lemma.lower()]
    for child in tree.children(case_token.index):
        if child.deprel in ("fixed", "mwe"):
            parts.append(child.lemma.lower())
    # fixed chains are annotated left-to-right from the first word
    if len(parts) > 1:
        span = sorted([case_token] + [c for c in tree.children(case_token.index)
                                      if c.deprel in ("fixed", "mwe")],
                      key=lambda t: t.index)
        parts = [t.lemma.lower() for t in span]
    return "_".join(parts)


def unknown_labels(tree):
    """Labels left in the tree that the rule layer does not know."""
    return sorted({t.deprel for t in tree.tokens if not is_canonical(t.deprel)})
