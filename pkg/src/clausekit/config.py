"""Extraction configuration: keyword lists, anaphora map, heuristics toggle.

The defaults below are the lexicalized heuristic lists the extractor ships
with; a JSON file given on the command line overrides any subset of them.
All keyword entries are lowercase lemmas.
"""

import json
from dataclasses import dataclass, field, replace


@dataclass(frozen=True)
class ExtractionConfig:
    heuristics_enabled: bool = True
    modal_keywords: dict = field(default_factory=lambda: dict(DEFAULT_MODAL_KEYWORDS))
    obligation_predicates: tuple = ("responsible", "liable", "require")
    temporal_prepositions: tuple = ("after", "before", "until", "till", "during", "since")
    time_nouns: tuple = ("day", "week", "month", "year", "hour", "minute",
                         "second", "time", "date", "deadline")
    time_markers: tuple = ("while", "when", "whenever", "once", "until",
                           "always", "immediately", "before", "after")
    condition_markers: tuple = ("if", "unless", "provided", "providing")
    irrelevant_adverbs: tuple = ("very", "however", "also", "only", "furthermore",
                                 "moreover", "thus", "therefore")
    anaphora_map: dict = field(default_factory=lambda: dict(DEFAULT_ANAPHORA_MAP))

    def __post_init__(self):
        for word, modality in self.modal_keywords.items():
            if modality not in ("O", "P", "F"):
                raise ValueError(f"modal keyword {word!r} maps to {modality!r}, "
                                 "expected O, P or F")
        for pronoun, tag in self.anaphora_map.items():
            if not tag:
                raise ValueError(f"anaphora mapping for {pronoun!r} is empty")

    def without_heuristics(self):
        return replace(self, heuristics_enabled=False)


# Modal auxiliaries with a clear deontic reading.  The rule layer only
# trusts "may" and "must"; the remainder take effect with heuristics on.
DEFAULT_MODAL_KEYWORDS = {
    "may": "P",
    "must": "O",
    "can": "P",
    "shall": "O",
    "will": "O",
}

RULE_LAYER_MODALS = {"may": "P", "must": "O"}

# Personal/possessive pronoun normalization.  The you->User entries suit
# terms-of-service documents; override per corpus.
DEFAULT_ANAPHORA_MAP = {
    "we": "<we>",
    "our": "<we>",
    "us": "<we>",
    "you": "User",
    "your": "User",
}

_LIST_FIELDS = ("obligation_predicates", "temporal_prepositions", "time_nouns",
                "time_markers", "condition_markers", "irrelevant_adverbs")


def load_config(path):
    """Build a config from a JSON file; absent keys keep their defaults."""
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    return config_from_dict(data)


def config_from_dict(data):
    known = {"heuristics_enabled", "modal_keywords", "anaphora_map", *_LIST_FIELDS}
    unknown = set(data) - known
    if unknown:
        raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
    kwargs = {}
    if "heuristics_enabled" in data:
        kwargs["heuristics_enabled"] = bool(data["heuristics_enabled"])
    if "modal_keywords" in data:
        kwargs["modal_keywords"] = {k.lower(): v for k, v in data["modal_keywords"].items()}
    if "anaphora_map" in data:
        kwargs["anaphora_map"] = {k.lower(): v for k, v in data["anaphora_map"].items()}
    for name in _LIST_FIELDS:
        if name in data:
            kwargs[name] = tuple(w.lower() for w in data[name])
    return ExtractionConfig(**kwargs)
