"""Deontic clause extraction and C-O Diagram modelling toolkit."""

from .config import ExtractionConfig
from .conllu import DependencyTree, Token, parse_conllu, to_conllu
from .diagram import CODiagram, DiagramBox, from_table, validate
from .extract import (classify_modality, convert_passive, extract_clauses,
                      normalize_phrase, resolve_anaphora, route_modifiers,
                      split_coordinations)
from .labels import LabelMap, map_labels
from .query import eval_query, parse_query
from .scoring import score
from .table import ClauseRow, ClauseTable, SentenceGroup, from_tsv, to_tsv

__all__ = [
    "ExtractionConfig", "DependencyTree", "Token", "parse_conllu", "to_conllu",
    "CODiagram", "DiagramBox", "from_table", "validate",
    "classify_modality", "convert_passive", "extract_clauses",
    "normalize_phrase", "resolve_anaphora", "route_modifiers",
    "split_coordinations",
    "LabelMap", "map_labels", "eval_query", "parse_query", "score",
    "ClauseRow", "ClauseTable", "SentenceGroup", "from_tsv", "to_tsv",
]

__version__ = "0.1.0"
