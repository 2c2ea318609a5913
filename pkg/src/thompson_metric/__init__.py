"""Tree-pair diagrams, word lengths and Cayley-graph oracles for F(p+1)."""

from thompson_metric._backend import BACKEND
from thompson_metric.diagram import (
    Letter,
    TreePairDiagram,
    canonical_key,
    evaluate_word,
    identity,
    inverse,
    make_generator,
    make_infinite_generator,
    multiply,
    parse_diagram,
    parse_word,
    reduce,
)
from thompson_metric.metric import length_report, word_length

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Letter",
    "TreePairDiagram",
    "canonical_key",
    "evaluate_word",
    "identity",
    "inverse",
    "length_report",
    "make_generator",
    "make_infinite_generator",
    "multiply",
    "parse_diagram",
    "parse_word",
    "reduce",
    "word_length",
]
