"""Exact-arithmetic Lie algebras of polynomial vector fields.

Derivations of Q[x1..xn] with rational-function coefficients: brackets,
structure constants, nilpotency, centers, slices, the small-corank
classification, and verified embeddings into the triangular algebra u_n.
"""

import json as _json

from ._liederiv import (
    Derivation,
    HypothesisError,
    InvariantError,
    LieAlgebra,
    ParseError,
    RationalFunction,
    bracket,
    build_l1,
    build_l2,
    center_report,
    classify_json,
    embed_json,
    fg_subalgebra_class,
    find_slice,
    is_constant,
    is_member_un,
    nilpotency,
    non_nilpotency_witness,
    parse_derivations,
    random_nilpotent,
    rank_over_r,
    structure_report_json,
)

__all__ = [
    "Derivation",
    "HypothesisError",
    "InvariantError",
    "LieAlgebra",
    "ParseError",
    "RationalFunction",
    "bracket",
    "build_l1",
    "build_l2",
    "center_report",
    "classify",
    "embed",
    "fg_subalgebra_class",
    "find_slice",
    "is_constant",
    "is_member_un",
    "nilpotency",
    "non_nilpotency_witness",
    "parse_derivations",
    "random_nilpotent",
    "rank_over_r",
    "structure",
    "structure_report_json",
]


def structure(algebra):
    """Structure report (basis, structure constants, rank, center, class) as a dict."""
    return _json.loads(structure_report_json(algebra))


def classify(algebra):
    """Classification verdict as a dict; the ``case`` key carries the family tag."""
    return _json.loads(classify_json(algebra))


def embed(algebra):
    """Classify and embed into u_n; returns the verified table as a dict."""
    return _json.loads(embed_json(algebra))
