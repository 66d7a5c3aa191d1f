"""
JSON encoding shared by the CLI and the golden files.

Rationals travel as "p/q" strings so documents stay exact. Every document
carries a schema version.
"""

import json
from fractions import Fraction
from typing import Any, Mapping

from .cycles import CornerVector
from .decomposition import Cycle
from .errors import MalformedInputError
from .hull import Polytope

SCHEMA_VERSION = 1


def format_rational(value) -> str:
    """Exact "p/q" text; integers are written as "p/1"."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text) -> Fraction:
    """
    Parse "p/q", "p" or an integer into a Fraction.

    Raises:
        MalformedInputError: If the text is not an exact rational
    """
    if isinstance(text, bool) or isinstance(text, float):
        raise MalformedInputError(f"Expected an exact rational, got {text!r}")
    try:
        return Fraction(text)
    except (TypeError, ValueError, ZeroDivisionError):
        raise MalformedInputError(f"Not a rational: {text!r}") from None


def document(**fields: Any) -> dict:
    """A JSON document with the schema version first."""
    return {"schema_version": SCHEMA_VERSION, **fields}


def dumps(doc: Mapping) -> str:
    """Deterministic JSON text with a trailing newline."""
    return json.dumps(doc, indent=2, ensure_ascii=True) + "\n"


def polytope_to_json(P: Polytope, kind: str) -> dict:
    return document(d=P.d, kind=kind, corners=[c.to_json() for c in P.corners])


def _int_list(value, what: str) -> list[int]:
    if not isinstance(value, list) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in value
    ):
        raise MalformedInputError(f"{what} must be a list of integers")
    return value


def polytope_from_json(doc: Mapping) -> tuple[Polytope, str]:
    """
    Read a polytope document produced by the corners command.

    Returns:
        Tuple of (polytope, kind)

    Raises:
        MalformedInputError: If required fields are missing or inconsistent
    """
    if not isinstance(doc, Mapping):
        raise MalformedInputError("Polytope document must be a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise MalformedInputError(f"Unsupported schema_version {version!r}")
    kind = doc.get("kind", "diff")
    if kind not in ("diff", "sum"):
        raise MalformedInputError(f"Unknown kind {kind!r}")
    d = doc.get("d")
    corners_doc = doc.get("corners")
    if not isinstance(d, int) or not isinstance(corners_doc, list) or not corners_doc:
        raise MalformedInputError("Polytope document needs an integer 'd' and a nonempty 'corners'")
    corners = []
    for entry in corners_doc:
        if not isinstance(entry, Mapping) or "num" not in entry or "den" not in entry:
            raise MalformedInputError("Each corner needs 'num' and 'den'")
        nums = _int_list(entry["num"], "Corner numerators")
        den = entry["den"]
        if not isinstance(den, int) or den < 1 or len(nums) != d:
            raise MalformedInputError(f"Corner {dict(entry)} does not match d={d}")
        cycle = None
        if "cycle" in entry:
            try:
                cycle = Cycle(tuple(_int_list(entry["cycle"], "Cycle vertices")))
            except ValueError as e:
                raise MalformedInputError(str(e)) from None
        corners.append(CornerVector(tuple(nums), den, cycle))
    return Polytope(d, tuple(corners)), kind


def lambdas_from_json(doc: Mapping) -> dict[int, Fraction]:
    """
    Read {cycle index: "p/q"} weights, optionally nested under "lambdas".

    Raises:
        MalformedInputError: If a key is not an index or a value not a rational
    """
    if not isinstance(doc, Mapping):
        raise MalformedInputError("Weights document must be a JSON object")
    body = doc.get("lambdas", {k: v for k, v in doc.items() if k != "schema_version"})
    if not isinstance(body, Mapping) or not body:
        raise MalformedInputError("Weights document has no weights")
    weights = {}
    for key, value in body.items():
        try:
            index = int(key)
        except (TypeError, ValueError):
            raise MalformedInputError(f"Cycle index {key!r} is not an integer") from None
        weights[index] = parse_rational(value)
    return weights
