"""
Human-readable summaries on stderr. Floats are fine here; the exact
results go to stdout or --out.
"""

import sys

import pandas as pd

from convopoly.hull import Polytope
from convopoly.reconstruct import Realization


def _emit(text: str = "") -> None:
    print(text, file=sys.stderr)


def display_header(title: str) -> None:
    _emit("=" * 80)
    _emit(title)
    _emit("=" * 80)


def display_polytope(P: Polytope, kind: str, raw: bool = False) -> None:
    """Corner list with decimal coordinates."""
    label = "raw candidates" if raw else "corners"
    display_header(f"{kind} polytope, d={P.d}: {P.corner_count} {label}")
    for c in P.corners:
        coords = ", ".join(f"{float(v):.4f}" for v in c.coords)
        cycle = f"  cycle {list(c.cycle.vertices)}" if c.cycle is not None else ""
        _emit(f"  ({coords}){cycle}")


def display_verify_table(table: pd.DataFrame) -> None:
    display_header("Enclosure check")
    view = table.copy()
    for column in ("forward", "forward_scaled", "converse", "converse_scaled"):
        view[column] = view[column].map(float)
    _emit(view.to_string(index=False, float_format=lambda v: f"{v:.4f}"))


def display_realization(r: Realization) -> None:
    display_header(f"Witness set over N={r.set.ambient_hi}: {len(r.set)} elements")
    _emit(f"  target   : {[round(float(v), 6) for v in r.target]}")
    _emit(f"  achieved : {[round(float(v), 6) for v in r.achieved]}")
    _emit(f"  error    : {float(r.linf_error):.6f} (bound {float(r.error_bound):.6f})")


def display_decomposition(doc: dict) -> None:
    display_header(f"Closed walk of {doc['m']} vertices, {len(doc['decomposition'])} cycles")
    for term in doc["decomposition"]:
        _emit(f"  {term['n']} x {term['cycle']}")
    _emit(f"  total length: {doc['total_length']}")
