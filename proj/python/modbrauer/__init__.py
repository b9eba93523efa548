"""Brauer groups of moduli stacks and spaces of principal bundles on curves."""

import json

from ._core import (
    FinAbGroup,
    ParseError,
    RunResult,
    exterior_square,
    normalize,
    run,
    schur_multiplier,
    smith_normal_form,
    table,
)

__all__ = [
    "FinAbGroup",
    "ParseError",
    "RunResult",
    "analyze",
    "exterior_square",
    "normalize",
    "run",
    "schur_multiplier",
    "smith_normal_form",
    "table",
]


def analyze(spec, *, genus=None, mode="both", allow_low_genus=False):
    """Run the engine and return the parsed JSON report.

    Raises ValueError when the input is rejected.
    """
    result = run(spec, genus=genus, mode=mode, output="json", allow_low_genus=allow_low_genus)
    doc = json.loads(result.document)
    if "error" in doc:
        raise ValueError(doc["error"])
    return doc
