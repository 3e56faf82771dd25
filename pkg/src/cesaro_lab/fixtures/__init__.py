"""Named test matrices.

Names resolve, in order, to an existing file path, to ``<name>.json`` in the
directory given by ``$CESARO_LAB_FIXTURES`` (or this package directory), or to
the generated family ``random<d>`` (a seeded ``d x d`` complex matrix with
spectral radius 1).
"""

from __future__ import annotations

import os
import re
from pathlib import Path

import numpy as np

from ..operators import load_matrix, random_matrix

ENV_VAR = "CESARO_LAB_FIXTURES"
_RANDOM = re.compile(r"random(\d+)$")


def fixture_dir() -> Path:
    return Path(os.environ.get(ENV_VAR) or Path(__file__).parent)


def fixture_names() -> list[str]:
    return sorted(p.stem for p in fixture_dir().glob("*.json"))


def load_fixture(name: str) -> np.ndarray:
    """Resolve ``name`` to a matrix; raises ``LookupError`` if nothing matches."""
    path = Path(name)
    if path.suffix == ".json" and path.is_file():
        return load_matrix(path)
    candidate = fixture_dir() / f"{name}.json"
    if candidate.is_file():
        return load_matrix(candidate)
    m = _RANDOM.match(name)
    if m and int(m.group(1)) > 0:
        dim = int(m.group(1))
        return random_matrix(dim, seed=dim)
    raise LookupError(f"unknown fixture {name!r}; known: {', '.join(fixture_names())}")
