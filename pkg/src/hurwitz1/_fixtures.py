"""Loader for the versioned oracle-fixture file.

The file is a JSON map name -> {"re": "...", "im": "..."} with 25-digit
decimal strings, generated offline by ``tools/make_fixtures.py``; keys
starting with an underscore are metadata.  The environment variable
``HURWITZ1_FIXTURES`` overrides the bundled path.
"""

from __future__ import annotations

import json
import os
from functools import lru_cache
from importlib import resources

ENV_VAR = "HURWITZ1_FIXTURES"


def fixtures_path():
    override = os.environ.get(ENV_VAR)
    if override:
        return override
    return resources.files("hurwitz1").joinpath("data/fixtures.json")


@lru_cache(maxsize=4)
def _load(path_key: str) -> dict:
    path = path_key or fixtures_path()
    with open(path) if isinstance(path, str) else path.open() as fh:
        raw = json.load(fh)
    return {k: complex(float(v["re"]), float(v["im"])) for k, v in raw.items() if not k.startswith("_")}


def load_fixtures(path: str | None = None) -> dict:
    return dict(_load(path or ""))


def fixture(name: str) -> complex:
    table = _load("")
    if name not in table:
        raise KeyError(f"fixture {name!r} not found in {fixtures_path()}")
    return table[name]


def fixture_matrix(prefix: str, rows: int, cols: int):
    import numpy as np

    out = np.zeros((rows, cols), dtype=complex)
    for i in range(rows):
        for j in range(cols):
            out[i, j] = fixture(f"{prefix}_{i}_{j}")
    return out
