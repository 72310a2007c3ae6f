"""Named test algebras used by the examples, the tests and the CLI."""
from __future__ import annotations

import json
from importlib import resources

from .algebra import Algebra, algebra_from_json, nakayama
from .errors import InvalidInput
from .linalg import DEFAULT_P

KUPISCH = {
    "A1": [3, 4, 4, 4],
    "A2": [5, 6, 6],
    "A3": [5, 6, 5, 6, 6, 6],
    "A4": [3, 4, 3, 4],
    "K2": [2, 2],
}

# A6 under the three readings of its picture; "A6" is the one used by default
FILES = {
    "A5": "a5.json",
    "A6": "a6.json",
    "A6-e41-ec": "a6_e41_ec.json",
    "A6-e41-eb": "a6_e41_eb.json",
    "A7": "a7.json",
    "semisimple2": "semisimple2.json",
}


def data_text(filename: str) -> str:
    return resources.files("wakatilt").joinpath("data", filename).read_text()


def load(name: str, p: int = DEFAULT_P) -> Algebra:
    if name in KUPISCH:
        return nakayama(KUPISCH[name], p=p, name=name)
    if name in FILES:
        data = json.loads(data_text(FILES[name]))
        data.setdefault("name", name)
        return algebra_from_json(data, p=p)
    raise InvalidInput(f"unknown named algebra {name!r}; known: {', '.join(names())}")


def names() -> list[str]:
    return list(KUPISCH) + list(FILES)
