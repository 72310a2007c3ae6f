"""Monomial bound quiver algebras, Nakayama algebras from Kupisch series, opposites.

Paths compose left to right: for arrows ``a: 1 -> 2`` and ``b: 2 -> 3`` the
path "first a, then b" is the word ``("a", "b")``. Vertices are numbered from 1.
"""
from __future__ import annotations

import json
import string
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InfiniteDimensional, InvalidInput, InvalidKupisch, NonComposableRelation
from .linalg import DEFAULT_P, check_field

Word = tuple[str, ...]


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    n: int
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInput("a quiver needs at least one vertex")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise InvalidInput(f"arrow names must be unique: {names}")
        for a in self.arrows:
            if not (1 <= a.source <= self.n and 1 <= a.target <= self.n):
                raise InvalidInput(f"arrow {a.name} has an endpoint outside 1..{self.n}")

    @classmethod
    def from_triples(cls, n: int, triples) -> Quiver:
        return cls(n, tuple(Arrow(name, s, t) for name, s, t in triples))

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise InvalidInput(f"unknown arrow {name!r}")

    def out_arrows(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.source == v]

    def in_arrows(self, v: int) -> list[Arrow]:
        return [a for a in self.arrows if a.target == v]


@dataclass(frozen=True)
class KupischSeries:
    c: tuple[int, ...]
    shape: str = "cyclic"

    def __post_init__(self):
        if self.shape not in ("cyclic", "linear"):
            raise InvalidKupisch(f"shape must be 'cyclic' or 'linear', got {self.shape!r}")
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))
        validate_kupisch(self.c, self.shape)

    @classmethod
    def parse(cls, c, shape: str | None = None) -> KupischSeries:
        c = tuple(int(x) for x in c)
        if not c:
            raise InvalidKupisch("empty Kupisch series")
        if shape is None:
            shape = "linear" if c[-1] == 1 else "cyclic"
        return cls(c, shape)

    @property
    def n(self) -> int:
        return len(self.c)


def validate_kupisch(c: tuple[int, ...], shape: str) -> None:
    n = len(c)
    if n == 0:
        raise InvalidKupisch("empty Kupisch series")
    if shape == "cyclic":
        for i in range(n):
            if c[i] < 2:
                raise InvalidKupisch(f"invalid Kupisch series {list(c)}: c_{i + 1} = {c[i]} < 2 on a cyclic quiver")
            j = (i + 1) % n
            if c[j] < c[i] - 1:
                raise InvalidKupisch(
                    f"invalid Kupisch series {list(c)}: c_{j + 1} = {c[j]} < c_{i + 1} - 1 = {c[i] - 1}"
                )
        return
    if c[-1] != 1:
        raise InvalidKupisch(f"invalid Kupisch series {list(c)}: linear series must end with c_{n} = 1")
    for i in range(n):
        if i < n - 1 and c[i] < 2:
            raise InvalidKupisch(f"invalid Kupisch series {list(c)}: c_{i + 1} = {c[i]} < 2 kills an arrow")
        if c[i] > n - i:
            raise InvalidKupisch(f"invalid Kupisch series {list(c)}: c_{i + 1} = {c[i]} > n - i + 1 = {n - i}")
        if i < n - 1 and c[i + 1] < c[i] - 1:
            raise InvalidKupisch(
                f"invalid Kupisch series {list(c)}: c_{i + 2} = {c[i + 1]} < c_{i + 1} - 1 = {c[i] - 1}"
            )


@dataclass(eq=False)
class Algebra:
    """A finite-dimensional monomial algebra kQ/I with an enumerated path basis.

    ``paths[(i, j)]`` lists the nonzero paths from ``i`` to ``j``; the trivial
    path at ``i`` is the empty word and is listed first in ``paths[(i, i)]``.
    """

    quiver: Quiver
    relations: tuple[Word, ...]
    paths: dict[tuple[int, int], list[Word]]
    kupisch: KupischSeries | None = None
    p: int = DEFAULT_P
    name: str = ""
    _op: Algebra | None = field(default=None, repr=False)

    def __post_init__(self):
        self._arrow_index = {a.name: k for k, a in enumerate(self.quiver.arrows)}
        self._nonzero = {w for ws in self.paths.values() for w in ws}

    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.quiver.arrows

    @property
    def arrow_index(self) -> dict[str, int]:
        return self._arrow_index

    @property
    def dimension(self) -> int:
        return sum(len(v) for v in self.paths.values())

    def paths_from(self, i: int) -> dict[int, list[Word]]:
        return {j: self.paths[(i, j)] for j in range(1, self.n + 1)}

    def paths_to(self, j: int) -> dict[int, list[Word]]:
        return {i: self.paths[(i, j)] for i in range(1, self.n + 1)}

    def is_nonzero(self, word: Word) -> bool:
        return not word or word in self._nonzero

    def opposite(self) -> Algebra:
        if self._op is None:
            q = Quiver(self.n, tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))
            op_paths = {(j, i): [tuple(reversed(w)) for w in ws] for (i, j), ws in self.paths.items()}
            op = Algebra(
                quiver=q,
                relations=tuple(tuple(reversed(r)) for r in self.relations),
                paths=op_paths,
                p=self.p,
                name=f"{self.name}^op" if self.name else "",
            )
            op._op = self
            self._op = op
        return self._op

    def structurally_equal(self, other: Algebra) -> bool:
        return (
            self.quiver == other.quiver
            and set(self.relations) == set(other.relations)
            and self.p == other.p
        )

    def to_json(self) -> dict:
        if self.kupisch is not None:
            return {"kupisch": list(self.kupisch.c), "shape": self.kupisch.shape}
        return {
            "vertices": self.n,
            "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in self.arrows],
            "relations": [list(r) for r in self.relations],
        }

    def describe(self) -> str:
        arrows = ", ".join(f"{a.name}:{a.source}->{a.target}" for a in self.arrows)
        rels = " = ".join("".join(r) for r in self.relations) + " = 0" if self.relations else "none"
        return f"{self.name or 'algebra'}: {self.n} vertices; arrows {arrows}; relations {rels}; dim {self.dimension}"

    def __repr__(self) -> str:
        return f"Algebra({self.name or '?'}, n={self.n}, dim={self.dimension})"


def _check_relation(q: Quiver, rel: Word) -> None:
    if len(rel) < 2:
        raise NonComposableRelation(f"relation {''.join(rel)!r} must have length >= 2")
    arrows = [q.arrow(x) for x in rel]
    for a, b in zip(arrows, arrows[1:]):
        if a.target != b.source:
            raise NonComposableRelation(
                f"non-composable relation {''.join(rel)!r}: {a.name} ends at {a.target}, {b.name} starts at {b.source}"
            )


def build_monomial_algebra(
    q: Quiver,
    relations,
    dim_cap: int = 10000,
    p: int = DEFAULT_P,
    name: str = "",
    kupisch: KupischSeries | None = None,
) -> Algebra:
    """Enumerate the nonzero paths of kQ/I by breadth-first extension."""
    check_field(p)
    rels = tuple(tuple(r) for r in relations)
    for r in rels:
        _check_relation(q, r)
    rel_set = set(rels)
    max_len = max((len(r) for r in rels), default=0)

    paths: dict[tuple[int, int], list[Word]] = {(i, j): [] for i in range(1, q.n + 1) for j in range(1, q.n + 1)}
    total = 0
    outgoing = {v: q.out_arrows(v) for v in range(1, q.n + 1)}
    for i in range(1, q.n + 1):
        queue: deque[tuple[Word, int]] = deque([((), i)])
        while queue:
            word, end = queue.popleft()
            paths[(i, end)].append(word)
            total += 1
            if total > dim_cap:
                raise InfiniteDimensional(f"infinite dimensional: more than {dim_cap} nonzero paths")
            for a in outgoing[end]:
                new = word + (a.name,)
                # only suffixes can be new relation occurrences
                if any(new[-k:] in rel_set for k in range(2, min(max_len, len(new)) + 1)):
                    continue
                queue.append((new, a.target))
    return Algebra(quiver=q, relations=rels, paths=paths, kupisch=kupisch, p=p, name=name)


def _arrow_names(count: int) -> list[str]:
    if count <= 26:
        return list(string.ascii_lowercase[:count])
    return [f"x{k + 1}" for k in range(count)]


def minimal_relations(rels: list[Word]) -> list[Word]:
    """Drop relations that contain another relation as a contiguous subword."""

    def contains(big: Word, small: Word) -> bool:
        return any(big[k:k + len(small)] == small for k in range(len(big) - len(small) + 1))

    return [r for r in rels if not any(s != r and contains(r, s) for s in rels)]


def nakayama(series, shape: str | None = None, p: int = DEFAULT_P, name: str = "") -> Algebra:
    """Nakayama algebra whose projective P(i) has dimension ``c_i``."""
    k = series if isinstance(series, KupischSeries) else KupischSeries.parse(series, shape)
    n = k.n
    if k.shape == "cyclic":
        names = _arrow_names(n)
        q = Quiver(n, tuple(Arrow(names[i], i + 1, (i + 1) % n + 1) for i in range(n)))
    else:
        names = _arrow_names(n - 1)
        q = Quiver(n, tuple(Arrow(names[i], i + 1, i + 2) for i in range(n - 1)))
    rels: list[Word] = []
    for i in range(n):
        length = k.c[i]
        if k.shape == "linear" and i + length > n - 1:
            continue
        rels.append(tuple(names[(i + m) % n] for m in range(length)))
    rels = minimal_relations(rels)
    label = name or f"Nakayama{list(k.c)}" + ("" if k.shape == "cyclic" else " linear")
    return build_monomial_algebra(q, rels, p=p, name=label, kupisch=k)


def rad_square_zero_relations(q: Quiver) -> list[Word]:
    return [(a.name, b.name) for a in q.arrows for b in q.arrows if a.target == b.source]


def opposite(a: Algebra) -> Algebra:
    return a.opposite()


def check_string_algebra(a: Algebra) -> tuple[bool, list[str]]:
    """Special biserial test for a monomial algebra.

    Requires in- and out-degree at most 2 at every vertex, and for each arrow
    at most one nonzero continuation on either side.
    """
    violations: list[str] = []
    q = a.quiver
    for v in range(1, a.n + 1):
        if len(q.out_arrows(v)) > 2:
            violations.append(f"vertex {v}: out-degree {len(q.out_arrows(v))} > 2")
        if len(q.in_arrows(v)) > 2:
            violations.append(f"vertex {v}: in-degree {len(q.in_arrows(v))} > 2")
    for b in q.arrows:
        after = [g.name for g in q.out_arrows(b.target) if a.is_nonzero((b.name, g.name))]
        before = [d.name for d in q.in_arrows(b.source) if a.is_nonzero((d.name, b.name))]
        if len(after) > 1:
            violations.append(f"arrow {b.name}: nonzero {', '.join(b.name + g for g in after)}")
        if len(before) > 1:
            violations.append(f"arrow {b.name}: nonzero {', '.join(d + b.name for d in before)}")
    return not violations, violations


def algebra_from_json(data: dict, p: int = DEFAULT_P, dim_cap: int = 10000) -> Algebra:
    try:
        if "kupisch" in data:
            return nakayama(data["kupisch"], data.get("shape"), p=p, name=data.get("name", ""))
        n = int(data["vertices"])
        q = Quiver(n, tuple(Arrow(str(x["name"]), int(x["from"]), int(x["to"])) for x in data.get("arrows", [])))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed algebra JSON: {exc}") from exc
    rels = [tuple(r) for r in data.get("relations", [])]
    if data.get("rad_square_zero"):
        rels = rels + [r for r in rad_square_zero_relations(q) if r not in rels]
    return build_monomial_algebra(q, rels, dim_cap=dim_cap, p=p, name=data.get("name", ""))


def load_algebra(path: str | Path, p: int = DEFAULT_P, dim_cap: int = 10000) -> Algebra:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read algebra file {path}: {exc}") from exc
    return algebra_from_json(data, p=p, dim_cap=dim_cap)
