"""Catalogues of indecomposable modules and decomposition against them.

A :class:`Registry` holds one representative per isomorphism class together
with the table ``H[j][k] = dim Hom(X_j, X_k)``. For a complete list over a
representation-finite algebra ``H`` is invertible, so the multiplicities of a
module ``M`` solve ``H c = h`` with ``h[j] = dim Hom(X_j, M)``.
"""
from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction

import numpy as np

from . import homological as hx
from . import linalg as la
from .algebra import Algebra, check_string_algebra
from .errors import (
    BandFound,
    DecompositionFailure,
    DuplicateIsoClass,
    InvalidInput,
    NotStringAlgebra,
    UnsupportedAlgebra,
)
from .rep import Representation, _make, direct_sum, dualize, interval, kernel

# large prime used only to certify that the Hom table is invertible over Q
_CERT_P = 16777213


def _exact_inverse(h: np.ndarray) -> list[list[Fraction]] | None:
    n = h.shape[0]
    a = [[Fraction(int(x)) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(h)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return None
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


class Registry:
    """Indecomposables of one algebra with cached homological tables.

    Tables are filled lazily and never change once written, so a built
    registry can be shared freely between readers.
    """

    def __init__(
        self,
        algebra: Algebra,
        modules: list[Representation],
        names: list[str] | None = None,
        complete: bool = True,
        strategy: str = "file",
        labels: list[str] | None = None,
        aliases: dict[str, int] | None = None,
    ):
        self.algebra = algebra
        self.modules = list(modules)
        self.names = list(names) if names else [m.name or f"X{k}" for k, m in enumerate(self.modules)]
        self.labels = list(labels) if labels else list(self.names)
        self.complete = complete
        self.strategy = strategy
        self.aliases = dict(aliases or {})
        for k, nm in enumerate(self.names):
            self.aliases.setdefault(nm, k)
        n = len(self.modules)
        self.hom = np.zeros((n, n), dtype=np.int64)
        for j, x in enumerate(self.modules):
            for k, y in enumerate(self.modules):
                self.hom[j, k] = hx.hom_dim(x, y)
        self._hinv_float = None
        self._hinv_exact = None
        if n and la.rank(self.hom % _CERT_P, _CERT_P) < n:
            self._hinv_exact = _exact_inverse(self.hom)
            if self._hinv_exact is None:
                raise DecompositionFailure("Hom table is singular: the registry repeats or misses isomorphism classes")
        self._syz: list[Counter] | None = None
        self._ext1 = None
        self._closure: list[tuple[int, ...]] | None = None
        self._vanish = None
        self._pd: list[float] | None = None
        self._trace: dict[tuple[int, int], list[np.ndarray]] = {}
        self._approx: dict = {}
        self._dual: Registry | None = None

    def __len__(self) -> int:
        return len(self.modules)

    def __repr__(self) -> str:
        return f"Registry({self.algebra.name or '?'}, {len(self)} modules, {self.strategy})"

    @property
    def n(self) -> int:
        return self.algebra.n

    # -- decomposition ---------------------------------------------------

    def hom_vector(self, m: Representation) -> np.ndarray:
        return np.array([hx.hom_dim(x, m) for x in self.modules], dtype=np.int64)

    def _solve(self, h: np.ndarray) -> np.ndarray | None:
        n = len(self)
        if self._hinv_exact is None:
            if self._hinv_float is None:
                self._hinv_float = np.linalg.inv(self.hom.astype(float))
            c = np.rint(self._hinv_float @ h).astype(np.int64)
            if np.array_equal(self.hom @ c, h):
                return c
            self._hinv_exact = _exact_inverse(self.hom)
        inv = self._hinv_exact
        xs = [sum((inv[i][j] * int(h[j]) for j in range(n)), Fraction(0)) for i in range(n)]
        if any(x.denominator != 1 for x in xs):
            return None
        return np.array([int(x) for x in xs], dtype=np.int64)

    def decompose(self, m: Representation) -> Counter:
        """Multiplicities of the registry modules in ``m``."""
        if m.algebra is not self.algebra:
            raise InvalidInput("module and registry live over different algebras")
        if m.total_dim == 0:
            return Counter()
        c = self._solve(self.hom_vector(m))
        if c is None or (c < 0).any():
            raise DecompositionFailure(f"{m.name or 'module'} does not decompose over the registry")
        dims = sum((int(c[k]) * np.array(self.modules[k].dims) for k in range(len(self))), np.zeros(self.n, dtype=int))
        if tuple(int(x) for x in dims) != m.dims:
            raise DecompositionFailure(f"{m.name or 'module'}: dimension vector mismatch after decomposition")
        return Counter({k: int(c[k]) for k in range(len(self)) if c[k]})

    def basic_ids(self, m: Representation) -> tuple[int, ...]:
        return tuple(sorted(self.decompose(m)))

    def module_of(self, ids) -> Representation:
        if isinstance(ids, Counter):
            ms = [self.modules[k] for k in sorted(ids) for _ in range(ids[k])]
        else:
            ms = [self.modules[k] for k in ids]
        return direct_sum(ms, self.algebra)

    def lookup(self, name: str) -> int:
        try:
            return self.aliases[name]
        except KeyError:
            raise InvalidInput(f"unknown module name {name!r}") from None

    def format(self, ids) -> list[str]:
        return [self.names[k] for k in sorted(ids)]

    # -- syzygies and dimensions -----------------------------------------

    @property
    def syzygies(self) -> list[Counter]:
        if self._syz is None:
            self._syz = [self.decompose(hx.syzygy(x)) for x in self.modules]
        return self._syz

    def is_projective(self, k: int) -> bool:
        return not self.syzygies[k]

    @property
    def projective_ids(self) -> tuple[int, ...]:
        """Ids of P(1), ..., P(n) in vertex order."""
        if not hasattr(self, "_proj_ids"):
            from .rep import projective

            ids = []
            for v in range(1, self.n + 1):
                c = self.decompose(projective(self.algebra, v))
                ids.append(next(iter(c)))
            self._proj_ids = tuple(ids)
        return self._proj_ids

    @property
    def injective_ids(self) -> tuple[int, ...]:
        if not hasattr(self, "_inj_ids"):
            from .rep import injective

            ids = []
            for v in range(1, self.n + 1):
                c = self.decompose(injective(self.algebra, v))
                ids.append(next(iter(c)))
            self._inj_ids = tuple(ids)
        return self._inj_ids

    @property
    def tops(self) -> np.ndarray:
        if not hasattr(self, "_tops"):
            self._tops = np.array([hx.top_dims(x) for x in self.modules], dtype=np.int64).reshape(len(self), self.n)
        return self._tops

    def _pd_table(self) -> list[float]:
        if self._pd is None:
            pd: dict[int, float] = {}
            state: dict[int, int] = {}

            def visit(k: int) -> float:
                if k in pd:
                    return pd[k]
                if state.get(k) == 1:
                    return math.inf
                state[k] = 1
                best = 0.0
                for z in self.syzygies[k]:
                    best = max(best, 1 + visit(z))
                state[k] = 2
                pd[k] = best
                return best

            for k in range(len(self)):
                visit(k)
            # a node reached while on the stack gets inf, and so does everything that reaches it
            self._pd = [pd[k] for k in range(len(self))]
            changed = True
            while changed:
                changed = False
                for k in range(len(self)):
                    if self._pd[k] != math.inf and any(self._pd[z] == math.inf for z in self.syzygies[k]):
                        self._pd[k] = math.inf
                        changed = True
        return self._pd

    def pd_of(self, ids) -> float:
        table = self._pd_table()
        return max((table[k] for k in ids), default=0)

    def pd_certificate(self, k: int) -> list[str]:
        """Syzygy walk from ``k``: ends at a projective, or repeats an id."""
        seen: list[int] = []
        cur = k
        table = self._pd_table()
        while cur not in seen:
            seen.append(cur)
            nxt = [z for z in sorted(self.syzygies[cur]) if table[z] == table[cur] - 1 or table[z] == math.inf]
            if not nxt:
                return [self.names[x] for x in seen] + ["0"]
            cur = nxt[0]
        return [self.names[x] for x in seen] + [self.names[cur]]

    def proj_dimension(self, m: Representation) -> hx.PdResult:
        c = self.decompose(m)
        if not c:
            return hx.PdResult(0, ["0"])
        table = self._pd_table()
        worst = max(c, key=lambda k: (table[k], -k))
        return hx.PdResult(table[worst] if table[worst] == math.inf else int(table[worst]), self.pd_certificate(worst))

    # -- Ext ---------------------------------------------------------------

    @property
    def ext1(self) -> np.ndarray:
        """``E[j][k] = dim Ext^1(X_j, X_k)``."""
        if self._ext1 is None:
            n = len(self)
            omega = np.zeros((n, n), dtype=np.int64)
            for j, c in enumerate(self.syzygies):
                for z, mult in c.items():
                    omega[j, z] = mult
            dims = np.array([x.dims for x in self.modules], dtype=np.int64).reshape(n, self.n)
            # Hom(P(X_j), X_k) = sum_v top_v(X_j) * dims_v(X_k)
            self._ext1 = omega @ self.hom - self.tops @ dims.T + self.hom
        return self._ext1

    def omega_closure(self, ids) -> tuple[int, ...]:
        """Non-projective summands of ``ids`` and of all their iterated syzygies."""
        seen = set()
        stack = [k for k in ids if not self.is_projective(k)]
        while stack:
            k = stack.pop()
            if k in seen:
                continue
            seen.add(k)
            stack.extend(z for z in self.syzygies[k] if not self.is_projective(z) and z not in seen)
        return tuple(sorted(seen))

    @property
    def vanish(self) -> np.ndarray:
        """``V[j][k]``: ``Ext^i(X_j, X_k) = 0`` for every ``i > 0``."""
        if self._vanish is None:
            n = len(self)
            e = self.ext1
            v = np.ones((n, n), dtype=bool)
            for j in range(n):
                cl = list(self.omega_closure([j]))
                if cl:
                    v[j] = ~(e[cl] != 0).any(axis=0)
            self._vanish = v
        return self._vanish

    def ext_vanish(self, m_ids, n_ids) -> bool:
        v = self.vanish
        return all(v[j, k] for j in m_ids for k in n_ids)

    def ext_dim(self, m: Representation, n: Representation, i: int = 1) -> int:
        if i < 1:
            raise InvalidInput(f"Ext degree must be >= 1, got {i}")
        cm = self.decompose(m)
        for _ in range(i - 1):
            nxt = Counter()
            for k, mult in cm.items():
                for z, mz in self.syzygies[k].items():
                    nxt[z] += mult * mz
            cm = nxt
        cn = self.decompose(n)
        e = self.ext1
        return int(sum(a * b * e[j, k] for j, a in cm.items() for k, b in cn.items()))

    # -- traces and approximations ---------------------------------------

    def trace_basis(self, y: int, x: int) -> list[np.ndarray]:
        key = (y, x)
        if key not in self._trace:
            self._trace[key] = hx.trace([self.modules[y]], self.modules[x])
        return self._trace[key]

    def trace_dims(self, ids, x: int) -> tuple[int, ...]:
        target = self.modules[x]
        out = []
        parts = [self.trace_basis(y, x) for y in ids]
        for v in range(self.n):
            blocks = [b[v] for b in parts if b[v].shape[1]]
            if not blocks:
                out.append(0)
            elif len(blocks) == 1:
                out.append(blocks[0].shape[1])
            else:
                out.append(la.rank(np.hstack(blocks), target.p))
        return tuple(out)

    def covered(self, ids, x: int) -> bool:
        return self.trace_dims(ids, x) == self.modules[x].dims

    def approximation(self, ids, x: int) -> tuple[Counter, bool]:
        """Universal right ``add(ids)``-approximation of ``X_x``: (kernel summands, surjective)."""
        key = (tuple(sorted(ids)), x)
        if key not in self._approx:
            dom, f, ker, surj = right_approximation([self.modules[k] for k in key[0]], self.modules[x])
            self._approx[key] = (self.decompose(ker), surj)
        return self._approx[key]

    # -- duality ---------------------------------------------------------

    def dual(self) -> Registry:
        """The registry of ``D X_j`` over the opposite algebra, with the same ids."""
        if self._dual is None:
            mods = [dualize(x) for x in self.modules]
            d = Registry(
                self.algebra.opposite(),
                mods,
                names=[f"D{nm}" for nm in self.names],
                complete=self.complete,
                strategy=self.strategy,
                labels=[f"D({lb})" for lb in self.labels],
            )
            d._dual = self
            self._dual = d
        return self._dual


def right_approximation(t: list[Representation], x: Representation):
    """Universal right ``add(t)``-approximation ``⊕ T_i^{dim Hom(T_i, x)} -> x``.

    Returns ``(domain, map, kernel, surjective)``.
    """
    a = x.algebra
    summands, maps = [], []
    for ti in t:
        for f in hx.hom_basis(ti, x).basis:
            summands.append(ti)
            maps.append(f)
    dom = direct_sum(summands, a)
    f = []
    for v in range(a.n):
        blocks = [g[v] for g in maps if g[v].shape[1]]
        f.append(np.ascontiguousarray(np.hstack(blocks)) if blocks else la.zeros(x.dims[v], 0))
    f = tuple(f)
    ker, _ = kernel(dom, f)
    surj = all(la.rank(f[v], x.p) == x.dims[v] if x.dims[v] else True for v in range(a.n))
    return dom, f, ker, surj


# -- isomorphism ---------------------------------------------------------


def _invertible(phi, m: Representation) -> bool:
    return all(la.rank(phi[v], m.p) == d for v, d in enumerate(m.dims) if d)


def is_isomorphic(m: Representation, n: Representation, seed: int = 0, trials: int = 64) -> bool:
    """Randomized isomorphism test.

    If an isomorphism exists, ``det`` of a random combination of a Hom basis
    is a nonzero polynomial of degree at most ``d = dim m``, so one trial fails
    with probability at most ``d / p`` (Schwartz-Zippel) and all trials fail
    with probability at most ``(d / p) ** trials``. A "false" answer for a
    nonisomorphic pair is always correct; when ``dim Hom <= 2`` the search is
    exhaustive and the answer exact.
    """
    if m.algebra is not n.algebra:
        raise InvalidInput("modules live over different algebras")
    if m.dims != n.dims:
        return False
    if m.total_dim == 0:
        return True
    if hx.hom_dim(m, n) != hx.hom_dim(m, m):
        return False
    basis = hx.hom_basis(m, n).basis
    p = m.p
    if len(basis) == 1:
        return _invertible(basis[0], m)
    if len(basis) == 2:
        # invertibility is scale invariant, so the projective line suffices
        if _invertible(basis[0], m):
            return True
        for s in range(p):
            phi = tuple((s * b0 + b1) % p for b0, b1 in zip(basis[0], basis[1]))
            if _invertible(phi, m):
                return True
        return False
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        coeffs = rng.integers(0, p, size=len(basis))
        phi = tuple(sum(int(c) * b[v] for c, b in zip(coeffs, basis)) % p for v in range(m.algebra.n))
        if _invertible(phi, m):
            return True
    return False


# -- string modules ------------------------------------------------------

Letter = tuple[str, int]  # (arrow, +1 direct / -1 inverse)


def _letter_ends(a: Algebra, letter: Letter) -> tuple[int, int]:
    arr = a.quiver.arrow(letter[0])
    return (arr.source, arr.target) if letter[1] > 0 else (arr.target, arr.source)


def _run(walk: tuple[Letter, ...]) -> tuple[Letter, ...]:
    """Trailing maximal same-direction run."""
    if not walk:
        return ()
    d = walk[-1][1]
    k = len(walk)
    while k > 0 and walk[k - 1][1] == d:
        k -= 1
    return walk[k:]


def _as_path(run: tuple[Letter, ...]) -> tuple[str, ...]:
    names = tuple(x[0] for x in run)
    return names if not run or run[0][1] > 0 else tuple(reversed(names))


def _extends(a: Algebra, walk: tuple[Letter, ...], letter: Letter, keep: int) -> bool:
    last = walk[-1]
    if _letter_ends(a, last)[1] != _letter_ends(a, letter)[0]:
        return False
    if last[0] == letter[0] and last[1] == -letter[1]:
        return False
    if last[1] != letter[1]:
        return True
    tail = _run(walk)[-keep:] + (letter,)
    return a.is_nonzero(_as_path(tail))


def _inverse_walk(walk: tuple[Letter, ...]) -> tuple[Letter, ...]:
    return tuple((nm, -d) for nm, d in reversed(walk))


def _walk_key(walk: tuple[Letter, ...]):
    return tuple((nm, 0 if d > 0 else 1) for nm, d in walk)


def string_walks(a: Algebra) -> list[tuple[int, tuple[Letter, ...]]]:
    """All strings up to inversion as ``(start vertex, letters)``.

    The continuation of a walk depends only on its last letter and the last
    ``L - 1`` letters of its trailing run (``L`` the longest relation), so a
    repeated state along one walk means the walk can be pumped forever: the
    algebra has a band and is representation-infinite.
    """
    ok, why = check_string_algebra(a)
    if not ok:
        raise NotStringAlgebra("not a string algebra: " + "; ".join(why))
    keep = max(1, max((len(r) for r in a.relations), default=1) - 1)
    letters = [(arr.name, d) for arr in a.arrows for d in (1, -1)]

    def state(walk):
        return (walk[-1], _run(walk)[-keep:])

    found: set[tuple[Letter, ...]] = set()

    def dfs(walk, seen):
        found.add(walk)
        for letter in letters:
            if _extends(a, walk, letter, keep):
                nxt = walk + (letter,)
                st = state(nxt)
                if st in seen:
                    raise BandFound(
                        "band found: representation-infinite (walk "
                        + "".join(nm if d > 0 else nm + "^-1" for nm, d in nxt)
                        + " repeats a state)"
                    )
                seen.add(st)
                dfs(nxt, seen)
                seen.discard(st)

    for letter in letters:
        w = (letter,)
        if a.is_nonzero((letter[0],)):
            dfs(w, {state(w)})
    out = [(v, ()) for v in range(1, a.n + 1)]
    canon = set()
    for w in found:
        inv = _inverse_walk(w)
        canon.add(min(w, inv, key=_walk_key))
    for w in canon:
        out.append((_letter_ends(a, w[0])[0], w))
    out.sort(key=lambda sw: (len(sw[1]), sw[0] if not sw[1] else 0, _walk_key(sw[1])))
    return out


def walk_name(a: Algebra, start: int, walk: tuple[Letter, ...]) -> str:
    if not walk:
        return f"S{start}"
    parts = [str(start)]
    for nm, d in walk:
        end = _letter_ends(a, (nm, d))[1]
        parts.append(f"-{nm}->{end}" if d > 0 else f"<-{nm}-{end}")
    return "".join(parts)


def string_module(a: Algebra, start: int, walk: tuple[Letter, ...], name: str = "") -> Representation:
    verts = [start]
    for letter in walk:
        verts.append(_letter_ends(a, letter)[1])
    pos, dims = [], [0] * a.n
    for v in verts:
        pos.append(dims[v - 1])
        dims[v - 1] += 1
    mats = {arr.name: la.zeros(dims[arr.target - 1], dims[arr.source - 1]) for arr in a.arrows}
    for k, (nm, d) in enumerate(walk):
        if d > 0:
            mats[nm][pos[k + 1], pos[k]] = 1
        else:
            mats[nm][pos[k], pos[k + 1]] = 1
    return _make(a, dims, mats, name or walk_name(a, start, walk))


# -- enumeration ---------------------------------------------------------


def _projective_names(r_mods: list[Representation], names: list[str]) -> tuple[list[str], dict[str, int]]:
    aliases = {nm: k for k, nm in enumerate(names)}
    out = list(names)
    for k, m in enumerate(r_mods):
        if hx.syzygy(m).total_dim == 0:
            top = hx.top_dims(m)
            v = top.index(1) + 1
            out[k] = f"P{v}"
    return out, aliases


def nakayama_registry(a: Algebra) -> Registry:
    if a.kupisch is None:
        raise UnsupportedAlgebra("the nakayama strategy needs a Kupisch series")
    c, n = a.kupisch.c, a.n
    mods, names, labels, aliases = [], [], [], {}
    for i in range(1, n + 1):
        for length in range(1, c[i - 1] + 1):
            k = len(mods)
            mods.append(interval(a, i, length))
            names.append(f"P{i}" if length == c[i - 1] else f"M({i},{length})")
            labels.append("\\".join(str((i - 1 + s) % n + 1) for s in range(length)))
            aliases[f"M({i},{length})"] = k
    return Registry(a, mods, names, complete=True, strategy="nakayama", labels=labels, aliases=aliases)


def string_registry(a: Algebra) -> Registry:
    walks = string_walks(a)
    mods = [string_module(a, v, w) for v, w in walks]
    names, aliases = _projective_names(mods, [m.name for m in mods])
    labels = [m.name for m in mods]
    return Registry(a, mods, names, complete=True, strategy="string", labels=labels, aliases=aliases)


def file_registry(a: Algebra, modules: list[Representation], complete: bool = False, seed: int = 0) -> Registry:
    kept: list[Representation] = []
    for m in modules:
        for k in kept:
            if is_isomorphic(m, k, seed=seed):
                raise DuplicateIsoClass(
                    f"duplicate isomorphism class in file: {m.name or '?'} and {k.name or '?'}"
                )
        kept.append(m)
    names = [m.name or f"X{k}" for k, m in enumerate(kept)]
    return Registry(a, kept, names, complete=complete, strategy="file")


def enumerate_indecomposables(a: Algebra, strategy: str = "auto", modules=None, complete: bool = False) -> Registry:
    """Registry of indecomposables by ``nakayama``, ``string`` or ``file`` strategy.

    ``auto`` picks ``nakayama`` for Kupisch algebras and ``string`` otherwise.
    """
    if strategy == "auto":
        strategy = "nakayama" if a.kupisch is not None else "string"
    if strategy == "nakayama":
        return nakayama_registry(a)
    if strategy == "string":
        return string_registry(a)
    if strategy == "file":
        if modules is None:
            raise InvalidInput("the file strategy needs a module list")
        return file_registry(a, modules, complete=complete)
    raise InvalidInput(f"unknown strategy {strategy!r}")


def decompose(m: Representation, r: Registry) -> Counter:
    return r.decompose(m)
