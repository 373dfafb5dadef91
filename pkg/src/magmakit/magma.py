"""Finite magmas given by Cayley tables.

Elements of an ``n``-element magma are ``0..n-1`` and ``table[a][b]`` is
``a*b``.  Magmas are immutable and compare/hash by table only; the name is
a label.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .terms import App, Identity, Term, Var, Variety, dual_identity

__all__ = [
    "Magma", "EmbeddingWitness", "CayleyFormatError", "satisfies", "violation",
    "in_variety", "dual_magma", "generated_submagma", "restrict",
    "is_isomorphic", "canonical_form", "embeds", "avoids", "closed_subsets",
    "parse_magmas", "format_magma", "format_magmas", "CANONICAL_MAX_SIZE",
    "var_order",
]

CANONICAL_MAX_SIZE = 8


@dataclass(frozen=True)
class Magma:
    table: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        n = len(table)
        if n < 1:
            raise ValueError("a magma must have at least one element")
        for a, row in enumerate(table):
            if len(row) != n:
                raise ValueError(f"row {a} has {len(row)} entries, expected {n}")
            for b, v in enumerate(row):
                if not 0 <= v < n:
                    raise ValueError(f"entry {a}*{b} = {v} out of range 0..{n - 1}")
        object.__setattr__(self, "table", table)

    @classmethod
    def from_array(cls, arr, name: str = "") -> "Magma":
        return cls(tuple(map(tuple, np.asarray(arr).tolist())), name)

    @property
    def n(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def array(self) -> np.ndarray:
        return np.array(self.table, dtype=np.int64)

    def renamed(self, name: str) -> "Magma":
        return Magma(self.table, name)

    def relabel(self, perm: Sequence[int]) -> "Magma":
        """Image of this magma under the bijection ``a -> perm[a]``."""
        n = self.n
        new = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                new[perm[a]][perm[b]] = perm[self.table[a][b]]
        return Magma(tuple(map(tuple, new)), self.name)

    def __str__(self):
        return format_magma(self)


@dataclass(frozen=True)
class EmbeddingWitness:
    source: Magma
    target: Magma
    map: tuple[int, ...]

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    def __str__(self):
        return ", ".join(f"{a}->{b}" for a, b in enumerate(self.map))


# -- satisfaction ----------------------------------------------------------

_VAR_ORDER = ("x", "y", "z", "u", "v", "w")


def var_order(names: Iterable[str]) -> tuple[str, ...]:
    """Sort variable names as x, y, z, u, v, w first, then alphabetically."""
    def key(s):
        return (_VAR_ORDER.index(s), "") if s in _VAR_ORDER else (len(_VAR_ORDER), s)
    return tuple(sorted(set(names), key=key))


def _eval_grid(t: Term, table: np.ndarray, grids: Mapping[str, np.ndarray]) -> np.ndarray:
    if isinstance(t, Var):
        return grids[t.name]
    return table[_eval_grid(t.left, table, grids), _eval_grid(t.right, table, grids)]


def _sides(m: Magma, i: Identity):
    names = var_order(i.vars)
    n = m.n
    grids = dict(zip(names, np.indices((n,) * len(names)))) if names else {}
    table = m.array()
    lhs = _eval_grid(i.lhs, table, grids)
    rhs = _eval_grid(i.rhs, table, grids)
    return names, np.broadcast_arrays(np.asarray(lhs), np.asarray(rhs))


def violation(m: Magma, i: Identity) -> dict[str, int] | None:
    """First assignment (lexicographic in x, y, z, u order) falsifying ``i``
    in ``m``, or ``None`` when ``m`` satisfies ``i``."""
    names, (lhs, rhs) = _sides(m, i)
    bad = np.argwhere(lhs != rhs)
    if len(bad) == 0:
        return None
    return dict(zip(names, map(int, bad[0])))


def satisfies(m: Magma, i: Identity) -> bool:
    _, (lhs, rhs) = _sides(m, i)
    return bool(np.array_equal(lhs, rhs))


def in_variety(m: Magma, v: Variety) -> bool:
    return all(satisfies(m, i) for i in v.identities)


def dual_magma(m: Magma, name: str | None = None) -> Magma:
    if name is None:
        name = m.name[:-2] if m.name.endswith("^d") else (m.name + "^d" if m.name else "")
    return Magma(tuple(zip(*m.table)), name)


# -- substructures ---------------------------------------------------------

def generated_submagma(m: Magma, gens: Iterable[int]) -> frozenset[int]:
    s = set(gens)
    if not s:
        raise ValueError("generator set must be nonempty")
    for g in s:
        if not 0 <= g < m.n:
            raise ValueError(f"generator {g} out of range 0..{m.n - 1}")
    frontier = set(s)
    while frontier:
        new = set()
        for a in frontier:
            for b in s:
                new.add(m.table[a][b])
                new.add(m.table[b][a])
        frontier = new - s
        s |= frontier
    return frozenset(s)


def is_closed(m: Magma, s: Iterable[int]) -> bool:
    s = set(s)
    return all(m.table[a][b] in s for a in s for b in s)


def restrict(m: Magma, s: Iterable[int], name: str = "") -> Magma:
    """The submagma on the closed set ``s``, relabelled ``0..|s|-1`` in
    increasing order of the original elements."""
    elems = sorted(set(s))
    if not elems:
        raise ValueError("empty subset")
    index = {a: k for k, a in enumerate(elems)}
    try:
        table = tuple(tuple(index[m.table[a][b]] for b in elems) for a in elems)
    except KeyError:
        raise ValueError(f"{elems} is not closed under the operation") from None
    return Magma(table, name)


def closed_subsets(m: Magma) -> list[frozenset[int]]:
    """All nonempty closed subsets, by brute force over the power set."""
    out = []
    for r in range(1, m.n + 1):
        for s in itertools.combinations(range(m.n), r):
            if is_closed(m, s):
                out.append(frozenset(s))
    return out


# -- embeddings and isomorphism --------------------------------------------

def _search_order(pt: Sequence[Sequence[int]]) -> list[int]:
    k = len(pt)
    weight = [len({pt[a][b] for b in range(k)} | {pt[b][a] for b in range(k)}) for a in range(k)]
    return sorted(range(k), key=lambda a: (-weight[a], a))


def _embed_table(pt: Sequence[Sequence[int]], ht: Sequence[Sequence[int]],
                 hosts: Sequence[int]) -> list[int] | None:
    """Injective operation-preserving map from the pattern table into the
    host elements ``hosts``.  Host entries outside ``hosts`` (or ``-1`` for
    unknown) never match, so partially filled host tables are allowed."""
    k = len(pt)
    if k > len(hosts):
        return None
    host_set = set(hosts)
    order = _search_order(pt)
    cand = {}
    for p in order:
        # idempotency is preserved and reflected by injective homomorphisms
        idem = pt[p][p] == p
        cand[p] = [h for h in hosts if (ht[h][h] == h) == idem]
        if not cand[p]:
            return None
    fwd = [-1] * k
    inv: dict[int, int] = {}

    # pairs whose product is p: re-checked once p itself gets mapped
    producers = {p: [(a, b) for a in range(k) for b in range(k) if pt[a][b] == p]
                 for p in range(k)}

    def consistent(p, h):
        for q in range(k):
            hq = fwd[q]
            if hq < 0:
                continue
            for a, b, ha, hb in ((p, q, h, hq), (q, p, hq, h)):
                v = ht[ha][hb]
                if v not in host_set:
                    return False
                r = pt[a][b]
                if fwd[r] >= 0:
                    if fwd[r] != v:
                        return False
                elif v in inv:
                    return False
        for a, b in producers[p]:
            if fwd[a] >= 0 and fwd[b] >= 0 and ht[fwd[a]][fwd[b]] != h:
                return False
        return True

    def rec(i):
        if i == k:
            return True
        p = order[i]
        for h in cand[p]:
            if h in inv:
                continue
            fwd[p] = h
            inv[h] = p
            if consistent(p, h) and rec(i + 1):
                return True
            fwd[p] = -1
            del inv[h]
        return False

    return list(fwd) if rec(0) else None


def embeds(f: Magma, m: Magma) -> EmbeddingWitness | None:
    """An embedding of ``f`` into ``m`` if ``m`` contains a copy of ``f``."""
    found = _embed_table(f.table, m.table, range(m.n))
    if found is None:
        return None
    return EmbeddingWitness(f, m, tuple(found))


def avoids(m: Magma, family: Iterable[Magma]) -> bool:
    return all(embeds(f, m) is None for f in family)


def is_isomorphic(a: Magma, b: Magma) -> tuple[int, ...] | None:
    """A bijection ``a -> b`` preserving the operation, or ``None``."""
    if a.n != b.n:
        return None
    w = embeds(a, b)
    return None if w is None else w.map


@lru_cache(maxsize=None)
def _perms(n: int):
    p = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    return p, np.argsort(p, axis=1)


def canonical_form(m: Magma, max_size: int = CANONICAL_MAX_SIZE) -> Magma:
    """Lexicographically least row-major table among all relabellings of ``m``."""
    n = m.n
    if n > max_size:
        raise ValueError(f"canonical form supports at most {max_size} elements, got {n}")
    perm, inv = _perms(n)
    t = m.array()
    vals = t[inv[:, :, None], inv[:, None, :]].reshape(len(perm), -1)
    flat = np.take_along_axis(perm, vals, axis=1)
    best = flat[np.lexsort(flat.T[::-1])[0]]
    return Magma.from_array(best.reshape(n, n), m.name)


# -- Cayley table text format ----------------------------------------------

class CayleyFormatError(ValueError):
    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def format_magma(m: Magma) -> str:
    lines = [f"name {m.name}"] if m.name else []
    lines.append(str(m.n))
    lines += [" ".join(map(str, row)) for row in m.table]
    return "\n".join(lines)


def format_magmas(ms: Iterable[Magma]) -> str:
    return "\n\n".join(map(format_magma, ms)) + "\n"


def parse_magmas(text: str) -> list[Magma]:
    """Parse one or more Cayley tables separated by single blank lines."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    out = []
    i = 0
    while i < len(lines):
        if out:
            if lines[i].strip():
                raise CayleyFormatError("expected a blank line between magmas", i + 1)
            i += 1
            if i >= len(lines) or not lines[i].strip():
                raise CayleyFormatError("expected exactly one blank line between magmas", i + 1)
        name = ""
        head = lines[i].split()
        if head and head[0] == "name":
            if len(head) != 2:
                raise CayleyFormatError("expected 'name <identifier>'", i + 1)
            name = head[1]
            i += 1
            if i >= len(lines):
                raise CayleyFormatError("missing size line", i + 1)
        try:
            n = int(lines[i].strip())
        except ValueError:
            raise CayleyFormatError(f"expected a size, got {lines[i]!r}", i + 1) from None
        if n < 1:
            raise CayleyFormatError("size must be positive", i + 1)
        rows = []
        for r in range(n):
            ln = i + 1 + r
            if ln >= len(lines):
                raise CayleyFormatError(f"expected {n} rows, got {r}", ln + 1)
            try:
                row = [int(tok) for tok in lines[ln].split()]
            except ValueError:
                raise CayleyFormatError("non-integer entry", ln + 1) from None
            if len(row) != n:
                raise CayleyFormatError(f"expected {n} entries, got {len(row)}", ln + 1)
            if any(not 0 <= v < n for v in row):
                raise CayleyFormatError(f"entry out of range 0..{n - 1}", ln + 1)
            rows.append(tuple(row))
        out.append(Magma(tuple(rows), name))
        i += 1 + n
    if not out:
        raise CayleyFormatError("no magma found", 1)
    return out
