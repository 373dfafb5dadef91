"""Bounded finite model search for varieties of magmas.

Tables are filled cell by cell in blocks ``{0..b}^2`` of increasing ``b``
(the order used by Mace4-style builders), with the least-number heuristic
for symmetry breaking: a decision at a cell may only use values up to one
more than the largest element mentioned so far.  After every decision all
ground instances of the identities are re-evaluated on the partial table;
an instance whose two sides are known and differ is a conflict, and an
instance with one side known and the other one cell away forces that cell.

Two modes share the engine:

* all models of a size, deduplicated up to isomorphism by canonical form;
* models generated by ``g`` designated elements ``0..g-1``, used for
  counterexample search.  A smallest magma that satisfies the outer
  identities, avoids a family and breaks an inner identity is generated by
  the values of one falsifying assignment, so searching ``g``-generated
  magmas for ``g`` up to the inner identities' variable count is complete.
"""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .magma import (CANONICAL_MAX_SIZE, Magma, _embed_table, avoids, canonical_form,
                    in_variety)
from .terms import Term, Var, Variety

__all__ = [
    "enumerate_models", "iter_models", "find_counterexample", "count_models",
    "SearchStats", "EnumerationTask", "brute_force_models",
]

log = logging.getLogger(__name__)


class _Side:
    """A term compiled for evaluation on a flat partial table of size ``n``."""

    def __init__(self, t: Term, grids: dict[str, np.ndarray], n: int):
        self.n = n
        self.var = isinstance(t, Var)
        if self.var:
            self.const = grids[t.name]
        else:
            self.left = _Side(t.left, grids, n)
            self.right = _Side(t.right, grids, n)
            # a product of two variables reads a fixed cell per assignment
            self.static = (self.left.const * n + self.right.const
                           if self.left.var and self.right.var else None)

    def eval(self, table: np.ndarray):
        """Values (``-1`` where unknown) and, per assignment, the cell that
        would determine this node if both operands are known (else ``-1``)."""
        if self.var:
            return self.const, None
        if self.static is not None:
            cell = self.static
            return table[cell], cell
        a, _ = self.left.eval(table)
        b, _ = self.right.eval(table)
        known = (a >= 0) & (b >= 0)
        cell = np.where(known, a * self.n + b, -1)
        val = np.where(known, table[np.maximum(cell, 0)], -1)
        return val, cell


class _Theory:
    def __init__(self, variety: Variety, n: int):
        self.n = n
        self.sides = []
        for ident in variety.identities:
            names = ident.vars
            grid = np.indices((n,) * len(names)).reshape(len(names), -1)
            grids = {v: grid[k] for k, v in enumerate(names)}
            self.sides.append((_Side(ident.lhs, grids, n), _Side(ident.rhs, grids, n)))

    def propagate(self, table: np.ndarray) -> bool:
        """Apply forced cells until fixpoint; ``False`` on a conflict."""
        while True:
            cells, vals = [], []
            for lhs, rhs in self.sides:
                lv, lc = lhs.eval(table)
                rv, rc = rhs.eval(table)
                lk = lv >= 0
                rk = rv >= 0
                both = lk & rk
                if np.any(lv[both] != rv[both]):
                    return False
                if rc is not None:
                    m = lk & ~rk & (rc >= 0)
                    if m.any():
                        cells.append(rc[m])
                        vals.append(lv[m])
                if lc is not None:
                    m = rk & ~lk & (lc >= 0)
                    if m.any():
                        cells.append(lc[m])
                        vals.append(rv[m])
            if not cells:
                return True
            cells = np.concatenate(cells)
            vals = np.concatenate(vals)
            order = np.lexsort((vals, cells))
            cells, vals = cells[order], vals[order]
            first = np.ones(len(cells), dtype=bool)
            first[1:] = cells[1:] != cells[:-1]
            # one cell forced to two different values
            if np.any(~first & (vals != np.roll(vals, 1))):
                return False
            table[cells[first]] = vals[first]


@lru_cache(maxsize=None)
def _cell_order(n: int) -> tuple[tuple[int, ...], frozenset[int]]:
    order = []
    ends = set()
    for b in range(n):
        for i in range(b):
            order.append(b * n + i)
            order.append(i * n + b)
        order.append(b * n + b)
        ends.add(len(order))
    return tuple(order), frozenset(ends)


@dataclass
class SearchStats:
    nodes: int = 0
    models: Counter = field(default_factory=Counter)

    def merge(self, other: "SearchStats"):
        self.nodes += other.nodes
        self.models.update(other.models)


def _search(theory: _Theory, n: int, gens: int | None, family: Sequence[Magma] = (),
            stats: SearchStats | None = None, prefix: Sequence[int] = ()) -> Iterator[np.ndarray]:
    """Yield complete tables (flat arrays) satisfying ``theory``.

    ``gens=None`` searches all ``n``-element models (one or more per iso
    class); otherwise only magmas generated by ``0..gens-1``.  Partial
    tables containing a copy of a ``family`` member are cut.  ``prefix``
    pins the first decisions, for splitting work across processes.
    """
    order, ends = _cell_order(n)
    fam = [(f.n, f.table) for f in family if f.n <= n]
    stats = stats if stats is not None else SearchStats()

    def contains_forbidden(table, size):
        rows = table.reshape(n, n)[:size, :size].tolist()
        hosts = range(size)
        return any(k <= size and _embed_table(ft, rows, hosts) is not None for k, ft in fam)

    def rec(pos, mx, table, depth):
        stats.nodes += 1
        while True:
            if pos in ends and fam and contains_forbidden(table, int(round(pos ** 0.5))):
                return
            if pos == n * n:
                yield table
                return
            c = order[pos]
            i, j = divmod(c, n)
            hi = max(i, j)
            if gens is not None and hi > mx:
                return  # the elements so far are closed: not generated
            mx = max(mx, hi)
            if table[c] < 0:
                break
            mx = max(mx, int(table[c]))
            pos += 1
        values = range(min(mx + 1, n - 1) + 1)
        if depth < len(prefix):
            values = [prefix[depth]] if prefix[depth] in values else []
        for v in values:
            t2 = table.copy()
            t2[c] = v
            if theory.propagate(t2):
                yield from rec(pos + 1, max(mx, v), t2, depth + 1)

    table = np.full(n * n, -1, dtype=np.int64)
    if not theory.propagate(table):
        return
    yield from rec(0, -1 if gens is None else gens - 1, table, 0)


def iter_models(v: Variety, n: int, gens: int | None = None,
                prefix: Sequence[int] = ()) -> Iterator[Magma]:
    """Labelled models of ``v`` with ``n`` elements; at least one per
    isomorphism class, possibly several."""
    theory = _Theory(v, n)
    for t in _search(theory, n, gens, prefix=prefix):
        yield Magma.from_array(t.reshape(n, n))


def _canonical_models(args):
    v, n, prefix, max_size = args
    return {canonical_form(m, max_size) for m in iter_models(v, n, prefix=prefix)}


def enumerate_models(v: Variety, n: int, max_size: int = CANONICAL_MAX_SIZE,
                     jobs: int = 1) -> list[Magma]:
    """One representative per isomorphism class of ``n``-element models of
    ``v``, as canonical tables in increasing order."""
    if n < 1:
        raise ValueError("size must be positive")
    if n > max_size:
        raise ValueError(f"size {n} exceeds the canonicalization bound {max_size}")
    if jobs > 1:
        tasks = [(v, n, (k,), max_size) for k in range(n)]
        with ProcessPoolExecutor(jobs) as pool:
            seen = set().union(*pool.map(_canonical_models, tasks))
    else:
        seen = _canonical_models((v, n, (), max_size))
    return sorted(seen, key=lambda m: m.table)


def count_models(v: Variety, n: int) -> int:
    return len(enumerate_models(v, n))


def _first_counterexample(args):
    outer, inner, family, n, g, prefix = args
    stats = SearchStats()
    theory = _Theory(outer, n)
    for t in _search(theory, n, g, family, stats, prefix):
        m = Magma.from_array(t.reshape(n, n))
        stats.models[n] += 1
        if not in_variety(m, inner) and avoids(m, family):
            return m, stats
    return None, stats


def _tasks(outer, inner, family, n, jobs):
    k = min(inner.max_vars, n)
    tasks = []
    for g in range(1, k + 1):
        if jobs > 1:
            # split on the value of the first decision
            tasks += [(outer, inner, family, n, g, (v,)) for v in range(n)]
        else:
            tasks.append((outer, inner, family, n, g, ()))
    return tasks


def find_counterexample(outer: Variety, inner: Variety, family: Sequence[Magma], n_max: int,
                        jobs: int = 1, stats: SearchStats | None = None) -> Magma | None:
    """Smallest magma in ``outer`` that avoids ``family`` but is not in
    ``inner``, searched up to ``n_max`` elements; returned in canonical form.

    Among counterexamples of the smallest size the search order decides,
    so the result is deterministic (also with ``jobs > 1``).
    """
    family = tuple(family)
    stats = stats if stats is not None else SearchStats()
    if not inner.identities:
        return None
    for n in range(1, n_max + 1):
        tasks = _tasks(outer, inner, family, n, jobs)
        if jobs > 1:
            with ProcessPoolExecutor(jobs) as pool:
                results = list(pool.map(_first_counterexample, tasks))
        else:
            results = []
            for task in tasks:
                results.append(_first_counterexample(task))
                if results[-1][0] is not None:
                    break
        for m, st in results:
            stats.merge(st)
        hits = [m for m, _ in results if m is not None]
        log.debug("size %d: %d models examined", n, stats.models[n])
        if hits:
            return canonical_form(hits[0]) if n <= CANONICAL_MAX_SIZE else hits[0]
    return None


@dataclass(frozen=True)
class EnumerationTask:
    variety: Variety
    size: int
    mode: str = "all-models"
    avoid: tuple[Magma, ...] = ()
    exclude: Variety | None = None
    symmetry: str = "canonical-reject"

    def run(self):
        if self.size < 1:
            raise ValueError("size must be positive")
        if self.symmetry != "canonical-reject":
            # lex-leader pruning is not implemented; LNH plus canonical
            # rejection is fast enough at every size the catalog needs
            raise NotImplementedError(f"symmetry mode {self.symmetry!r}")
        if self.mode == "all-models":
            return enumerate_models(self.variety, self.size)
        if self.mode == "first-counterexample":
            if self.exclude is None:
                raise ValueError("first-counterexample mode needs an excluded variety")
            return find_counterexample(self.variety, self.exclude, self.avoid, self.size)
        raise ValueError(f"unknown mode {self.mode!r}")


def brute_force_models(v: Variety, n: int) -> list[Magma]:
    """All ``n``-element models of ``v`` up to isomorphism by scanning every
    one of the ``n**(n*n)`` tables.  Only sensible for ``n <= 3``."""
    total = n ** (n * n)
    codes = np.arange(total, dtype=np.int64)
    digits = (codes[:, None] // n ** np.arange(n * n - 1, -1, -1)) % n
    tables = digits.reshape(total, n, n)
    ok = np.ones(total, dtype=bool)
    idx = np.arange(total)
    for ident in v.identities:
        names = ident.vars
        grid = np.indices((n,) * len(names)).reshape(len(names), -1)

        def ev(t):
            if isinstance(t, Var):
                return np.broadcast_to(grid[names.index(t.name)], (total, grid.shape[1]))
            a, b = ev(t.left), ev(t.right)
            return tables[idx[:, None], a, b]

        ok &= np.all(ev(ident.lhs) == ev(ident.rhs), axis=1)
    seen = {canonical_form(Magma.from_array(t)) for t in tables[ok]}
    return sorted(seen, key=lambda m: m.table)
