"""Bounded verification and discovery of forbidden-substructure characterizations.

``verify_characterization`` decides ``A = [[B | F]]`` for all magmas of at
most ``bound`` elements.  The direction "every member of A avoids F" needs
no search: varieties are closed under submagmas, so a copy of ``f`` inside
a member of A would put ``f`` itself in A.  Checking ``f in B \\ A`` for each
family member therefore settles that direction for magmas of every size.
The other direction is a counterexample search.

A status of ``verified-to-bound`` is evidence up to the bound, not a proof.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .catalog import Characterization, registry_characterizations
from .magma import Magma, canonical_form, format_magma, in_variety
from .modelgen import SearchStats, find_counterexample
from .terms import Variety

__all__ = [
    "VerificationReport", "MemberReport", "DiscoveryReport",
    "verify_characterization", "check_minimality", "discover_family",
    "verify_many", "Theorem1Result", "run_theorem1",
    "VERIFIED", "REFUTED", "NOT_IN_A", "IN_A", "NOT_IN_B",
]

VERIFIED = "verified-to-bound"
REFUTED = "refuted"
NOT_IN_A = "in-B-avoids-F-not-in-A"
IN_A = "forbidden-model-in-A"
NOT_IN_B = "forbidden-model-not-in-B"


def _table_record(m: Magma | None):
    if m is None:
        return None
    return {"name": m.name, "n": m.n, "table": [list(r) for r in m.table]}


@dataclass(frozen=True)
class VerificationReport:
    characterization: Characterization
    bound: int
    status: str
    counterexample: Magma | None = None
    failure: str | None = None
    models_examined: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if (self.status == REFUTED) != (self.counterexample is not None):
            raise ValueError("a report is refuted exactly when it carries a counterexample")

    @property
    def ok(self) -> bool:
        return self.status == VERIFIED

    def to_dict(self) -> dict:
        return {
            "name": self.characterization.name,
            "bound": self.bound,
            "status": self.status,
            "failure": self.failure,
            "counterexample": _table_record(self.counterexample),
            "models_examined": {str(k): v for k, v in sorted(self.models_examined.items())},
        }

    def to_text(self) -> str:
        line = f"{self.characterization.name}  bound={self.bound}  {self.status}"
        if self.counterexample is None:
            return line
        return f"{line} ({self.failure})\n{format_magma(self.counterexample)}"


def verify_characterization(c: Characterization, n_max: int | None = None,
                            jobs: int = 1) -> VerificationReport:
    n_max = c.bound if n_max is None else n_max
    for f in c.forbidden:
        if not in_variety(f, c.outer):
            return VerificationReport(c, n_max, REFUTED, f, NOT_IN_B)
        if in_variety(f, c.inner):
            return VerificationReport(c, n_max, REFUTED, f, IN_A)
    stats = SearchStats()
    m = find_counterexample(c.outer, c.inner, c.forbidden, n_max, jobs=jobs, stats=stats)
    examined = dict(stats.models)
    if m is not None:
        return VerificationReport(c, n_max, REFUTED, m, NOT_IN_A, examined)
    return VerificationReport(c, n_max, VERIFIED, None, None, examined)


def _verify_args(args):
    c, n_max = args
    return verify_characterization(c, n_max)


def verify_many(chars: Sequence[Characterization], n_max: int | None = None,
                jobs: int = 1) -> list[VerificationReport]:
    """Verify independent characterizations, in parallel when ``jobs > 1``;
    reports come back in input order."""
    args = [(c, n_max) for c in chars]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            return list(pool.map(_verify_args, args))
    return [_verify_args(a) for a in args]


@dataclass(frozen=True)
class MemberReport:
    member: Magma
    necessary: bool
    report: VerificationReport

    def to_text(self) -> str:
        verdict = "necessary" if self.necessary else "redundant"
        line = f"  {self.member.name or '?'}: {verdict}"
        w = self.report.counterexample
        if self.necessary and w is not None:
            line += f" (witness of size {w.n})\n" + _indent(format_magma(w), 4)
        return line


def _indent(text: str, k: int) -> str:
    return "\n".join(" " * k + s for s in text.splitlines())


def check_minimality(c: Characterization, n_max: int | None = None,
                     jobs: int = 1) -> list[MemberReport]:
    """For each family member, whether dropping it breaks the claim.

    A member is redundant when the smaller family still works.  Each member
    is checked up to ``max(n_max, |member|)``: necessity of a model can never
    show up below its own size.
    """
    n_max = c.bound if n_max is None else n_max
    out = []
    for k, f in enumerate(c.forbidden):
        rep = verify_characterization(c.without(k), max(n_max, f.n), jobs=jobs)
        out.append(MemberReport(f, rep.status == REFUTED, rep))
    return out


@dataclass(frozen=True)
class DiscoveryReport:
    inner: Variety
    outer: Variety
    family: tuple[Magma, ...]
    rounds: int
    bound: int
    status: str  # "success" or "inconclusive"

    def characterization(self) -> Characterization:
        return Characterization(self.inner, self.outer, self.family, self.bound)

    def to_text(self) -> str:
        head = (f"{self.inner.name}=[{self.outer.name}|{len(self.family)} models]  "
                f"bound={self.bound} rounds={self.rounds} {self.status}")
        return "\n\n".join([head] + [format_magma(m) for m in self.family])


def discover_family(inner: Variety, outer: Variety, n_max: int, round_cap: int = 50,
                    jobs: int = 1) -> DiscoveryReport:
    """Grow a forbidden family by repeatedly asking for a counterexample to
    ``inner = [[outer | family]]`` and adding it.  Starts from the empty
    family, so the first round supplies the seed model of ``outer \\ inner``.
    """
    family: list[Magma] = []
    rounds = 0
    while rounds < round_cap:
        rounds += 1
        m = find_counterexample(outer, inner, family, n_max, jobs=jobs)
        if m is None:
            return DiscoveryReport(inner, outer, tuple(family), rounds, n_max, "success")
        family.append(canonical_form(m).renamed(f"X{len(family) + 1}"))
    return DiscoveryReport(inner, outer, tuple(family), rounds, n_max, "inconclusive")


@dataclass
class Theorem1Result:
    reports: list[VerificationReport]
    minimality: list[list[MemberReport]]

    @property
    def ok(self) -> bool:
        return (all(r.ok for r in self.reports)
                and all(m.necessary for ms in self.minimality for m in ms))

    def first_failure(self) -> str | None:
        for r, ms in zip(self.reports, self.minimality):
            if not r.ok:
                return r.to_text()
            for m in ms:
                if not m.necessary:
                    return f"{r.characterization.name}: member {m.member.name} is redundant"
        return None

    def to_text(self) -> str:
        lines = []
        for r, ms in zip(self.reports, self.minimality):
            flags = "".join("+" if m.necessary else "-" for m in ms)
            mark = "ok  " if r.ok and "-" not in flags else "FAIL"
            lines.append(f"{mark} {r.characterization.name:<48} bound={r.bound} "
                         f"{r.status:<17} minimal[{flags}]")
        good = sum(1 for r, ms in zip(self.reports, self.minimality)
                   if r.ok and all(m.necessary for m in ms))
        lines.append(f"{good}/{len(self.reports)} characterizations verified and minimal")
        return "\n".join(lines)

    def to_json(self) -> str:
        recs = []
        for r, ms in zip(self.reports, self.minimality):
            d = r.to_dict()
            d["minimality"] = {m.member.name: m.necessary for m in ms}
            recs.append(d)
        return json.dumps(recs, indent=1)


def run_theorem1(bound: int | None = None, chars: Sequence[Characterization] | None = None,
                 minimality: bool = True, jobs: int = 1) -> Theorem1Result:
    """Verify every catalog characterization (primal and dual) and check that
    each family is irredundant.  ``bound`` overrides the per-entry bounds."""
    chars = registry_characterizations() if chars is None else list(chars)
    reports = verify_many(chars, bound, jobs=jobs)
    mins = [check_minimality(c, bound) if minimality else [] for c in chars]
    return Theorem1Result(reports, mins)
