"""Named varieties, forbidden models and the covering-pair characterizations.

The data lives in plain text under ``data/`` (identity files and Cayley
tables) so it can be diffed by eye.  Set ``MAGMAKIT_CATALOG`` to point at a
different directory with the same layout.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from functools import lru_cache
from pathlib import Path

from .magma import Magma, dual_magma, parse_magmas
from .terms import Variety, dual_variety, parse_variety_text

__all__ = [
    "Characterization", "catalog_dir", "registry_varieties", "registry_models",
    "registry_characterizations", "primal_characterizations", "get_variety",
    "get_model", "dual_characterization", "PRIMAL_MODEL_NAMES", "SELF_DUAL",
    "PRINTED_ERRATA",
]

PRIMAL_MODEL_NAMES = (
    "2_LZ", "2_RZ", "2_N", "N", "Q", "F", "G",
    "K1", "K2", "K3", "K4", "K5", "E",
    "H1", "H2", "H3", "H4", "H5", "H6", "H7", "H8", "H9",
    "D", "P", "M1", "M2",
)

# Two tables as originally printed; neither lies in its outer variety.  The
# shipped tables are the ones the case analysis actually produces.
PRINTED_ERRATA = {
    "K2": Magma(((2, 3, 3, 3), (3, 2, 2, 2), (2, 2, 2, 2), (2, 2, 2, 2)), "K2_printed"),
    "H6": Magma(((3, 2, 2, 2, 2), (2, 4, 4, 4, 4), (2, 2, 2, 2, 2), (3, 3, 3, 3, 3),
                 (4, 4, 4, 4, 4)), "H6_printed"),
}

# defined by identity sets that are their own mirror image (up to equivalence)
SELF_DUAL = ("MAGMA", "T", "Z", "I", "D", "C", "RB")
_DUAL_PAIRS = {"LZ": "RZ", "RZ": "LZ"}
_PRIMAL_VARIETIES = ("MAGMA", "U", "Utilde", "L1", "L2", "L3", "L4", "L5", "L6", "L7",
                     "LZ", "RZ", "Z", "T", "I", "D", "C", "RB")
_MEETS = {"L1_C": ("L1", "C"), "L1_D": ("L1", "D")}

ALIASES = {
    "Ũ": "Utilde", "U~": "Utilde", "L1∩C": "L1_C", "L1∩D": "L1_D",
    "L1&C": "L1_C", "L1&D": "L1_D", "TOP": "MAGMA",
}


def catalog_dir() -> Path:
    env = os.environ.get("MAGMAKIT_CATALOG")
    return Path(env) if env else Path(__file__).with_name("data")


@dataclass(frozen=True)
class Characterization:
    """The claim ``inner = [[outer | forbidden]]`` checked up to ``bound``."""

    inner: Variety
    outer: Variety
    forbidden: tuple[Magma, ...]
    bound: int = 5
    name: str = field(default="")

    def __post_init__(self):
        object.__setattr__(self, "forbidden", tuple(self.forbidden))
        if not self.name:
            object.__setattr__(self, "name", self.default_name())

    def default_name(self) -> str:
        fam = ",".join(f.name or "?" for f in self.forbidden)
        return f"{self.inner.name}=[{self.outer.name}|{fam}]"

    def without(self, member: str | int) -> "Characterization":
        """The same claim with one family member dropped."""
        if isinstance(member, str):
            idx = [f.name for f in self.forbidden].index(member)
        else:
            idx = member
        fam = self.forbidden[:idx] + self.forbidden[idx + 1:]
        c = replace(self, forbidden=fam, name="")
        return c


def _default_bound(family) -> int:
    return 6 if any(f.n >= 6 for f in family) else 5


def dual_name(name: str) -> str:
    if name in SELF_DUAL:
        return name
    if name in _DUAL_PAIRS:
        return _DUAL_PAIRS[name]
    return name[:-2] if name.endswith("^d") else name + "^d"


@lru_cache(maxsize=None)
def _load(root: str):
    root = Path(root)
    primal = {}
    for name in _PRIMAL_VARIETIES:
        text = (root / "varieties" / f"{name}.txt").read_text()
        primal[name] = parse_variety_text(text, name)
    for name, (a, b) in _MEETS.items():
        primal[name] = primal[a].meet(primal[b], name)
    varieties = dict(primal)
    for name, v in primal.items():
        d = dual_name(name)
        if d not in varieties:
            varieties[d] = dual_variety(v, d)
    models = {m.name: m for m in parse_magmas((root / "models.txt").read_text())}
    for name in list(models):
        models[name + "^d"] = dual_magma(models[name])
    return varieties, models


def registry_varieties() -> dict[str, Variety]:
    return dict(_load(str(catalog_dir()))[0])


def registry_models() -> dict[str, Magma]:
    return dict(_load(str(catalog_dir()))[1])


def get_variety(name: str) -> Variety:
    name = ALIASES.get(name, name)
    try:
        return _load(str(catalog_dir()))[0][name]
    except KeyError:
        raise KeyError(f"unknown variety {name!r}") from None


def get_model(name: str) -> Magma:
    try:
        return _load(str(catalog_dir()))[1][name]
    except KeyError:
        raise KeyError(f"unknown model {name!r}") from None


_THEOREM = (
    ("T", "LZ", ("2_LZ",)),
    ("T", "Z", ("2_N",)),
    ("LZ", "RB", ("2_RZ",)),
    ("LZ", "U", ("2_N",)),
    ("LZ", "Utilde", ("N",)),
    ("Z", "U", ("2_LZ",)),
    ("Z", "L1_C", ("Q",)),
    ("RB", "L7", ("2_N",)),
    ("U", "L1", ("K1", "K2", "K3", "K4", "K5")),
    ("U", "L2", ("E",)),
    ("U", "L3", ("H1", "H2", "H3", "H4", "H5", "H6", "H7", "H8", "H9")),
    ("U", "L4", ("D",)),
    ("U", "L5", ("P",)),
    ("U", "L6", ("M1", "M2")),
    ("U", "L7", ("2_RZ",)),
    ("L1_C", "L1_D", ("F", "G")),
    ("L1_D", "L1", ("2_LZ",)),
)


def primal_characterizations() -> list[Characterization]:
    out = []
    for inner, outer, fam in _THEOREM:
        family = tuple(get_model(f) for f in fam)
        out.append(Characterization(get_variety(inner), get_variety(outer), family,
                                    _default_bound(family)))
    return out


def dual_characterization(c: Characterization) -> Characterization:
    """Mirror image of ``c``: dual varieties and transposed forbidden tables."""
    def dv(v):
        d = dual_name(v.name)
        try:
            return get_variety(d)
        except KeyError:
            return dual_variety(v, d)
    return Characterization(dv(c.inner), dv(c.outer),
                            tuple(dual_magma(f) for f in c.forbidden), c.bound)


def registry_characterizations(duals: bool = True) -> list[Characterization]:
    primal = primal_characterizations()
    if not duals:
        return primal
    return primal + [dual_characterization(c) for c in primal]
