"""Command-line front end: ``magmakit <command> ...``.

Magma arguments accept either a path to a Cayley-table file or a catalog
name (``Q``, ``H7``, ``P^d``); several names may be joined with commas.
Variety arguments accept a catalog name or a path to an identity file.

Exit codes: 0 success / verified / true, 1 refuted / false, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import catalog
from .catalog import Characterization
from .charverify import (check_minimality, discover_family, run_theorem1,
                         verify_characterization)
from .magma import (CayleyFormatError, Magma, dual_magma, embeds, format_magma,
                    format_magmas, generated_submagma, in_variety, is_isomorphic,
                    parse_magmas, var_order, restrict, violation)
from .modelgen import enumerate_models
from .terms import TermSyntaxError, dual_variety, format_variety, parse_variety_text


class UsageError(Exception):
    pass


def load_magmas(source: str) -> list[Magma]:
    path = Path(source)
    if path.is_file():
        ms = parse_magmas(path.read_text())
        return [m if m.name else m.renamed(f"{path.stem}#{k + 1}") for k, m in enumerate(ms)]
    out = []
    for name in source.split(","):
        try:
            out.append(catalog.get_model(name.strip()))
        except KeyError:
            raise UsageError(f"no such file or catalog model: {name!r}") from None
    return out


def load_variety(source: str):
    path = Path(source)
    if path.is_file():
        return parse_variety_text(path.read_text(), path.stem)
    try:
        return catalog.get_variety(source)
    except KeyError:
        raise UsageError(f"no such file or catalog variety: {source!r}") from None


def _family(args) -> list[Magma]:
    fam = []
    for source in args.family or []:
        fam += load_magmas(source)
    return fam


def cmd_check(args) -> int:
    v = load_variety(args.variety)
    code = 0
    for m in load_magmas(args.table):
        bad = None
        for ident in v.identities:
            w = violation(m, ident)
            if w is not None:
                bad = (ident, w)
                break
        if bad is None:
            print(f"{m.name} {v.name} true")
        else:
            ident, w = bad
            env = " ".join(f"{k}={w[k]}" for k in var_order(w))
            print(f"{m.name} {v.name} false  {ident}  at {env}")
            code = 1
    return code


def cmd_enumerate(args) -> int:
    v = load_variety(args.variety)
    sizes = range(args.min_size or args.size, args.size + 1)
    chunks = []
    for n in sizes:
        ms = enumerate_models(v, n, jobs=args.jobs)
        if args.count_only:
            print(len(ms))
        else:
            chunks += [m.renamed(f"{v.name}_{n}_{k + 1}") for k, m in enumerate(ms)]
    if not args.count_only and chunks:
        _emit(format_magmas(chunks), args.output)
    return 0


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_embed(args) -> int:
    code = 1
    for f in load_magmas(args.pattern):
        for m in load_magmas(args.host):
            w = embeds(f, m)
            if w is None:
                print(f"{f.name} -> {m.name}: none")
            else:
                print(f"{f.name} -> {m.name}: {w}")
                code = 0
    return code


def cmd_iso(args) -> int:
    (a,), (b,) = load_magmas(args.a)[:1], load_magmas(args.b)[:1]
    iso = is_isomorphic(a, b)
    if iso is None:
        print(f"{a.name} !~ {b.name}")
        return 1
    print(f"{a.name} ~ {b.name}: " + ", ".join(f"{i}->{j}" for i, j in enumerate(iso)))
    return 0


def cmd_dual(args) -> int:
    if args.variety:
        v = load_variety(args.variety)
        sys.stdout.write(format_variety(dual_variety(v, catalog.dual_name(v.name))))
    if args.table:
        sys.stdout.write(format_magmas(dual_magma(m) for m in load_magmas(args.table)))
    if not (args.variety or args.table):
        raise UsageError("dual needs --table or --variety")
    return 0


def cmd_closure(args) -> int:
    try:
        gens = [int(g) for g in args.gens.split(",")]
    except ValueError:
        raise UsageError(f"bad generator list {args.gens!r}") from None
    for m in load_magmas(args.table):
        try:
            s = generated_submagma(m, gens)
        except ValueError as e:
            raise UsageError(str(e)) from None
        print(f"{m.name}: {{{', '.join(map(str, sorted(s)))}}}")
        if args.show:
            print(format_magma(restrict(m, s, f"{m.name}_sub")))
    return 0


def _characterization(args) -> Characterization:
    fam = _family(args)
    bound = args.bound or (6 if any(f.n >= 6 for f in fam) else 5)
    return Characterization(load_variety(args.inner), load_variety(args.outer), fam, bound)


def cmd_verify(args) -> int:
    c = _characterization(args)
    rep = verify_characterization(c, c.bound, jobs=args.jobs)
    print(rep.to_text())
    if args.json:
        Path(args.json).write_text(json.dumps([rep.to_dict()], indent=1))
    return 0 if rep.ok else 1


def cmd_minimality(args) -> int:
    c = _characterization(args)
    reps = check_minimality(c, c.bound, jobs=args.jobs)
    print(f"{c.name}  bound={c.bound}")
    for r in reps:
        print(r.to_text())
    return 0 if all(r.necessary for r in reps) else 1


def cmd_discover(args) -> int:
    rep = discover_family(load_variety(args.inner), load_variety(args.outer),
                          args.bound, args.rounds, jobs=args.jobs)
    print(rep.to_text())
    return 0 if rep.status == "success" else 1


def _read_overrides(path: str) -> dict[tuple[str, str], tuple[list[str], int | None]]:
    """Lines ``INNER OUTER F1,F2,... [bound=N]``; ``#`` starts a comment."""
    out = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        s = line.split("#", 1)[0].strip()
        if not s:
            continue
        parts = s.split()
        bound = None
        if parts and parts[-1].startswith("bound="):
            bound = int(parts.pop()[6:])
        if len(parts) not in (2, 3):
            raise UsageError(f"{path}:{lineno}: expected 'INNER OUTER F1,F2,... [bound=N]'")
        fam = parts[2].split(",") if len(parts) == 3 else []
        inner = catalog.ALIASES.get(parts[0], parts[0])
        outer = catalog.ALIASES.get(parts[1], parts[1])
        out[(inner, outer)] = (fam, bound)
    return out


def cmd_theorem1(args) -> int:
    chars = catalog.primal_characterizations()
    if args.override:
        over = _read_overrides(args.override)
        new = []
        for c in chars:
            key = (c.inner.name, c.outer.name)
            if key in over:
                fam, bound = over.pop(key)
                c = Characterization(c.inner, c.outer, [catalog.get_model(f) for f in fam],
                                     bound or c.bound)
            new.append(c)
        if over:
            raise UsageError(f"override names unknown pairs: {sorted(over)}")
        chars = new
    if not args.no_duals:
        chars = chars + [catalog.dual_characterization(c) for c in chars]
    res = run_theorem1(args.bound, chars, minimality=not args.no_minimality, jobs=args.jobs)
    print(res.to_text())
    if args.json:
        Path(args.json).write_text(res.to_json())
    if not res.ok:
        print("first failure:", res.first_failure(), sep="\n")
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="magmakit", description=__doc__.split("\n")[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def positive(s):
        k = int(s)
        if k < 1:
            raise argparse.ArgumentTypeError("must be positive")
        return k

    s = sub.add_parser("check", help="variety membership of each magma")
    s.add_argument("--table", required=True)
    s.add_argument("--variety", required=True)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("enumerate", help="models of a variety up to isomorphism")
    s.add_argument("--variety", required=True)
    s.add_argument("--size", type=positive, required=True)
    s.add_argument("--min-size", type=positive, help="emit every size from here to --size")
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--output")
    s.add_argument("--jobs", type=positive, default=1)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("embed", help="embedding of a pattern into a host")
    s.add_argument("--pattern", required=True)
    s.add_argument("--host", required=True)
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("iso", help="isomorphism between two magmas")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("dual", help="transpose tables / mirror identities")
    s.add_argument("--table")
    s.add_argument("--variety")
    s.set_defaults(func=cmd_dual)

    s = sub.add_parser("closure", help="submagma generated by elements")
    s.add_argument("--table", required=True)
    s.add_argument("--gens", required=True, help="comma-separated elements")
    s.add_argument("--show", action="store_true", help="print the submagma's table")
    s.set_defaults(func=cmd_closure)

    for name, func, hlp in (("verify", cmd_verify, "check INNER = [[OUTER | FAMILY]] to a bound"),
                            ("minimality", cmd_minimality, "is every family member needed")):
        s = sub.add_parser(name, help=hlp)
        s.add_argument("--inner", required=True)
        s.add_argument("--outer", required=True)
        s.add_argument("--family", nargs="*", default=[])
        s.add_argument("--bound", type=positive)
        s.add_argument("--jobs", type=positive, default=1)
        if name == "verify":
            s.add_argument("--json")
        s.set_defaults(func=func)

    s = sub.add_parser("discover", help="grow a forbidden family by counterexamples")
    s.add_argument("--inner", required=True)
    s.add_argument("--outer", required=True)
    s.add_argument("--bound", type=positive, default=5)
    s.add_argument("--rounds", type=positive, default=50)
    s.add_argument("--jobs", type=positive, default=1)
    s.set_defaults(func=cmd_discover)

    s = sub.add_parser("theorem1", help="verify every catalog characterization")
    s.add_argument("--bound", type=positive, help="override every entry's bound")
    s.add_argument("--override", help="file of 'INNER OUTER F1,F2,... [bound=N]' lines")
    s.add_argument("--no-duals", action="store_true")
    s.add_argument("--no-minimality", action="store_true")
    s.add_argument("--json")
    s.add_argument("--jobs", type=positive, default=1)
    s.set_defaults(func=cmd_theorem1)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, CayleyFormatError, TermSyntaxError, OSError) as e:
        print(f"magmakit {args.command}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
