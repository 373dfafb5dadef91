"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as they
happen; they are repeated in the terminal summary either way.
"""

import itertools
import random
from pathlib import Path

from magmakit import catalog
from magmakit.catalog import PRIMAL_MODEL_NAMES, get_model, get_variety
from magmakit.charverify import check_minimality, discover_family, run_theorem1, \
    verify_characterization
from magmakit.magma import (Magma, canonical_form, closed_subsets, dual_magma, embeds,
                            generated_submagma, in_variety, is_closed, is_isomorphic,
                            parse_magmas, restrict, satisfies)
from magmakit.modelgen import brute_force_models, enumerate_models
from magmakit.terms import dual_identity, dual_term, subterms

PRINTED = {m.name: m for m in parse_magmas(
    (Path(__file__).parent / "data" / "printed_tables.txt").read_text())}


def test_criterion_1_catalog_fidelity(criterion):
    with criterion(1, "catalog fidelity", budget=1.0) as c:
        c.check(len(PRIMAL_MODEL_NAMES) == 29,
                f"{len(PRIMAL_MODEL_NAMES)} primal models load (29 required; "
                f"only 26 named tables exist)")
        differ = [n for n in PRIMAL_MODEL_NAMES if get_model(n).table != PRINTED[n].table]
        c.check(not differ, f"byte-match with printed tables: "
                            f"{len(PRIMAL_MODEL_NAMES) - len(differ)}/{len(PRIMAL_MODEL_NAMES)}"
                            + (f", differ: {','.join(differ)}" if differ else ""))
        for n in differ:
            p = PRINTED[n]
            outer = next(ch.outer for ch in catalog.primal_characterizations()
                         if any(f.name == n for f in ch.forbidden))
            c.check(not in_variety(p, outer),
                    f"printed {n} is outside {outer.name}, so it cannot serve as forbidden model")
        bad = [(f.name, ch.name) for ch in catalog.registry_characterizations()
               for f in ch.forbidden
               if not in_variety(f, ch.outer) or in_variety(f, ch.inner)]
        c.check(not bad, f"every forbidden model in outer minus inner (34 entries)"
                         + (f"; bad: {bad}" if bad else ""))
        ks = [get_model(f"K{i}") for i in range(1, 6)]
        c.check(all(k.op(1, 0) == 3 != 2 == k.op(1, 1) for k in ks),
                "K1-K5: 1*0 = 3 != 2 = 1*1")
    assert c.ok, "\n".join(c.notes)


def test_criterion_2_theorem_suite(criterion):
    with criterion(2, "all 34 characterizations verify to bound", budget=600) as c:
        res = run_theorem1(minimality=False)
        primal, dual = res.reports[:17], res.reports[17:]
        c.check(all(r.ok for r in primal), f"primal {sum(r.ok for r in primal)}/17 verified")
        c.check(all(r.ok for r in dual), f"dual {sum(r.ok for r in dual)}/17 verified")
        c.check(all(r.counterexample is None for r in res.reports), "zero counterexamples")
        bounds = sorted({(r.characterization.name, r.bound) for r in primal
                         if r.bound == 6})
        c.check(len(bounds) == 2, f"bound 6 for {[b[0].split('=')[1][1:3] for b in bounds]}")
    assert c.ok, "\n".join(c.notes)


def test_criterion_3_minimality(criterion):
    chars = {c.name: c for c in catalog.primal_characterizations()}
    picks = ["U=[L1|K1,K2,K3,K4,K5]", "U=[L3|H1,H2,H3,H4,H5,H6,H7,H8,H9]",
             "U=[L6|M1,M2]", "L1_C=[L1_D|F,G]"]
    with criterion(3, "every member of four families is necessary at bound 6") as c:
        for name in picks:
            reps = check_minimality(chars[name], 6)
            parts = []
            for r in reps:
                w = r.report.counterexample
                same = w is not None and is_isomorphic(w, r.member) is not None
                parts.append(f"{r.member.name}:" + ("iso" if same else
                                                    "other" if w is not None else "none"))
            c.check(all(r.necessary for r in reps), f"{name} -> " + " ".join(parts))
    assert c.ok, "\n".join(c.notes)


def _same_classes(a, b):
    return {canonical_form(m) for m in a} == {canonical_form(m) for m in b}


def test_criterion_4_discovery(criterion):
    expected = [("T", "LZ", ["2_LZ"]), ("Z", "U", ["2_LZ"]), ("LZ", "U", ["2_N"]),
                ("U", "L4", ["D"]), ("U", "L5", ["P"]), ("U", "L7", ["2_RZ"]),
                ("RB", "L7", ["2_N"])]
    with criterion(4, "discovery loop rebuilds the families", budget=900) as c:
        for inner, outer, fam in expected:
            rep = discover_family(get_variety(inner), get_variety(outer), 6)
            ok = rep.status == "success" and _same_classes(rep.family,
                                                           [get_model(f) for f in fam])
            c.check(ok, f"({inner},{outer}) -> {len(rep.family)} model(s) ~ {fam}, "
                        f"{rep.rounds} rounds")
        for inner, outer in (("U", "L3"), ("U", "L1")):
            rep = discover_family(get_variety(inner), get_variety(outer), 6)
            v = verify_characterization(rep.characterization(), 6)
            sizes = [m.n for m in rep.family]
            c.check(rep.status == "success" and v.ok,
                    f"({inner},{outer}) -> sizes {sizes}, verify at 6: {v.status}")
    assert c.ok, "\n".join(c.notes)


def test_criterion_5_oracle_equivalence(criterion):
    with criterion(5, "enumeration equals brute force for n <= 3") as c:
        vs = catalog.registry_varieties()
        bad = []
        for name, v in sorted(vs.items()):
            for n in (1, 2, 3):
                if len(enumerate_models(v, n)) != len(brute_force_models(v, n)):
                    bad.append((name, n))
        c.check(not bad, f"{len(vs)} varieties x sizes 1..3" + (f"; bad: {bad}" if bad else ""))
    assert c.ok, "\n".join(c.notes)


def _iso_oracle(a, b):
    return a.n == b.n and any(
        all(p[a.table[i][j]] == b.table[p[i]][p[j]] for i in range(a.n) for j in range(a.n))
        for p in itertools.permutations(range(a.n)))


def test_criterion_6_properties(criterion):
    models = catalog.registry_models()
    varieties = catalog.registry_varieties()
    idents = {i for v in varieties.values() for i in v.identities}
    rng = random.Random(7)
    with criterion(6, "property suites") as c:
        terms = {t for i in idents for side in (i.lhs, i.rhs) for t in subterms(side)}
        c.check(all(dual_term(dual_term(t)) == t for t in terms)
                and all(dual_magma(dual_magma(m)) == m for m in models.values()),
                f"dual involution on {len(terms)} terms and {len(models)} magmas")

        c.check(all(satisfies(m, i) == satisfies(dual_magma(m), dual_identity(i))
                    for m in models.values() for i in idents),
                f"satisfaction commutes with duality ({len(models)}x{len(idents)} pairs)")

        samples = [m for m in models.values() if m.n <= 5]
        for _ in range(200):
            n = rng.randint(1, 5)
            samples.append(Magma(tuple(tuple(rng.randrange(n) for _ in range(n))
                                       for _ in range(n))))
        ok = True
        for m in samples:
            subsets = closed_subsets(m)
            for k in range(1, min(m.n, 3) + 1):
                for g in itertools.combinations(range(m.n), k):
                    s = generated_submagma(m, g)
                    ok &= is_closed(m, s) and set(g) <= s
                    ok &= all(s <= t for t in subsets if set(g) <= t)
        c.check(ok, f"closure minimality on {len(samples)} magmas of size <= 5")

        ok = True
        for m in models.values():
            member = [v for v in varieties.values() if in_variety(m, v)]
            for s in closed_subsets(m):
                if s:
                    sub = restrict(m, s)
                    ok &= all(in_variety(sub, v) for v in member)
        c.check(ok, "variety membership is inherited by every submagma of the catalog")

        ok = True
        groups = {}
        for m in models.values():
            groups.setdefault(m.n, []).append(m)
        for g in groups.values():
            rel = {(a.name, b.name): is_isomorphic(a, b) is not None for a in g for b in g}
            ok &= all(rel[a.name, a.name] for a in g)
            ok &= all(rel[a.name, b.name] == rel[b.name, a.name] for a in g for b in g)
            ok &= all(rel[a.name, c2.name] for a in g for b in g for c2 in g
                      if rel[a.name, b.name] and rel[b.name, c2.name])
            ok &= all(rel[a.name, b.name] == _iso_oracle(a, b) for a in g for b in g
                      if a.n <= 5)
        c.check(ok, "isomorphism is an equivalence relation on the catalog")

        ok = True
        pairs = 0
        for m in models.values():
            if m.n > 6:
                continue
            subs = [restrict(m, s) for s in closed_subsets(m) if s]
            for f in models.values():
                pairs += 1
                expect = any(sub.n == f.n and is_isomorphic(sub, f) is not None for sub in subs)
                ok &= (embeds(f, m) is not None) == expect
        c.check(ok, f"embeds agrees with closed subset + isomorphism on {pairs} pairs")
    assert c.ok, "\n".join(c.notes)
