"""
Forbidden substructure characterizations
========================================

``U = [[L3 | H1..H9]]`` says a member of L3 lies in U exactly when it contains
no copy of any H_i.  Up to a size bound this is decided by search, and the
same search can grow such a family from nothing.
"""

from magmakit import Characterization, discover_family, get_model, get_variety
from magmakit.charverify import check_minimality, run_theorem1, verify_characterization
from magmakit.magma import format_magma, is_isomorphic

u, l3 = get_variety("U"), get_variety("L3")
hs = [get_model(f"H{i}") for i in range(1, 10)]

claim = Characterization(u, l3, hs, bound=6)
print(verify_characterization(claim).to_text())

# without H9 the claim breaks, and the witness is H9 again
rep = verify_characterization(claim.without("H9"))
print(rep.to_text())
print("witness is H9:", is_isomorphic(rep.counterexample, get_model("H9")) is not None)

# every member is needed
for r in check_minimality(Characterization(u, get_variety("L6"),
                                           [get_model("M1"), get_model("M2")])):
    print(r.to_text())

# discovery starts with an empty family and adds counterexamples until none remain
found = discover_family(u, get_variety("L4"), 6)
print(found.to_text())
print("same as D:", is_isomorphic(found.family[0], get_model("D")) is not None)

# the full catalog, primal and mirrored, at a small bound
print(run_theorem1(bound=4).to_text().splitlines()[-1])
