"""
Submagmas, embeddings and canonical forms
=========================================
"""

from magmakit import canonical_form, embeds, generated_submagma, get_model, is_isomorphic, restrict
from magmakit.magma import format_magma

q = get_model("Q")

# the submagma generated by 1 and 2 picks up 1*2 = 3 and 0 = 1*1
print("S(1, 2) =", sorted(generated_submagma(q, {1, 2})))
print("S(1)    =", sorted(generated_submagma(q, {1})))

# {0, 1} is closed and every product in it is 0: a 2-element null semigroup
sub = restrict(q, {0, 1})
print(format_magma(sub))
print("isomorphic to 2_N:", is_isomorphic(sub, get_model("2_N")) is not None)

# an embedding is an injective map that respects the operation
print("2_N into Q:", embeds(get_model("2_N"), q))
print("2_LZ into Q:", embeds(get_model("2_LZ"), q))

# canonical forms pick the lexicographically least relabelled table
h9 = get_model("H9")
shuffled = h9.relabel((5, 3, 1, 0, 2, 4))
print(canonical_form(h9) == canonical_form(shuffled))
