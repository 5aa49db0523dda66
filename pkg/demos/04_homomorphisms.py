# %% [markdown]
# Homomorphisms between cones
#
# Lowering one copy of an (H, h)-cone by a layer is a homomorphism, and the
# (K2, (n, n+1))-cone maps onto the plain n-th cone. Together with the
# subgraph inclusion this pins chi_f of the mixed-height cone.

# %%
from conelab import (
    complete,
    cone,
    cycle,
    fractional_chromatic,
    generalized_cone,
    k2_collapse_homomorphism,
    shift_homomorphism,
    verify_homomorphism,
)

G, K2 = cycle(5), complete(2)
shift = shift_homomorphism(G, K2, (3, 3), (3, 4))
collapse = k2_collapse_homomorphism(G, 3)
print("shift map valid:", verify_homomorphism(shift)[0], f"({shift.source.n} -> {shift.target.n} vertices)")
print("collapse map valid:", verify_homomorphism(collapse)[0], f"({collapse.source.n} -> {collapse.target.n} vertices)")

print("chi_f mixed:", fractional_chromatic(generalized_cone(G, K2, (3, 4)).graph).value)
print("chi_f plain:", fractional_chromatic(cone(G, 3).graph).value)
