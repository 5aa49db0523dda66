# %% [markdown]
# Explicit certificates for (H, n)-cones
#
# For odd n the cone value is sandwiched by an explicit fractional clique
# (lower bound) and an explicit fractional colouring (upper bound). Both are
# built from optimal solutions for G and H and then checked independently.

# %%
from conelab import (
    build_clique_certificate_odd,
    build_colouring_certificate_odd,
    complete,
    cycle,
    fractional_chromatic,
    theorem_value,
)

for G, H, name in ((complete(3), complete(2), "K3 / K2"), (cycle(5), complete(2), "C5 / K2"),
                   (complete(3), complete(3), "K3 / K3")):
    lg, lh = fractional_chromatic(G), fractional_chromatic(H)
    tv = theorem_value(lg.value, lh.value, 3).value
    clique = build_clique_certificate_odd(G, H, 3, lg.dual, lh.dual)
    s, t = lh.value.numerator, lh.value.denominator
    col = build_colouring_certificate_odd(G, s, t, 3, lg.primal)
    cv, kv = col.verify(), clique.verify()
    print(f"{name}: value {tv}")
    print(f"  clique    total {clique.total}, valid {kv.valid}")
    print(f"  colouring total {col.total}, valid {cv.valid}, negative deltas {col.params.negative_deltas}")

# %% [markdown]
# With chi_f(H) = chi_f(G) the last delta weight is negative, so the colouring
# built this way is not a fractional colouring even though every vertex is
# covered exactly once. The LP still confirms the value.

# %%
from conelab import generalized_cone

print(fractional_chromatic(generalized_cone(complete(3), complete(3), 3).graph).value)
