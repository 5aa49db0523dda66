# %% [markdown]
# Cones over C5 and their fractional chromatic numbers
#
# The n-th cone over a graph stacks n - 1 layers over a base copy and closes
# the top with an apex. The exact LP gives chi_f of each cone; the values fall
# towards chi_f(C5) = 5/2 as the cone gets taller.

# %%
from fractions import Fraction

from conelab import cone, cycle, fractional_chromatic, theorem_value

C5 = cycle(5)
for n in range(1, 5):
    C = cone(C5, n)
    lp = fractional_chromatic(C.graph)
    closed = theorem_value(Fraction(5, 2), 1, n).value
    print(f"n={n}: {C.n:2d} vertices, {lp.family_size:4d} maximal independent sets, "
          f"chi_f = {lp.value} (closed form {closed})")

# %% [markdown]
# The LP returns both sides: a fractional colouring (weights on independent
# sets) and a fractional clique (weights on vertices). They have the same total.

# %%
lp = fractional_chromatic(cone(C5, 2).graph)
print("colouring total", lp.primal.weight, "clique total", lp.dual.weight)
for S, w in lp.primal.entries:
    print(f"  {sorted(S)} -> {w}")
