# %% [markdown]
# Ordinary chromatic numbers: C7 squared
#
# The cone of height 3 over C7^2 keeps chromatic number 4, but gluing two such
# cones with adjacent apexes needs a fifth colour.

# %%
from conelab import chromatic_number, cone, complete, generalized_cone, generate, loop_to_constant_distances
from conelab.certificates import chromatic_upper_colouring

G = generate("circulant", [7, 1, 2])
print("chi(G)            =", chromatic_number(G).chi)
print("chi(cone_3(G))    =", chromatic_number(cone(G, 3).graph).chi)
res = chromatic_number(generalized_cone(G, complete(2), 3).graph)
print("chi((K2,3)-cone)  =", res.chi, f"({res.nodes_explored} search nodes)")

# %% [markdown]
# The matching upper bound comes from an explicit colouring.

# %%
u = chromatic_upper_colouring(G, complete(2), 3)
print("explicit colouring uses", u.colours_used, "colours; proper:", u.is_proper())

# %% [markdown]
# In the exponential graph K4^G, a walk of length d from a homomorphism to a
# constant map is the same as a 4-colouring of the d-th cone. The shortest
# such walks have length 3.

# %%
t = loop_to_constant_distances(complete(4), G)
print("vertices", t.exp.graph.n, "loops", len(t.exp.loop_set), "distances", t.distances)
