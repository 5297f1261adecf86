"""
Triangular fuzzy necessities
============================

Replace every crisp necessity by a triangular fuzzy number and combine
them with a componentwise min.
"""

# %%
import possnet
from possnet import TriangularDegree, defuzzify, membership
from possnet.formats import render_fuzzy_joint

t = TriangularDegree(0.1, 0.3, 0.5)
print([round(membership(t, x), 3) for x in (0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6)])
print("peak:", defuzzify(t))

# %%
# The bundled fuzzy network centres each triangle on a crisp degree.
fnet = possnet.load(possnet.sample_path("table3.pfnet"))
print(render_fuzzy_joint(fnet))

# %%
# Taking peaks gives back the crisp network.
crisp = possnet.defuzzified_network(fnet)
print(crisp.nodes == possnet.load(possnet.sample_path("table1.pnet")).nodes)

# %%
# Necessity of a world under a weighted base: each formula contributes
# max(m, 1 - w), where m = w on models of the clause and 0 elsewhere.
from possnet import Clause, Literal, World, fuzzy_kb_necessity

a = Clause([Literal("A")])
for w in (0.8, 0.5):
    print(w, [fuzzy_kb_necessity([(a, w)], World.of({"A": v})) for v in (True, False)])
