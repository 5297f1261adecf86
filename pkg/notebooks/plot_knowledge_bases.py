"""
From conditional tables to weighted clauses and back
====================================================

Each cell with possibility below 1 becomes a clause that its own world
falsifies. The clause carries weights alpha = 1 - pi and beta = 1 - n.
"""

# %%
import possnet
from possnet.formats import render_kb
from possnet.transform import kb_to_network, network_to_kb, roundtrip_report

net = possnet.load(possnet.sample_path("table1.pnet"))
kbs = network_to_kb(net)
print(render_kb(kbs))

# %%
# The combined weight of a formula is alpha * beta.
for local in kbs:
    print(local.variable, [f"{f.clause}: {f.combined:.3g}" for f in local.kb])

# %%
# Rebuilding the network recovers every possibility. A cell with pi = 1
# leaves no clause behind, so its necessity comes back as 1.
report = roundtrip_report(net)
print(report.format())

# %%
# Redundant formulas can be dropped without changing either distribution.
from possnet import AverageKB, Clause, Literal, WeightedFormula, equivalent, normalize_kb

kb = AverageKB(("A", "B"), (WeightedFormula(Clause([Literal("A")]), 0.5, 0.9),
                            WeightedFormula(Clause([Literal("A"), Literal("B")]), 0.3, 0.5)))
small = normalize_kb(kb)
print(len(kb), "->", len(small), equivalent(kb, small))

# %%
# The recovered network has fully explicit tables.
back = kb_to_network(kbs)
print([len(n.cells) for n in back.nodes])
