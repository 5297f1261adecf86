"""
Joint possibility and necessity of a four-node network
======================================================

Load the bundled four-node network, look at its conditional tables and
build the joint table with the min chain rule.
"""

# %%
# The sample network ships with the package.
import possnet
from possnet.formats import render_joint

net = possnet.load(possnet.sample_path("table1.pnet"))
print(net.variables, [n.parents for n in net.nodes])

# %%
# Validation separates structural defects from degree constraints. This
# network is structurally sound, but three columns do not reach 1.
report = possnet.validate(net)
print(report)

# %%
# Every world gets (min pi, min n, product).
print(render_joint(net))

# %%
# Queries read the joint table:
# possibility is a max over models, and the dual necessity is 1 - Pi(not p).
from possnet import parse_formula, query

for text in ("!a", "a", "d", "b & !c"):
    p = parse_formula(text)
    print(f"{text:8} pi={query(net, p, 'pi'):g}  ndual={query(net, p, 'ndual'):g}"
          f"  avg={query(net, p, 'avg'):g}")
