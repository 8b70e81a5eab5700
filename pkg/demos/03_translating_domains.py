"""
From action domains to programs
===============================

A domain description compiles into a prioritized program.  Causal rules
are preferred over inertia, so a caused change beats persistence.
"""

from atreason import bundled, load_domain, render_plp, translate
from atreason.translate import ground

d = load_domain(bundled("switch_power.atd"))
print(d)

t = translate(d)
print(render_plp(t.plp))

# which rules came from which proposition
print(t.schema_map)
print("domain independent:", t.independent_rules)

# grounding is bounded by the number of actions
g, origin = ground(t, 1)
print(len(g.rules), "ground rules at depth 1")
for r in g.rules:
    if origin[r.name] == "N11":
        print(" ", r)

# AT1 adds explanation rules: an observed change must have a reason
door = translate(load_domain(bundled("door.atd")))
for name in door.schema_map["e1"]:
    print(door.plp.program.rule(name))
