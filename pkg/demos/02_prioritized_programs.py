"""
Prioritized logic programs
==========================

A preference N2 < N1 means N2 is more preferred.  Less preferred rules that
are defeated get eliminated, and what is left is a reduct.
"""

from atreason import bundled, ground_instantiate, parse_plp, partition, plp_answer_sets, reducts
from atreason.plp import validate_trace

tweety = parse_plp(bundled("tweety.plp").read_text())
print(tweety)

# rules with variables are instantiated first
g, origin = ground_instantiate(tweety)
for r in reducts(g):
    print("reduct", r.rules, "eliminated", r.trace)
print(plp_answer_sets(g))

# two incomparable eliminations: one reduct each
p2 = parse_plp(bundled("p2.plp").read_text())
for r in reducts(p2):
    print(r.rules, "after removing", r.trace)
print([str(a) for a in plp_answer_sets(p2)])

# the partition stratifies rules by preference
p3 = parse_plp(bundled("p3.plp").read_text())
print([sorted(s) for s in partition(p3).strata])
print(plp_answer_sets(p3))

# each elimination step can be re-checked exhaustively
for r in reducts(p3):
    print("trace valid:", validate_trace(p3, r, check_final=True))
