"""
Answer sets of extended logic programs
======================================

Rules may use classical negation (-A) and negation as failure (not A).
"""

from atreason import answer_sets, gl_transform, is_locally_stratified, parse_program, positive_form

# an even loop through negation has two answer sets
p = parse_program("""
N1: A <- not B.
N2: B <- not A.
N3: C <- A.
""")
for s in answer_sets(p):
    print(s)

# the Gelfond-Lifschitz transform w.r.t. {A, C} drops N2 and the naf part of N1
print(gl_transform(p, next(iter(answer_sets(p)))))

# an odd loop has none
print(answer_sets(parse_program("N1: A <- not A.")))

# complementary facts give the inconsistent answer set Lit
print(answer_sets(parse_program("N1: P.\nN2: -P.\nN3: Q <- not R.")))

# classical negation is compiled away by priming negative literals
q = parse_program("N1: -Fly <- Penguin, not Fly.\nN2: Penguin.")
pos, mapping = positive_form(q)
print(pos)

# a locally stratified program has exactly one answer set
strat = is_locally_stratified(pos)
print("stratified:", strat.ok, {str(k): v for k, v in strat.levels.items()})
print(answer_sets(q))

loop = is_locally_stratified(p)
print("stratified:", loop.ok, "cycle", " -> ".join(map(str, loop.cycle)))
