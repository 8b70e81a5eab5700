"""
Prediction and postdiction
==========================

Queries have the form ``L after A1, ..., An``; answers are true, false or
unknown.
"""

from atreason import Reasoner, bundled, lit, load_domain
from atreason.reasoner import render_state

# forward: cutting the power turns the light off
sp = Reasoner(load_domain(bundled("switch_power.atd")), depth=1)
for q in ("-Power after Cut-Power", "-On after Cut-Power", "Switch after Cut-Power"):
    print(q, "->", sp.value(q))

(s0,) = sp.initial_states()
print(render_state(s0), "-> Cut-Power ->", [render_state(s) for s in sp.transition("Cut-Power", s0)])
print(sp.explain_change("On", (), "Cut-Power"))

# two actions deep
sp2 = Reasoner(load_domain(bundled("switch_power2.atd")), depth=2)
for q in ("On after Turn-On", "-On after Turn-On, Cut-Power", "initially Power"):
    print(q, "->", sp2.value(q))
print(sp2.count_models(), "model(s)")

# backward: the door opened, the key was missing, so the card was there
door = Reasoner(load_domain(bundled("door.atd")), depth=1)
print("initially HasCard ->", door.value("initially HasCard"))

# nondeterminism: two successor states
fig1 = Reasoner(load_domain(bundled("fig1.atd")), depth=1)
(s0,) = fig1.initial_states()
for s in fig1.transition("A1", s0):
    print("A1:", render_state(s0), "->", render_state(s))

# Shooting-1: the death observed after Shoot, Wait can be explained two ways
sh = Reasoner(load_domain(bundled("shooting1.atd")), depth=2)
print(len(sh.answer_sets), "answer sets")
for q in ("initially Loaded", "-Alive after Shoot", "-Alive after Shoot, Wait"):
    print(q, "->", sh.value(q))

# The program itself entails the observation.  Models are built from state
# transitions, though, and in the answer set where the gun was unloaded the
# state after Shoot equals states from which Wait keeps Alive.
print(sh.program_entails(lit("-Holds(Alive,Result(Wait,Result(Shoot,S0)))")))
for k in range(len(sh.answer_sets)):
    print(k, {" ".join(p) or "S0": render_state(sh.project(k, p)) for p in sh.strings[:3]})
