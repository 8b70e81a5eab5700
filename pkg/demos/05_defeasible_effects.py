"""
Defeasible effects and preferences
==================================

In AT2 an effect holds normally; an abnormality condition can block it.
Preferences between causal rules resolve conflicts between defaults.
"""

from atreason import Reasoner, bundled, lit, load_domain, translate

shoot = load_domain(bundled("shooting2.atd"))
r = Reasoner(shoot, depth=1)
print("-Alive after Shoot ->", r.value("-Alive after Shoot"))
print("Ab(Shoot,S0) entailed:", r.program_entails(lit("Ab(Shoot,S0)")))
print(r.explain_change("Alive", (), "Shoot"))

# Shooting-3: flying birds fly, wounded birds do not.  Without a
# preference the two defaults tie after Shoot.
bird = Reasoner(load_domain(bundled("shooting3.atd")), depth=1)
print("Fly after Shoot ->", bird.value("Fly after Shoot"))

# prefer the more specific rule
pref = load_domain(bundled("shooting3_pref.atd"))
print(pref.by_label("P1").text())
print(("N3", "N2") in translate(pref).plp.order)
print("Fly after Shoot ->", Reasoner(pref, depth=1).value("Fly after Shoot"))

# a default without support always fires
sp3 = Reasoner(load_domain(bundled("switch_power3.atd")), depth=1)
for q in ("initially -On", "On after Turn-On"):
    print(q, "->", sp3.value(q))
