"""
Analysing domains
=================

Syntactic checks: normality (a model exists), a sufficient condition for
monotonicity under new initial facts, and temporal definiteness.
"""

import json

from atreason import analyze, bundled, is_normal, load_domain, o_monotonic_sufficient, parse_domain
from atreason.analyzer import replay_witness, temporal_definiteness

sp = load_domain(bundled("switch_power.atd"))
print(analyze(sp).text())

# a normal AT0 domain: the two effects are guarded by Plugged and -Plugged,
# which never both occur.  Lit is made both true and false, so the
# monotonicity condition fails.
d = parse_domain("""
domain Lamp
fluents Lit, Plugged
actions Press
initially Plugged
Press causes Lit if Plugged
Press causes -Lit if -Plugged
""")
print("normal:", bool(is_normal(d)))
print("O-monotonic:", bool(o_monotonic_sufficient(d)))

# an indefinite domain comes with a replayable witness
bird = load_domain(bundled("shooting3.atd"))
t = temporal_definiteness(bird)
print(t.verdict, t.to_json()["witness"])
print("witness replays:", replay_witness(bird, t.witness))

# the JSON form is what the CLI prints with --format json
print(json.dumps(analyze(load_domain(bundled("shooting2.atd"))).to_json()["normal"], indent=1))
