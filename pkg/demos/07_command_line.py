"""
The command line
================

Everything above is also reachable from the ``atreason`` command.  Here it
is called in-process; the return value is the exit code.
"""

from atreason.cli import main

main(["check", "switch_power.atd"])
main(["translate", "shooting3_pref.atd"])
main(["solve", "p2.plp"])
code = main(["ask", "switch_power2.atd", "On after Turn-On", "-On after Turn-On, Cut-Power"])
print("exit", code)
print("exit", main(["ask", "shooting3.atd", "Fly after Shoot"]))
main(["analyze", "shooting3.atd", "--format", "json"])
