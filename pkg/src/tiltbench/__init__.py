"""tiltbench: executable homological algebra over Z and Q[x].

Finitely presented modules, bounded cochain complexes, Quillen exact
structures, t-structures with executable truncation, Freyd categories of
finitely presented functors with their effaceable-functor quotients, and a
seeded, reproducible property-suite verifier driving all of it.
"""

__version__ = "0.1.0"
