"""Restricted Lie superalgebras over prime fields.

Subpackages build on each other in this order: finite-field scalars
(:mod:`superlie.gf`), linear algebra over those scalars
(:mod:`superlie.linalg`), super root systems (:mod:`superlie.rootsys`),
matrix-realized Lie superalgebras (:mod:`superlie.liesuper`), deformed
enveloping algebras (:mod:`superlie.envelope`), coinduced modules and
invariant ideals (:mod:`superlie.invariants`), baby Verma modules
(:mod:`superlie.verma`), and dimension-divisibility sweeps
(:mod:`superlie.kwverify`).
"""

__version__ = "0.1.0"
