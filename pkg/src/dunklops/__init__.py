"""Exact Dunkl-operator calculus on weighted spheres, balls and simplexes.

The package verifies operator identities and uncertainty inequalities for
reflection-invariant weights mechanically, on randomized polynomial inputs,
with exact rational arithmetic wherever a closed form exists and a seeded
Monte Carlo oracle everywhere else.
"""

__version__ = "0.1.0"
