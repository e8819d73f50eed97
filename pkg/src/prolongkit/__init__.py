"""prolongkit: exact verification toolkit for systems of quadrics.

Constructs the second fundamental forms of the classical homogeneous models,
computes prolongations, annihilators and quotient systems, evaluates
order-by-order rigidity obstruction spaces, and tests deformation stability
of the distinguished quadric systems via exact flat limits.
"""

__version__ = "0.1.0"

DEFAULT_SEED = 1729
