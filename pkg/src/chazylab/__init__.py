"""Schwarz-triangle-function solutions of the Chazy XII equation.

Subpackages by theme:

- :mod:`chazylab.specfun`: complex Gamma and 2F1 with transformations
- :mod:`chazylab.classifier`: exact-rational classification of admissible
  parameters, the solution-family table, and the no-go lemma re-proofs
- :mod:`chazylab.conformal`: the Schwarz map z(s), triangle vertices,
  barrier radius (two independent routes), and Puiseux inversion
- :mod:`chazylab.evaluator`: parametric evaluation of the gDH variables,
  the Chazy XII solution, and the (P, Q, R)-type triple, with residual
  verification of every governing differential identity
- :mod:`chazylab.maps`: the rational pull-back maps between triangle
  functions and their verification
- :mod:`chazylab.cli`: the ``chazylab`` command (enumerate | verify | eval)
"""

__version__ = "0.1.0"
