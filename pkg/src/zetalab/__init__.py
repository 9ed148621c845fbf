"""zetalab: verification toolkit for zeta functions.

Subsystems: special functions, Riemann zero tables, point counting and
Weil-conjecture checks for plane curves over finite fields, explicit
formulas (function-field and characteristic 0), absolute zeta functions of
counting functions, and zeta functions of categories.  A FastAPI service
(`zetalab.service`) wraps the library; `zetalab.cli` is a thin client.
"""

__version__ = "0.1.0"
