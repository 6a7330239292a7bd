"""Numerical causal structure of anti-de Sitter black holes from closed
Iwasawa orbits.

Subpackages
-----------

- ``so2n``:    the matrix Lie algebra so(2,n), generators, Killing form,
               involutions, root labels.
- ``orbits``:  fundamental vector fields, orbit openness, singular points.
- ``causal``:  null rays, hit times, direction sets, causal classification,
               horizon bisection.
- ``btz_sl2``: the 3D group-manifold construction on SL2(R) (independent
               oracle for l = 3).
- ``ads2``:    the 2D adjoint-orbit model and the no-black-hole check.
- ``verify``:  machine-runnable invariant suites.
- ``service``: FastAPI wrapper; the command line client lives in
               ``adsbh.cli``.
"""

from . import ads2, btz_sl2, causal, orbits, so2n  # noqa: F401

__version__ = "0.1.0"
