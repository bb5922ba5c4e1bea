"""Low Mach number laboratory for the compressible Euler system.

Thin Python layer over the C++ core: equation of state and relative-energy
diagnostics, finite-volume and pseudo-spectral solvers, the exact acoustic
integrator, empirical Young measures and the Mach-sweep experiments.
"""

from machlab._core import *  # noqa: F401,F403
from machlab._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
