"""qkcomp: exact and numerical certification of quaternionic-hyperbolic
comparison geometry.

Subpackages cover the exact exterior algebra (`forms`, `identities`),
the quaternionic structure on R^{4n} (`quaternionic`), Riccati barriers
and model-space comparison quantities (`riccati`, `comparison`), the
solvable Lie-group model with its full curvature tensor (`model`),
radial spectral estimation (`spectral`), and the `qkcomp` command line
(`cli`).
"""

from .kernel import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
