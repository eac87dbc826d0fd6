"""Sieve tables, exact averaging identities, Chebyshev-type prime bounds and
the constructive set-pair machinery, with desk-scale verification suites."""

from pntkit._kernel import KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
