# This file makes 'momentlab_engine' a Python package.
# Sub-packages: core, numerics, fields, kernels, whittaker, poincare,
# padic_norms, moments, reporting, verification.

__version__ = "0.1.0"
