# lsl/__init__.py
"""Strata of the hermitian lagrangian Grassmannian U(n): cells, flow, ring and spectral flow."""
