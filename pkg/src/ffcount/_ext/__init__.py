"""Compiled counting kernels (Cython).  See :mod:`ffcount.kernels`."""
