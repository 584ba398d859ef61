"""Certified bounds for s-numbers of matrices between l_p^m spaces."""

__version__ = "0.1.0"
