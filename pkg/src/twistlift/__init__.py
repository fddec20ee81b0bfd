"""Twisted Heegner divisors on X_0(N) and their regularized theta lifts."""

__version__ = "0.1.0"
