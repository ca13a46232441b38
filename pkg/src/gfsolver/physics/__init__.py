"""Hyperbolic systems and test cases."""
