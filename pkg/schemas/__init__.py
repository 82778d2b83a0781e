"""
Schemas package for the hadamard-flow toolkit.
"""
