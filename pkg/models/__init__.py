"""
Models package for the hadamard-flow toolkit.
"""
