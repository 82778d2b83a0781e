"""
Core package for the hadamard-flow toolkit.
"""
