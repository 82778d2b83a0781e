"""
Services package for the hadamard-flow toolkit.
"""
