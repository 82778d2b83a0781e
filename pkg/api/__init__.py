"""
API package for the hadamard-flow service.
"""
