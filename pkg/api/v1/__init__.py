"""
API v1 package for the hadamard-flow service.
"""
