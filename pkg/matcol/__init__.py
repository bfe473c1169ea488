"""
matcol - low-rank matrix completion from non-uniformly sampled entries
"""

__version__ = "1.0.0"
