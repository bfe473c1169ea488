"""
Tests for matcol
"""
