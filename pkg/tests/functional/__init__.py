"""Functional tests package.

This package contains functional tests that process real data files.
"""
