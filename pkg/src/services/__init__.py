"""Numerical operations and reporting."""
