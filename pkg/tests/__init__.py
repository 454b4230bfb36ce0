"""Pseudograph test suite."""
