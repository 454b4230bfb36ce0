"""Integration tests for the pseudograph command line."""
