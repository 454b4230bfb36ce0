"""Unit tests for pseudograph modules."""
