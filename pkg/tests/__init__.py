"""Test suite for the rational function audit toolkit."""
