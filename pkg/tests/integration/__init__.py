"""Integration tests for the audit toolkit."""
