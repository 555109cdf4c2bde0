"""Unit tests for audit toolkit components."""
