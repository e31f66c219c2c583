"""Tests for certificates."""
