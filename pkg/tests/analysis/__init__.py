"""Tests for analysis."""
